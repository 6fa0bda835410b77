//! Positive solutions of `x^2 - d y^2 = 1` and `x^2 - d y^2 = 4`.

use alloc::vec::Vec;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::ntkernel::{factorize, is_perfect_square, isqrt, Budget};

/// Default ceiling on `B` when searching for a fundamental solution.
pub const DEFAULT_B_CAP: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NormForm {
    Unit1,
    Unit4,
}

impl NormForm {
    pub fn norm(self) -> u32 {
        match self {
            NormForm::Unit1 => 1,
            NormForm::Unit4 => 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PellError {
    #[error("d = {0} must be at least 2")]
    TooSmall(BigUint),
    #[error("d = {0} is not squarefree")]
    NotSquarefree(BigUint),
    #[error("the norm-4 form needs d = 1 (mod 4), got {0}")]
    IncompatibleForm(BigUint),
    #[error("no solution for d = {d} with B <= {cap}")]
    CapExhausted { d: BigUint, cap: u64 },
}

/// The `index`-th positive solution `(A, B)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PellSolution {
    pub d: BigUint,
    pub form: NormForm,
    pub index: u64,
    pub a: BigUint,
    pub b: BigUint,
    a1: BigUint,
    b1: BigUint,
}

impl PellSolution {
    /// `A^2 - d B^2` equals the form's norm.
    pub fn satisfies_norm(&self) -> bool {
        &self.a * &self.a == &self.d * &self.b * &self.b + self.form.norm()
    }

    pub fn fundamental(&self) -> (&BigUint, &BigUint) {
        (&self.a1, &self.b1)
    }
}

fn is_squarefree(d: &BigUint) -> bool {
    let f = factorize(d, &Budget::default());
    f.complete && f.factors.iter().all(|(_, k)| *k == 1)
}

/// Minimal-`B` positive solution, found by scanning `B = 1, 2, ...` up to `b_cap`.
pub fn fundamental_solution(
    d: &BigUint,
    form: NormForm,
    b_cap: u64,
) -> Result<PellSolution, PellError> {
    if *d < BigUint::from(2u32) {
        return Err(PellError::TooSmall(d.clone()));
    }
    if !is_squarefree(d) {
        return Err(PellError::NotSquarefree(d.clone()));
    }
    if form == NormForm::Unit4 && (d % 4u32).to_u32() != Some(1) {
        return Err(PellError::IncompatibleForm(d.clone()));
    }
    let norm = form.norm();
    for b in 1..=b_cap {
        let b = BigUint::from(b);
        let t = d * &b * &b + norm;
        if is_perfect_square(&t) {
            let a = isqrt(&t);
            return Ok(PellSolution {
                d: d.clone(),
                form,
                index: 1,
                a1: a.clone(),
                b1: b.clone(),
                a,
                b,
            });
        }
    }
    Err(PellError::CapExhausted {
        d: d.clone(),
        cap: b_cap,
    })
}

/// Multiply by the fundamental unit.
pub fn next_solution(s: &PellSolution) -> PellSolution {
    let mut a = &s.a * &s.a1 + &s.d * &s.b * &s.b1;
    let mut b = &s.a * &s.b1 + &s.b * &s.a1;
    if s.form == NormForm::Unit4 {
        assert!(a.is_even() && b.is_even(), "norm-4 composition must halve exactly");
        a >>= 1u32;
        b >>= 1u32;
    }
    PellSolution {
        d: s.d.clone(),
        form: s.form,
        index: s.index + 1,
        a,
        b,
        a1: s.a1.clone(),
        b1: s.b1.clone(),
    }
}

/// Solutions with index `1..t`, where `t` is the first index at which
/// `keep` returns false.
pub fn enumerate_solutions(
    d: &BigUint,
    form: NormForm,
    mut keep: impl FnMut(&PellSolution) -> bool,
) -> Result<Vec<PellSolution>, PellError> {
    let mut out = Vec::new();
    let mut s = fundamental_solution(d, form, DEFAULT_B_CAP)?;
    while keep(&s) {
        let next = next_solution(&s);
        out.push(s);
        s = next;
    }
    Ok(out)
}

/// Convenience for the first `count` solutions.
pub fn first_solutions(d: u64, form: NormForm, count: u64) -> Result<Vec<PellSolution>, PellError> {
    enumerate_solutions(&BigUint::from(d), form, |s| s.index <= count)
}
