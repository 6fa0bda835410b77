use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::ntkernel::{factorize, legendre_symbol, Budget};

/// Squarefree part of `x`, keeping the sign. `None` if `|x|` does not factor.
fn squarefree_part(x: &BigInt, budget: &Budget) -> Option<BigInt> {
    if x.is_zero() {
        return Some(BigInt::zero());
    }
    let f = factorize(x.magnitude(), budget);
    if !f.complete {
        return None;
    }
    let core = f
        .factors
        .iter()
        .filter(|(_, k)| k % 2 == 1)
        .fold(BigUint::one(), |acc, (p, _)| acc * p);
    Some(BigInt::from_biguint(x.sign(), core))
}

/// Rescale `a x^2 + b y^2 + c z^2 = 0` to an equivalent form whose
/// coefficients are squarefree and pairwise coprime. Coefficients must be
/// nonzero; `None` when a factorization runs out of budget.
pub fn legendre_normal_form(
    a: &BigInt,
    b: &BigInt,
    c: &BigInt,
    budget: &Budget,
) -> Option<[BigInt; 3]> {
    let mut v = [
        squarefree_part(a, budget)?,
        squarefree_part(b, budget)?,
        squarefree_part(c, budget)?,
    ];
    if v.iter().any(Zero::is_zero) {
        return None;
    }
    'outer: loop {
        for (i, j, k) in [(0, 1, 2), (0, 2, 1), (1, 2, 0)] {
            let g = BigInt::from(v[i].magnitude().gcd(v[j].magnitude()));
            if g.is_one() {
                continue;
            }
            // multiply through by g and absorb g^2 into x_i, x_j
            v[i] = &v[i] / &g;
            v[j] = &v[j] / &g;
            let h = BigInt::from(v[k].magnitude().gcd(g.magnitude()));
            v[k] = &v[k] * &g / (&h * &h);
            continue 'outer;
        }
        return Some(v);
    }
}

pub(crate) enum Solvability {
    Solvable,
    /// Fails locally at this odd prime.
    ObstructedAt(BigUint),
    Unknown,
}

/// Legendre's criterion for `x^2 - q y^2 - s z^2 = 0` with `q, s` nonzero.
pub(crate) fn ternary_solvable(q: &BigInt, s: &BigInt, budget: &Budget) -> Solvability {
    let Some(v) = legendre_normal_form(&BigInt::one(), &-q, &-s, budget) else {
        return Solvability::Unknown;
    };
    let mut obstructions: Vec<BigUint> = Vec::new();
    for (i, j, k) in [(0, 1, 2), (1, 0, 2), (2, 0, 1)] {
        let target = -(&v[j] * &v[k]);
        let f = factorize(v[i].magnitude(), budget);
        if !f.complete {
            return Solvability::Unknown;
        }
        for p in f.primes() {
            if p == &BigUint::from(2u32) {
                continue;
            }
            if legendre_symbol(&target, p).ok() != Some(1) {
                obstructions.push(p.clone());
            }
        }
    }
    match obstructions.into_iter().min() {
        Some(p) => Solvability::ObstructedAt(p),
        None => Solvability::Solvable,
    }
}
