use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::ntkernel::{is_perfect_square, isqrt};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParamError {
    #[error("n must be positive")]
    ZeroN,
    #[error("k = {k} exceeds n = {n}")]
    KTooLarge { n: BigUint, k: BigUint },
    #[error("lambda = {lambda} exceeds k = {k}")]
    LambdaTooLarge { k: BigUint, lambda: BigUint },
    #[error("k(k-1) != (n-1) lambda for ({n}, {k}, {lambda})")]
    Counting { n: BigUint, k: BigUint, lambda: BigUint },
}

/// Parameters `(n, k, lambda)` with `k(k-1) = (n-1) lambda`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CdsParams {
    n: BigUint,
    k: BigUint,
    lambda: BigUint,
}

impl CdsParams {
    pub fn new(n: BigUint, k: BigUint, lambda: BigUint) -> Result<Self, ParamError> {
        if n.is_zero() {
            return Err(ParamError::ZeroN);
        }
        if k > n {
            return Err(ParamError::KTooLarge { n, k });
        }
        if lambda > k {
            return Err(ParamError::LambdaTooLarge { k, lambda });
        }
        let lhs = if k.is_zero() { BigUint::zero() } else { &k * (&k - 1u32) };
        if lhs != (&n - 1u32) * &lambda {
            return Err(ParamError::Counting { n, k, lambda });
        }
        Ok(CdsParams { n, k, lambda })
    }

    pub fn from_u64(n: u64, k: u64, lambda: u64) -> Result<Self, ParamError> {
        Self::new(n.into(), k.into(), lambda.into())
    }

    pub fn n(&self) -> &BigUint {
        &self.n
    }

    pub fn k(&self) -> &BigUint {
        &self.k
    }

    pub fn lambda(&self) -> &BigUint {
        &self.lambda
    }

    /// `k - lambda`.
    pub fn order(&self) -> BigUint {
        &self.k - &self.lambda
    }

    /// Off-peak autocorrelation `n - 4(k - lambda)` of the matching sequence.
    pub fn d(&self) -> BigInt {
        BigInt::from(self.n.clone()) - BigInt::from(self.order()) * 4
    }

    /// `(n, n-k, n-2k+lambda)`.
    pub fn complement(&self) -> CdsParams {
        let k = &self.n - &self.k;
        let lambda = (&self.n + &self.lambda) - (&self.k << 1u32);
        CdsParams {
            n: self.n.clone(),
            k,
            lambda,
        }
    }

    /// Whichever of `self` and its complement has the smaller `k`.
    pub fn canonical(&self) -> CdsParams {
        let c = self.complement();
        if c.k < self.k {
            c
        } else {
            self.clone()
        }
    }

    /// `k <= 1` or `k >= n - 1`: these always exist.
    pub fn is_trivial(&self) -> bool {
        let one = BigUint::from(1u32);
        self.k <= one || &self.k + &one >= self.n
    }

    pub fn to_u64(&self) -> Option<(u64, u64, u64)> {
        Some((self.n.to_u64()?, self.k.to_u64()?, self.lambda.to_u64()?))
    }
}

impl fmt::Display for CdsParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.n, self.k, self.lambda)
    }
}

/// Both parameter sets `(k, lambda) = ((n + e s)/2, (n + d + 2 e s)/4)` with
/// `s = sqrt(dn + n - d)`, `e = -1, +1`, that are integral and valid.
/// Sorted by `k`; a repeated root collapses to one entry.
pub fn params_from_nd(n: &BigUint, d: &BigInt) -> Vec<CdsParams> {
    let mut out = Vec::new();
    if n.is_zero() {
        return out;
    }
    let ni = BigInt::from(n.clone());
    let disc = d * &ni + &ni - d;
    if disc.is_negative() {
        return out;
    }
    let disc = disc.magnitude();
    if !is_perfect_square(disc) {
        return out;
    }
    let s = BigInt::from(isqrt(disc));
    for eps in [-1i32, 1] {
        let k2 = &ni + &s * eps;
        let l4 = &ni + d + &s * (2 * eps);
        if k2.is_negative() || l4.is_negative() || k2.is_odd() || !(&l4 % 4u32).is_zero() {
            continue;
        }
        let k = (k2 >> 1u32).to_biguint().expect("nonnegative");
        let lambda = (l4 >> 2u32).to_biguint().expect("nonnegative");
        if let Ok(p) = CdsParams::new(n.clone(), k, lambda) {
            if !out.contains(&p) {
                out.push(p);
            }
        }
    }
    out.sort();
    out
}

/// Reasons `(n, d)` cannot be the period and off-peak value of a two-level sequence.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Infeasible {
    #[error("d is not congruent to n mod 4")]
    Congruence,
    #[error("d is below -1 and (n, d) != (2, -2)")]
    DTooSmall,
    #[error("dn + n - d is negative")]
    NegativeDiscriminant,
    #[error("dn + n - d is not a perfect square")]
    NotSquare,
    #[error("no integral parameter set")]
    NoParams,
}

/// Necessary conditions only; the returned parameter sets still need a search.
pub fn feasibility(n: &BigUint, d: &BigInt) -> Result<Vec<CdsParams>, Infeasible> {
    let ni = BigInt::from_biguint(Sign::Plus, n.clone());
    if !((&ni - d) % 4u32).is_zero() {
        return Err(Infeasible::Congruence);
    }
    let two_minus_two = ni == BigInt::from(2) && *d == BigInt::from(-2);
    if *d < BigInt::from(-1) && !two_minus_two {
        return Err(Infeasible::DTooSmall);
    }
    let disc = d * &ni + &ni - d;
    if disc.is_negative() {
        return Err(Infeasible::NegativeDiscriminant);
    }
    if !is_perfect_square(disc.magnitude()) {
        return Err(Infeasible::NotSquare);
    }
    let ps = params_from_nd(n, d);
    if ps.is_empty() {
        return Err(Infeasible::NoParams);
    }
    Ok(ps)
}
