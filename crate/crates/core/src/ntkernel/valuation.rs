use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use super::factor::Factorization;
use super::primality::is_prime;
use super::NtError;

/// `v_p(m)`, with the valuation of zero kept apart from every integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(u32),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<u32> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    /// Parity only makes sense for finite valuations.
    pub fn is_odd(self) -> Option<bool> {
        self.finite().map(|v| v % 2 == 1)
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => f.write_str("inf"),
        }
    }
}

/// Exponent of the highest power of the prime `p` dividing `m != 0`.
pub fn padic_valuation(m: &BigInt, p: &BigUint) -> Result<u32, NtError> {
    match valuation(m, p)? {
        Valuation::Finite(v) => Ok(v),
        Valuation::Infinite => Err(NtError::ZeroValuation),
    }
}

/// Like [`padic_valuation`] but accepts zero.
pub fn valuation(m: &BigInt, p: &BigUint) -> Result<Valuation, NtError> {
    if !is_prime(p) {
        return Err(NtError::NotPrime(p.clone()));
    }
    if m.is_zero() {
        return Ok(Valuation::Infinite);
    }
    Ok(Valuation::Finite(strip(m.magnitude(), p)))
}

/// Read a valuation off an existing factorization. `None` when the
/// factorization is incomplete and `p` is not listed, since then the
/// unsplit cofactor might still contain `p`.
pub fn valuation_of(f: &Factorization, p: &BigUint) -> Option<u32> {
    let v = f.exponent_of(p);
    if v > 0 || f.complete {
        return Some(v);
    }
    let c = f.cofactor();
    if (&c % p).is_zero() {
        None
    } else {
        Some(0)
    }
}

fn strip(m: &BigUint, p: &BigUint) -> u32 {
    if p.is_one() {
        return 0;
    }
    let mut m = m.clone();
    let mut v = 0;
    loop {
        let (q, r) = num_integer::Integer::div_rem(&m, p);
        if !r.is_zero() {
            return v;
        }
        m = q;
        v += 1;
    }
}
