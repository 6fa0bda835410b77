//! Replays a certificate from its witnesses using only `ntkernel`
//! primitives. Shares no code with the tests that produced it.

use alloc::format;
use alloc::string::String;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::{Certificate, FamilyRule, Rule, Verdict, WitnessKey};
use crate::ntkernel::{
    factorize, is_perfect_square, is_prime, legendre_symbol, padic_valuation, Budget,
};
use crate::seq::{verify_cds, CdsParams};

/// How a certificate was confirmed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Checked {
    /// Witness arithmetic replayed.
    Witnesses,
    /// The witness set is a difference set with the stated parameters.
    WitnessSet,
    /// Open: nothing to check.
    Nothing,
    /// Exhaustive search result; has no witnesses to replay.
    SearchOnly,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{0}")]
pub struct RecheckError(pub String);

fn fail<T>(msg: impl Into<String>) -> Result<T, RecheckError> {
    Err(RecheckError(msg.into()))
}

fn need(cert: &Certificate, key: WitnessKey) -> Result<&BigUint, RecheckError> {
    cert.witness(key)
        .ok_or_else(|| RecheckError(format!("missing witness {key}")))
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), RecheckError> {
    if cond {
        Ok(())
    } else {
        fail(msg)
    }
}

/// Hilbert symbol `(a, b)_p` for nonzero integers and a prime `p`: `1` iff
/// `z^2 = a x^2 + b y^2` has a nonzero solution over the `p`-adics.
pub fn hilbert_symbol(a: &BigInt, b: &BigInt, p: &BigUint) -> i8 {
    let pi = BigInt::from(p.clone());
    let alpha = padic_valuation(a, p).expect("nonzero a and prime p");
    let beta = padic_valuation(b, p).expect("nonzero b and prime p");
    let u = a / pi.pow(alpha);
    let v = b / pi.pow(beta);
    if *p == BigUint::from(2u32) {
        let m8 = |x: &BigInt| x.mod_floor(&BigInt::from(8)).to_u32().unwrap();
        let eps = |x: u32| ((x as i64 - 1) / 2).rem_euclid(2) as u32;
        let omega = |x: u32| ((x * x - 1) / 8) % 2;
        let (u8, v8) = (m8(&u), m8(&v));
        let e = eps(u8) * eps(v8) + alpha * omega(v8) + beta * omega(u8);
        return if e % 2 == 0 { 1 } else { -1 };
    }
    let mut s: i8 = 1;
    let half = (p - 1u32) / 2u32;
    if (alpha as u64 * beta as u64) % 2 == 1 && half.is_odd() {
        s = -s;
    }
    if beta % 2 == 1 {
        s *= legendre_symbol(&u, p).expect("odd prime");
    }
    if alpha % 2 == 1 {
        s *= legendre_symbol(&v, p).expect("odd prime");
    }
    s
}

/// `base^exp = -1 (mod modulus)`; any base works mod 2.
fn is_minus_one(base: &BigUint, exp: &BigUint, modulus: &BigUint) -> bool {
    if *modulus == BigUint::from(2u32) {
        return base.is_odd();
    }
    !exp.is_zero() && base.modpow(exp, modulus) == modulus - 1u32
}

fn order(p: &CdsParams) -> BigUint {
    p.k() - p.lambda()
}

pub fn recheck(cert: &Certificate) -> Result<Checked, RecheckError> {
    let p = &cert.params;
    ensure(cert.d == p.d(), "d disagrees with the parameters")?;
    match cert.verdict {
        Verdict::Open => {
            ensure(cert.reason.is_some(), "open without a reason")?;
            Ok(Checked::Nothing)
        }
        Verdict::Exists => {
            let set = cert
                .witness_set
                .as_ref()
                .ok_or_else(|| RecheckError("exists without a witness set".into()))?;
            let n = p.n().to_u64().ok_or_else(|| RecheckError("n too large".into()))?;
            let d = verify_cds(n, set).map_err(|e| RecheckError(format!("{e}")))?;
            ensure(d.params() == p, "witness set has other parameters")?;
            Ok(Checked::WitnessSet)
        }
        Verdict::Nonexistent => {
            let rule = cert
                .rule
                .ok_or_else(|| RecheckError("nonexistent without a rule".into()))?;
            match rule {
                Rule::BrcEven => {
                    ensure(p.n().is_even(), "BRC_EVEN needs n even")?;
                    ensure(!is_perfect_square(&order(p)), "k - lambda is a square")?;
                }
                Rule::BrcOdd => check_brc_odd(cert)?,
                Rule::Dsc => check_dsc(cert)?,
                Rule::Mann | Rule::Family(_) => check_mann(cert, rule)?,
                Rule::Turyn => check_turyn(cert)?,
                Rule::SizeBound => check_size_bound(cert)?,
                Rule::Oracle => return Ok(Checked::SearchOnly),
            }
            Ok(Checked::Witnesses)
        }
    }
}

fn check_brc_odd(cert: &Certificate) -> Result<(), RecheckError> {
    let p = &cert.params;
    ensure(p.n().is_odd(), "BRC_ODD needs n odd")?;
    let q = BigInt::from(order(p));
    let lambda = BigInt::from(p.lambda().clone());
    ensure(!q.is_zero() && !lambda.is_zero(), "degenerate form")?;
    let s = if ((p.n() - 1u32) / 2u32).is_even() {
        lambda
    } else {
        -lambda
    };
    let prime = need(cert, WitnessKey::P)?;
    ensure(is_prime(prime), "p is not prime")?;
    ensure(
        hilbert_symbol(&q, &s, prime) == -1,
        "the form is solvable at p",
    )
}

fn check_dsc(cert: &Certificate) -> Result<(), RecheckError> {
    let p = &cert.params;
    let n4 = (p.n() % 4u32).to_u32().unwrap();
    ensure(n4 == 1 || n4 == 2, "DSC needs n = 1, 2 mod 4")?;
    let two = BigUint::from(2u32);
    ensure(p.k() >= &two && p.k() + &two <= *p.n(), "DSC needs 2 <= k <= n - 2")?;
    let prime = need(cert, WitnessKey::P)?;
    ensure(is_prime(prime), "p is not prime")?;
    ensure((prime % 4u32).to_u32() == Some(3), "p is not 3 mod 4")?;
    let v = padic_valuation(&BigInt::from(p.n().clone()), prime).map_err(|e| RecheckError(format!("{e}")))?;
    ensure(v >= 2, "p^2 does not divide n")
}

fn check_mann(cert: &Certificate, rule: Rule) -> Result<(), RecheckError> {
    let p = &cert.params;
    let e = need(cert, WitnessKey::E)?;
    let prime = need(cert, WitnessKey::P)?;
    let exp = need(cert, WitnessKey::SemiprimitivityExponent)?;
    ensure(*e >= BigUint::from(2u32), "e < 2")?;
    ensure((p.n() % e).is_zero(), "e does not divide n")?;
    ensure(is_prime(prime), "p is not prime")?;
    ensure(is_minus_one(prime, exp, e), "p^c != -1 mod e")?;
    let kl = order(p);
    ensure(!kl.is_zero(), "k = lambda")?;
    let v = padic_valuation(&BigInt::from(kl), prime).map_err(|e| RecheckError(format!("{e}")))?;
    ensure(v % 2 == 1, "v_p(k - lambda) is even")?;
    if let Some(w) = cert.witness(WitnessKey::Valuation) {
        ensure(*w == BigUint::from(v), "stated valuation is wrong")?;
    }
    if rule == Rule::Family(FamilyRule::T43Ne) {
        ensure((prime % 3u32).to_u32() == Some(2), "p is not 2 mod 3")?;
    }
    Ok(())
}

/// Drop from `e` every prime that divides `c`, by repeated gcds.
fn coprime_part(e: &BigUint, c: &BigUint) -> BigUint {
    let mut e = e.clone();
    loop {
        let g = e.gcd(c);
        if g.is_one() {
            return e;
        }
        while (&e % &g).is_zero() {
            e /= &g;
        }
    }
}

fn check_turyn(cert: &Certificate) -> Result<(), RecheckError> {
    let p = &cert.params;
    let c = need(cert, WitnessKey::C)?;
    let e = need(cert, WitnessKey::E)?;
    ensure(*c >= BigUint::from(2u32), "c < 2")?;
    ensure(*e >= BigUint::from(2u32), "e < 2")?;
    ensure((order(p) % (c * c)).is_zero(), "c^2 does not divide k - lambda")?;
    ensure((p.n() % e).is_zero(), "e does not divide n")?;
    let ep = coprime_part(e, c);
    if let Some(w) = cert.witness(WitnessKey::EPrime) {
        ensure(*w == ep, "stated e' is wrong")?;
    }
    if ep > BigUint::one() {
        let exp = need(cert, WitnessKey::SemiprimitivityExponent)?;
        ensure(is_minus_one(c, exp, &ep), "c^j != -1 mod e'")?;
    }
    let g = e.gcd(c);
    let r = if g.is_one() {
        0
    } else {
        let f = factorize(&g, &Budget::default());
        ensure(f.complete, "gcd(e, c) did not factor")?;
        f.factors.len() as u32
    };
    if let Some(w) = cert.witness(WitnessKey::R) {
        ensure(*w == BigUint::from(r), "stated r is wrong")?;
    }
    let lhs = c * e;
    let rhs = (BigUint::one() << (r.max(1) - 1)) * p.n();
    ensure(lhs > rhs, "ce <= 2^(r-1) n")?;
    if let (Some(l), Some(rr)) = (cert.witness(WitnessKey::Lhs), cert.witness(WitnessKey::Rhs)) {
        ensure(*l == lhs && *rr == rhs, "stated inequality sides are wrong")?;
    }
    Ok(())
}

fn check_size_bound(cert: &Certificate) -> Result<(), RecheckError> {
    let p = &cert.params;
    let h = need(cert, WitnessKey::H)?;
    let m = need(cert, WitnessKey::M)?;
    ensure(!h.is_zero() && h < p.n(), "h is not a proper divisor")?;
    ensure((p.n() % h).is_zero(), "h does not divide n")?;
    ensure((order(p) % (m * m)).is_zero(), "m^2 does not divide k - lambda")?;
    let e = p.n() / h;
    if let Some(w) = cert.witness(WitnessKey::E) {
        ensure(*w == e, "stated e is wrong")?;
    }
    let exp = need(cert, WitnessKey::SemiprimitivityExponent)?;
    ensure(is_minus_one(m, exp, &e), "m^j != -1 mod n/h")?;
    ensure(h < m, "h >= m")
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn hs(a: i64, b: i64, p: u32) -> i8 {
        hilbert_symbol(&a.into(), &b.into(), &BigUint::from(p))
    }

    #[test]
    fn hilbert_values() {
        assert_eq!(hs(10, -5, 5), -1);
        assert_eq!(hs(-1, -1, 2), -1);
        assert_eq!(hs(2, 3, 3), -1);
        assert_eq!(hs(1, 7, 7), 1);
        assert_eq!(hs(2, 5, 5), -1);
        // product formula over a few pairs
        for (a, b) in [(3i64, 7i64), (-5, 10), (6, -15), (11, 13)] {
            let f = factorize(&BigUint::from((2 * a * b).unsigned_abs()), &Budget::default());
            let mut prod = 1i8;
            for q in f.primes() {
                prod *= hilbert_symbol(&a.into(), &b.into(), q);
            }
            let real = if a < 0 && b < 0 { -1 } else { 1 };
            assert_eq!(prod * real, 1, "({a},{b})");
        }
    }

    #[test]
    fn rejects_tampered_witnesses() {
        let p = CdsParams::from_u64(25, 9, 3).unwrap();
        let good = Certificate::nonexistent(
            &p,
            Rule::Mann,
            vec![
                (WitnessKey::E, 5u32.into()),
                (WitnessKey::P, 2u32.into()),
                (WitnessKey::Valuation, 1u32.into()),
                (WitnessKey::SemiprimitivityExponent, 2u32.into()),
            ],
        );
        assert_eq!(recheck(&good), Ok(Checked::Witnesses));
        let mut bad = good.clone();
        bad.witnesses[0].1 = 25u32.into();
        assert!(recheck(&bad).is_err());
        bad.witnesses[0].1 = 3u32.into();
        assert!(recheck(&bad).is_err());
        let mut bad = good.clone();
        bad.witnesses[3].1 = 1u32.into();
        assert!(recheck(&bad).is_err());
        let mut bad = good;
        bad.rule = Some(Rule::BrcEven);
        assert!(recheck(&bad).is_err());
    }
}
