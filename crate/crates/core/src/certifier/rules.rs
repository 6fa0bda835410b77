use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::brc::{ternary_solvable, Solvability};
use super::{Certificate, CertifyConfig, Rule, WitnessKey};
use crate::ntkernel::{
    divisors, factorize, is_perfect_square, is_semiprimitive_with, semiprimitive_prime_by_prime,
    Budget, Factorization, NtError,
};
use crate::seq::CdsParams;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CertError {
    #[error("precondition violated: {0}")]
    Precondition(String),
}

fn pre(cond: bool, msg: &str) -> Result<(), CertError> {
    if cond {
        Ok(())
    } else {
        Err(CertError::Precondition(msg.into()))
    }
}

const NOTE_COMPOSITE_C: &str = "review: c is semiprimitive mod e' but not every prime factor of c is";
const NOTE_COMPOSITE_M: &str = "review: m is semiprimitive mod n/h but not every prime factor of m is";

/// Hits relying on number-level semiprimitivity of a composite multiplier.
fn composite_flagged(cert: &Certificate) -> bool {
    cert.reason
        .as_deref()
        .is_some_and(|r| r.contains(NOTE_COMPOSITE_C) || r.contains(NOTE_COMPOSITE_M))
}

fn order(params: &CdsParams) -> BigUint {
    params.k() - params.lambda()
}

/// Even `n`: `k - lambda` must be a square.
pub fn brc_even(params: &CdsParams) -> Result<Certificate, CertError> {
    pre(params.n().is_even(), "BRC_EVEN needs n even")?;
    if is_perfect_square(&order(params)) {
        Ok(Certificate::open(params, "BRC_EVEN: k - lambda is a perfect square"))
    } else {
        Ok(Certificate::nonexistent(params, Rule::BrcEven, Vec::new()))
    }
}

/// Odd `n`: `x^2 = (k - lambda) y^2 + (-1)^((n-1)/2) lambda z^2` needs a
/// nontrivial integer solution. The witness is a prime where it fails locally.
pub fn brc_odd(params: &CdsParams, budget: &Budget) -> Result<Certificate, CertError> {
    pre(params.n().is_odd(), "BRC_ODD needs n odd")?;
    let q = BigInt::from(order(params));
    let lambda = BigInt::from(params.lambda().clone());
    if q.is_zero() || lambda.is_zero() {
        return Ok(Certificate::open(params, "BRC_ODD: the form has a trivial solution"));
    }
    let s = if ((params.n() - 1u32) >> 1u32).is_even() {
        lambda
    } else {
        -lambda
    };
    Ok(match ternary_solvable(&q, &s, budget) {
        Solvability::Solvable => Certificate::open(params, "BRC_ODD: the form is solvable"),
        Solvability::ObstructedAt(p) => {
            Certificate::nonexistent(params, Rule::BrcOdd, vec![(WitnessKey::P, p)])
        }
        Solvability::Unknown => Certificate::open(params, "BRC_ODD: factorization incomplete"),
    })
}

/// A prime `p = 3 (mod 4)` with `p^2 | n`, for `n = 1, 2 (mod 4)`.
pub fn dsc_test(params: &CdsParams, budget: &Budget) -> Result<Certificate, CertError> {
    let n = params.n();
    let n4 = (n % 4u32).to_u32().unwrap();
    pre(n4 == 1 || n4 == 2, "DSC needs n = 1 or 2 (mod 4)")?;
    let two = BigUint::from(2u32);
    if params.k() < &two || params.k() + &two > *n {
        return Ok(Certificate::open(params, "DSC: trivial parameters"));
    }
    let f = factorize(n, budget);
    let hit = f
        .factors
        .iter()
        .find(|(p, v)| *v >= 2 && (p % 4u32).to_u32() == Some(3));
    Ok(match hit {
        Some((p, v)) => Certificate::nonexistent(
            params,
            Rule::Dsc,
            vec![(WitnessKey::P, p.clone()), (WitnessKey::Valuation, (*v).into())],
        ),
        None if !f.complete => Certificate::open(params, "DSC: factorization of n incomplete"),
        None => Certificate::open(params, "DSC: no prime 3 mod 4 divides n twice"),
    })
}

fn divisor_list(f: &Factorization, cap: usize) -> Vec<BigUint> {
    let mut ds = divisors(f);
    ds.truncate(cap);
    ds
}

/// All `c >= 1` with `c^2 | m`, ascending.
fn square_root_divisors(f: &Factorization) -> Vec<BigUint> {
    let halves = Factorization {
        value: BigUint::zero(),
        factors: f
            .factors
            .iter()
            .filter(|(_, k)| *k >= 2)
            .map(|(p, k)| (p.clone(), k / 2))
            .collect(),
        complete: true,
        probable: f.probable,
    };
    divisors(&halves)
}

fn semiprimitive(a: &BigUint, b: &BigUint, budget: &Budget) -> Result<Option<BigUint>, NtError> {
    if !a.gcd(b).is_one() {
        return Ok(None);
    }
    is_semiprimitive_with(&BigInt::from(a.clone()), b, budget)
}

/// Mann: a divisor `e >= 2` of `n` and a prime `p` semiprimitive mod `e`
/// with `v_p(k - lambda)` odd. Searches `e` ascending, then `p` ascending.
pub fn mann_test(params: &CdsParams, cfg: &CertifyConfig) -> Certificate {
    let kl = order(params);
    if kl.is_zero() {
        return Certificate::open(params, "MANN: k = lambda");
    }
    let fk = factorize(&kl, &cfg.budget);
    let odd: Vec<(BigUint, u32)> = fk
        .factors
        .iter()
        .filter(|(_, v)| v % 2 == 1)
        .cloned()
        .collect();
    if odd.is_empty() {
        return Certificate::open(
            params,
            if fk.complete {
                "MANN: every prime divides k - lambda to an even power"
            } else {
                "MANN: factorization of k - lambda incomplete"
            },
        );
    }
    let fn_ = factorize(params.n(), &cfg.budget);
    if !fn_.complete {
        return Certificate::open(params, "MANN: factorization of n incomplete");
    }
    let mut inconclusive = false;
    for e in divisor_list(&fn_, cfg.max_divisors).into_iter().skip(1) {
        for (p, v) in &odd {
            match semiprimitive(p, &e, &cfg.budget) {
                Ok(Some(c)) => {
                    return Certificate::nonexistent(
                        params,
                        Rule::Mann,
                        vec![
                            (WitnessKey::E, e),
                            (WitnessKey::P, p.clone()),
                            (WitnessKey::Valuation, (*v).into()),
                            (WitnessKey::SemiprimitivityExponent, c),
                        ],
                    )
                }
                Ok(None) => {}
                Err(_) => inconclusive = true,
            }
        }
    }
    Certificate::open(
        params,
        if inconclusive {
            "MANN: some orders could not be computed"
        } else {
            "MANN: no semiprimitive prime of odd valuation"
        },
    )
}

/// Drop from `e` every prime that divides `c`.
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

/// Turyn: with `c^2 | k - lambda`, `e | n` and `c` semiprimitive mod `e'`
/// (the largest divisor of `e` prime to `c`), `ce <= 2^(r-1) n` where `r`
/// counts the primes of `gcd(e, c)`. The bound is applied as `n` when `r = 0`.
pub fn turyn_test(
    params: &CdsParams,
    c: &BigUint,
    e: &BigUint,
    budget: &Budget,
) -> Result<Certificate, CertError> {
    let kl = order(params);
    pre(!c.is_zero() && (&kl % (c * c)).is_zero(), "c^2 must divide k - lambda")?;
    pre(*e >= BigUint::from(2u32) && (params.n() % e).is_zero(), "e must be a divisor >= 2 of n")?;
    let ep = coprime_part(e, c);
    let mut notes: Vec<&str> = Vec::new();
    let exponent = if ep.is_one() {
        notes.push("review: e' = 1, semiprimitivity holds vacuously");
        None
    } else {
        match is_semiprimitive_with(&BigInt::from(c.clone()), &ep, budget) {
            Ok(Some(j)) => Some(j),
            Ok(None) => return Ok(Certificate::open(params, "TURYN: c is not semiprimitive mod e'")),
            Err(_) => return Ok(Certificate::open(params, "TURYN: order of c mod e' not computable")),
        }
    };
    let g = e.gcd(c);
    let r = if g.is_one() {
        0
    } else {
        let f = factorize(&g, budget);
        if !f.complete {
            return Ok(Certificate::open(params, "TURYN: gcd(e, c) did not factor"));
        }
        f.factors.len() as u32
    };
    let lhs = c * e;
    let rhs = (BigUint::one() << (r.max(1) - 1)) * params.n();
    if lhs <= rhs {
        return Ok(Certificate::open(params, "TURYN: ce <= 2^(r-1) n holds"));
    }
    if r == 0 {
        notes.push("review: gcd(e, c) = 1, bound applied as ce <= n");
    }
    if exponent.is_some() && !matches!(semiprimitive_prime_by_prime(c, &ep, budget), Ok(true)) {
        notes.push(NOTE_COMPOSITE_C);
    }
    let mut w = vec![
        (WitnessKey::C, c.clone()),
        (WitnessKey::E, e.clone()),
        (WitnessKey::EPrime, ep),
        (WitnessKey::R, r.into()),
        (WitnessKey::Lhs, lhs),
        (WitnessKey::Rhs, rhs),
    ];
    if let Some(j) = exponent {
        w.push((WitnessKey::SemiprimitivityExponent, j));
    }
    let mut cert = Certificate::nonexistent(params, Rule::Turyn, w);
    if !notes.is_empty() {
        cert = cert.with_note(notes.join("; "));
    }
    Ok(cert)
}

/// Try `e` over the divisors of `n` ascending and `c >= 2` with `c^2 | k - lambda`
/// ascending. Only pairs with `ce > n` can give a contradiction. A hit that
/// needs number-level semiprimitivity of a composite `c` is returned only if
/// nothing else fires.
pub fn turyn_search(params: &CdsParams, cfg: &CertifyConfig) -> Certificate {
    let kl = order(params);
    if kl.is_zero() {
        return Certificate::open(params, "TURYN: k = lambda");
    }
    let fk = factorize(&kl, &cfg.budget);
    let fn_ = factorize(params.n(), &cfg.budget);
    if !fk.complete || !fn_.complete {
        return Certificate::open(params, "TURYN: factorization incomplete");
    }
    let cs: Vec<BigUint> = square_root_divisors(&fk).into_iter().skip(1).collect();
    if cs.is_empty() {
        return Certificate::open(params, "TURYN: k - lambda is squarefree");
    }
    let mut flagged = None;
    for e in divisor_list(&fn_, cfg.max_divisors).into_iter().skip(1) {
        for c in &cs {
            if c * &e <= *params.n() {
                continue;
            }
            if let Ok(cert) = turyn_test(params, c, &e, &cfg.budget) {
                if cert.is_nonexistent() {
                    if !composite_flagged(&cert) {
                        return cert;
                    }
                    flagged.get_or_insert(cert);
                }
            }
        }
    }
    flagged.unwrap_or_else(|| Certificate::open(params, "TURYN: no (c, e) candidate violates the bound"))
}

/// Size bound: `h` a proper divisor of `n`, `m^2 | k - lambda`, `m`
/// semiprimitive mod `n/h` force `h >= m`.
pub fn size_bound_test(
    params: &CdsParams,
    h: &BigUint,
    m: &BigUint,
    budget: &Budget,
) -> Result<Certificate, CertError> {
    let n = params.n();
    pre(!h.is_zero() && h < n && (n % h).is_zero(), "h must be a proper divisor of n")?;
    pre(!m.is_zero() && (order(params) % (m * m)).is_zero(), "m^2 must divide k - lambda")?;
    let e = n / h;
    if !m.gcd(&e).is_one() {
        return Ok(Certificate::open(params, "SIZE_BOUND: m is not prime to n/h"));
    }
    let j = match is_semiprimitive_with(&BigInt::from(m.clone()), &e, budget) {
        Ok(Some(j)) => j,
        Ok(None) => return Ok(Certificate::open(params, "SIZE_BOUND: m is not semiprimitive mod n/h")),
        Err(_) => return Ok(Certificate::open(params, "SIZE_BOUND: order of m mod n/h not computable")),
    };
    if h >= m {
        return Ok(Certificate::open(params, "SIZE_BOUND: h >= m holds"));
    }
    let cert = Certificate::nonexistent(
        params,
        Rule::SizeBound,
        vec![
            (WitnessKey::H, h.clone()),
            (WitnessKey::M, m.clone()),
            (WitnessKey::E, e.clone()),
            (WitnessKey::SemiprimitivityExponent, j),
        ],
    );
    Ok(if matches!(semiprimitive_prime_by_prime(m, &e, budget), Ok(true)) {
        cert
    } else {
        cert.with_note(NOTE_COMPOSITE_M)
    })
}

/// `h` over proper divisors of `n` ascending, `m > h` ascending, preferring
/// hits whose `m` is semiprimitive prime by prime.
pub fn size_bound_search(params: &CdsParams, cfg: &CertifyConfig) -> Certificate {
    let kl = order(params);
    if kl.is_zero() {
        return Certificate::open(params, "SIZE_BOUND: k = lambda");
    }
    let fk = factorize(&kl, &cfg.budget);
    let fn_ = factorize(params.n(), &cfg.budget);
    if !fk.complete || !fn_.complete {
        return Certificate::open(params, "SIZE_BOUND: factorization incomplete");
    }
    let ms: Vec<BigUint> = square_root_divisors(&fk).into_iter().skip(1).collect();
    let Some(largest) = ms.last().cloned() else {
        return Certificate::open(params, "SIZE_BOUND: k - lambda is squarefree");
    };
    let mut flagged = None;
    for h in divisor_list(&fn_, cfg.max_divisors) {
        if h >= largest || h == *params.n() {
            break;
        }
        for m in ms.iter().filter(|m| **m > h) {
            if let Ok(cert) = size_bound_test(params, &h, m, &cfg.budget) {
                if cert.is_nonexistent() {
                    if !composite_flagged(&cert) {
                        return cert;
                    }
                    flagged.get_or_insert(cert);
                }
            }
        }
    }
    flagged.unwrap_or_else(|| Certificate::open(params, "SIZE_BOUND: no (h, m) pair with h < m applies"))
}
