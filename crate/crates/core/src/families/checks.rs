use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::certifier::{Certificate, FamilyRule, Rule, WitnessKey};
use crate::ntkernel::{
    factorize, find_witness_prime, is_prime, is_semiprimitive_with, legendre_symbol,
    padic_valuation, Budget, WitnessMode,
};
use crate::seq::CdsParams;

use super::{FamilyError, FamilyOneParams, FamilyThreeParams};

fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

fn v_of(x: &BigUint, p: &BigUint) -> u32 {
    padic_valuation(&BigInt::from(x.clone()), p).expect("x and p are nonzero")
}

/// Nonexistent certificate for a family rule, or `None` if `p` is not
/// semiprimitive mod `e` or `v_p(k - lambda)` is even.
fn family_cert(
    params: &CdsParams,
    rule: FamilyRule,
    e: u64,
    p: &BigUint,
    budget: &Budget,
) -> Option<Certificate> {
    let exp = is_semiprimitive_with(&BigInt::from(p.clone()), &big(e), budget).ok()??;
    let v = v_of(&(params.k() - params.lambda()), p);
    (v % 2 == 1).then(|| {
        Certificate::nonexistent(
            params,
            Rule::Family(rule),
            vec![
                (WitnessKey::E, big(e)),
                (WitnessKey::P, p.clone()),
                (WitnessKey::Valuation, v.into()),
                (WitnessKey::SemiprimitivityExponent, exp),
            ],
        )
    })
}

/// Prime factorization of `a * b`, merged. `None` if either did not finish.
fn factor_product(a: u64, b: u64, budget: &Budget) -> Option<BTreeMap<BigUint, u32>> {
    let mut out = BTreeMap::new();
    for x in [a, b] {
        if x <= 1 {
            continue;
        }
        let f = factorize(&big(x), budget);
        if !f.complete {
            return None;
        }
        for (p, k) in f.factors {
            *out.entry(p).or_insert(0) += k;
        }
    }
    Some(out)
}

/// Nonexistence for `u = 3, 7 (mod 10)`: either `v_2(u^2 - 1)` is even, or
/// some odd prime `p = 2, 3, 4 (mod 5)` divides `u - 1` or `u + 1` to an odd
/// power. Both are witnessed with `e = 5`.
pub fn t4137_check(u: u64, budget: &Budget) -> Result<Certificate, FamilyError> {
    let f = FamilyOneParams::new(u)?;
    if !matches!(u % 10, 3 | 7) {
        return Err(FamilyError::Residue(format!("u = {u} is not 3 or 7 mod 10")));
    }
    let params = &f.params;
    let v2 = ((u as u128) * (u as u128) - 1).trailing_zeros();
    if v2 % 2 == 0 {
        let c = family_cert(params, FamilyRule::T4137, 5, &big(2), budget).expect("2 is semiprimitive mod 5");
        return Ok(c.with_note(format!("v_2(u^2-1) = {v2} is even")));
    }
    let Some(fs) = factor_product(u - 1, u + 1, budget) else {
        return Ok(Certificate::open(params, "FAMILY:T4137: u +- 1 did not factor"));
    };
    for (p, k) in &fs {
        let r = (p % 5u32).to_u32().unwrap();
        if p.is_odd() && k % 2 == 1 && matches!(r, 2..=4) {
            if let Some(c) = family_cert(params, FamilyRule::T4137, 5, p, budget) {
                return Ok(c.with_note(format!("v_{p}(u^2-1) = {k} is odd")));
            }
        }
    }
    Ok(Certificate::open(
        params,
        "FAMILY:T4137: v_2(u^2-1) is odd and no odd prime 2, 3, 4 mod 5 divides u +- 1 to an odd power",
    ))
}

/// Nonexistence from `u = 2^l c^2 r +- 1 (mod 2^(l+1) c^2 e)` with `r` an odd
/// nonresidue mod `e`. The witness prime is read off `m = (u -+ 1)/(2^l c^2)`.
pub fn t41ne2_check(
    u: u64,
    e: u64,
    l: u32,
    c: u64,
    r: u64,
    budget: &Budget,
) -> Result<Certificate, FamilyError> {
    if c == 0 || r == 0 || e < 2 || l > 64 {
        return Err(FamilyError::Invalid(format!("(e, l, c, r) = ({e}, {l}, {c}, {r})")));
    }
    let f = FamilyOneParams::new(u)?;
    let params = &f.params;
    let (ub, eb) = (big(u), big(e));
    let mut failed: Vec<&str> = Vec::new();
    if !is_prime(&eb) {
        failed.push("e is not prime");
    } else {
        if e % 4 != 1 {
            failed.push("e is not 1 mod 4");
        }
        if legendre_symbol(&BigInt::from(r), &eb) != Ok(-1) {
            failed.push("r is not a nonresidue mod e");
        }
    }
    if !((&ub * &ub + 1u32) % &eb).is_zero() {
        failed.push("u^2 != -1 mod e");
    }
    if l == 0 && c % 2 == 1 {
        failed.push("2 does not divide 2^l c");
    }
    if r % 2 == 0 {
        failed.push("r is even");
    }
    let scale = (BigUint::one() << l) * c * c;
    let modulus = &scale * 2u32 * &eb;
    let base = &scale * r;
    let sign = if (&ub % &modulus) == (&base + 1u32) % &modulus {
        Some(1i8)
    } else if (&ub + 1u32) % &modulus == &base % &modulus {
        Some(-1)
    } else {
        failed.push("u is not 2^l c^2 r +- 1 mod 2^(l+1) c^2 e");
        None
    };
    if !failed.is_empty() {
        return Ok(Certificate::open(params, format!("FAMILY:T41NE2: {}", failed.join(", "))));
    }
    let shifted = if sign == Some(1) { &ub - 1u32 } else { &ub + 1u32 };
    let m = BigInt::from(shifted / &scale);
    let open = |why: &str| Ok(Certificate::open(params, format!("FAMILY:T41NE2: {why}")));
    match find_witness_prime(&m, &eb, WitnessMode::NonresidueModE, budget) {
        Ok(Some((p, _))) => match family_cert(params, FamilyRule::T41Ne2, e, &p, budget) {
            Some(c) => Ok(c.with_note(format!("m = {m}"))),
            None => open("witness prime has even valuation in k - lambda"),
        },
        Ok(None) => open("m has no semiprimitive prime of odd valuation"),
        Err(_) => open("m did not factor"),
    }
}

/// Scans `e | n` prime with `e = 1 (mod 4)`, `l <= l_max` and `c <= c_max`
/// for premises of [`t41ne2_check`] that `u` satisfies.
pub fn t41ne2_search(u: u64, l_max: u32, c_max: u64, budget: &Budget) -> Option<Certificate> {
    let f = FamilyOneParams::new(u).ok()?;
    let fact = factorize(f.params.n(), budget);
    for e in fact.primes().filter_map(|e| e.to_u64()).filter(|e| e % 4 == 1) {
        for l in 0..=l_max.min(62) {
            for c in 1..=c_max {
                let Some(scale) = c.checked_mul(c).and_then(|c2| c2.checked_mul(1 << l)) else { break };
                for shifted in [u - 1, u + 1] {
                    if shifted % scale != 0 || (shifted / scale) % 2 == 0 {
                        continue;
                    }
                    let r = (shifted / scale) % (2 * e);
                    if r == 0 {
                        continue;
                    }
                    if let Ok(cert) = t41ne2_check(u, e, l, c, r, budget) {
                        if cert.is_nonexistent() {
                            return Some(cert);
                        }
                    }
                }
            }
        }
    }
    None
}

/// Nonexistence with `e = 3` for `A = +-3 (mod 24)`: some prime `p = 2 (mod 3)`
/// has odd valuation in `A^2 - 9`. For `3 | A` failing this is open, not an error,
/// since those members are still in the family.
pub fn t43ne_check(a: u64, budget: &Budget) -> Result<Certificate, FamilyError> {
    let f = FamilyThreeParams::new(a)?;
    let params = &f.params;
    if a % 3 != 0 {
        return Ok(Certificate::open(params, "FAMILY:T43NE: 3 does not divide n"));
    }
    let Some(fs) = factor_product(a - 3, a + 3, budget) else {
        return Ok(Certificate::open(params, "FAMILY:T43NE: A^2 - 9 did not factor"));
    };
    for (p, k) in &fs {
        if k % 2 == 1 && (p % 3u32).to_u32() == Some(2) {
            if let Some(c) = family_cert(params, FamilyRule::T43Ne, 3, p, budget) {
                return Ok(c.with_note(format!("v_{p}(A^2-9) = {k} is odd")));
            }
        }
    }
    Ok(Certificate::open(params, "FAMILY:T43NE: no prime 2 mod 3 has odd valuation in A^2 - 9"))
}

/// `A mod 72` in the classes where [`t43ne_check`] always succeeds.
pub(crate) fn in_t43ne_classes(a: u64) -> bool {
    matches!(a % 72, 27 | 45 | 51 | 69)
}

/// Nonexistence from a prime `e = 1 (mod 6)` dividing `n` and a prime `p`
/// semiprimitive mod `e`: `v_2(A^2 - 9)` odd for `p = 2`, `v_3(A/3 -+ 1)` odd for
/// `p = 3`, `v_p(A -+ 3)` odd for `p >= 5`.
pub fn t43nee_check(a: u64, e: u64, p: u64, budget: &Budget) -> Result<Certificate, FamilyError> {
    let premise = |s: String| Err(FamilyError::Premise(s));
    let f = match FamilyThreeParams::new(a) {
        Ok(f) => f,
        Err(_) => return premise(format!("A = {a} is not +-3 mod 8 with A >= 5")),
    };
    let (eb, pb) = (big(e), big(p));
    if !is_prime(&eb) {
        return premise(format!("e = {e} is not prime"));
    }
    if e % 6 != 1 {
        return premise(format!("e = {e} is not 1 mod 6"));
    }
    if !is_prime(&pb) {
        return premise(format!("p = {p} is not prime"));
    }
    if !matches!(is_semiprimitive_with(&BigInt::from(p), &eb, budget), Ok(Some(_))) {
        return premise(format!("p = {p} is not semiprimitive mod {e}"));
    }
    if (big(a) * a + 3u32) % &eb != BigUint::zero() {
        return premise(format!("A^2 != -3 mod {e}"));
    }
    if p == 3 && a % 3 != 0 {
        return premise("p = 3 needs 3 | A".into());
    }
    let params = &f.params;
    let (v_minus, v_plus) = match p {
        2 => {
            let v = ((a as u128) * (a as u128) - 9).trailing_zeros();
            (v, 0)
        }
        3 => {
            let ap = a / 3;
            (v_of(&big(ap - 1), &pb), v_of(&big(ap + 1), &pb))
        }
        _ => (v_of(&big(a - 3), &pb), v_of(&big(a + 3), &pb)),
    };
    if v_minus % 2 == 1 || v_plus % 2 == 1 {
        let c = family_cert(params, FamilyRule::T43Nee, e, &pb, budget)
            .expect("odd valuation carries over to k - lambda");
        let what = match p {
            2 => format!("v_2(A^2-9) = {v_minus}"),
            3 => format!("v_3(A'-1) = {v_minus}, v_3(A'+1) = {v_plus}"),
            _ => format!("v_{p}(A-3) = {v_minus}, v_{p}(A+3) = {v_plus}"),
        };
        return Ok(c.with_note(what));
    }
    Ok(Certificate::open(params, format!("FAMILY:T43NEE: no odd valuation for p = {p}")))
}

/// First `(e, p)` accepted by [`t43nee_check`], with `e` over the prime divisors
/// of `n` and `p` over the primes of `A^2 - 9`, both ascending.
pub fn t43nee_search(a: u64, budget: &Budget) -> Option<Certificate> {
    let f = FamilyThreeParams::new(a).ok()?;
    let fact = factorize(f.params.n(), budget);
    let ps = factor_product(a - 3, a + 3, budget)?;
    for e in fact.primes().filter_map(|e| e.to_u64()).filter(|e| e % 6 == 1) {
        for p in ps.keys().filter_map(|p| p.to_u64()) {
            if let Ok(c) = t43nee_check(a, e, p, budget) {
                if c.is_nonexistent() {
                    return Some(c);
                }
            }
        }
    }
    None
}
