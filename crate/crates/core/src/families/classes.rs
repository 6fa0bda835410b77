use alloc::format;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;

use crate::ntkernel::{is_prime_u64, legendre_symbol, sqrt_mod};

use super::{FamilyError, ResidueClasses};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    /// `u = 2 b p^(2l+1) + 1`
    Plus,
    /// `u = 2 b p^(2l+1) - 1`
    Minus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum T41Variant {
    /// `v_2(u^2 - 1) = 2l + 2`.
    PowerOfTwo,
    /// `v_p(u -+ 1) = 2l + 1` for an odd prime `p = 2, 3, 4 (mod 5)`.
    OddPrime { p: u64, branch: Branch },
}

fn invalid<T>(msg: alloc::string::String) -> Result<T, FamilyError> {
    Err(FamilyError::Invalid(msg))
}

fn checked_pow(b: u64, e: u32) -> Result<u64, FamilyError> {
    b.checked_pow(e)
        .ok_or_else(|| FamilyError::Invalid(format!("{b}^{e} overflows")))
}

fn checked_mul(a: u64, b: u64) -> Result<u64, FamilyError> {
    a.checked_mul(b)
        .ok_or_else(|| FamilyError::Invalid(format!("{a} * {b} overflows")))
}

/// Residue classes of `u = 3, 7 (mod 10)` covered by the family-1 test with
/// a fixed valuation pattern.
///
/// The odd-prime variant needs `p` not dividing `b`, so its modulus is
/// `10 p^(2l+2)` rather than `10 p^(2l+1)`.
pub fn t41ne_classes(variant: T41Variant, l: u32) -> Result<ResidueClasses, FamilyError> {
    match variant {
        T41Variant::PowerOfTwo => {
            if l == 0 || l > 29 {
                return invalid(format!("l = {l} must be in 1..=29"));
            }
            let t = 1u64 << (2 * l + 1);
            let modulus = 5u64 << (2 * l + 2);
            let mut res = Vec::new();
            for base in [t, 3 * t] {
                let x = if l % 2 == 0 { base + 1 } else { base - 1 };
                res.push(x);
                res.push(modulus - x);
            }
            Ok(ResidueClasses::new(modulus, res))
        }
        T41Variant::OddPrime { p, branch } => {
            if p == 2 || !is_prime_u64(p) || !matches!(p % 5, 2..=4) {
                return invalid(format!("p = {p} is not an odd prime 2, 3, 4 mod 5"));
            }
            let pp = checked_pow(p, 2 * l + 1)?;
            let modulus = checked_mul(10 * p, pp)?;
            let step = checked_mul(2, pp)?;
            let mut res = Vec::new();
            for b in (1..5 * p).filter(|b| b % p != 0) {
                let x = ((b as u128 * step as u128) % modulus as u128) as u64;
                let u = match branch {
                    Branch::Plus => (x + 1) % modulus,
                    Branch::Minus => (x + modulus - 1) % modulus,
                };
                if matches!(u % 10, 3 | 7) {
                    res.push(u);
                }
            }
            Ok(ResidueClasses::new(modulus, res))
        }
    }
}

/// Classes of `u` mod `2^(l+1) c^2 e` of the form `2^l c^2 r +- 1` with `r` an
/// odd nonresidue mod `e` and `u^2 = -1 (mod e)`.
pub fn t41ne2_classes(e: u64, l: u32, c: u64) -> Result<ResidueClasses, FamilyError> {
    if !is_prime_u64(e) || e % 4 != 1 {
        return invalid(format!("e = {e} is not a prime 1 mod 4"));
    }
    if c == 0 || (l == 0 && c % 2 == 1) {
        return invalid(format!("2 must divide 2^l c, got l = {l}, c = {c}"));
    }
    let scale = checked_mul(checked_pow(2, l)?, checked_mul(c, c)?)?;
    let modulus = checked_mul(checked_mul(scale, 2)?, e)?;
    let eb = BigUint::from(e);
    let mut res = Vec::new();
    for r in (1..2 * e).step_by(2) {
        if legendre_symbol(&BigInt::from(r), &eb) != Ok(-1) {
            continue;
        }
        let x = ((scale as u128 * r as u128) % modulus as u128) as u64;
        for u in [(x + 1) % modulus, (x + modulus - 1) % modulus] {
            let um = (u % e) as u128;
            if (um * um + 1) % e as u128 == 0 {
                res.push(u);
            }
        }
    }
    Ok(ResidueClasses::new(modulus, res))
}

/// Shapes `A = +-3 + P r` for which one family-3 valuation condition holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum T43Kind {
    /// `P = 2^(2h)`, `h >= 2`, `r` odd; gives odd `v_2(A^2 - 9)`.
    PowerOfTwo { h: u32 },
    /// `P = 3^(2l+2)`, `3` not dividing `r`; gives odd `v_3(A/3 -+ 1)`.
    PowerOfThree { l: u32 },
    /// `P = p^(2l+1)`, `p >= 5` prime not dividing `r`; gives odd `v_p(A -+ 3)`.
    OddPrime { p: u64, l: u32 },
}

impl T43Kind {
    /// `(P, q)` where `q` must not divide `r`.
    fn scale(self) -> Result<(u64, u64), FamilyError> {
        match self {
            T43Kind::PowerOfTwo { h } if h >= 2 => Ok((checked_pow(2, 2 * h)?, 2)),
            T43Kind::PowerOfTwo { h } => invalid(format!("h = {h} must be at least 2")),
            T43Kind::PowerOfThree { l } => Ok((checked_pow(3, 2 * l + 2)?, 3)),
            T43Kind::OddPrime { p, l } if p >= 5 && is_prime_u64(p) => Ok((checked_pow(p, 2 * l + 1)?, p)),
            T43Kind::OddPrime { p, .. } => invalid(format!("p = {p} must be a prime >= 5")),
        }
    }

    /// The prime whose valuation the shape controls.
    pub fn prime(self) -> u64 {
        match self {
            T43Kind::PowerOfTwo { .. } => 2,
            T43Kind::PowerOfThree { .. } => 3,
            T43Kind::OddPrime { p, .. } => p,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RChoice {
    Value(u64),
    Classes(ResidueClasses),
    All,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AValues {
    Exact(Vec<u64>),
    Classes(ResidueClasses),
}

impl AValues {
    pub fn contains(&self, a: u64) -> bool {
        match self {
            AValues::Exact(v) => v.contains(&a),
            AValues::Classes(c) => c.contains(a),
        }
    }
}

/// Values or classes of `A = +-3 + P r` with `A = +-3 (mod 8)` and, when `e`
/// is given, `A^2 = -3 (mod e)`. For prime `e = 1 (mod 6)` the last condition
/// pins `r` to `P r = -+3 +- s (mod e)` with `s^2 = -3`.
pub fn t43_class_generators(kind: T43Kind, e: Option<u64>, r: &RChoice) -> Result<AValues, FamilyError> {
    let (pp, q) = kind.scale()?;
    // admissible r mod e, per sign of the 3
    let mut r_mod_e: [Vec<u64>; 2] = [Vec::new(), Vec::new()];
    if let Some(e) = e {
        if !is_prime_u64(e) || e % 6 != 1 {
            return invalid(format!("e = {e} is not a prime 1 mod 6"));
        }
        if e == kind.prime() {
            return invalid(format!("e = {e} equals p"));
        }
        let eb = BigUint::from(e);
        let s = match sqrt_mod(&BigInt::from(-3), &eb) {
            Ok(Some(s)) => u64::try_from(s).expect("s < e"),
            _ => return Err(FamilyError::Residue(format!("-3 is not a residue mod {e}"))),
        };
        let inv = BigInt::from(pp % e)
            .extended_gcd(&BigInt::from(e))
            .x
            .mod_floor(&BigInt::from(e));
        let inv = u64::try_from(inv).expect("reduced") as u128;
        for (i, sigma3) in [3u64, e - 3].into_iter().enumerate() {
            // P r = -sigma3 +- s
            for t in [(2 * e - sigma3 + s) % e, (2 * e - sigma3 - s % e) % e] {
                r_mod_e[i].push(((t as u128 * inv) % e as u128) as u64);
            }
        }
    }
    let ok = |a: u64, sign: usize, r: u64| -> bool {
        r % q != 0
            && matches!(a % 8, 3 | 5)
            && e.map_or(true, |e| r_mod_e[sign].contains(&(r % e)))
    };
    match r {
        RChoice::Value(r) => {
            let base = checked_mul(pp, *r)?;
            let mut out = Vec::new();
            for (sign, a) in [base.checked_add(3), base.checked_sub(3)].into_iter().enumerate() {
                if let Some(a) = a.filter(|&a| a >= 5) {
                    if ok(a, sign, *r) {
                        out.push(a);
                    }
                }
            }
            out.sort_unstable();
            Ok(AValues::Exact(out))
        }
        RChoice::Classes(_) | RChoice::All => {
            let rc = match r {
                RChoice::Classes(c) => c.clone(),
                _ => ResidueClasses::new(1, alloc::vec![0]),
            };
            let mut period = rc.modulus.lcm(&q).lcm(&8);
            if let Some(e) = e {
                period = period.lcm(&e);
            }
            let modulus = checked_mul(pp, period)?;
            if period > 1 << 26 {
                return invalid(format!("r period {period} is too long to enumerate"));
            }
            let mut res = Vec::new();
            for r in (0..period).filter(|&r| rc.contains(r)) {
                let x = ((pp as u128 * r as u128) % modulus as u128) as u64;
                for (sign, a) in [(x + 3) % modulus, (x + modulus - 3) % modulus].into_iter().enumerate() {
                    if ok(a, sign, r) {
                        res.push(a);
                    }
                }
            }
            Ok(AValues::Classes(ResidueClasses::new(modulus, res)))
        }
    }
}
