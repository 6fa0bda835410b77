use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::One;

use super::arith::mod_floor;
use super::factor::{factorize, Factorization};
use super::Budget;
use super::NtError;

/// Carmichael function of a fully factored modulus.
pub fn carmichael(f: &Factorization) -> BigUint {
    let mut l = BigUint::one();
    for (p, k) in &f.factors {
        let t = if *p == BigUint::from(2u32) {
            match k {
                1 => BigUint::one(),
                2 => BigUint::from(2u32),
                _ => BigUint::one() << (k - 2),
            }
        } else {
            (p - 1u32) * p.pow(k - 1)
        };
        l = l.lcm(&t);
    }
    l
}

/// Least `l >= 1` with `a^l = 1 (mod e)`.
pub fn multiplicative_order(a: &BigInt, e: &BigUint) -> Result<BigUint, NtError> {
    multiplicative_order_with(a, e, &Budget::default())
}

pub fn multiplicative_order_with(
    a: &BigInt,
    e: &BigUint,
    budget: &Budget,
) -> Result<BigUint, NtError> {
    if *e < BigUint::from(2u32) {
        return Err(NtError::ModulusTooSmall);
    }
    let r = mod_floor(a, e);
    if !r.gcd(e).is_one() {
        return Err(NtError::NotCoprime {
            a: a.clone(),
            modulus: e.clone(),
        });
    }
    let fe = factorize(e, budget);
    if !fe.complete {
        return Err(NtError::Inconclusive(e.clone()));
    }
    let lam = carmichael(&fe);
    let fl = factorize(&lam, budget);
    if !fl.complete {
        return Err(NtError::Inconclusive(lam));
    }
    let mut l = lam;
    for (q, k) in &fl.factors {
        for _ in 0..*k {
            let t = &l / q;
            if r.modpow(&t, e).is_one() {
                l = t;
            } else {
                break;
            }
        }
    }
    Ok(l)
}

/// `Some(c)` with the least `c >= 1` such that `a^c = -1 (mod b)`, or `None`
/// when `-1` is not a power of `a`.
pub fn is_semiprimitive(a: &BigInt, b: &BigUint) -> Result<Option<BigUint>, NtError> {
    is_semiprimitive_with(a, b, &Budget::default())
}

pub fn is_semiprimitive_with(
    a: &BigInt,
    b: &BigUint,
    budget: &Budget,
) -> Result<Option<BigUint>, NtError> {
    let l = multiplicative_order_with(a, b, budget)?;
    if *b == BigUint::from(2u32) {
        // -1 = 1 mod 2
        return Ok(Some(BigUint::one()));
    }
    if l.is_odd() {
        return Ok(None);
    }
    let c = &l >> 1u32;
    let minus_one = b - 1u32;
    if mod_floor(a, b).modpow(&c, b) == minus_one {
        Ok(Some(c))
    } else {
        Ok(None)
    }
}

/// Whether every prime divisor of `a` is itself semiprimitive mod `b`.
/// Stricter than [`is_semiprimitive`] for composite `a`.
pub fn semiprimitive_prime_by_prime(
    a: &BigUint,
    b: &BigUint,
    budget: &Budget,
) -> Result<bool, NtError> {
    let fa = factorize(a, budget);
    if !fa.complete {
        return Err(NtError::Inconclusive(a.clone()));
    }
    for p in fa.primes() {
        if is_semiprimitive_with(&BigInt::from(p.clone()), b, budget)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn ord(a: i64, e: u64) -> u64 {
        multiplicative_order(&BigInt::from(a), &BigUint::from(e))
            .unwrap()
            .to_u64()
            .unwrap()
    }

    fn semi(a: i64, b: u64) -> Option<u64> {
        is_semiprimitive(&BigInt::from(a), &BigUint::from(b))
            .unwrap()
            .map(|c| c.to_u64().unwrap())
    }

    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }

    fn brute_order(a: u64, b: u64) -> u64 {
        let mut x = a % b;
        let mut l = 1;
        while x != 1 % b {
            x = x * a % b;
            l += 1;
        }
        l
    }

    #[test]
    fn order_examples() {
        assert_eq!(ord(2, 7), 3);
        assert_eq!(ord(2, 5), 4);
        assert_eq!(ord(3, 7), 6);
        assert_eq!(ord(-1, 7), 2);
        assert_eq!(ord(13, 211), 35);
        assert!(matches!(
            multiplicative_order(&BigInt::from(6), &BigUint::from(9u32)),
            Err(NtError::NotCoprime { .. })
        ));
        assert_eq!(
            multiplicative_order(&BigInt::from(1), &BigUint::from(1u32)),
            Err(NtError::ModulusTooSmall)
        );
    }

    #[test]
    fn semiprimitive_examples() {
        assert_eq!(semi(2, 5), Some(2));
        assert_eq!(semi(2, 7), None);
        assert_eq!(semi(3, 1_216_801), Some(20235));
        assert_eq!(semi(3, 10), Some(2));
        assert_eq!(semi(7, 2), Some(1));
    }

    #[test]
    fn carmichael_values() {
        let b = Budget::default();
        for (n, want) in [(8u32, 2u32), (16, 4), (15, 4), (7, 6), (1216801, 40470)] {
            let f = factorize(&BigUint::from(n), &b);
            assert_eq!(carmichael(&f), BigUint::from(want), "lambda({n})");
        }
    }

    #[test]
    fn semiprimitive_brute_force() {
        for b in 2u64..=500 {
            for a in 1..b {
                if gcd(a, b) != 1 {
                    continue;
                }
                let l = brute_order(a, b);
                assert_eq!(ord(a as i64, b), l, "ord {a} mod {b}");
                let mut x = 1u64;
                let mut want = None;
                for c in 1..=l {
                    x = x * a % b;
                    if x == b - 1 {
                        want = Some(c);
                        break;
                    }
                }
                assert_eq!(semi(a as i64, b), want, "{a} mod {b}");
            }
        }
    }

    #[test]
    fn prime_by_prime() {
        let b = Budget::default();
        // 2911 = 41*71 is semiprimitive mod 23441 as a number, but 41 is not
        let e = BigUint::from(23441u32);
        assert!(semi(2911, 23441).is_some());
        assert!(!semiprimitive_prime_by_prime(&BigUint::from(2911u32), &e, &b).unwrap());
        assert!(semiprimitive_prime_by_prime(&BigUint::from(3u32), &BigUint::from(10u32), &b).unwrap());
    }

    #[test]
    fn even_order_iff_semiprimitive() {
        let is_p = |x: u64| x >= 2 && (2..x).take_while(|d| d * d <= x).all(|d| x % d != 0);
        for e in (5u64..=1000).filter(|&e| e % 4 == 1 && is_p(e)) {
            for p in (2u64..1000).filter(|&p| p != e && is_p(p)) {
                let even = ord(p as i64, e) % 2 == 0;
                assert_eq!(semi(p as i64, e).is_some(), even, "{p} mod {e}");
            }
        }
    }
}
