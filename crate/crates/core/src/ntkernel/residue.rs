use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::arith::mod_floor;
use super::primality::is_prime;
use super::NtError;

/// Jacobi symbol `(a/n)` for odd `n >= 1`, by quadratic reciprocity.
///
/// # Panics
/// If `n` is even or zero.
pub fn jacobi(a: &BigInt, n: &BigUint) -> i8 {
    assert!(n.is_odd(), "jacobi symbol needs an odd modulus");
    let mut a = mod_floor(a, n);
    let mut n = n.clone();
    let mut t = 1i8;
    while !a.is_zero() {
        let z = a.trailing_zeros().unwrap_or(0);
        a >>= z;
        let n8 = (&n % 8u32).to_u32().unwrap_or(0);
        if z % 2 == 1 && (n8 == 3 || n8 == 5) {
            t = -t;
        }
        core::mem::swap(&mut a, &mut n);
        if (&a % 4u32) == BigUint::from(3u32) && (&n % 4u32) == BigUint::from(3u32) {
            t = -t;
        }
        a %= &n;
    }
    if n.is_one() {
        t
    } else {
        0
    }
}

fn check_odd_prime(p: &BigUint) -> Result<(), NtError> {
    if p.is_even() || !is_prime(p) {
        return Err(NtError::NotOddPrime(p.clone()));
    }
    Ok(())
}

pub fn legendre_symbol(a: &BigInt, p: &BigUint) -> Result<i8, NtError> {
    check_odd_prime(p)?;
    Ok(jacobi(a, p))
}

/// Tonelli-Shanks. Returns the root in `[0, (e-1)/2]`.
pub fn sqrt_mod(a: &BigInt, e: &BigUint) -> Result<Option<BigUint>, NtError> {
    check_odd_prime(e)?;
    let a = mod_floor(a, e);
    if a.is_zero() {
        return Ok(Some(BigUint::zero()));
    }
    if jacobi(&BigInt::from(a.clone()), e) != 1 {
        return Ok(None);
    }
    let one = BigUint::one();
    let pm1 = e - &one;
    let s = pm1.trailing_zeros().unwrap_or(0);
    let q = &pm1 >> s;
    let mut z = BigUint::from(2u32);
    while jacobi(&BigInt::from(z.clone()), e) != -1 {
        z += 1u32;
    }
    let mut m = s;
    let mut c = z.modpow(&q, e);
    let mut t = a.modpow(&q, e);
    let mut r = a.modpow(&((&q + &one) >> 1u32), e);
    while !t.is_one() {
        let mut i = 0;
        let mut t2 = t.clone();
        while !t2.is_one() {
            t2 = &t2 * &t2 % e;
            i += 1;
        }
        let mut b = c.clone();
        for _ in 0..(m - i - 1) {
            b = &b * &b % e;
        }
        m = i;
        c = &b * &b % e;
        t = t * &c % e;
        r = r * &b % e;
    }
    let other = e - &r;
    Ok(Some(r.min(other)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    fn small_primes(hi: u32) -> Vec<u32> {
        (3..=hi).filter(|&q| (2..q).all(|d| q % d != 0)).collect()
    }

    fn ls(a: i64, p: u32) -> i8 {
        legendre_symbol(&BigInt::from(a), &BigUint::from(p)).unwrap()
    }

    fn sq(a: i64, p: u32) -> Option<u32> {
        sqrt_mod(&BigInt::from(a), &BigUint::from(p))
            .unwrap()
            .map(|s| s.to_u32().unwrap())
    }

    #[test]
    fn legendre_examples() {
        assert_eq!(ls(2, 7), 1);
        assert_eq!(ls(3, 7), -1);
        for p in small_primes(60) {
            assert_eq!(ls(1, p), 1);
        }
        assert_eq!(ls(14, 7), 0);
        assert!(legendre_symbol(&BigInt::from(1), &BigUint::from(2u32)).is_err());
        assert!(legendre_symbol(&BigInt::from(1), &BigUint::from(9u32)).is_err());
    }

    #[test]
    fn euler_criterion() {
        for p in small_primes(200) {
            let pb = BigUint::from(p);
            let half = BigUint::from((p - 1) / 2);
            for a in -(p as i64)..(2 * p as i64) {
                let r = mod_floor(&BigInt::from(a), &pb).modpow(&half, &pb);
                let want = if r.is_zero() {
                    0
                } else if r.is_one() {
                    1
                } else {
                    -1
                };
                assert_eq!(ls(a, p), want, "({a}/{p})");
            }
        }
    }

    #[test]
    fn jacobi_is_multiplicative_in_modulus() {
        for a in -30i64..30 {
            let a = BigInt::from(a);
            for (m, n) in [(3u32, 5u32), (7, 11), (9, 13), (15, 7)] {
                let mn = jacobi(&a, &BigUint::from(m * n));
                assert_eq!(mn, jacobi(&a, &BigUint::from(m)) * jacobi(&a, &BigUint::from(n)));
            }
        }
    }

    #[test]
    fn sqrt_examples() {
        assert_eq!(sq(-3, 7), Some(2));
        assert_eq!(sq(-1, 5), Some(2));
        assert_eq!(sq(2, 5), None);
        assert_eq!(sq(0, 5), Some(0));
        assert!(sqrt_mod(&BigInt::from(1), &BigUint::from(15u32)).is_err());
    }

    #[test]
    fn sqrt_matches_brute_force() {
        for p in small_primes(300) {
            for a in 0..p as i64 {
                let brute = (0..=(p - 1) / 2).find(|&s| (s as i64 * s as i64 - a) % p as i64 == 0);
                assert_eq!(sq(a, p), brute, "sqrt {a} mod {p}");
            }
        }
    }

    #[test]
    fn sqrt_large_prime() {
        let p = (BigUint::one() << 127u32) - 1u32;
        let a = BigInt::from(123_456_789u64) * BigInt::from(987_654_321u64);
        let a = &a * &a;
        let s = sqrt_mod(&a, &p).unwrap().unwrap();
        assert_eq!(&s * &s % &p, mod_floor(&a, &p));
        let p = BigUint::from(998_244_353u64);
        // 998244353 - 1 = 2^23 * 119
        for x in [2u64, 31337, 998_244_352 / 3] {
            let a = BigUint::from(x * x % 998_244_353);
            let s = sqrt_mod(&BigInt::from(a.clone()), &p).unwrap().unwrap();
            assert_eq!(&s * &s % &p, a);
        }
    }
}
