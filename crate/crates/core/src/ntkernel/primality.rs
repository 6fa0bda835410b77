use alloc::vec;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use super::arith::{mul_mod_u64, pow_mod_u64};

/// Strong-pseudoprime tests to the first 13 prime bases are exact below this
/// bound (3.317 * 10^24).
pub const DETERMINISTIC_LIMIT: u128 = 3_317_044_064_679_887_385_961_981;

/// Extra random-base rounds above [`DETERMINISTIC_LIMIT`]; error < 4^-64 = 2^-128.
pub const RANDOM_ROUNDS: usize = 64;

const BASES: [u32; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Primality {
    Composite,
    /// Proven by the deterministic base set.
    Prime,
    /// Passed the deterministic bases plus [`RANDOM_ROUNDS`] random ones.
    ProbablePrime,
}

impl Primality {
    pub fn is_prime(self) -> bool {
        !matches!(self, Primality::Composite)
    }
}

pub fn is_prime(n: &BigUint) -> bool {
    primality(n, 0).is_prime()
}

pub fn primality(n: &BigUint, seed: u64) -> Primality {
    if let Some(v) = n.to_u64() {
        return if is_prime_u64(v) {
            Primality::Prime
        } else {
            Primality::Composite
        };
    }
    for &b in &BASES {
        if (n % b).is_zero() {
            return Primality::Composite;
        }
    }
    let one = BigUint::one();
    let n1 = n - &one;
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> s;
    for &b in &BASES {
        if !strong_probable_prime(n, &BigUint::from(b), &d, s, &n1) {
            return Primality::Composite;
        }
    }
    if n.to_u128().is_some_and(|v| v < DETERMINISTIC_LIMIT) {
        return Primality::Prime;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ n.iter_u64_digits().fold(0u64, |h, w| h.rotate_left(7) ^ w));
    let span = n - 3u32;
    let mut buf = vec![0u8; (n.bits() as usize) / 8 + 16];
    for _ in 0..RANDOM_ROUNDS {
        rng.fill_bytes(&mut buf);
        let a = BigUint::from_bytes_le(&buf) % &span + 2u32;
        if !strong_probable_prime(n, &a, &d, s, &n1) {
            return Primality::Composite;
        }
    }
    Primality::ProbablePrime
}

fn strong_probable_prime(n: &BigUint, a: &BigUint, d: &BigUint, s: u64, n1: &BigUint) -> bool {
    let mut x = a.modpow(d, n);
    if x.is_one() || x == *n1 {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if x == *n1 {
            return true;
        }
        if x.is_one() {
            return false;
        }
    }
    false
}

pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &BASES {
        let p = p as u64;
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    if n < 43 * 43 {
        return true;
    }
    let n1 = n - 1;
    let s = n1.trailing_zeros();
    let d = n1 >> s;
    'outer: for &a in &BASES[..12] {
        let mut x = pow_mod_u64(a as u64, d, n);
        if x == 1 || x == n1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u64(x, x, n);
            if x == n1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Cheap exact check used by tests and small loops.
#[allow(dead_code)]
pub(crate) fn is_prime_by_division(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}
