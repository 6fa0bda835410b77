use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};

/// Floor of the square root, by integer Newton iteration.
pub fn isqrt(m: &BigUint) -> BigUint {
    if m.is_zero() {
        return BigUint::zero();
    }
    // 2^ceil(bits/2) is always >= sqrt(m), so the iteration decreases monotonically.
    let mut x = BigUint::one() << ((m.bits() + 1) / 2);
    loop {
        let y = (&x + m / &x) >> 1u32;
        if y >= x {
            return x;
        }
        x = y;
    }
}

pub fn is_perfect_square(m: &BigUint) -> bool {
    // squares mod 16 are {0,1,4,9}
    let low = m.iter_u32_digits().next().unwrap_or(0) & 15;
    if !matches!(low, 0 | 1 | 4 | 9) {
        return false;
    }
    let r = isqrt(m);
    &r * &r == *m
}

/// Least nonnegative residue of a signed integer.
pub fn mod_floor(a: &BigInt, m: &BigUint) -> BigUint {
    let mm = BigInt::from_biguint(Sign::Plus, m.clone());
    a.mod_floor(&mm).to_biguint().expect("mod_floor is nonnegative")
}

/// `a^k mod m` for a signed base.
pub fn mod_pow_i(a: &BigInt, k: &BigUint, m: &BigUint) -> BigUint {
    mod_floor(a, m).modpow(k, m)
}

pub(crate) fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod_u64(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod_u64(r, b, m);
        }
        b = mul_mod_u64(b, b, m);
        e >>= 1;
    }
    r
}

pub(crate) fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn isqrt_examples() {
        assert_eq!(isqrt(&BigUint::from(3136u32)), BigUint::from(56u32));
        assert_eq!(isqrt(&BigUint::from(2u32)), BigUint::from(1u32));
        assert_eq!(isqrt(&BigUint::zero()), BigUint::zero());
        assert!(is_perfect_square(&BigUint::from(43681u32)));
        assert!(!is_perfect_square(&BigUint::from(28u32)));
        assert!(is_perfect_square(&BigUint::zero()));
    }

    proptest! {
        #[test]
        fn isqrt_brackets_256_bit(bytes in proptest::collection::vec(any::<u8>(), 32)) {
            let m = BigUint::from_bytes_le(&bytes);
            let r = isqrt(&m);
            prop_assert!(&r * &r <= m);
            let r1 = &r + 1u32;
            prop_assert!(&r1 * &r1 > m);
        }

        #[test]
        fn squares_are_detected(x in any::<u128>()) {
            let x = BigUint::from(x);
            prop_assert!(is_perfect_square(&(&x * &x)));
        }
    }
}
