use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive};

use super::factor::factorize;
use super::order::is_semiprimitive_with;
use super::Budget;
use super::NtError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WitnessMode {
    /// `p` semiprimitive mod `e`; needs `e = 1 (mod 4)` and `m` a nonresidue mod `e`.
    NonresidueModE,
    /// `p = 2 (mod 3)`; needs `m = 2 (mod 3)`.
    TwoModThree,
}

/// Smallest prime `p | m` with odd `v_p(m)` satisfying the mode condition.
/// `Ok(None)` means no such prime exists, `Err(Inconclusive)` that `m` could
/// not be fully factored.
pub fn find_witness_prime(
    m: &BigInt,
    e: &BigUint,
    mode: WitnessMode,
    budget: &Budget,
) -> Result<Option<(BigUint, u32)>, NtError> {
    let mag = m.abs().to_biguint().expect("abs is nonnegative");
    if mag <= BigUint::one() {
        return Ok(None);
    }
    let f = factorize(&mag, budget);
    if !f.complete {
        return Err(NtError::Inconclusive(mag));
    }
    for (p, k) in &f.factors {
        if k % 2 == 0 {
            continue;
        }
        let ok = match mode {
            WitnessMode::TwoModThree => (p % 3u32).to_u32() == Some(2),
            WitnessMode::NonresidueModE => {
                if (p % e) == BigUint::from(0u32) {
                    false
                } else {
                    is_semiprimitive_with(&BigInt::from(p.clone()), e, budget)?.is_some()
                }
            }
        };
        if ok {
            return Ok(Some((p.clone(), *k)));
        }
    }
    Ok(None)
}
