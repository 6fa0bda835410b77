//! Exact integer number theory: valuations, residue symbols, multiplicative
//! orders, semiprimitivity, modular square roots, factorization and integer
//! square roots. No floating point is used anywhere in this module.

mod arith;
mod factor;
mod order;
mod primality;
mod residue;
mod valuation;
mod witness;

pub use arith::{isqrt, is_perfect_square, mod_floor, mod_pow_i};
pub use factor::{divisors, factorize, Factorization};
pub use order::{
    carmichael, is_semiprimitive, is_semiprimitive_with, multiplicative_order,
    multiplicative_order_with, semiprimitive_prime_by_prime,
};
pub(crate) use primality::is_prime_u64;
pub use primality::{is_prime, primality, Primality, DETERMINISTIC_LIMIT, RANDOM_ROUNDS};
pub use residue::{jacobi, legendre_symbol, sqrt_mod};
pub use valuation::{padic_valuation, valuation, valuation_of, Valuation};
pub use witness::{find_witness_prime, WitnessMode};

use num_bigint::{BigInt, BigUint};

/// Effort caps for factorization. Exhausting them is never an error: the
/// factorization just comes back with `complete == false`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Budget {
    /// Trial division runs over every candidate up to this bound.
    pub trial_bound: u64,
    /// Total Pollard rho iterations allowed per factorization.
    pub rho_iterations: u64,
    /// Seed for rho constants and the random Miller-Rabin rounds.
    pub seed: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            trial_bound: 1_000_000,
            rho_iterations: 10_000_000,
            seed: 0x5eed_cd5,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NtError {
    #[error("{0} is not prime")]
    NotPrime(BigUint),
    #[error("{0} is not an odd prime")]
    NotOddPrime(BigUint),
    #[error("gcd({a}, {modulus}) != 1")]
    NotCoprime { a: BigInt, modulus: BigUint },
    #[error("modulus must be at least 2")]
    ModulusTooSmall,
    #[error("the valuation of 0 is infinite")]
    ZeroValuation,
    #[error("negative input")]
    Negative,
    #[error("factorization of {0} did not complete within budget")]
    Inconclusive(BigUint),
}
