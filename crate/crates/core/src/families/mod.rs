//! The four residue-class families with `d = 1, 2, 3, 4`: parameter formulas,
//! the family-specific nonexistence tests, generators for the residue classes
//! those tests cover, and scans over family members.
//!
//! | family | index | `(n, k, lambda)` |
//! |---|---|---|
//! | 1 | odd `u` | `((u^2+1)/2, (u-1)^2/4, (u-1)(u-3)/8)` |
//! | 2 | `A^2 - 3B^2 = 1` | `(2u, u - A, B^2 + 1 - A)`, `u = 2B^2 + 1` |
//! | 3 | `A = +-3 (mod 8)` | `((A^2+3)/4, (A-1)(A-3)/8, (A-3)(A-5)/16)` |
//! | 0 | `A^2 - 5B^2 = 4` | `(4u, 2u - A, u + 1 - A)`, `u = B^2 + 1` |

mod checks;
mod classes;
mod scan;

use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigUint;

use crate::pell::{NormForm, PellSolution};
use crate::seq::CdsParams;

pub use checks::{t41ne2_check, t41ne2_search, t4137_check, t43ne_check, t43nee_check, t43nee_search};
pub use classes::{
    t41ne2_classes, t41ne_classes, t43_class_generators, AValues, Branch, RChoice, T41Variant,
    T43Kind,
};
pub use scan::{family_scan, FamilyRow, ScanConfig};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FamilyError {
    #[error("residue precondition violated: {0}")]
    Residue(String),
    #[error("invalid parameter: {0}")]
    Invalid(String),
    #[error("premise fails: {0}")]
    Premise(String),
}

/// Residues modulo `modulus`, sorted and distinct.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueClasses {
    pub modulus: u64,
    pub residues: Vec<u64>,
}

impl ResidueClasses {
    pub(crate) fn new(modulus: u64, mut residues: Vec<u64>) -> Self {
        residues.iter_mut().for_each(|r| *r %= modulus);
        residues.sort_unstable();
        residues.dedup();
        ResidueClasses { modulus, residues }
    }

    pub fn contains(&self, x: u64) -> bool {
        self.residues.binary_search(&(x % self.modulus)).is_ok()
    }

    /// Members `1 <= x <= bound`, ascending.
    pub fn members(&self, bound: u64) -> impl Iterator<Item = u64> + '_ {
        (0..=bound / self.modulus).flat_map(move |q| {
            self.residues
                .iter()
                .map(move |&r| q * self.modulus + r)
                .filter(move |&x| x >= 1 && x <= bound)
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    One,
    Two,
    Three,
    Zero,
}

impl Family {
    /// The `d = n - 4(k - lambda)` shared by every member.
    pub fn d(self) -> i64 {
        match self {
            Family::One => 1,
            Family::Two => 2,
            Family::Three => 3,
            Family::Zero => 4,
        }
    }

    pub fn from_number(f: u8) -> Option<Family> {
        match f {
            1 => Some(Family::One),
            2 => Some(Family::Two),
            3 => Some(Family::Three),
            0 => Some(Family::Zero),
            _ => None,
        }
    }

    pub fn number(self) -> u8 {
        match self {
            Family::One => 1,
            Family::Two => 2,
            Family::Three => 3,
            Family::Zero => 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyOneParams {
    pub u: u64,
    pub params: CdsParams,
}

impl FamilyOneParams {
    pub fn new(u: u64) -> Result<Self, FamilyError> {
        if u < 3 || u % 2 == 0 {
            return Err(FamilyError::Invalid(alloc::format!("u = {u} must be odd and >= 3")));
        }
        let u2 = BigUint::from(u) * u;
        let n = (&u2 + 1u32) / 2u32;
        let k = BigUint::from(u - 1) * (u - 1) / 4u32;
        let lambda = BigUint::from(u - 1) * (u - 3) / 8u32;
        Ok(FamilyOneParams {
            u,
            params: CdsParams::new(n, k, lambda).expect("family identity"),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyTwoParams {
    pub i: u64,
    pub a: BigUint,
    pub b: BigUint,
    pub u: BigUint,
    pub params: CdsParams,
}

impl FamilyTwoParams {
    /// From a solution of `A^2 - 3B^2 = 1`.
    pub fn from_pell(s: &PellSolution) -> Result<Self, FamilyError> {
        if s.d != BigUint::from(3u32) || s.form != NormForm::Unit1 {
            return Err(FamilyError::Invalid("needs A^2 - 3B^2 = 1".into()));
        }
        let b2 = &s.b * &s.b;
        let u = &b2 * 2u32 + 1u32;
        let params = CdsParams::new(&u * 2u32, &u - &s.a, &b2 + 1u32 - &s.a).expect("family identity");
        Ok(FamilyTwoParams {
            i: s.index,
            a: s.a.clone(),
            b: s.b.clone(),
            u,
            params,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyThreeParams {
    pub a: u64,
    /// `A / 3` when `3 | A`.
    pub a_prime: Option<u64>,
    pub params: CdsParams,
}

impl FamilyThreeParams {
    pub fn new(a: u64) -> Result<Self, FamilyError> {
        if a < 5 || !matches!(a % 8, 3 | 5) {
            return Err(FamilyError::Residue(alloc::format!("A = {a} needs A = +-3 (mod 8) and A >= 5")));
        }
        let big = BigUint::from(a);
        let n = (&big * a + 3u32) / 4u32;
        let k = BigUint::from(a - 1) * (a - 3) / 8u32;
        let lambda = BigUint::from(a - 3) * (a - 5) / 16u32;
        Ok(FamilyThreeParams {
            a,
            a_prime: (a % 3 == 0).then_some(a / 3),
            params: CdsParams::new(n, k, lambda).expect("family identity"),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyZeroParams {
    pub i: u64,
    pub a: BigUint,
    pub b: BigUint,
    pub u: BigUint,
    pub params: CdsParams,
}

impl FamilyZeroParams {
    /// From a solution of `A^2 - 5B^2 = 4`.
    pub fn from_pell(s: &PellSolution) -> Result<Self, FamilyError> {
        if s.d != BigUint::from(5u32) || s.form != NormForm::Unit4 {
            return Err(FamilyError::Invalid("needs A^2 - 5B^2 = 4".into()));
        }
        let u = &s.b * &s.b + 1u32;
        let params = CdsParams::new(&u * 4u32, &u * 2u32 - &s.a, &u + 1u32 - &s.a).expect("family identity");
        Ok(FamilyZeroParams {
            i: s.index,
            a: s.a.clone(),
            b: s.b.clone(),
            u,
            params,
        })
    }
}
