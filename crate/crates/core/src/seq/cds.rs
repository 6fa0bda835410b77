use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::params::CdsParams;
use super::sequence::{autocorrelation, BinarySequence};

/// Ways a residue set fails to be a cyclic difference set.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CdsViolation {
    #[error("modulus must be positive")]
    ZeroModulus,
    #[error("element {element} is not below n = {n}")]
    OutOfRange { element: u64, n: u64 },
    #[error("element {0} is repeated")]
    Duplicate(u64),
    #[error("difference {residue} occurs {count} times but difference 1 occurs {expected} times")]
    Unbalanced {
        residue: u64,
        count: u64,
        expected: u64,
    },
}

/// A verified difference set: sorted residues and their parameters.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CyclicDifferenceSet {
    params: CdsParams,
    elements: Vec<u64>,
}

impl CyclicDifferenceSet {
    pub fn params(&self) -> &CdsParams {
        &self.params
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn n(&self) -> u64 {
        self.params.to_u64().expect("verified sets are small").0
    }

    /// Complement in `Z_n`, itself a difference set.
    pub fn complement(&self) -> CyclicDifferenceSet {
        let n = self.n();
        let mut inside = vec![false; n as usize];
        for &e in &self.elements {
            inside[e as usize] = true;
        }
        CyclicDifferenceSet {
            params: self.params.complement(),
            elements: (0..n).filter(|&i| !inside[i as usize]).collect(),
        }
    }
}

impl fmt::Display for CyclicDifferenceSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.elements.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

/// Count every ordered difference `x - y (mod n)` and check they are balanced.
pub fn verify_cds(n: u64, elements: &[u64]) -> Result<CyclicDifferenceSet, CdsViolation> {
    if n == 0 {
        return Err(CdsViolation::ZeroModulus);
    }
    let mut sorted = elements.to_vec();
    sorted.sort_unstable();
    for w in sorted.windows(2) {
        if w[0] == w[1] {
            return Err(CdsViolation::Duplicate(w[0]));
        }
    }
    if let Some(&element) = sorted.last().filter(|&&e| e >= n) {
        return Err(CdsViolation::OutOfRange { element, n });
    }
    let mut counts = vec![0u64; n as usize];
    for &x in &sorted {
        for &y in &sorted {
            if x != y {
                counts[((x + n - y) % n) as usize] += 1;
            }
        }
    }
    let k = sorted.len() as u64;
    let lambda = if n == 1 { 0 } else { counts[1] };
    for (r, &c) in counts.iter().enumerate().skip(1) {
        if c != lambda {
            return Err(CdsViolation::Unbalanced {
                residue: r as u64,
                count: c,
                expected: lambda,
            });
        }
    }
    let params = CdsParams::from_u64(n, k, lambda).expect("balanced differences satisfy the counting identity");
    Ok(CyclicDifferenceSet {
        params,
        elements: sorted,
    })
}

/// The `+1` positions of a sequence that failed the difference-set check.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("support is not a difference set: {violation}")]
pub struct NotADifferenceSet {
    pub support: Vec<u64>,
    pub violation: CdsViolation,
}

/// Positions of the `+1` entries, verified as a difference set.
pub fn sequence_to_cds(seq: &BinarySequence) -> Result<CyclicDifferenceSet, NotADifferenceSet> {
    let support: Vec<u64> = seq
        .values()
        .iter()
        .enumerate()
        .filter(|(_, &v)| v > 0)
        .map(|(i, _)| i as u64)
        .collect();
    let n = seq.n() as u64;
    // a two-level profile is exactly what makes the support balanced
    debug_assert_eq!(
        verify_cds(n, &support).is_ok(),
        n == 1 || autocorrelation(seq).is_two_level()
    );
    verify_cds(n, &support).map_err(|violation| NotADifferenceSet { support, violation })
}

pub fn cds_to_sequence(d: &CyclicDifferenceSet) -> BinarySequence {
    support_to_sequence(d.n() as usize, d.elements())
}

/// `a_j = +1` iff `j` is in `support`. Elements must lie below `n`.
pub fn support_to_sequence(n: usize, support: &[u64]) -> BinarySequence {
    let mut values = vec![-1i8; n];
    for &e in support {
        values[e as usize] = 1;
    }
    BinarySequence::new(values).expect("n >= 1")
}
