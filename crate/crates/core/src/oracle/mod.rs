//! Exhaustive search for cyclic difference sets and two-level sequences.
//!
//! The search fixes `0 in D`, extends in increasing order, keeps difference
//! counts incrementally and blocks every residue whose difference would
//! overshoot `lambda`. Only sets whose wrap-around gap is a largest gap are
//! explored; results are expanded back to every translate containing 0.
//! For composite `n` the class counts modulo each proper divisor are
//! enumerated first and used to prune the lift.

mod images;
mod search;
mod two_adic;

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};

use crate::cancel::Cancel;
use crate::certifier::{certify_all, Certificate, CertifyConfig, Verdict};
use crate::seq::{
    cds_to_sequence, feasibility, verify_cds, BinarySequence, CdsParams, CyclicDifferenceSet,
};

pub use images::{quotient_images, ImageSet};

/// Largest `n` accepted by the searches.
pub const MAX_N: u64 = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SearchMode {
    #[default]
    All,
    First,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    pub mode: SearchMode,
    /// Prune with class counts modulo proper divisors of `n`.
    pub contractions: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            mode: SearchMode::All,
            contractions: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchStatus {
    Complete,
    /// Cancelled; the sets found so far are listed but there may be more.
    Partial,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub sets: Vec<CyclicDifferenceSet>,
    pub status: SearchStatus,
    pub nodes: u64,
    /// A modulus with no admissible class-count vector, if one settled the search.
    pub empty_contraction: Option<u64>,
}

impl SearchOutcome {
    pub fn is_complete(&self) -> bool {
        self.status == SearchStatus::Complete
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("n = {0} is above the search limit")]
    TooLarge(BigUint),
}

/// All `(n,k,lambda)` difference sets containing 0, sorted.
///
/// With [`SearchMode::First`] at most one set is returned.
pub fn exhaustive_cds_search<C: Cancel + ?Sized>(
    params: &CdsParams,
    opts: &SearchOptions,
    cancel: &C,
) -> Result<SearchOutcome, OracleError> {
    let (n, k, lambda) = match params.to_u64() {
        Some(t) if t.0 <= MAX_N => (t.0 as usize, t.1 as usize, t.2 as usize),
        _ => return Err(OracleError::TooLarge(params.n().clone())),
    };
    let done = |sets: Vec<Vec<usize>>, empty_contraction: Option<u64>| SearchOutcome {
        sets: sets.iter().map(|s| to_cds(n, s)).collect(),
        status: SearchStatus::Complete,
        nodes: 0,
        empty_contraction,
    };
    match k {
        0 => return Ok(done(vec![Vec::new()], None)),
        1 => return Ok(done(vec![vec![0]], None)),
        _ => {}
    }
    let mut images = Vec::new();
    if opts.contractions {
        for m in (2..n).filter(|m| n % m == 0) {
            match quotient_images(n, k, lambda, m, cancel) {
                None => break,
                Some(img) if img.vectors.is_empty() => return Ok(done(Vec::new(), Some(m as u64))),
                Some(img) => images.push(img),
            }
        }
    }
    let mut engine = search::Engine::new(n, k, lambda, opts.mode == SearchMode::First, images, cancel);
    engine.run();
    let status = if engine.cancelled {
        SearchStatus::Partial
    } else {
        SearchStatus::Complete
    };
    let mut all = BTreeSet::new();
    for rep in &engine.found {
        if opts.mode == SearchMode::First {
            all.insert(rep.clone());
            break;
        }
        for &shift in rep {
            let mut t: Vec<usize> = rep.iter().map(|&x| (x + n - shift) % n).collect();
            t.sort_unstable();
            all.insert(t);
        }
    }
    Ok(SearchOutcome {
        sets: all.iter().map(|s| to_cds(n, s)).collect(),
        status,
        nodes: engine.nodes,
        empty_contraction: None,
    })
}

fn to_cds(n: usize, s: &[usize]) -> CyclicDifferenceSet {
    let e: Vec<u64> = s.iter().map(|&x| x as u64).collect();
    verify_cds(n as u64, &e).expect("search only emits balanced sets")
}

/// Every `k`-subset of `Z_n` that is a difference set, by plain enumeration.
/// Exponential; meant for `n <= 20` or so.
pub fn naive_cds_search(n: u64, k: u64) -> Vec<CyclicDifferenceSet> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<u64> = (0..k).collect();
    loop {
        if let Ok(d) = verify_cds(n, &idx) {
            out.push(d);
        }
        let mut i = k as usize;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] < n - k + i as u64 {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..k as usize {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceOutcome {
    /// Every rotation and negation, sorted by value vector.
    pub sequences: Vec<BinarySequence>,
    pub status: SearchStatus,
}

impl SequenceOutcome {
    pub fn is_complete(&self) -> bool {
        self.status == SearchStatus::Complete
    }
}

/// All length-`n` sequences with off-peak autocorrelation `d`.
pub fn exhaustive_sequence_search<C: Cancel + ?Sized>(
    n: u64,
    d: i64,
    opts: &SearchOptions,
    cancel: &C,
) -> Result<SequenceOutcome, OracleError> {
    let params = match feasibility(&BigUint::from(n), &BigInt::from(d)) {
        Ok(p) => p[0].canonical(),
        Err(_) => {
            return Ok(SequenceOutcome {
                sequences: Vec::new(),
                status: SearchStatus::Complete,
            })
        }
    };
    let found = exhaustive_cds_search(&params, opts, cancel)?;
    let mut seen = BTreeSet::new();
    for set in &found.sets {
        let seq = cds_to_sequence(set);
        for t in 0..n as usize {
            let s = seq.shifted(t);
            seen.insert(s.negated().values().to_vec());
            seen.insert(s.values().to_vec());
        }
    }
    Ok(SequenceOutcome {
        sequences: seen
            .into_iter()
            .map(|v| BinarySequence::new(v).expect("nonempty"))
            .collect(),
        status: found.status,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossCheckRow {
    pub params: CdsParams,
    /// The battery's verdicts, one per rule that ran.
    pub certificates: Vec<Certificate>,
    pub oracle: SearchOutcome,
}

impl CrossCheckRow {
    pub fn certified_nonexistent(&self) -> bool {
        self.certificates.iter().any(|c| c.verdict == Verdict::Nonexistent)
    }

    pub fn oracle_found(&self) -> bool {
        !self.oracle.sets.is_empty()
    }

    pub fn is_violation(&self) -> bool {
        self.certified_nonexistent() && self.oracle_found()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CrossCheckReport {
    pub rows: Vec<CrossCheckRow>,
}

impl CrossCheckReport {
    pub fn violations(&self) -> impl Iterator<Item = &CrossCheckRow> {
        self.rows.iter().filter(|r| r.is_violation())
    }

    /// Rows the battery left open where the oracle found nothing.
    pub fn open_but_empty(&self) -> impl Iterator<Item = &CrossCheckRow> {
        self.rows
            .iter()
            .filter(|r| !r.certified_nonexistent() && r.oracle.is_complete() && !r.oracle_found())
    }

    pub fn complete(&self) -> bool {
        self.rows.iter().all(|r| r.oracle.is_complete())
    }
}

/// Every `(n,k,lambda)` with `n <= n_max`, `k <= n/2` and `k(k-1) = (n-1) lambda`.
pub fn feasible_params(n_max: u64) -> Vec<CdsParams> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        for k in 0..=n / 2 {
            let num = k * k.saturating_sub(1);
            let lambda = if n == 1 {
                0
            } else if num % (n - 1) == 0 {
                num / (n - 1)
            } else {
                continue;
            };
            out.push(CdsParams::from_u64(n, k, lambda).expect("counting identity holds"));
        }
    }
    out
}

/// Runs the whole battery and the oracle on [`feasible_params`]`(n_max)`.
pub fn cross_check<C: Cancel + ?Sized>(n_max: u64, cfg: &CertifyConfig, cancel: &C) -> CrossCheckReport {
    let mut report = CrossCheckReport::default();
    for params in feasible_params(n_max) {
        let oracle = exhaustive_cds_search(&params, &SearchOptions::default(), cancel)
            .expect("n_max is small");
        report.rows.push(CrossCheckRow {
            certificates: certify_all(&params, cfg),
            params,
            oracle,
        });
    }
    report
}
