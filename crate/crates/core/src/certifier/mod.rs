//! Nonexistence tests for cyclic difference sets and the certificates they emit.
//!
//! Every `Nonexistent` certificate lists the numbers needed to replay the
//! argument; [`recheck`] replays them without going through this module's
//! search code.

mod brc;
mod certificate;
mod known;
pub mod recheck;
mod rules;

use alloc::format;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};

pub use brc::legendre_normal_form;
pub use certificate::{Certificate, FamilyRule, Rule, UnknownName, Verdict, WitnessKey};
pub use known::{known_witness, KNOWN_SEQUENCES};
pub use rules::{
    brc_even, brc_odd, dsc_test, mann_test, size_bound_search, size_bound_test, turyn_search,
    turyn_test, CertError,
};

use crate::ntkernel::Budget;
use crate::seq::{feasibility, CdsParams, Infeasible};

/// Effort settings shared by the battery.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertifyConfig {
    pub budget: Budget,
    /// Divisor lists longer than this are truncated (smallest first).
    pub max_divisors: usize,
}

impl Default for CertifyConfig {
    fn default() -> Self {
        CertifyConfig {
            budget: Budget::default(),
            max_divisors: 100_000,
        }
    }
}

/// Certify the smaller-`k` parameter set belonging to `(n, d)`.
pub fn certify(n: &BigUint, d: &BigInt, cfg: &CertifyConfig) -> Result<Certificate, Infeasible> {
    let params = feasibility(n, d)?;
    Ok(certify_params(&params[0].canonical(), cfg))
}

/// Trivial sets, then the known witnesses, then DSC, BRC, Mann, Turyn and the
/// size bound. The first nonexistence result wins.
pub fn certify_params(params: &CdsParams, cfg: &CertifyConfig) -> Certificate {
    if let Some(c) = existence(params) {
        return c;
    }
    let mut notes = Vec::new();
    for c in battery(params, cfg, true) {
        if c.verdict == Verdict::Nonexistent {
            return c;
        }
        if let Some(r) = c.reason {
            if !notes.contains(&r) {
                notes.push(r);
            }
        }
    }
    Certificate::open(params, format!("no test applies: {}", notes.join("; ")))
}

/// Every rule's certificate, in battery order, for reporting.
pub fn certify_all(params: &CdsParams, cfg: &CertifyConfig) -> Vec<Certificate> {
    let mut out = Vec::new();
    if let Some(c) = existence(params) {
        out.push(c);
    }
    out.extend(battery(params, cfg, false));
    out
}

fn existence(params: &CdsParams) -> Option<Certificate> {
    if params.is_trivial() {
        let (n, k, _) = params.to_u64()?;
        let set: Vec<u64> = match k {
            0 => Vec::new(),
            1 => alloc::vec![0],
            _ => ((n - k)..n).collect(),
        };
        return Some(Certificate::exists(params, None, set));
    }
    known_witness(params).map(|set| Certificate::exists(params, None, set))
}

fn battery(params: &CdsParams, cfg: &CertifyConfig, stop_early: bool) -> Vec<Certificate> {
    let mut out = Vec::new();
    let n4 = (params.n() % 4u32).iter_u32_digits().next().unwrap_or(0);
    let push = |c: Certificate, out: &mut Vec<Certificate>| {
        let hit = c.verdict == Verdict::Nonexistent;
        out.push(c);
        hit && stop_early
    };
    if n4 == 1 || n4 == 2 {
        if let Ok(c) = dsc_test(params, &cfg.budget) {
            if push(c, &mut out) {
                return out;
            }
        }
    }
    let brc = if n4 % 2 == 0 {
        brc_even(params)
    } else {
        brc_odd(params, &cfg.budget)
    };
    if let Ok(c) = brc {
        if push(c, &mut out) {
            return out;
        }
    }
    if push(mann_test(params, cfg), &mut out) {
        return out;
    }
    if push(turyn_search(params, cfg), &mut out) {
        return out;
    }
    push(size_bound_search(params, cfg), &mut out);
    out
}
