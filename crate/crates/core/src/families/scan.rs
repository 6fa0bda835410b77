use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::cancel::Cancel;
use crate::certifier::{certify_params, size_bound_test, Certificate, CertifyConfig, Rule};
use crate::ntkernel::padic_valuation;
use crate::oracle::{exhaustive_cds_search, SearchOptions};
use crate::pell::{first_solutions, NormForm};
use crate::seq::CdsParams;

use super::checks::{in_t43ne_classes, t41ne2_search, t4137_check, t43ne_check, t43nee_search};
use super::classes::{t43_class_generators, RChoice, T43Kind};
use super::{Family, FamilyOneParams, FamilyThreeParams, FamilyTwoParams, FamilyZeroParams};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanConfig {
    pub certify: CertifyConfig,
    /// Family-3 rows with `k` up to this go to the exhaustive search first.
    pub oracle_k_max: u64,
    pub l_max: u32,
    pub c_max: u64,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            certify: CertifyConfig::default(),
            oracle_k_max: 50,
            l_max: 6,
            c_max: 10,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyRow {
    pub family: Family,
    /// `u` for family 1, `A` for family 3, the Pell index otherwise.
    pub index: u64,
    pub a: Option<BigUint>,
    pub b: Option<BigUint>,
    pub params: CdsParams,
    pub certificate: Certificate,
}

/// One row per family member up to `bound` (on `u`, `A` or the Pell index),
/// in index order. `new_cancel` is called once per exhaustive search.
pub fn family_scan<F, C>(family: Family, bound: u64, cfg: &ScanConfig, new_cancel: F) -> Vec<FamilyRow>
where
    F: Fn() -> C,
    C: Cancel,
{
    let budget = &cfg.certify.budget;
    let row = |index: u64, a: Option<BigUint>, b: Option<BigUint>, params: CdsParams, certificate| FamilyRow {
        family,
        index,
        a,
        b,
        params,
        certificate,
    };
    let mut out = Vec::new();
    match family {
        Family::One => {
            for u in (3..=bound).step_by(2) {
                let f = FamilyOneParams::new(u).expect("odd u >= 3");
                let mut cert = None;
                if matches!(u % 10, 3 | 7) {
                    cert = t4137_check(u, budget).ok().filter(|c| c.is_nonexistent());
                    if cert.is_none() {
                        cert = t41ne2_search(u, cfg.l_max, cfg.c_max, budget);
                    }
                }
                let cert = cert.unwrap_or_else(|| certify_params(&f.params, &cfg.certify));
                out.push(row(u, None, None, f.params, cert));
            }
        }
        Family::Two => {
            for s in first_solutions(3, NormForm::Unit1, bound).expect("d = 3 is valid") {
                let f = FamilyTwoParams::from_pell(&s).expect("d = 3");
                let cert = certify_params(&f.params, &cfg.certify);
                out.push(row(f.i, Some(f.a), Some(f.b), f.params, cert));
            }
        }
        Family::Three => {
            for a in (5..=bound).filter(|a| matches!(a % 8, 3 | 5)) {
                let f = FamilyThreeParams::new(a).expect("A = +-3 mod 8");
                let cert = family_three(&f, cfg, &new_cancel);
                out.push(row(a, Some(a.into()), None, f.params, cert));
            }
        }
        Family::Zero => {
            for s in first_solutions(5, NormForm::Unit4, bound).expect("d = 5 is valid") {
                let f = FamilyZeroParams::from_pell(&s).expect("d = 5");
                let cert = if f.i >= 3 {
                    size_bound_test(&f.params, &BigUint::from(4u32), &f.b, budget)
                        .ok()
                        .filter(|c| c.is_nonexistent())
                } else {
                    None
                };
                let cert = cert.unwrap_or_else(|| certify_params(&f.params, &cfg.certify));
                out.push(row(f.i, Some(f.a), Some(f.b), f.params, cert));
            }
        }
    }
    out
}

fn family_three<F, C>(f: &FamilyThreeParams, cfg: &ScanConfig, new_cancel: &F) -> Certificate
where
    F: Fn() -> C,
    C: Cancel,
{
    let budget = &cfg.certify.budget;
    let params = &f.params;
    let mut note: Option<String> = None;
    if params.k().to_u64().is_some_and(|k| k <= cfg.oracle_k_max) {
        let cancel = new_cancel();
        if let Ok(o) = exhaustive_cds_search(params, &SearchOptions::default(), &cancel) {
            if o.is_complete() {
                return match o.sets.first() {
                    Some(set) => Certificate::exists(params, Some(Rule::Oracle), set.elements().to_vec()),
                    None => {
                        let how = match o.empty_contraction {
                            Some(m) => format!("exhaustive search: no admissible class counts mod {m}"),
                            None => format!("exhaustive search: {} nodes", o.nodes),
                        };
                        Certificate::nonexistent(params, Rule::Oracle, Vec::new()).with_note(how)
                    }
                };
            }
            note = Some(format!("exhaustive search stopped after {} nodes", o.nodes));
        }
    }
    let with_note = |c: Certificate| match &note {
        Some(n) => c.with_note(n.clone()),
        None => c,
    };
    if in_t43ne_classes(f.a) {
        if let Ok(c) = t43ne_check(f.a, budget) {
            if c.is_nonexistent() {
                return with_note(c);
            }
        }
    }
    if let Some(c) = t43nee_search(f.a, budget) {
        let shape = class_shape(f.a, &c);
        return with_note(c.with_note(shape));
    }
    if let Ok(c) = t43ne_check(f.a, budget) {
        if c.is_nonexistent() {
            return with_note(c);
        }
    }
    with_note(certify_params(params, &cfg.certify))
}

/// Writes `A` as `+-3 + P r` for the witness prime and confirms the class
/// generator lists it.
fn class_shape(a: u64, c: &Certificate) -> String {
    use crate::certifier::WitnessKey;
    let e = c.witness(WitnessKey::E).and_then(|e| e.to_u64()).expect("family certificate has e");
    let p = c.witness(WitnessKey::P).and_then(|p| p.to_u64()).expect("family certificate has p");
    let v = |x: u64| padic_valuation(&x.into(), &p.into()).expect("nonzero");
    // the side of A -+ 3 carrying the odd valuation
    let (sign, base, vp) = match p {
        3 => {
            let ap = a / 3;
            if v(ap - 1) % 2 == 1 {
                ("+", a - 3, v(ap - 1) + 1)
            } else {
                ("-", a + 3, v(ap + 1) + 1)
            }
        }
        _ if v(a - 3) >= v(a + 3) => ("+", a - 3, v(a - 3)),
        _ => ("-", a + 3, v(a + 3)),
    };
    let kind = match p {
        2 => T43Kind::PowerOfTwo { h: vp / 2 },
        3 => T43Kind::PowerOfThree { l: (vp - 2) / 2 },
        _ => T43Kind::OddPrime { p, l: (vp - 1) / 2 },
    };
    let r = base / p.pow(vp);
    let listed = t43_class_generators(kind, Some(e), &RChoice::Value(r)).is_ok_and(|g| g.contains(a));
    debug_assert!(listed, "A = {a} missing from its class generator");
    format!("A = {p}^{vp} * {r} {sign} 3")
}
