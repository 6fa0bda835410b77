//! Acceptance run: one PASS/FAIL line per criterion, detail lines indented
//! below it. Exits non-zero when any criterion fails.

use std::cell::RefCell;
use std::collections::BTreeSet;
use std::process::ExitCode;
use std::rc::Rc;
use std::time::{Duration, Instant};

use cds_core::certifier::recheck::{recheck, Checked};
use cds_core::certifier::{certify, CertifyConfig, FamilyRule, KNOWN_SEQUENCES};
use cds_core::families::{
    family_scan, t41ne_classes, t43_class_generators, t43nee_check, t4137_check, AValues, Branch, Family, RChoice,
    ScanConfig, T41Variant, T43Kind,
};
use cds_core::ntkernel::{is_semiprimitive, legendre_symbol, NtError};
use cds_core::oracle::{cross_check, exhaustive_sequence_search, SearchOptions};
use cds_core::pell::{enumerate_solutions, first_solutions};
use cds_core::seq::{autocorrelation, cds_to_sequence, feasibility, sequence_to_cds, verify_cds};
use cds_core::{BinarySequence, Certificate, NeverCancel, NormForm, Rule, Verdict, WitnessKey};
use cds_tool::deadline;
use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const TABLE1_LIMIT: Duration = Duration::from_secs(5);
const TABLE2_ORACLE_CAP: Duration = Duration::from_secs(600);
const TABLE2_FIRST_ORACLE_LIMIT: Duration = Duration::from_secs(300);
const CLASSES_LIMIT: Duration = Duration::from_secs(60);
const FAMILY0_LIMIT: Duration = Duration::from_secs(5);
const SOUNDNESS_LIMIT: Duration = Duration::from_secs(600);

struct Outcome {
    pass: bool,
    title: &'static str,
    details: Vec<String>,
}

impl Outcome {
    fn new(title: &'static str) -> Self {
        Outcome {
            pass: true,
            title,
            details: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.pass = false;
            self.details.push(format!("fail: {}", what.into()));
        }
    }

    fn note(&mut self, what: impl Into<String>) {
        self.details.push(what.into());
    }
}

fn u(x: &BigUint) -> u64 {
    x.to_u64().expect("fits in u64")
}

fn triple(c: &Certificate) -> (u64, u64, u64) {
    c.params.to_u64().expect("fits in u64")
}

fn wit(c: &Certificate, k: WitnessKey) -> Option<u64> {
    c.witness(k).and_then(|x| x.to_u64())
}

fn rule(c: &Certificate) -> &'static str {
    c.rule.map_or("-", |r| r.as_str())
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn pow_mod(b: u64, mut e: u64, m: u64) -> u64 {
    let m = m as u128;
    let mut r = 1u128 % m;
    let mut x = b as u128 % m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * x % m;
        }
        x = x * x % m;
        e >>= 1;
    }
    r as u64
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

fn val(mut x: u64, p: u64) -> u32 {
    let mut v = 0;
    while x % p == 0 {
        x /= p;
        v += 1;
    }
    v
}

/// Least `j >= 1` with `a^j = -1 (mod b)`, by walking the powers.
fn brute_semiprimitive(a: u64, b: u64) -> Option<u64> {
    let mut x = a % b;
    for j in 1..=b {
        if x == (b - 1) % b {
            return Some(j);
        }
        x = x * a % b;
    }
    None
}

/// Mann with an explicit `(e, p)`, in plain u64 arithmetic.
fn mann_witness_holds(n: u64, order: u64, e: u64, p: u64) -> bool {
    n % e == 0 && is_prime(p) && val(order, p) % 2 == 1 && brute_semiprimitive(p, e).is_some()
}

fn criterion_1(nonexistent: &mut Vec<Certificate>) -> Outcome {
    let mut o = Outcome::new("family-2 rows i = 1..7 and verdicts");
    // (A, B, n, k, lambda, k - lambda)
    let table: [(u64, u64, u64, u64, u64, u64); 7] = [
        (2, 1, 6, 1, 0, 1),
        (7, 4, 66, 26, 10, 16),
        (26, 15, 902, 425, 200, 225),
        (97, 56, 12546, 6176, 3040, 3136),
        (362, 209, 174726, 87001, 43320, 43681),
        (1351, 780, 2433602, 1215450, 607050, 608400),
        (5042, 2911, 33895686, 16942801, 8468880, 8473921),
    ];
    let start = Instant::now();
    let rows = family_scan(Family::Two, 7, &ScanConfig::default(), || NeverCancel);
    let took = start.elapsed();
    o.check(rows.len() == 7, format!("{} rows", rows.len()));
    for (row, want) in rows.iter().zip(table) {
        let (n, k, l) = triple(&row.certificate);
        let got = (u(row.a.as_ref().unwrap()), u(row.b.as_ref().unwrap()), n, k, l, k - l);
        o.check(got == want, format!("i = {}: {got:?} != {want:?}", row.index));
        let c = &row.certificate;
        o.note(format!("i = {}: {} {}", row.index, c.verdict.as_str(), rule(c)));
        if c.is_nonexistent() {
            nonexistent.push(c.clone());
        }
        match row.index {
            1 => o.check(c.verdict == Verdict::Exists, "i = 1 exists"),
            4 | 5 => o.check(c.rule == Some(Rule::Dsc), format!("i = {} via DSC", row.index)),
            6 => o.check(
                c.rule == Some(Rule::Turyn)
                    && wit(c, WitnessKey::E) == Some(1216801)
                    && wit(c, WitnessKey::C) == Some(3)
                    && wit(c, WitnessKey::SemiprimitivityExponent) == Some(20235),
                "i = 6 via TURYN e=1216801 c=3 exponent 20235",
            ),
            7 => o.check(
                c.verdict == Verdict::Open,
                format!(
                    "i = 7 open, got {} {} c={:?} e={:?} (composite c, number-level semiprimitivity)",
                    c.verdict.as_str(),
                    rule(c),
                    wit(c, WitnessKey::C),
                    wit(c, WitnessKey::E)
                ),
            ),
            _ => {}
        }
    }
    o.check(took < TABLE1_LIMIT, format!("runtime {took:?} >= {TABLE1_LIMIT:?}"));
    o.note(format!("runtime {took:.2?}"));
    o
}

fn criterion_2(nonexistent: &mut Vec<Certificate>) -> Outcome {
    let mut o = Outcome::new("family-3 rows 5 <= A <= 99, verdicts and routes");
    // (A, n, k, lambda, k - lambda)
    let table: [(u64, u64, u64, u64, u64); 24] = [
        (5, 7, 1, 0, 1),
        (11, 31, 10, 3, 7),
        (13, 43, 15, 5, 10),
        (19, 91, 36, 14, 22),
        (21, 111, 45, 18, 27),
        (27, 183, 78, 33, 45),
        (29, 211, 91, 39, 52),
        (35, 307, 136, 60, 76),
        (37, 343, 153, 68, 85),
        (43, 463, 210, 95, 115),
        (45, 507, 231, 105, 126),
        (51, 651, 300, 138, 162),
        (53, 703, 325, 150, 175),
        (59, 871, 406, 189, 217),
        (61, 931, 435, 203, 232),
        (67, 1123, 528, 248, 280),
        (69, 1191, 561, 264, 297),
        (75, 1407, 666, 315, 351),
        (77, 1483, 703, 333, 370),
        (83, 1723, 820, 390, 430),
        (85, 1807, 861, 410, 451),
        (91, 2071, 990, 473, 517),
        (93, 2163, 1035, 495, 540),
        (99, 2451, 1176, 564, 612),
    ];
    let oracle_rows = [(31u64, 10u64, 3u64), (43, 15, 5), (91, 36, 14), (111, 45, 18)];
    let t43ne = [27u64, 45, 51, 69, 99];
    let t43nee = [37u64, 59, 61, 67, 75, 77, 83, 85, 93];
    let mann = [(29u64, 211u64, 13u64), (43, 463, 5), (91, 109, 11)];

    // start of each exhaustive search; it ends before the next one starts
    let starts: Rc<RefCell<Vec<Instant>>> = Rc::default();
    let factory = {
        let starts = Rc::clone(&starts);
        move || {
            starts.borrow_mut().push(Instant::now());
            deadline(Some(TABLE2_ORACLE_CAP))
        }
    };
    let start = Instant::now();
    let rows = family_scan(Family::Three, 99, &ScanConfig::default(), factory);
    let took = start.elapsed();
    let end = Instant::now();
    let starts = starts.borrow();
    // upper bounds on each search's duration
    let spans: Vec<Duration> = starts
        .iter()
        .enumerate()
        .map(|(i, s)| starts.get(i + 1).copied().unwrap_or(end).duration_since(*s))
        .collect();
    o.check(rows.len() == table.len(), format!("{} rows", rows.len()));
    let mut searched = 0;
    for (row, want) in rows.iter().zip(table) {
        let c = &row.certificate;
        let (n, k, l) = triple(c);
        let a = row.index;
        o.check((a, n, k, l, k - l) == want, format!("A = {a}: {:?} != {want:?}", (a, n, k, l, k - l)));
        if c.is_nonexistent() {
            nonexistent.push(c.clone());
        }
        let mut line = format!("A = {a} ({n},{k},{l}): {} {}", c.verdict.as_str(), rule(c));
        if u(c.params.k()) <= ScanConfig::default().oracle_k_max {
            if let Some(t) = spans.get(searched) {
                line.push_str(&format!(", search <= {t:.2?}"));
            }
            searched += 1;
        }
        match (c.witness(WitnessKey::E), c.witness(WitnessKey::P), c.witness(WitnessKey::C)) {
            (Some(e), Some(p), _) => line.push_str(&format!(", e={e} p={p}")),
            (Some(e), None, Some(cc)) => line.push_str(&format!(", e={e} c={cc}")),
            _ => {}
        }
        o.note(line);

        if a == 5 {
            o.check(c.verdict == Verdict::Exists && (n, k, l) == (7, 1, 0), "A = 5 exists as (7,1,0)");
        } else if a == 35 || a == 53 {
            o.check(c.verdict == Verdict::Open, format!("A = {a} open, got {} {}", c.verdict.as_str(), rule(c)));
        } else {
            o.check(c.is_nonexistent(), format!("A = {a} nonexistent"));
        }
        if oracle_rows.contains(&(n, k, l)) {
            o.check(c.rule == Some(Rule::Oracle), format!("({n},{k},{l}) settled by the oracle"));
        }
        if t43ne.contains(&a) {
            o.check(c.rule == Some(Rule::Family(FamilyRule::T43Ne)), format!("A = {a} via T43NE"));
        }
        if t43nee.contains(&a) {
            o.check(c.rule == Some(Rule::Family(FamilyRule::T43Nee)), format!("A = {a} via T43NEE"));
        }
        if let Some(&(_, e, p)) = mann.iter().find(|m| m.0 == a) {
            let holds = mann_witness_holds(n, k - l, e, p);
            let used = wit(c, WitnessKey::E) == Some(e) && wit(c, WitnessKey::P) == Some(p);
            o.check(
                holds && used && c.is_nonexistent(),
                format!(
                    "A = {a}: Mann witness (e,p) = ({e},{p}) {}; certificate uses {} e={:?} p={:?}",
                    if holds { "holds" } else { "does not hold" },
                    rule(c),
                    wit(c, WitnessKey::E),
                    wit(c, WitnessKey::P)
                ),
            );
        }
    }
    o.check(searched == spans.len(), format!("{searched} oracle rows, {} searches", spans.len()));
    for (i, t) in spans.iter().enumerate() {
        o.check(*t < TABLE2_ORACLE_CAP, format!("search {i} took {t:?}"));
    }
    if let Some(t) = spans.get(1) {
        o.check(*t < TABLE2_FIRST_ORACLE_LIMIT, format!("(31,10,3) took {t:?}"));
    }
    o.note(format!("runtime {took:.2?}"));
    o
}

fn criterion_3(nonexistent: &mut Vec<Certificate>) -> Outcome {
    let mut o = Outcome::new("d = 1 example classes for u <= 1000 certify nonexistent");
    let classes: [(u64, &[u64]); 7] = [
        (80, &[7, 23]),
        (320, &[33, 97]),
        (90, &[13, 23, 43, 83]),
        (20, &[7]),
        (80, &[23]),
        (180, &[55]),
        (52, &[21]),
    ];
    let in_class = |u: u64| {
        classes
            .iter()
            .any(|(m, rs)| rs.iter().any(|r| u % m == *r || u % m == m - r))
    };
    let cfg = CertifyConfig::default();
    let start = Instant::now();
    let mut count = 0;
    for u in (3..=1000u64).step_by(2).filter(|&u| in_class(u)) {
        let n = (u * u + 1) / 2;
        let c = certify(&n.into(), &1.into(), &cfg).expect("(u^2+1)/2 is feasible for d = 1");
        o.check(c.is_nonexistent(), format!("u = {u}: {} ({:?})", c.verdict.as_str(), c.reason));
        if c.is_nonexistent() {
            nonexistent.push(c);
        }
        count += 1;
    }
    let took = start.elapsed();
    // 18r + 1 and 18r - 1 with r = 3, 7 (mod 10) give 53 and 127 (mod 180)
    let derived: Vec<u64> = (3..=1000u64)
        .filter(|u| matches!(u % 180, 53 | 127))
        .filter(|&u| {
            let n = (u * u + 1) / 2;
            !certify(&n.into(), &1.into(), &cfg).is_ok_and(|c| c.is_nonexistent())
        })
        .collect();
    o.note(format!("u = 53, 127 (mod 180), u <= 1000, not certified: {derived:?}"));
    o.check(took < CLASSES_LIMIT, format!("runtime {took:?} >= {CLASSES_LIMIT:?}"));
    o.note(format!("{count} values of u, runtime {took:.2?}"));
    o
}

fn criterion_4() -> Outcome {
    let mut o = Outcome::new("known sequences and the (40,13,4) set verify");
    let want: [(u64, i64); 6] = [(2, -2), (5, 1), (6, 2), (7, 3), (8, 4), (13, 1)];
    for (n, d) in want {
        let Some((_, _, s)) = KNOWN_SEQUENCES.iter().find(|(m, _, _)| *m == n) else {
            o.check(false, format!("no stored sequence for n = {n}"));
            continue;
        };
        let seq: BinarySequence = s.parse().expect("stored sequence parses");
        let got = autocorrelation(&seq).d;
        o.check(seq.n() as u64 == n && got == Some(d), format!("n = {n}: d = {got:?}, want {d}"));
    }
    let set_40 = [1u64, 2, 3, 5, 6, 9, 14, 15, 18, 20, 25, 27, 35];
    match verify_cds(40, &set_40) {
        Ok(s) => o.check(s.params().to_u64() == Some((40, 13, 4)), "(40,13,4) parameters"),
        Err(e) => o.check(false, format!("(40,13,4) rejected: {e}")),
    }
    let c = certify(&40u32.into(), &4.into(), &CertifyConfig::default()).expect("feasible");
    o.check(c.verdict == Verdict::Exists, format!("certify(40, 4) = {}", c.verdict.as_str()));
    o
}

fn criterion_5(nonexistent: &mut Vec<Certificate>) -> Outcome {
    let mut o = Outcome::new("family 0, 3 <= i <= 12, nonexistent via SIZE_BOUND h = 4, m = B_i");
    let start = Instant::now();
    let rows = family_scan(Family::Zero, 12, &ScanConfig::default(), || NeverCancel);
    let took = start.elapsed();
    for row in rows.iter().filter(|r| r.index >= 3) {
        let c = &row.certificate;
        let b = u(row.b.as_ref().unwrap());
        o.check(
            c.rule == Some(Rule::SizeBound)
                && wit(c, WitnessKey::H) == Some(4)
                && wit(c, WitnessKey::M) == Some(b),
            format!("i = {}: {} {} h={:?} m={:?}", row.index, c.verdict.as_str(), rule(c), wit(c, WitnessKey::H), wit(c, WitnessKey::M)),
        );
        if c.is_nonexistent() {
            nonexistent.push(c.clone());
        }
    }
    o.check(rows.iter().filter(|r| r.index >= 3).count() == 10, "ten rows with i >= 3");
    if let Some(r) = rows.iter().find(|r| r.index == 3) {
        let t = triple(&r.certificate);
        o.check(t == (260, 112, 48) && u(r.b.as_ref().unwrap()) == 8, format!("i = 3: {t:?}"));
    }
    o.check(took < FAMILY0_LIMIT, format!("runtime {took:?} >= {FAMILY0_LIMIT:?}"));
    o.note(format!("runtime {took:.2?}"));
    o
}

fn criterion_6() -> Outcome {
    let mut o = Outcome::new("oracle/certifier soundness: cross_check(30) and sequence search n <= 20");
    let start = Instant::now();
    let report = cross_check(30, &CertifyConfig::default(), &NeverCancel);
    o.check(report.complete(), "every cross-check search completed");
    for r in report.violations() {
        o.check(false, format!("{:?} certified nonexistent but found", r.params.to_u64()));
    }
    o.note(format!("cross_check(30): {} parameter sets", report.rows.len()));
    let mut pairs = 0;
    for n in 1..=20u64 {
        for d in -4..=4i64 {
            let feasible = feasibility(&n.into(), &d.into()).is_ok();
            let out = exhaustive_sequence_search(n, d, &SearchOptions::default(), &NeverCancel).expect("small n");
            o.check(out.is_complete(), format!("({n},{d}) search incomplete"));
            if !feasible {
                o.check(out.sequences.is_empty(), format!("({n},{d}) infeasible but sequences found"));
            }
            for s in &out.sequences {
                let p = autocorrelation(s);
                o.check(s.n() as u64 == n && (n == 1 || p.d == Some(d)), format!("({n},{d}): found sequence with {:?}", p.d));
            }
            if let Ok(c) = certify(&n.into(), &d.into(), &CertifyConfig::default()) {
                o.check(
                    !(c.is_nonexistent() && !out.sequences.is_empty()),
                    format!("({n},{d}) certified nonexistent but sequences found"),
                );
                o.check(
                    !(c.verdict == Verdict::Exists && out.sequences.is_empty()),
                    format!("({n},{d}) certified to exist but search is empty"),
                );
            }
            pairs += 1;
        }
    }
    let took = start.elapsed();
    o.check(took < SOUNDNESS_LIMIT, format!("runtime {took:?} >= {SOUNDNESS_LIMIT:?}"));
    o.note(format!("{pairs} (n,d) pairs, runtime {took:.2?}"));
    o
}

fn criterion_7() -> Outcome {
    let mut o = Outcome::new("property suites");
    let mut rng = StdRng::seed_from_u64(0xcd5);

    // congruence and symmetry of C(t); sequence -> set -> sequence
    for _ in 0..10_000 {
        let n = rng.gen_range(1..=64usize);
        let v: Vec<i8> = (0..n).map(|_| if rng.gen_bool(0.5) { 1 } else { -1 }).collect();
        let s = BinarySequence::new(v).unwrap();
        let c = autocorrelation(&s).c;
        let ni = n as i64;
        if !(0..n).all(|t| (c[t] - ni).rem_euclid(4) == 0 && c[t] == c[(n - t) % n]) {
            o.check(false, format!("C(t) properties fail for {s:?}"));
            break;
        }
        if let Ok(d) = sequence_to_cds(&s) {
            o.check(cds_to_sequence(&d) == s, format!("roundtrip fails for {s:?}"));
        }
    }
    for (n, _, s) in KNOWN_SEQUENCES {
        let s: BinarySequence = s.parse().unwrap();
        match sequence_to_cds(&s) {
            Ok(d) => o.check(cds_to_sequence(&d) == s, format!("roundtrip fails for n = {n}")),
            Err(_) => o.check(n <= 2, format!("stored n = {n} sequence is not a difference set")),
        }
    }

    // Pell norm and d = 3 completeness
    for (d, form) in [(3u64, NormForm::Unit1), (2, NormForm::Unit1), (5, NormForm::Unit4), (13, NormForm::Unit4)] {
        let sols = first_solutions(d, form, 50).unwrap();
        o.check(sols.len() == 50 && sols.iter().all(|s| s.satisfies_norm()), format!("Pell norm d = {d}"));
    }
    let want: Vec<u64> = (1..=10_000u64)
        .filter(|b| {
            let x = 3 * b * b + 1;
            let r = (x as f64).sqrt() as u64;
            (r.saturating_sub(1)..=r + 1).any(|a| a * a == x)
        })
        .collect();
    let mut got = Vec::new();
    enumerate_solutions(&3u32.into(), NormForm::Unit1, |s| {
        let keep = s.b <= BigUint::from(10_000u32);
        if keep {
            got.push(u(&s.b));
        }
        keep
    })
    .unwrap();
    o.check(got == want, format!("d = 3, B <= 10^4: {got:?} vs {want:?}"));

    // Legendre symbol against Euler's criterion
    for p in (3..=200u64).filter(|&p| is_prime(p)) {
        for a in 0..2 * p {
            let e = pow_mod(a, (p - 1) / 2, p);
            let want = if e == 0 { 0 } else if e == 1 { 1 } else { -1 };
            let got = legendre_symbol(&BigInt::from(a), &p.into());
            if got != Ok(want) {
                o.check(false, format!("legendre({a}, {p}) = {got:?}, want {want}"));
            }
        }
    }

    // semiprimitivity against the powers of a
    for b in 2..=500u64 {
        for a in 2..=40u64 {
            let got = is_semiprimitive(&BigInt::from(a), &b.into());
            if gcd(a, b) != 1 {
                o.check(matches!(got, Err(NtError::NotCoprime { .. })), format!("({a}, {b}) not coprime: {got:?}"));
                continue;
            }
            let want = brute_semiprimitive(a, b).map(BigUint::from);
            if got != Ok(want.clone()) {
                o.check(false, format!("semiprimitive({a}, {b}) = {got:?}, want {want:?}"));
            }
        }
    }

    // residue-class generators against their checkers, up to 10^5
    let budget = CertifyConfig::default().budget;
    let mut members = 0;
    for l in 1..=6 {
        for u in t41ne_classes(T41Variant::PowerOfTwo, l).unwrap().members(100_000) {
            o.check(t4137_check(u, &budget).is_ok_and(|c| c.is_nonexistent()), format!("T41Ne u = {u}"));
            members += 1;
        }
    }
    for p in [3u64, 7, 13, 17, 23] {
        for l in 0..=1 {
            for branch in [Branch::Plus, Branch::Minus] {
                let Ok(c) = t41ne_classes(T41Variant::OddPrime { p, branch }, l) else { continue };
                for u in c.members(100_000) {
                    o.check(t4137_check(u, &budget).is_ok_and(|c| c.is_nonexistent()), format!("T41Ne p = {p} u = {u}"));
                    members += 1;
                }
            }
        }
    }
    for (kind, e) in [
        (T43Kind::PowerOfTwo { h: 2 }, 19u64),
        (T43Kind::PowerOfThree { l: 0 }, 7),
        (T43Kind::OddPrime { p: 5, l: 0 }, 7),
        (T43Kind::OddPrime { p: 7, l: 0 }, 13),
        (T43Kind::OddPrime { p: 11, l: 0 }, 13),
    ] {
        let Ok(AValues::Classes(c)) = t43_class_generators(kind, Some(e), &RChoice::All) else {
            o.check(false, format!("{kind:?} e = {e}: no classes"));
            continue;
        };
        for a in c.members(100_000).filter(|&a| a >= 5) {
            o.check(
                t43nee_check(a, e, kind.prime(), &budget).is_ok_and(|c| c.is_nonexistent()),
                format!("{kind:?} e = {e}: A = {a}"),
            );
            members += 1;
        }
    }
    o.note(format!("{members} generated class members checked"));
    o
}

fn criterion_8(certs: &[Certificate]) -> Outcome {
    let mut o = Outcome::new("re-check of every nonexistent certificate from criteria 1-5");
    let mut replayed = 0;
    let mut search_only = Vec::new();
    for c in certs {
        match recheck(c) {
            Ok(Checked::Witnesses) => replayed += 1,
            Ok(Checked::SearchOnly) => search_only.push(triple(c)),
            Ok(other) => o.check(false, format!("{:?}: {other:?}", triple(c))),
            Err(e) => o.check(false, format!("{:?} {}: {e}", triple(c), rule(c))),
        }
    }
    o.note(format!("{replayed} of {} replayed from witnesses", certs.len()));
    if !search_only.is_empty() {
        o.note(format!(
            "{} exhaustive-search certificates carry no witnesses and were accepted as search records: {search_only:?}",
            search_only.len()
        ));
    }
    o
}

fn main() -> ExitCode {
    // the harness passes filters and flags such as --list; ignore them
    if std::env::args().any(|a| a == "--list") {
        return ExitCode::SUCCESS;
    }
    let mut certs = Vec::new();
    let mut results = vec![
        criterion_1(&mut certs),
        criterion_2(&mut certs),
        criterion_3(&mut certs),
        criterion_4(),
        criterion_5(&mut certs),
        criterion_6(),
        criterion_7(),
    ];
    results.push(criterion_8(&certs));
    let mut seen = BTreeSet::new();
    for (i, r) in results.iter().enumerate() {
        println!("{} {}: {}", if r.pass { "PASS" } else { "FAIL" }, i + 1, r.title);
        for d in &r.details {
            if seen.insert((i, d.clone())) {
                println!("    {d}");
            }
        }
    }
    let failed = results.iter().filter(|r| !r.pass).count();
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
