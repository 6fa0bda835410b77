use std::io::Write;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use cds_core::certifier::{certify, certify_all, certify_params, CertifyConfig};
use cds_core::families::{family_scan, Family, FamilyOneParams, FamilyThreeParams, FamilyTwoParams, FamilyZeroParams, ScanConfig};
use cds_core::oracle::{exhaustive_cds_search, OracleError, SearchOptions};
use cds_core::pell::first_solutions;
use cds_core::seq::{autocorrelation, feasibility, sequence_to_cds, verify_cds};
use cds_core::{BinarySequence, Budget, CdsParams, Certificate, NormForm};
use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::{BigInt, BigUint};
use serde_json::{json, Value};

use crate::json::certificate_to_json;
use crate::report::{certificate_text, table, witness_text};

/// Two-level autocorrelation sequences, cyclic difference sets and
/// nonexistence certificates.
///
/// Every flag can also be set through an environment variable named
/// `CDSCERT_` plus the flag name in upper case (`--time-cap` is
/// `CDSCERT_TIME_CAP`). Flags win over the environment.
#[derive(Debug, Parser)]
#[command(name = "cdscert", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, global = true, value_enum, default_value = "text", env = "CDSCERT_FORMAT")]
    pub format: Format,
    /// Pollard rho iterations per factorization.
    #[arg(long, global = true, env = "CDSCERT_BUDGET")]
    pub budget: Option<u64>,
    /// Seed for rho and the random Miller-Rabin rounds.
    #[arg(long, global = true, env = "CDSCERT_SEED")]
    pub seed: Option<u64>,
    /// Wall-clock cap in seconds for each exhaustive search.
    #[arg(long, global = true, env = "CDSCERT_TIME_CAP")]
    pub time_cap: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Autocorrelation table, two-level verdict and support set of sequences.
    Analyze {
        #[arg(long, env = "CDSCERT_SEQUENCE", allow_hyphen_values = true)]
        sequence: Option<String>,
        /// One sequence over {+,-} per line.
        #[arg(long, env = "CDSCERT_FILE")]
        file: Option<PathBuf>,
    },
    /// Certificate for (n, d) or (n, k, lambda).
    Certify {
        #[command(flatten)]
        target: Target,
        /// List every rule's outcome instead of the first decisive one.
        #[arg(long, env = "CDSCERT_ALL_RULES")]
        all_rules: bool,
    },
    /// Certificates for the members of a family.
    Scan {
        #[command(flatten)]
        bounds: FamilyBounds,
    },
    /// Family members and their parameters, without certificates.
    Enumerate {
        #[command(flatten)]
        bounds: FamilyBounds,
    },
    /// Exhaustive difference set search.
    Search {
        #[command(flatten)]
        target: Target,
    },
    /// Check that a set is a cyclic difference set.
    Verify {
        #[arg(long, env = "CDSCERT_N")]
        n: u64,
        /// Comma-separated residues.
        #[arg(long, env = "CDSCERT_SET")]
        set: String,
    },
}

#[derive(Debug, clap::Args)]
pub struct Target {
    #[arg(long, env = "CDSCERT_N")]
    pub n: BigUint,
    #[arg(long, env = "CDSCERT_D", allow_hyphen_values = true, conflicts_with_all = ["k", "lambda"])]
    pub d: Option<BigInt>,
    #[arg(long, env = "CDSCERT_K", requires = "lambda")]
    pub k: Option<BigUint>,
    #[arg(long, env = "CDSCERT_LAMBDA", requires = "k")]
    pub lambda: Option<BigUint>,
}

#[derive(Debug, clap::Args)]
pub struct FamilyBounds {
    /// 1, 2, 3 or 0 (d = 1, 2, 3, 4).
    #[arg(long, env = "CDSCERT_FAMILY", value_parser = clap::value_parser!(u8).range(0..=3))]
    pub family: u8,
    /// Last Pell index (families 2 and 0).
    #[arg(long, env = "CDSCERT_MAX_I")]
    pub max_i: Option<u64>,
    /// Largest odd u (family 1).
    #[arg(long, env = "CDSCERT_MAX_U")]
    pub max_u: Option<u64>,
    /// Largest A (family 3).
    #[arg(long, env = "CDSCERT_MAX_A")]
    pub max_a: Option<u64>,
}

impl FamilyBounds {
    fn resolve(&self) -> Result<(Family, u64), CliError> {
        let family = Family::from_number(self.family).expect("range checked by clap");
        let (bound, default) = match family {
            Family::One => (self.max_u, 99),
            Family::Three => (self.max_a, 99),
            Family::Two => (self.max_i, 7),
            Family::Zero => (self.max_i, 12),
        };
        Ok((family, bound.unwrap_or(default)))
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Internal(_) => 2,
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Internal(e.to_string())
    }
}

/// Resolved effort settings.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub scan: ScanConfig,
    pub time_cap: Option<Duration>,
    pub format: Format,
}

impl RunConfig {
    pub fn from_cli(cli: &Cli) -> Result<Self, CliError> {
        let mut budget = Budget::default();
        if let Some(b) = cli.budget {
            if b == 0 {
                return Err(CliError::Usage("--budget must be positive".into()));
            }
            budget.rho_iterations = b;
        }
        if let Some(s) = cli.seed {
            budget.seed = s;
        }
        let time_cap = match cli.time_cap {
            Some(t) if !(t > 0.0 && t.is_finite()) => {
                return Err(CliError::Usage("--time-cap must be a positive number of seconds".into()))
            }
            t => t.map(Duration::from_secs_f64),
        };
        Ok(RunConfig {
            scan: ScanConfig {
                certify: CertifyConfig {
                    budget,
                    ..CertifyConfig::default()
                },
                ..ScanConfig::default()
            },
            time_cap,
            format: cli.format,
        })
    }

    fn certify(&self) -> &CertifyConfig {
        &self.scan.certify
    }
}

/// A cancel callback that fires once `cap` has elapsed from now.
pub fn deadline(cap: Option<Duration>) -> impl Fn() -> bool {
    let end = cap.map(|c| Instant::now() + c);
    move || end.is_some_and(|e| Instant::now() >= e)
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let cfg = RunConfig::from_cli(cli)?;
    match &cli.command {
        Command::Analyze { sequence, file } => analyze(sequence.as_deref(), file.as_ref(), &cfg, out),
        Command::Certify { target, all_rules } => cmd_certify(target, *all_rules, &cfg, out),
        Command::Scan { bounds } => scan(bounds, &cfg, out),
        Command::Enumerate { bounds } => enumerate(bounds, &cfg, out),
        Command::Search { target } => search(target, &cfg, out),
        Command::Verify { n, set } => verify(*n, set, &cfg, out),
    }
}

fn analyze(sequence: Option<&str>, file: Option<&PathBuf>, cfg: &RunConfig, out: &mut dyn Write) -> Result<(), CliError> {
    let mut inputs: Vec<String> = Vec::new();
    if let Some(s) = sequence {
        inputs.push(s.trim().to_string());
    }
    if let Some(path) = file {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        inputs.extend(text.lines().map(str::trim).filter(|l| !l.is_empty()).map(String::from));
    }
    if inputs.is_empty() {
        return Err(CliError::Usage("give --sequence or --file".into()));
    }
    for s in &inputs {
        let seq: BinarySequence = s.parse().map_err(|e| CliError::Usage(format!("{s:?}: {e}")))?;
        let prof = autocorrelation(&seq);
        let cds = sequence_to_cds(&seq);
        match cfg.format {
            Format::Json => {
                let support = match &cds {
                    Ok(d) => d.elements().to_vec(),
                    Err(e) => e.support.clone(),
                };
                let v = json!({
                    "sequence": seq.to_string(),
                    "n": prof.n.to_string(),
                    "c": prof.c.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                    "two_level": prof.is_two_level(),
                    "d": prof.d.map(|d| d.to_string()),
                    "support": support.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                    "params": cds.as_ref().ok().map(|d| params_value(d.params())),
                });
                writeln!(out, "{v}")?;
            }
            Format::Text => {
                writeln!(out, "sequence {seq} (n = {})", prof.n)?;
                let rows = prof.c.iter().enumerate().map(|(t, c)| vec![t.to_string(), c.to_string()]).collect();
                write!(out, "{}", table(&["t", "C(t)"], rows))?;
                match prof.d {
                    Some(d) if prof.is_two_level() => writeln!(out, "two-level: yes, d = {d}")?,
                    _ => writeln!(out, "two-level: no")?,
                }
                match &cds {
                    Ok(d) => writeln!(out, "support {:?} is a {} difference set", d.elements(), triple(d.params()))?,
                    Err(e) => writeln!(out, "support {:?} is not a difference set: {}", e.support, e.violation)?,
                }
            }
        }
    }
    Ok(())
}

fn triple(p: &CdsParams) -> String {
    format!("({}, {}, {})", p.n(), p.k(), p.lambda())
}

fn params_value(p: &CdsParams) -> Value {
    json!({"n": p.n().to_string(), "k": p.k().to_string(), "lambda": p.lambda().to_string()})
}

fn target_params(t: &Target) -> Result<Result<CdsParams, String>, CliError> {
    match (&t.d, &t.k, &t.lambda) {
        (Some(d), None, None) => Ok(feasibility(&t.n, d)
            .map(|p| p[0].canonical())
            .map_err(|e| e.to_string())),
        (None, Some(k), Some(l)) => CdsParams::new(t.n.clone(), k.clone(), l.clone())
            .map(Ok)
            .map_err(|e| CliError::Usage(e.to_string())),
        _ => Err(CliError::Usage("give --d, or --k and --lambda".into())),
    }
}

fn emit_certificates(certs: &[Certificate], cfg: &RunConfig, out: &mut dyn Write) -> Result<(), CliError> {
    for c in certs {
        match cfg.format {
            Format::Json => writeln!(out, "{}", certificate_to_json(c))?,
            Format::Text => write!(out, "{}", certificate_text(c))?,
        }
    }
    Ok(())
}

fn infeasible(t: &Target, why: &str, cfg: &RunConfig, out: &mut dyn Write) -> Result<(), CliError> {
    let d = t.d.as_ref().expect("only (n, d) can be infeasible");
    match cfg.format {
        Format::Json => writeln!(out, "{}", json!({"n": t.n.to_string(), "d": d.to_string(), "feasible": false, "reason": why}))?,
        Format::Text => writeln!(out, "(n, d) = ({}, {d}) is infeasible: {why}", t.n)?,
    }
    Ok(())
}

fn cmd_certify(t: &Target, all_rules: bool, cfg: &RunConfig, out: &mut dyn Write) -> Result<(), CliError> {
    let params = match target_params(t)? {
        Ok(p) => p,
        Err(why) => return infeasible(t, &why, cfg, out),
    };
    let certs = if all_rules {
        certify_all(&params, cfg.certify())
    } else if let Some(d) = &t.d {
        vec![certify(&t.n, d, cfg.certify()).expect("feasibility checked")]
    } else {
        vec![certify_params(&params, cfg.certify())]
    };
    emit_certificates(&certs, cfg, out)
}

fn scan(b: &FamilyBounds, cfg: &RunConfig, out: &mut dyn Write) -> Result<(), CliError> {
    let (family, bound) = b.resolve()?;
    let cap = cfg.time_cap;
    let rows = family_scan(family, bound, &cfg.scan, || deadline(cap));
    match cfg.format {
        Format::Json => {
            for r in &rows {
                writeln!(out, "{}", certificate_to_json(&r.certificate))?;
            }
        }
        Format::Text => {
            let label = match family {
                Family::One => "u",
                Family::Three => "A",
                _ => "i",
            };
            let opt = |x: &Option<BigUint>| x.as_ref().map_or(String::new(), |x| x.to_string());
            let body = rows
                .iter()
                .map(|r| {
                    let c = &r.certificate;
                    vec![
                        r.index.to_string(),
                        if family == Family::Three { String::new() } else { opt(&r.a) },
                        opt(&r.b),
                        r.params.n().to_string(),
                        r.params.k().to_string(),
                        r.params.lambda().to_string(),
                        r.params.order().to_string(),
                        c.verdict.to_string(),
                        c.rule.map_or(String::new(), |r| r.to_string()),
                        witness_text(c),
                    ]
                })
                .collect();
            let mut headers = vec![label, "A", "B", "n", "k", "lambda", "k-lambda", "verdict", "rule", "witnesses"];
            let mut body: Vec<Vec<String>> = body;
            if matches!(family, Family::One | Family::Three) {
                headers.drain(1..3);
                body.iter_mut().for_each(|r| {
                    r.drain(1..3);
                });
            }
            write!(out, "{}", table(&headers, body))?;
        }
    }
    Ok(())
}

fn enumerate(b: &FamilyBounds, cfg: &RunConfig, out: &mut dyn Write) -> Result<(), CliError> {
    let (family, bound) = b.resolve()?;
    let mut rows: Vec<(u64, Option<BigUint>, Option<BigUint>, CdsParams)> = Vec::new();
    match family {
        Family::One => {
            for u in (3..=bound).step_by(2) {
                rows.push((u, None, None, FamilyOneParams::new(u).expect("odd u").params));
            }
        }
        Family::Three => {
            for a in (5..=bound).filter(|a| matches!(a % 8, 3 | 5)) {
                rows.push((a, None, None, FamilyThreeParams::new(a).expect("A = +-3 mod 8").params));
            }
        }
        Family::Two | Family::Zero => {
            let (d, form) = if family == Family::Two { (3, NormForm::Unit1) } else { (5, NormForm::Unit4) };
            let sols = first_solutions(d, form, bound).map_err(|e| CliError::Internal(e.to_string()))?;
            for s in sols {
                let (i, a, b, p) = if family == Family::Two {
                    let f = FamilyTwoParams::from_pell(&s).expect("d = 3");
                    (f.i, f.a, f.b, f.params)
                } else {
                    let f = FamilyZeroParams::from_pell(&s).expect("d = 5");
                    (f.i, f.a, f.b, f.params)
                };
                rows.push((i, Some(a), Some(b), p));
            }
        }
    }
    match cfg.format {
        Format::Json => {
            for (i, a, b, p) in &rows {
                let mut v = params_value(p);
                let m = v.as_object_mut().expect("object");
                m.insert("index".into(), i.to_string().into());
                if let (Some(a), Some(b)) = (a, b) {
                    m.insert("A".into(), a.to_string().into());
                    m.insert("B".into(), b.to_string().into());
                }
                m.insert("d".into(), p.d().to_string().into());
                writeln!(out, "{v}")?;
            }
        }
        Format::Text => {
            let with_ab = matches!(family, Family::Two | Family::Zero);
            let body = rows
                .iter()
                .map(|(i, a, b, p)| {
                    let mut r = vec![i.to_string()];
                    if with_ab {
                        r.push(a.as_ref().unwrap().to_string());
                        r.push(b.as_ref().unwrap().to_string());
                    }
                    r.extend([p.n().to_string(), p.k().to_string(), p.lambda().to_string(), p.order().to_string()]);
                    r
                })
                .collect();
            let headers: &[&str] = match family {
                Family::One => &["u", "n", "k", "lambda", "k-lambda"],
                Family::Three => &["A", "n", "k", "lambda", "k-lambda"],
                _ => &["i", "A", "B", "n", "k", "lambda", "k-lambda"],
            };
            write!(out, "{}", table(headers, body))?;
        }
    }
    Ok(())
}

fn search(t: &Target, cfg: &RunConfig, out: &mut dyn Write) -> Result<(), CliError> {
    let params = match target_params(t)? {
        Ok(p) => p,
        Err(why) => return infeasible(t, &why, cfg, out),
    };
    let res = exhaustive_cds_search(&params, &SearchOptions::default(), &deadline(cfg.time_cap));
    let o = match res {
        Ok(o) => o,
        Err(OracleError::TooLarge(n)) => return Err(CliError::Usage(format!("n = {n} is above the search limit"))),
    };
    let status = if o.is_complete() { "complete" } else { "partial" };
    match cfg.format {
        Format::Json => {
            let v = json!({
                "n": params.n().to_string(),
                "k": params.k().to_string(),
                "lambda": params.lambda().to_string(),
                "status": status,
                "nodes": o.nodes.to_string(),
                "empty_contraction": o.empty_contraction.map(|m| m.to_string()),
                "sets": o.sets.iter().map(|s| s.elements().iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
            });
            writeln!(out, "{v}")?;
        }
        Format::Text => {
            writeln!(out, "{} search: {status}, {} nodes", triple(&params), o.nodes)?;
            if let Some(m) = o.empty_contraction {
                writeln!(out, "no admissible class counts modulo {m}")?;
            }
            writeln!(out, "{} sets containing 0", o.sets.len())?;
            for s in &o.sets {
                writeln!(out, "{:?}", s.elements())?;
            }
        }
    }
    Ok(())
}

fn verify(n: u64, set: &str, cfg: &RunConfig, out: &mut dyn Write) -> Result<(), CliError> {
    let elems = set
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<u64>().map_err(|_| CliError::Usage(format!("bad residue {s:?}"))))
        .collect::<Result<Vec<_>, _>>()?;
    let res = verify_cds(n, &elems);
    match cfg.format {
        Format::Json => {
            let v = match &res {
                Ok(d) => json!({"valid": true, "params": params_value(d.params())}),
                Err(e) => json!({"valid": false, "reason": e.to_string()}),
            };
            writeln!(out, "{v}")?;
        }
        Format::Text => match &res {
            Ok(d) => writeln!(out, "{} valid", triple(d.params()))?,
            Err(e) => writeln!(out, "not a difference set: {e}")?,
        },
    }
    Ok(())
}
