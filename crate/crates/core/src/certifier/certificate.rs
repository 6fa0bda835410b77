use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::{BigInt, BigUint};

use crate::seq::CdsParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Nonexistent,
    Exists,
    Open,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Nonexistent => "nonexistent",
            Verdict::Exists => "exists",
            Verdict::Open => "open",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Verdict {
    type Err = UnknownName;

    fn from_str(s: &str) -> Result<Self, UnknownName> {
        match s {
            "nonexistent" => Ok(Verdict::Nonexistent),
            "exists" => Ok(Verdict::Exists),
            "open" => Ok(Verdict::Open),
            _ => Err(UnknownName(s.into())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown name {0:?}")]
pub struct UnknownName(pub String);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyRule {
    T4137,
    T41Ne2,
    T43Ne,
    T43Nee,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    BrcEven,
    BrcOdd,
    Dsc,
    Mann,
    Turyn,
    SizeBound,
    Family(FamilyRule),
    Oracle,
}

impl Rule {
    pub fn as_str(self) -> &'static str {
        match self {
            Rule::BrcEven => "BRC_EVEN",
            Rule::BrcOdd => "BRC_ODD",
            Rule::Dsc => "DSC",
            Rule::Mann => "MANN",
            Rule::Turyn => "TURYN",
            Rule::SizeBound => "SIZE_BOUND",
            Rule::Family(FamilyRule::T4137) => "FAMILY:T4137",
            Rule::Family(FamilyRule::T41Ne2) => "FAMILY:T41NE2",
            Rule::Family(FamilyRule::T43Ne) => "FAMILY:T43NE",
            Rule::Family(FamilyRule::T43Nee) => "FAMILY:T43NEE",
            Rule::Oracle => "ORACLE",
        }
    }

    const ALL: [Rule; 11] = [
        Rule::BrcEven,
        Rule::BrcOdd,
        Rule::Dsc,
        Rule::Mann,
        Rule::Turyn,
        Rule::SizeBound,
        Rule::Family(FamilyRule::T4137),
        Rule::Family(FamilyRule::T41Ne2),
        Rule::Family(FamilyRule::T43Ne),
        Rule::Family(FamilyRule::T43Nee),
        Rule::Oracle,
    ];
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Rule {
    type Err = UnknownName;

    fn from_str(s: &str) -> Result<Self, UnknownName> {
        Rule::ALL
            .into_iter()
            .find(|r| r.as_str() == s)
            .ok_or_else(|| UnknownName(s.into()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum WitnessKey {
    E,
    P,
    C,
    H,
    M,
    EPrime,
    R,
    Valuation,
    Lhs,
    Rhs,
    SemiprimitivityExponent,
}

impl WitnessKey {
    pub fn as_str(self) -> &'static str {
        match self {
            WitnessKey::E => "e",
            WitnessKey::P => "p",
            WitnessKey::C => "c",
            WitnessKey::H => "h",
            WitnessKey::M => "m",
            WitnessKey::EPrime => "e_prime",
            WitnessKey::R => "r",
            WitnessKey::Valuation => "valuation",
            WitnessKey::Lhs => "lhs",
            WitnessKey::Rhs => "rhs",
            WitnessKey::SemiprimitivityExponent => "semiprimitivity_exponent",
        }
    }

    const ALL: [WitnessKey; 11] = [
        WitnessKey::E,
        WitnessKey::P,
        WitnessKey::C,
        WitnessKey::H,
        WitnessKey::M,
        WitnessKey::EPrime,
        WitnessKey::R,
        WitnessKey::Valuation,
        WitnessKey::Lhs,
        WitnessKey::Rhs,
        WitnessKey::SemiprimitivityExponent,
    ];
}

impl fmt::Display for WitnessKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for WitnessKey {
    type Err = UnknownName;

    fn from_str(s: &str) -> Result<Self, UnknownName> {
        WitnessKey::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| UnknownName(s.into()))
    }
}

/// A verdict on one parameter set with the data needed to replay it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub params: CdsParams,
    /// `n - 4(k - lambda)`.
    pub d: BigInt,
    pub verdict: Verdict,
    pub rule: Option<Rule>,
    /// In emission order.
    pub witnesses: Vec<(WitnessKey, BigUint)>,
    pub witness_set: Option<Vec<u64>>,
    /// Why an open certificate is open, or a review note on a decided one.
    pub reason: Option<String>,
    pub tool_version: String,
}

impl Certificate {
    fn base(params: &CdsParams, verdict: Verdict) -> Self {
        Certificate {
            d: params.d(),
            params: params.clone(),
            verdict,
            rule: None,
            witnesses: Vec::new(),
            witness_set: None,
            reason: None,
            tool_version: crate::TOOL_VERSION.into(),
        }
    }

    pub fn open(params: &CdsParams, reason: impl Into<String>) -> Self {
        let mut c = Self::base(params, Verdict::Open);
        c.reason = Some(reason.into());
        c
    }

    pub fn nonexistent(params: &CdsParams, rule: Rule, witnesses: Vec<(WitnessKey, BigUint)>) -> Self {
        let mut c = Self::base(params, Verdict::Nonexistent);
        c.rule = Some(rule);
        c.witnesses = witnesses;
        c
    }

    pub fn exists(params: &CdsParams, rule: Option<Rule>, set: Vec<u64>) -> Self {
        let mut c = Self::base(params, Verdict::Exists);
        c.rule = rule;
        c.witness_set = Some(set);
        c
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        let note = note.into();
        self.reason = Some(match self.reason.take() {
            Some(r) => alloc::format!("{r}; {note}"),
            None => note,
        });
        self
    }

    pub fn witness(&self, key: WitnessKey) -> Option<&BigUint> {
        self.witnesses.iter().find(|(k, _)| *k == key).map(|(_, v)| v)
    }

    pub fn is_nonexistent(&self) -> bool {
        self.verdict == Verdict::Nonexistent
    }
}
