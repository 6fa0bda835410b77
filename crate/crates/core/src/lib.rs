//! Binary sequences with two-level periodic autocorrelation, the cyclic
//! difference sets they correspond to, and nonexistence certificates built
//! from valuation and semiprimitivity tests.
//!
//! The crate is `no_std` and only needs `alloc`. Everything that touches the
//! outside world (wall clocks, files, JSON, the command line) lives in the
//! companion `cds-tool` crate; long-running searches here take a
//! [`Cancel`] callback instead.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod certifier;
pub mod families;
pub mod ntkernel;
pub mod oracle;
pub mod pell;
pub mod seq;

mod cancel;

pub use cancel::{Cancel, NeverCancel};
pub use certifier::{Certificate, Rule, Verdict, WitnessKey};
pub use ntkernel::{Budget, Factorization};
pub use pell::{NormForm, PellSolution};
pub use seq::{AutocorrelationProfile, BinarySequence, CdsParams, CyclicDifferenceSet};

/// Version string stamped into every emitted certificate.
pub const TOOL_VERSION: &str = concat!("cds-core ", env!("CARGO_PKG_VERSION"));
