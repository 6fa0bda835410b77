//! Command line front end for `cds-core`: the `cdscert` binary, certificate
//! JSON, text tables and wall-clock time caps.

pub mod cli;
pub mod json;
pub mod report;

pub use cli::{deadline, run, Cli, CliError, RunConfig};
pub use json::{certificate_from_json, certificate_to_json};
