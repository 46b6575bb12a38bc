//! Command-line front end for `mubs-core`: family files, reports and runs.

pub mod config;
pub mod error;
pub mod format;
pub mod report;
pub mod run;

pub use config::{Cli, CliCommand, CompareConfig, RunConfig};
pub use error::CliError;
pub use run::{compare, run, RunOutcome};
