//! Library surface of the `social-fusion` command-line tool, exposed so the
//! integration suites can drive the same code paths as the binary.

pub mod commands;
pub mod config;
pub mod error;
pub mod output;
pub mod plot;

pub use commands::{cmd_oracle_check, cmd_run, RunArtifacts, RunOptions};
pub use config::{ExperimentSpec, SpecFile, SweepPoint};
pub use error::CliError;
