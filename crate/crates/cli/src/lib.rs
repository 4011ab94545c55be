//! File formats, reports and subcommands around `crowdtrust-core`.
//!
//! Every command is a plain function returning its output text, so the binary
//! only parses flags, reads and writes files, and maps errors to exit codes.

pub mod commands;
pub mod dataset;
pub mod error;
pub mod report;
pub mod scenario;

pub use commands::{cmd_compare, cmd_cv, cmd_fuse, cmd_simulate, RunOptions, ScenarioSource};
pub use dataset::Dataset;
pub use error::{CliError, Result};
