//! Command logic behind the `syzlab` binary.

pub mod args;
pub mod commands;
pub mod report;
pub mod store;

pub use args::{Cli, Command, RunConfig};
pub use commands::{build_curves, run, run_command};
pub use report::{Check, Report, SCHEMA};
