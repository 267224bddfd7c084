//! Driver for `octlab-core`: run configuration, named checks, JSON reports
//! and the structure-constant cache.

pub mod cache;
pub mod checks;
pub mod config;
pub mod error;
pub mod report;

pub use checks::{run, Check, Outcome};
pub use config::RunConfig;
pub use error::{exit, CliError};
pub use report::{Record, Report, Verdict};
