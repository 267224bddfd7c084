use std::io;
use std::path::PathBuf;

use thiserror::Error;

/// Failures that stop a run before or outside the checks themselves. A
/// check that computes a wrong answer is not an error: it produces a failing
/// record.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("cache file {path}: {detail}")]
    Cache { path: PathBuf, detail: String },
    #[error("malformed report: {0}")]
    Report(#[from] serde_json::Error),
    #[error("resource bound exceeded: {0}")]
    Resource(String),
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }

    /// Exit code for a run aborted by this error.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Resource(_) => exit::RESOURCE,
            _ => exit::CONFIG,
        }
    }
}

pub mod exit {
    pub const PASS: u8 = 0;
    pub const FALSIFIED: u8 = 1;
    pub const CONFIG: u8 = 2;
    pub const RESOURCE: u8 = 3;
}
