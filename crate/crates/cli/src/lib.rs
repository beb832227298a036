//! The `updyn` command line: argument handling, report documents and the
//! command implementations, kept in a library so tests can drive them
//! without spawning processes.

pub mod args;
mod commands;
pub mod report;

use std::fmt;

pub use commands::execute;
pub use report::{ReportDocument, SCHEMA_VERSION};

/// What a command produced.
#[derive(Debug, Clone, PartialEq)]
pub enum Output {
    Text(String),
    Csv(String),
    Report(ReportDocument),
}

impl fmt::Display for Output {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Output::Text(t) | Output::Csv(t) => f.write_str(t),
            Output::Report(doc) => f.write_str(&doc.to_json()),
        }
    }
}

/// A finished command: its output and whether every check passed.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub output: Output,
    pub passed: bool,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] updyn_core::Error),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    /// 1 for failed verification or exhausted searches, 2 for bad input.
    pub fn exit_code(&self) -> i32 {
        use updyn_core::Error as E;
        match self {
            CliError::Core(
                E::Verification(_) | E::NotFound { .. } | E::EmptyCertificate { .. },
            ) => 1,
            CliError::Io(_) | CliError::Csv(_) => 1,
            _ => 2,
        }
    }
}

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
