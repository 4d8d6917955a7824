//! Command-line front end: spec parsing, verdict JSON, census runs, and the
//! `matchcert` command surface.

pub mod census;
pub mod commands;
pub mod spec;
pub mod verdict;

use clap::ValueEnum;

pub const EXIT_INVALID: i32 = 1;
pub const EXIT_INCONSISTENT: i32 = 2;

/// A command failure carrying its exit code. Code 1 covers invalid input and
/// exceeded bounds; code 2 is reserved for decider disagreements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliFailure {
    pub code: i32,
    pub message: String,
}

impl CliFailure {
    pub fn new(code: i32, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }
}

impl From<matchcert_core::Error> for CliFailure {
    fn from(err: matchcert_core::Error) -> Self {
        let code = match err {
            matchcert_core::Error::InternalInconsistency(_) => EXIT_INCONSISTENT,
            _ => EXIT_INVALID,
        };
        Self::new(code, err.to_string())
    }
}


#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    /// One JSON document.
    Json,
    /// One JSON record per line (census default).
    Jsonl,
    /// Human-readable lines.
    Table,
}
