//! Problem files, reports and subcommands of the `qcomm` binary.
//!
//! Every command returns a [`Report`] (stdout text plus diagnostics) or a
//! [`CliError`]; [`exit_code`] maps either to the process exit status.

pub mod commands;
pub mod problem;
pub mod report;
pub mod wire;

use thiserror::Error;

pub use commands::{cmd_check, cmd_diag, cmd_example, cmd_repr, cmd_solve, CheckArgs, Example, SolveArgs};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("cannot parse {path}: {source}")]
    Parse {
        path: String,
        #[source]
        source: serde_json::Error,
    },
    #[error("{0}")]
    Invalid(String),
    #[error("matrix does not commute with Q: ||AQ - QA||_F = {commutator:e}")]
    NotMember { commutator: f64 },
    #[error(transparent)]
    Core(#[from] qcomm_core::Error),
}

impl CliError {
    /// 3 for numerical failures, 2 for everything caused by the input.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_numerical() => 3,
            _ => 2,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Report {
    pub stdout: String,
    /// Lines for stderr.
    pub diagnostics: Vec<String>,
    /// False when a check did not pass.
    pub passed: bool,
}

pub fn exit_code(result: &Result<Report, CliError>) -> i32 {
    match result {
        Ok(r) if r.passed => 0,
        Ok(_) => 1,
        Err(e) => e.exit_code(),
    }
}
