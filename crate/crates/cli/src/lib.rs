//! Batch runner of the open XXZ TQ laboratory: configuration loading,
//! identity suites, operator dumps and spectrum reports.

pub mod commands;
pub mod config;
pub mod output;

pub use commands::{all_identity_ids, build_object, cmd_dump, cmd_spectrum, cmd_tq, cmd_verify, run_identities, run_identity, select_ids};
pub use config::RunConfig;

use thiserror::Error;
use tqlab_core::TqError;

/// Successful completion of a command.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    /// Everything passed.
    Pass,
    /// At least one identity exceeded its threshold.
    IdentityFailure,
}

impl Outcome {
    /// Process exit code.
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Pass => 0,
            Outcome::IdentityFailure => 1,
        }
    }
}

/// Failure of a command.
#[derive(Debug, Error)]
pub enum CliError {
    /// Invalid configuration or command-line input.
    #[error("{0}")]
    Config(TqError),
    /// A computation failed.
    #[error("{0}")]
    Compute(TqError),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl From<TqError> for CliError {
    fn from(e: TqError) -> Self {
        match e {
            TqError::ConfigInvalid(_) | TqError::UnknownObject(_) => CliError::Config(e),
            other => CliError::Compute(other),
        }
    }
}

impl CliError {
    /// Process exit code: 2 for configuration errors, 3 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Compute(_) | CliError::Io(_) => 3,
        }
    }
}
