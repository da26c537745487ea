use std::process::ExitCode;

use mclab_core::Error as CoreError;
use thiserror::Error;

/// Process exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExitStatus {
    Success = 0,
    VerificationFailed = 1,
    ParseError = 2,
    Precondition = 3,
}

impl From<ExitStatus> for ExitCode {
    fn from(s: ExitStatus) -> Self {
        ExitCode::from(s as u8)
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Precondition(String),
    #[error("unknown suite {name:?} (known: {known})")]
    UnknownSuite { name: String, known: String },
}

impl CliError {
    pub fn status(&self) -> ExitStatus {
        match self {
            CliError::Precondition(_) => ExitStatus::Precondition,
            _ => ExitStatus::ParseError,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        if e.is_precondition() {
            CliError::Precondition(e.to_string())
        } else {
            CliError::Parse(e.to_string())
        }
    }
}
