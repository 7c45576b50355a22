//! `wforge`: construct, bias-correct, prune, verify, and compare linear
//! entanglement witnesses from the command line.
//!
//! Commands are plain functions over a [`config::PipelineConfig`] so tests
//! can drive the whole pipeline in-process; `main` only does argument
//! parsing and exit-code mapping.

pub mod commands;
pub mod config;
pub mod io;

use std::fmt;

/// Process exit codes: 0 success, 1 usage/config error, 2 numerical failure,
/// 3 verification failure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitCode {
    Success = 0,
    Config = 1,
    Numerical = 2,
    Verification = 3,
}

#[derive(Debug)]
pub struct CliError {
    pub exit: ExitCode,
    pub message: String,
}

impl CliError {
    pub fn config(message: impl Into<String>) -> Self {
        CliError {
            exit: ExitCode::Config,
            message: message.into(),
        }
    }

    pub fn numerical(err: wforge_core::Error) -> Self {
        CliError {
            exit: ExitCode::Numerical,
            message: err.to_string(),
        }
    }

    pub fn numerical_msg(message: impl Into<String>) -> Self {
        CliError {
            exit: ExitCode::Numerical,
            message: message.into(),
        }
    }

    pub fn verification(message: impl Into<String>) -> Self {
        CliError {
            exit: ExitCode::Verification,
            message: message.into(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.message)
    }
}

impl std::error::Error for CliError {}

impl From<wforge_core::Error> for CliError {
    fn from(err: wforge_core::Error) -> Self {
        CliError::numerical(err)
    }
}
