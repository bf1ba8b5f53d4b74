//! File formats, reports, a result cache and the command implementations behind the
//! `cyroots` binary.

pub mod cache;
pub mod commands;
pub mod format;
pub mod report;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error at {at}: {msg}")]
    Parse { at: String, msg: String },
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("{0}")]
    Invalid(String),
}

impl CliError {
    pub fn parse(at: &str, msg: String) -> CliError {
        CliError::Parse { at: at.to_string(), msg }
    }

    pub fn io(path: &std::path::Path, source: std::io::Error) -> CliError {
        CliError::Io { path: path.display().to_string(), source }
    }
}

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;
