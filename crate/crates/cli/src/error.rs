use std::fmt;
use std::path::PathBuf;

use thiserror::Error;

/// One schema violation in an input document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchemaProblem {
    /// JSON pointer to the offending value (`""` is the document root).
    pub pointer: String,
    pub message: String,
}

impl fmt::Display for SchemaProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let at = if self.pointer.is_empty() {
            "/"
        } else {
            &self.pointer
        };
        write!(f, "{at}: {}", self.message)
    }
}

fn list(problems: &[SchemaProblem]) -> String {
    problems.iter().map(|p| format!("\n  {p}")).collect()
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("{path}: invalid JSON at line {line}, column {column}: {message}")]
    Syntax {
        path: PathBuf,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{path}: schema violations:{}", list(.problems))]
    Schema {
        path: PathBuf,
        problems: Vec<SchemaProblem>,
    },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Core(#[from] eisenstein_core::Error),
}

impl CliError {
    /// Every error is an input or usage problem except internal failures
    /// of the core library.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(eisenstein_core::Error::Internal(_)) => 1,
            _ => 2,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
