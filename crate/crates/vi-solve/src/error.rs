//! Harness errors.
//!
//! Configuration mistakes (bad spec files, bad flags, bad environment) are
//! kept apart from I/O trouble so the binary can map them to the documented
//! exit codes: 2 for configuration, 1 for anything that stopped a run.

use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// I/O failure, always tagged with the path involved.
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    /// The spec file itself could not be read; distinct from [`Error::Io`]
    /// because an unreadable spec is a configuration error, not a failed
    /// run.
    #[error("cannot read spec {path}: {source}")]
    SpecRead {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    /// A spec line that is not blank, a comment, or `key = value`.
    #[error("{path}:{line}: expected `key = value`, got `{text}`")]
    MalformedLine {
        path: PathBuf,
        line: usize,
        text: String,
    },

    #[error("{path}:{line}: duplicate key `{key}`")]
    DuplicateKey {
        path: PathBuf,
        line: usize,
        key: String,
    },

    #[error("{path}:{line}: unknown key `{key}`")]
    UnknownKey {
        path: PathBuf,
        line: usize,
        key: String,
    },

    #[error("{path}:{line}: key `{key}`: {reason}")]
    BadValue {
        path: PathBuf,
        line: usize,
        key: String,
        reason: String,
    },

    #[error("spec is missing required key `{key}`")]
    MissingKey { key: &'static str },

    #[error("unknown problem `{name}`; valid problems are example41")]
    UnknownProblem { name: String },

    #[error("no output directory: pass --out or set output_dir in the spec")]
    NoOutputDir,

    #[error("VI_SOLVE_THREADS must be a positive integer, got `{value}`")]
    BadThreadCount { value: String },

    #[error(transparent)]
    Core(#[from] vi_core::Error),
}

impl Error {
    /// Exit code the binary reports for this error.
    pub fn exit_code(&self) -> u8 {
        match self {
            Error::Io { .. } => 1,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
