//! Error type shared across the pipeline.

use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("failed to read {path}: {cause}")]
    Io {
        path: PathBuf,
        cause: std::io::Error,
    },

    #[error("failed to write {path}: {cause}")]
    Write {
        path: PathBuf,
        cause: std::io::Error,
    },

    /// A data or vector file did not match its expected line format.
    #[error("{source_name}:{line}: {message}")]
    Format {
        source_name: String,
        line: usize,
        message: String,
    },

    #[error("invalid configuration: {0}")]
    Config(String),

    /// The eigensolver produced a pair whose residual exceeds the contract.
    #[error("eigensolver residual {residual:.3e} exceeds tolerance {tolerance:.3e}")]
    EigenResidual { residual: f64, tolerance: f64 },

    #[error("candidate and reference line counts differ: {candidates} vs {references}")]
    LineCountMismatch {
        candidates: usize,
        references: usize,
    },

    #[error("document cluster has no sentences")]
    EmptyCluster,
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            cause: source,
        }
    }

    pub(crate) fn format(
        source_name: impl Into<String>,
        line: usize,
        message: impl Into<String>,
    ) -> Self {
        Error::Format {
            source_name: source_name.into(),
            line,
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
