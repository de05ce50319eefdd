use std::io;
use std::path::PathBuf;

use thiserror::Error;

use lexkernel::error::{IngestError, StatsError};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Clap(#[from] clap::Error),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Empty(String),
    #[error("none of the norm words occur in the dictionary")]
    NoOverlap,
    #[error("{path}: {message}")]
    Parse { path: String, message: String },
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: io::Error,
    },
    #[error(
        "search budget of {budget} nodes exhausted; best known grounding set has {upper_bound} words"
    )]
    BudgetExceeded { budget: u64, upper_bound: usize },
}

impl CliError {
    /// Process exit status for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Clap(e) if !e.use_stderr() => 0,
            CliError::Clap(_) | CliError::Usage(_) => 64,
            CliError::Empty(_) => 2,
            CliError::NoOverlap => 3,
            CliError::Parse { .. } => 65,
            CliError::Io { .. } => 74,
            CliError::BudgetExceeded { .. } => 1,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        CliError::Io {
            path: path.into().display().to_string(),
            source,
        }
    }

    pub(crate) fn ingest(path: &str, e: IngestError) -> Self {
        match e {
            IngestError::EmptyResult => {
                CliError::Empty(format!("{path}: normalization left an empty dictionary"))
            }
            other => CliError::Parse {
                path: path.to_string(),
                message: other.to_string(),
            },
        }
    }

    pub(crate) fn norms(path: &str, e: StatsError) -> Self {
        CliError::Parse {
            path: path.to_string(),
            message: e.to_string(),
        }
    }
}
