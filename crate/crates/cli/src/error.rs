use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot access {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("invalid configuration: {0}")]
    Schema(String),

    #[error("construction failed: {0}")]
    Construction(#[from] poncelet_core::Error),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("{0}")]
    Usage(String),

    #[error("csv output: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    /// Process exit status for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Verification(_) => 1,
            CliError::Io { .. } | CliError::Schema(_) | CliError::Usage(_) | CliError::Csv(_) => 2,
            CliError::Construction(_) => 3,
        }
    }
}
