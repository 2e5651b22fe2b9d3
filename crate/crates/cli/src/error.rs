use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Domain(String),
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("verification failed")]
    Verification,
}

impl CliError {
    /// 1 verification failure, 2 domain or usage error, 3 I/O error.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Verification => 1,
            Self::Domain(_) | Self::Usage(_) => 2,
            Self::Io { .. } => 3,
        }
    }
}

impl From<fracrelax_core::Error> for CliError {
    fn from(e: fracrelax_core::Error) -> Self {
        Self::Domain(e.to_string())
    }
}
