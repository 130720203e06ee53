use thiserror::Error;

/// Anything that stops a command, with its process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] qiota::Error),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("usage: {0}")]
    Usage(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 0 success, 1 domain/parse, 2 precision, 3 verification, 4 resource.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(qiota::Error::Domain(_) | qiota::Error::Parse(_)) => 1,
            CliError::Core(qiota::Error::Precision(_)) => 2,
            CliError::Core(qiota::Error::Invariant(_)) | CliError::Verification(_) => 3,
            CliError::Core(qiota::Error::Resource(_)) => 4,
            CliError::Usage(_) => 1,
            CliError::Io(_) => 4,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
