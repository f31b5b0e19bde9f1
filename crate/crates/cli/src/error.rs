use thiserror::Error;

/// Exit code for a computation that ran but whose check failed.
pub const EXIT_CHECK_FAILED: u8 = 1;
/// Exit code for malformed input, bad flags or window/guard violations.
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] hopf_core::Error),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Json { path: String, source: serde_json::Error },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        use hopf_core::Error as E;
        match self {
            CliError::Usage(_) | CliError::Io { .. } | CliError::Json { .. } => EXIT_USAGE,
            CliError::Core(
                E::Parse(_) | E::InvalidGuard { .. } | E::GuardTooSmall { .. } | E::WindowExceeded { .. } | E::TooLarge(_),
            ) => EXIT_USAGE,
            CliError::Core(_) => EXIT_CHECK_FAILED,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
