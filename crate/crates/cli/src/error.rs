use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Core(#[from] sbmds::Error),

    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    pub fn io(path: &std::path::Path, source: std::io::Error) -> Self {
        CliError::Io { path: path.display().to_string(), source }
    }

    /// 2 usage, 3 validation, 4 numerical failure.
    pub fn exit_code(&self) -> i32 {
        use sbmds::Error as E;
        match self {
            CliError::Usage(_) | CliError::Io { .. } => 2,
            CliError::Core(E::Config(_)) => 2,
            CliError::Core(E::Numerical(_)) => 4,
            CliError::Core(_) | CliError::Json(_) => 3,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
