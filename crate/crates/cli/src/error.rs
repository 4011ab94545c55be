use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, CliError>;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("{}{}: {message}", source_name.display(), line.map(|l| format!(":{l}")).unwrap_or_default())]
    Load { source_name: PathBuf, line: Option<u64>, message: String },
    #[error("numeric: {0}")]
    Numeric(String),
    #[error("config: {0}")]
    Config(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Core(#[from] crowdtrust_core::Error),
}

impl CliError {
    pub(crate) fn load(source_name: impl Into<PathBuf>, line: Option<u64>, message: impl Into<String>) -> Self {
        CliError::Load { source_name: source_name.into(), line, message: message.into() }
    }

    /// Process exit code: 2 usage, 3 load, 4 numeric, 5 config, 1 anything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Load { .. } => 3,
            CliError::Numeric(_) => 4,
            CliError::Config(_) => 5,
            CliError::Io(_) => 1,
            CliError::Core(crowdtrust_core::Error::Numeric(_)) => 4,
            CliError::Core(_) => 2,
        }
    }
}
