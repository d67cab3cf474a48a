use std::path::PathBuf;

use thiserror::Error;

use crate::config::ConfigError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigError),

    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Core(#[from] rieszkit_core::Error),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    /// 1 for usage, config and I/O problems, 2 for numerical failures.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(
                rieszkit_core::Error::SingularSystem { .. } | rieszkit_core::Error::NonFinite(_),
            ) => 2,
            _ => 1,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
