use std::path::PathBuf;

use crate::config::ConfigError;

/// Failure of a run, with the process exit code it maps to.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Config(#[from] ConfigError),
    #[error("{0}")]
    Usage(String),
    #[error("numerical failure: {0}")]
    Numerical(aware_dyn_core::Error),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    /// 1 for configuration, usage and IO errors, 2 for numerical failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Numerical(_) => 2,
            _ => 1,
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }
}

impl From<aware_dyn_core::Error> for CliError {
    /// Parameter and precondition violations are the scenario's fault.
    fn from(e: aware_dyn_core::Error) -> Self {
        use aware_dyn_core::Error as E;
        match e {
            E::InvalidParameter(_) | E::Precondition(_) => CliError::Config(ConfigError {
                line: None,
                key: None,
                message: e.to_string(),
            }),
            other => CliError::Numerical(other),
        }
    }
}
