use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("config error: {0}")]
    Config(String),

    #[error("realization {index}: {source}")]
    Realization {
        index: usize,
        #[source]
        source: softfusion::Error,
    },

    #[error(transparent)]
    Model(#[from] softfusion::Error),

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl HarnessError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Self::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit code: 2 config, 3 runtime/numeric, 4 I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Config(_) => 2,
            HarnessError::Model(softfusion::Error::InvalidConfig(_))
            | HarnessError::Model(softfusion::Error::InvalidScenario(_)) => 2,
            HarnessError::Realization { .. } | HarnessError::Model(_) => 3,
            HarnessError::Io { .. } => 4,
        }
    }
}

pub type Result<T, E = HarnessError> = std::result::Result<T, E>;
