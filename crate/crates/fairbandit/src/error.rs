use std::path::PathBuf;

/// Crate-wide error type.
///
/// Recoverable failures (bad configs, malformed files, numerical blowups
/// during training) are reported through this type. Contract violations —
/// shape mismatches, corrupted SPD matrices, non-finite gradients reaching
/// the optimizer — panic instead; they indicate a bug, not bad input.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("config error: {0}")]
    Config(String),

    #[error("{path}: parse error at byte {offset}: {message}")]
    DataFormat {
        path: PathBuf,
        offset: usize,
        message: String,
    },

    #[error("checkpoint error: {0}")]
    Checkpoint(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    /// Process exit code: 1 for bad input, 2 for runtime failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) | Error::DataFormat { .. } | Error::Checkpoint(_) => 1,
            Error::Numerical(_) | Error::Io(_) => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
