use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum SimError {
    /// Malformed input: config syntax, unknown keys or parameters, bad flags.
    #[error("config error: {0}")]
    Config(String),
    #[error(transparent)]
    Model(#[from] mmimou_core::Error),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0}")]
    Output(String),
    #[error("self-test failed: {0}")]
    Selftest(String),
}

impl SimError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Self::Io {
            path: path.into(),
            source,
        }
    }

    /// 1 malformed input, 2 invariant or self-test failure, 3 I/O.
    pub fn exit_code(&self) -> i32 {
        use mmimou_core::Error as E;
        match self {
            Self::Config(_) => 1,
            Self::Model(E::UnknownAxis(_) | E::EmptySweep | E::UnknownModel(_)) => 1,
            Self::Model(_) | Self::Selftest(_) => 2,
            Self::Io { .. } | Self::Output(_) => 3,
        }
    }
}
