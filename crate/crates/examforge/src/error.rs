use std::io;
use std::path::{Path, PathBuf};

use thiserror::Error;

/// Failure of a command, classified by exit code.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    /// Malformed or invalid input files (exit 2).
    #[error("{0}")]
    Input(String),
    /// Invalid exam, puzzle or restriction configuration (exit 3).
    #[error("{0}")]
    Config(String),
}

impl Error {
    pub fn exit_code(&self) -> u8 {
        match self {
            Error::Io { .. } | Error::Input(_) => 2,
            Error::Config(_) => 3,
        }
    }

    pub(crate) fn input(path: &Path, message: impl std::fmt::Display) -> Self {
        Error::Input(format!("{}: {message}", path.display()))
    }

    pub(crate) fn config(path: &Path, message: impl std::fmt::Display) -> Self {
        Error::Config(format!("{}: {message}", path.display()))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub fn read_to_string(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Reads and deserializes a JSON file; syntax and shape errors are input
/// errors.
pub fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| Error::input(path, e))
}
