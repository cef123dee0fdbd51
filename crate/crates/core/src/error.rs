//! Error taxonomy shared by the whole crate.

use thiserror::Error;

/// Errors fall into three kinds with different exit semantics for callers:
/// `Validation` means a mathematical law failed to hold for the given data,
/// `Domain` means an operation is undefined on its input, and `Config`
/// means inputs were malformed or mutually inconsistent before any
/// mathematics ran.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("undefined operation: {0}")]
    Domain(String),
    #[error("bad input: {0}")]
    Config(String),
}

impl Error {
    pub fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
