use std::io;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Failure modes shared by every stage of the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Inconsistent or unusable configuration (window, block length, epsilon).
    #[error("configuration error: {0}")]
    Config(String),

    /// The self-normalizer vanished at the given split index or index pair.
    #[error("degenerate input: normalizer is zero at {location}")]
    Degenerate { location: String },

    /// The circulant embedding of the covariance sequence is not nonnegative definite.
    #[error("circulant embedding failed: eigenvalue {eigenvalue:e} below tolerance -{tolerance:e}")]
    Embedding { eigenvalue: f64, tolerance: f64 },

    /// An estimator could not be formed from the data.
    #[error("estimation failure: {0}")]
    Estimation(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error("replication {index}: {source}")]
    Replication {
        index: u64,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    pub(crate) fn degenerate(location: impl Into<String>) -> Self {
        Error::Degenerate { location: location.into() }
    }

    /// True for errors raised because a statistic is undefined on the data.
    pub fn is_degenerate(&self) -> bool {
        match self {
            Error::Degenerate { .. } => true,
            Error::Replication { source, .. } => source.is_degenerate(),
            _ => false,
        }
    }

    /// Innermost error, looking through replication wrappers.
    pub fn root(&self) -> &Error {
        match self {
            Error::Replication { source, .. } => source.root(),
            other => other,
        }
    }
}
