//! Crate-wide error type.

use std::fmt;
use std::path::PathBuf;

/// Alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong outside of plain arithmetic.
#[derive(Debug)]
pub enum Error {
    /// A distribution or rule parameter is outside its legal range.
    InvalidParameter(String),
    /// Inconsistent or malformed caller input (length mismatches, zero
    /// variance, multi-buyer table passed to a single-buyer protocol, ...).
    InvalidInput(String),
    /// An argument lies outside the function's mathematical domain.
    Domain(String),
    /// The utility rule is incompatible with the table shape.
    InvalidRule(String),
    /// Degenerate variance in the implicit extreme-value equation
    /// (arises from st = -1 with t = 1, where the total utility is
    /// identically zero).
    DegenerateVariance,
    /// An approximation was requested outside the regime where it is
    /// derived to hold.
    ApproximationDomain(String),
    /// The mean of the maximum does not exist (power-law exponent <= 2,
    /// where the searcher does best by searching forever).
    DivergentMean(String),
    /// Malformed experiment configuration.
    Config(String),
    /// I/O failure, with the offending path.
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
            Error::InvalidInput(msg) => write!(f, "invalid input: {msg}"),
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::InvalidRule(msg) => write!(f, "invalid rule: {msg}"),
            Error::DegenerateVariance => {
                write!(f, "degenerate variance: total utility is identically zero")
            }
            Error::ApproximationDomain(msg) => {
                write!(f, "outside approximation domain: {msg}")
            }
            Error::DivergentMean(msg) => write!(f, "divergent mean: {msg}"),
            Error::Config(msg) => write!(f, "invalid config: {msg}"),
            Error::Io { path, source } => {
                write!(f, "i/o error on {}: {source}", path.display())
            }
        }
    }
}

impl std::error::Error for Error {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            Error::Io { source, .. } => Some(source),
            _ => None,
        }
    }
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
