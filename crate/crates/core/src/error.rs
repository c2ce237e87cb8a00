//! Crate-wide error type.

use std::fmt;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug)]
pub enum Error {
    /// A requested computation exceeds a configured size or work budget.
    TooLarge {
        what: &'static str,
        requested: u128,
        budget: u128,
    },
    /// Vector/matrix dimensions do not match.
    Dimension {
        what: &'static str,
        expected: usize,
        got: usize,
    },
    /// A parameter is outside its documented range.
    InvalidParameter(String),
    /// A dense factorization found the matrix singular to working precision.
    Singular(String),
    /// An iterate or result contained NaN/Inf.
    NonFinite(String),
    /// A text input (CSV, config) failed to parse.
    Parse { line: usize, message: String },
    Io(std::io::Error),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::TooLarge {
                what,
                requested,
                budget,
            } => write!(
                f,
                "problem too large for {}: requested {} exceeds budget {}",
                what, requested, budget
            ),
            Error::Dimension {
                what,
                expected,
                got,
            } => write!(f, "dimension mismatch in {}: expected {}, got {}", what, expected, got),
            Error::InvalidParameter(msg) => write!(f, "invalid parameter: {}", msg),
            Error::Singular(msg) => write!(f, "singular system: {}", msg),
            Error::NonFinite(msg) => write!(f, "non-finite value: {}", msg),
            Error::Parse { line, message } => write!(f, "parse error at line {}: {}", line, message),
            Error::Io(e) => write!(f, "io error: {}", e),
        }
    }
}

impl std::error::Error for Error {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            Error::Io(e) => Some(e),
            _ => None,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e)
    }
}
