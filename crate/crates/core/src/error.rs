use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("limit diverges in coordinate {coord}")]
    Diverges { coord: usize },
    #[error("element is not in the image: {0}")]
    NotInImage(String),
    #[error("word is not reduced: {0}")]
    NonReducedWord(String),
    #[error("ill-formed input: {0}")]
    IllFormed(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid Cartan matrix: {0}")]
    InvalidCartan(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("exponent is not a character of the root lattice: {0}")]
    NotCharacter(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Outcome of an identity check; the error describes the first mismatch.
pub type CheckResult<T> = std::result::Result<T, String>;
