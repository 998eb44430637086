use thiserror::Error;

/// Every failure mode surfaced by the library and the command-line front end.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("insufficient precision: {0}")]
    InsufficientPrecision(String),
    #[error("no simple root modulo the residue prime")]
    NoRoot,
    #[error("singular Gram matrix")]
    SingularGram,
    #[error("matrix is not hermitian: {0}")]
    NonHermitian(String),
    #[error("lattice is not self-dual: {0}")]
    NotSelfDual(String),
    #[error("lattice is not modular: {0}")]
    NotModular(String),
    #[error("inconsistent request: {0}")]
    Inconsistent(String),
    #[error("integrality violation: {0}")]
    IntegralityViolation(String),
    #[error("pairing is not perfect: {0}")]
    NotPerfect(String),
    #[error("diagonal is not even: {0}")]
    NotEvenDiagonal(String),
    #[error("construction failed: {0}")]
    ConstructionFailed(String),
    #[error("no such genus: {0}")]
    NoSuchGenus(String),
    #[error("usage: {0}")]
    UsageError(String),
    #[error("i/o: {0}")]
    IOError(String),
}

impl Error {
    /// Short machine-readable name, used as the `reason` field of JSON reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidInput(_) => "InvalidInput",
            Error::InsufficientPrecision(_) => "InsufficientPrecision",
            Error::NoRoot => "NoRoot",
            Error::SingularGram => "SingularGram",
            Error::NonHermitian(_) => "NonHermitian",
            Error::NotSelfDual(_) => "NotSelfDual",
            Error::NotModular(_) => "NotModular",
            Error::Inconsistent(_) => "Inconsistent",
            Error::IntegralityViolation(_) => "IntegralityViolation",
            Error::NotPerfect(_) => "NotPerfect",
            Error::NotEvenDiagonal(_) => "NotEvenDiagonal",
            Error::ConstructionFailed(_) => "ConstructionFailed",
            Error::NoSuchGenus(_) => "NoSuchGenus",
            Error::UsageError(_) => "UsageError",
            Error::IOError(_) => "IOError",
        }
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::UsageError(_) => 2,
            Error::IOError(_) => 3,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}
