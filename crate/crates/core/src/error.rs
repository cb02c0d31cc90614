use thiserror::Error;

/// Errors raised by group arithmetic, expression evaluation and verification.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not an endomorphism candidate for Aut: multiplication by 0")]
    ZeroMultiplier,
    #[error("host mismatch: {0}")]
    HostMismatch(String),
    #[error("{value} is not an element of {host}")]
    NotInHost { value: String, host: String },
    #[error("quotient not finite: {0}")]
    InfiniteQuotient(String),
    #[error("a-adic base mismatch: {0}")]
    BaseMismatch(String),
    #[error("insufficient truncation level: {0}")]
    Truncation(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("invalid table: {0}")]
    InvalidTable(String),
    #[error("not a characteristic function at this truncation: {0}")]
    NotCharacteristic(String),
    #[error("Gram matrix is not Hermitian at ({0}, {1})")]
    NonHermitian(usize, usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
