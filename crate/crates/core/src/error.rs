use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("invalid monomial order: {0}")]
    InvalidOrder(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("index {index} out of range 1..={len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("operands belong to different algebras")]
    MixedAlgebras,
    #[error("empty generator list")]
    EmptyGenerators,
    #[error("zero polynomial in divisor list (position {0})")]
    ZeroDivisor(usize),
    #[error("resource guard exceeded: {0}")]
    ResourceGuard(String),
    #[error("matrix shape: {0}")]
    Shape(String),
    #[error("{0}")]
    NotIdempotent(String),
    #[error("stability not decided: {0}")]
    StabilityNotDecided(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("entry is not a rational constant: {0}")]
    NotConstant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
