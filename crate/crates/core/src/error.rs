use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("algebra is not contained in so(eta): {0}")]
    NotInSo(String),
    #[error("complex structure J is absent")]
    NoComplexStructure,
    #[error("unsupported metric: {0}")]
    UnsupportedMetric(String),
    #[error("degenerate gram matrix")]
    DegenerateGram,
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("parameter constraint violated: {0}")]
    Constraint(String),
    #[error("containment violated: {0}")]
    Containment(String),
}

pub type Result<T> = std::result::Result<T, Error>;
