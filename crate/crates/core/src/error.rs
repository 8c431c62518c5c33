use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("duplicate interpolation node x = {0}")]
    DuplicateNode(String),

    #[error("invalid radicand {0}: must be a positive non-square integer")]
    InvalidRadicand(String),

    #[error("invalid quadratic irrational: {0}")]
    InvalidIrrational(String),

    #[error("quadratic irrational {0} is not reduced")]
    NotReduced(String),

    #[error("not an ideal presentation: {0}")]
    NotAnIdealPresentation(String),

    #[error("degree mismatch: operator has degree {operator}, form has degree {form}")]
    DegreeMismatch { operator: usize, form: usize },

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("inconsistent family: {0}")]
    InconsistentFamily(String),

    #[error("period varies across the family: {0}")]
    NonUniformFamily(String),

    #[error("family data is not polynomial in n: {0}")]
    NonPolynomialFamily(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("ill-conditioned fit: {0}")]
    ConditioningError(String),

    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
