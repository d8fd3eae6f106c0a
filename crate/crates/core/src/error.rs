use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Non-finite values or otherwise malformed data.
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// Too few observations, or paired inputs of different length.
    #[error("size error: {0}")]
    Size(String),
    #[error("degenerate variance: {0}")]
    DegenerateVariance(String),
    #[error("invalid parameter: {0}")]
    Parameter(String),
    /// A quantity that is nonnegative in exact arithmetic came out
    /// clearly negative.
    #[error("numerical inconsistency: {0}")]
    Numeric(String),
}

pub type Result<T> = std::result::Result<T, Error>;
