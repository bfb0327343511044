use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("coefficient of degree {requested} requested beyond truncation order {order}")]
    Truncation { requested: i64, order: i64 },
    #[error("no polynomial solution exists")]
    NoPolynomialSolution,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
