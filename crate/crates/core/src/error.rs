use thiserror::Error;

use crate::gaussian::GaussianInt;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero is not allowed here")]
    Zero,
    #[error("{0} is divisible by 1+i")]
    NotOdd(GaussianInt),
    #[error("{0} is not primary")]
    NotPrimary(GaussianInt),
    #[error("{0} is not a primary prime")]
    NotPrimaryPrime(GaussianInt),
    #[error("modulus exponent {0} outside 3..=9")]
    ModulusOutOfRange(u32),
    #[error("value is not fourth-power-free")]
    NotFourthPowerFree,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid divisor class: {0}")]
    InvalidDivisor(String),
    #[error("hypothesis not met: {0}")]
    Hypothesis(String),
    #[error("cannot parse Gaussian integer from {0:?}")]
    Parse(String),
    #[error("vertex {0} is not in the graph")]
    UnknownVertex(usize),
    #[error("invalid place: {0}")]
    InvalidPlace(String),
}

pub type Result<T> = std::result::Result<T, Error>;
