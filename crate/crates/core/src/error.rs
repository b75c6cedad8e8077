//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("cannot parse rational from {0:?} (expected \"num/den\" with integer parts)")]
    ParseRational(String),

    #[error("parameter {0} must be nonzero")]
    ZeroParameter(&'static str),

    #[error("double factorial [n]!! requires even n, got {0}")]
    OddDoubleFactorial(usize),

    #[error("operands belong to different (p,q) contexts")]
    ContextMismatch,

    #[error("series is not invertible: constant term is zero or non-constant")]
    NonInvertibleSeries,

    #[error("sequence is degenerate (a_0 = 0): {0} is undefined")]
    DegenerateSequence(&'static str),

    #[error("index {index} out of range (stored order {order})")]
    IndexOutOfRange { index: usize, order: usize },

    #[error("{0}")]
    InvalidArgument(String),

    #[error("sum of constant determining coefficients is zero: degree collapses")]
    ZeroConstantSum,

    #[error("scalar multiplication by zero does not preserve polynomial sets")]
    ZeroScalar,

    #[error("polynomial set is not triangular: component {0} does not have exact degree {0}")]
    DegreeViolation(usize),

    #[error("unknown family {0:?} (expected bernoulli, euler, genocchi or hermite)")]
    UnknownFamily(String),
}

pub type Result<T> = std::result::Result<T, Error>;
