use thiserror::Error;

/// Errors raised by the algebra, sequence and map routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus {0} is not a prime in [2, 2^31)")]
    NotPrime(u64),
    #[error("operands live in different fields (p={0} vs p={1})")]
    ModulusMismatch(u32, u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("linear system has no solution")]
    NoSolution,
    #[error("linear system has more than one solution")]
    NonUnique,
    #[error("matrix is singular")]
    Singular,
    #[error("insufficient data: {0}")]
    InsufficientData(String),
    #[error("polynomial has zero constant term")]
    ZeroConstantTerm,
    #[error("polynomial order exceeds bound {0}")]
    OrderExceedsBound(usize),
    #[error("leading coefficient of the divisor is singular")]
    SingularLeadingCoefficient,
    #[error("constant coefficient A0 is singular")]
    SingularConstantCoefficient,
    #[error("point encoding out of range: {0}")]
    EncodingOutOfRange(String),
    #[error("orbit did not close within {0} steps")]
    BoundExceeded(usize),
    #[error("starting point is not on a cycle")]
    NotOnCycle,
    #[error("orbit is not periodic (preperiod {0})")]
    NotPeriodic(usize),
    #[error("no verified inverse within {0} terms")]
    Exhausted(usize),
    #[error("too large: {0}")]
    TooLarge(String),
    #[error("no annihilating polynomial of degree <= {0}")]
    NotFound(usize),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
