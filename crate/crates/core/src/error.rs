use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,

    #[error("division by zero")]
    DivisionByZero,

    #[error("radicand {0} is a perfect square or not positive")]
    BadRadicand(BigInt),

    #[error("radicands {0} and {1} do not span the same quadratic field")]
    MixedRadicand(BigInt, BigInt),

    #[error("value {0} lies outside [0, 1]")]
    OutOfUnitInterval(String),

    #[error("point is a pole of the Möbius map")]
    Pole,

    #[error("illegal digit ({a}, {eps})")]
    IllegalDigit { a: BigInt, eps: i64 },

    #[error("iteration cap of {0} exceeded")]
    IterationCap(usize),

    #[error("expected an irrational input")]
    NotIrrational,

    #[error("expected a rational input")]
    NotRational,

    #[error("{0} has a single expansion")]
    SingleExpansion(String),

    #[error("malformed expansion: {0}")]
    MalformedExpansion(String),

    #[error("convergents do not come from a prefix of the expansion of x")]
    PrefixMismatch,

    #[error("need {need} digits but only {have} are available")]
    InsufficientDigits { need: usize, have: usize },

    #[error("parse error at column {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
