use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("Q(sqrt({0})) is not an imaginary quadratic field of class number one")]
    NotClassNumberOne(i64),
    #[error("operands live in different fields (d={left} vs d={right})")]
    FieldMismatch { left: i64, right: i64 },
    #[error("division by zero element")]
    ZeroDivisor,
    #[error("the zero ideal is not supported")]
    ZeroIdeal,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("invalid exponents p={p}, q={q}: {reason}")]
    InvalidExponents { p: u64, q: u64, reason: &'static str },
    #[error("x^p - y^q != 1 for the given input")]
    NotASolution,
    #[error("division by an interval containing zero")]
    DivisionByIntervalContainingZero,
    #[error("root of an interval with negative part")]
    NegativeRadicand,
    #[error("|z| < 1 could not be certified")]
    NotInUnitDisk,
    #[error("|b| >= 2 required (norm(b) = {0} < 4)")]
    AbsTooSmall(String),
    #[error("inconclusive at {bits} bits: {what}")]
    Inconclusive { bits: u32, what: String },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
