use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by constructors, validators and parsers.
///
/// Mathematical findings that are *reports* (an axiom failing on user
/// supplied data) are returned inside report structs instead; these variants
/// cover malformed input, violated preconditions and internal consistency
/// failures.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero in cyclotomic field")]
    DivisionByZero,
    #[error("conductor {to} is not a multiple of {from}")]
    NotDivisible { from: u32, to: u32 },
    #[error("expected {expected} coefficients at conductor {n}, got {got}")]
    CoefficientCount { n: u32, expected: usize, got: usize },
    #[error("root construction failed: {0}")]
    RootConstruction(String),

    #[error("invalid group table: {0}")]
    InvalidGroup(#[from] GroupDefect),
    #[error("group has order {order}, above the bound {bound}")]
    GroupTooLarge { order: usize, bound: usize },
    #[error("invalid quadratic form: {0}")]
    InvalidForm(String),
    #[error("invalid fusion ring: {0}")]
    InvalidRing(String),
    #[error("invalid modular data: {0}")]
    InvalidData(String),
    #[error("rank {rank} exceeds the configured bound {bound}")]
    RankTooLarge { rank: usize, bound: usize },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            message: message.into(),
        }
    }
}

/// Why a multiplication table fails to define a group.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum GroupDefect {
    #[error("table is not square or has an out-of-range entry at row {row}")]
    Shape { row: usize },
    #[error("index 0 is not a two-sided unit (fails at element {element})")]
    NoUnit { element: usize },
    #[error("element {element} has no inverse")]
    NoInverse { element: usize },
    #[error("associativity fails on ({a}, {b}, {c})")]
    NonAssociative { a: usize, b: usize, c: usize },
}
