use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid gamma vector: {0}")]
    InvalidGamma(String),

    #[error("datum is not defined over Q: {0}")]
    NotOverQ(String),

    #[error("gamma vector has no unit denominator among the negative entries")]
    NoUnitDenominator,

    #[error("alpha has {alpha} elements but beta has {beta}")]
    LengthMismatch { alpha: usize, beta: usize },

    #[error("datum has length {len} but its gamma vector has natural length {natural}")]
    NotNaturalLength { len: usize, natural: u64 },

    #[error("alpha and beta coincide; the reduced datum would be empty")]
    EmptyReduction,

    #[error("unsupported output format: {0}")]
    UnsupportedFormat(String),

    #[error("census covers weights 0..{got} but weights 0..={needed} are required")]
    InsufficientCensus { needed: usize, got: usize },

    #[error("{0} is not an element of alpha or beta")]
    NotDatumElement(String),

    #[error("index set must be a proper subset of 0..={n}")]
    ImproperSubset { n: usize },

    #[error("denominator of {0} is divisible by the prime")]
    BadDenominator(String),

    #[error("{0}")]
    BadRange(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("prime {p} is not congruent to 1 modulo the level {level}")]
    NotOneModLevel { p: u64, level: u64 },

    #[error("inexact polynomial division: {0}")]
    InexactDivision(String),
}

impl Error {
    /// True for errors caused by malformed text rather than by a value that
    /// parsed but violates an invariant.
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse(_) | Error::UnsupportedFormat(_))
    }
}
