use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands live in different quadratic fields: sqrt({0}) and sqrt({1})")]
    MixedField(u64, u64),

    #[error("division by zero")]
    DivisionByZero,

    #[error("square root of a negative number")]
    NegativeRadicand,

    #[error("square-free part of the radicand does not fit in 64 bits")]
    RadicandTooLarge,

    #[error("cannot parse `{input}`: {reason}")]
    Parse { input: String, reason: String },

    #[error("operator factor r = {0} is not supported (need r >= 1, or r > 0 in relaxed mode)")]
    RNotSupported(String),

    #[error("r = {0} must be rational here")]
    RNotRational(String),

    #[error("negative entry at index {0}")]
    NegativeEntry(usize),

    #[error("sequence is not {r}-factor log-concave (fails at index {index})")]
    NotRFactorLC { r: String, index: usize },

    #[error("criterion constant {given} is below the sound threshold {threshold}")]
    ThresholdTooLow { given: String, threshold: String },

    #[error("step factor must be 1 or equal to the criterion constant")]
    UnsupportedStep,

    #[error("odd-parity input is not supported by the symmetric criterion")]
    ParityUnsupported,

    #[error("invalid exponent gaps: {0}")]
    InvalidGaps(String),

    #[error("{0} is not an exact rational power")]
    InexactPower(String),

    #[error("point is not in the region (surface {0} violated)")]
    NotInRegion(usize),

    #[error("coordinate {0} is not positive")]
    NonPositiveCoordinate(usize),

    #[error("sequence is not a symmetric padded sequence: {0}")]
    NotSymmetric(String),

    #[error("invalid C = {0}: {1}")]
    InvalidC(String, String),

    #[error("invalid a = {given}: must exceed {bound}")]
    InvalidA { given: String, bound: String },

    #[error("base core is not r-factor log-concave (fails at index {0})")]
    QNotRFactorLC(usize),

    #[error("witness needs a core of at least two entries")]
    WitnessTooShort,

    #[error("{0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
