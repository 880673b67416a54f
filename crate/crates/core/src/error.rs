use thiserror::Error;

/// Every failure the engine can report. Domain errors map to CLI exit code 1.
#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("pole at t = {at}: denominator {den} vanishes")]
    Pole { den: String, at: String },

    #[error("cannot parse {what}: {input:?}")]
    Parse { what: &'static str, input: String },

    #[error("unsupported field order p = {p}, e = {e}: {reason}")]
    InvalidField { p: u32, e: u32, reason: String },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("ambient mismatch: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },

    #[error("{what} exceeds the configured limit ({requested} > {limit})")]
    LimitExceeded {
        what: &'static str,
        requested: u128,
        limit: u128,
    },

    #[error("subspace is not contained in the upper bound")]
    NotContained,

    #[error("object mismatch: {0}")]
    ObjectMismatch(String),

    #[error("morphism is not an endomorphism")]
    NotEndomorphism,

    #[error("morphism is not idempotent")]
    NotIdempotent,

    #[error("parameter t = {t} is not q^r for q = {q}, r = {r}")]
    ParameterMismatch { t: String, q: u32, r: usize },

    #[error("operation requires a numeric parameter")]
    NonNumeric,

    #[error("gaussian binomial index out of range: k = {k}, n = {n}")]
    BinomialRange { n: usize, k: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
