use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("the determined exponent range is empty")]
    EmptyWindow,

    #[error("invalid spec: {0}")]
    InvalidSpec(String),

    #[error("exponent {exponent} of series {series} lies outside the known window")]
    OutOfWindow { series: String, exponent: i64 },

    #[error("entry ({row}, {col}) is truncation-affected")]
    UntrustedEntry { row: i64, col: i64 },

    #[error("degenerate spec: {0}")]
    DegenerateSpec(String),

    #[error("point hits the pole {0}")]
    PoleHit(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("zero coefficient: {0}")]
    ZeroCoefficient(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
