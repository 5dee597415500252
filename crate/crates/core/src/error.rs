use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("delta must be strictly positive")]
    NonPositiveDelta,

    #[error("empty interval: lower endpoint {lo} is not below upper endpoint {hi}")]
    EmptyInterval { lo: String, hi: String },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("no solution found below the search cap {cap}")]
    NotFound { cap: String },

    #[error("basis is not unimodular (det = {det})")]
    NotUnimodular { det: String },

    #[error("cone has no lattice point within the certified radius {radius}")]
    EmptyCone { radius: String },

    #[error("unsupported cone: {0}")]
    UnsupportedCone(&'static str),

    #[error("invalid origami: {0}")]
    InvalidOrigami(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
