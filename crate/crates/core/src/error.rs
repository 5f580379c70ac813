use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid geometry: a = {a}, delta = {delta} (need a > 0 and 0 < delta < 1)")]
    InvalidGeometry { a: f64, delta: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("no convergence after {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("lambda = {lambda} is within the pole guard of a left-channel log-derivative")]
    PoleProximity { lambda: f64 },

    #[error("need at least {needed} nodes, got {got}")]
    TooFewNodes { needed: usize, got: usize },

    #[error("grid step {h} does not divide {what} = {value}")]
    NonCommensurate { h: f64, what: &'static str, value: f64 },

    #[error("outside method validity: {0}")]
    OutOfValidity(String),

    #[error("point ({x}, {y}) lies outside the quarter domain")]
    OutsideDomain { x: f64, y: f64 },

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Short machine-readable tag used in record status fields.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidGeometry { .. } => "invalid-geometry",
            Error::InvalidArgument(_) => "invalid-argument",
            Error::NoConvergence { .. } => "no-convergence",
            Error::PoleProximity { .. } => "pole-proximity",
            Error::TooFewNodes { .. } => "too-few-nodes",
            Error::NonCommensurate { .. } => "non-commensurate",
            Error::OutOfValidity(_) => "out-of-validity",
            Error::OutsideDomain { .. } => "outside-domain",
            Error::InsufficientData(_) => "insufficient-data",
            Error::Parse(_) => "parse",
            Error::Io(_) => "io",
            Error::Json(_) => "json",
            Error::Csv(_) => "csv",
        }
    }
}
