use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// Invalid argument or model parameter.
    #[error("validation: {0}")]
    Validation(String),
    /// Tabulated covariance queried beyond its last knot.
    #[error("lag {t} outside tabulated range [0, {max}]")]
    OutOfTableRange { t: f64, max: f64 },
    /// A variance (or 1 − r) hit zero where a denominator needs it positive.
    #[error("degenerate variance: {0}")]
    DegenerateVariance(String),
    /// Adaptive quadrature did not reach tolerance within its budget.
    #[error("quadrature failure: {0}")]
    QuadratureFailure(String),
    /// Local-exponent regression rejected (residual too large).
    #[error("fit failure: {0}")]
    FitFailure(String),
    /// Circulant embedding not nonnegative definite and no fallback possible.
    #[error("embedding failure: {0}")]
    EmbeddingFailure(String),
    /// Dense Cholesky failed even after jitter.
    #[error("cholesky failure: {0}")]
    CholeskyFailure(String),
    /// Grid points do not land on the simulation path grid.
    #[error("incommensurate grid: {0}")]
    IncommensurateGrid(String),
    /// Argument outside the mathematical domain of the formula.
    #[error("domain error: {0}")]
    DomainError(String),
    /// Malformed serialized field sample.
    #[error("decode error: {0}")]
    Decode(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }
}
