use thiserror::Error;

/// Errors raised anywhere in the crate.
#[derive(Debug, Error)]
pub enum KnotError {
    #[error("{what} is undefined at x = {x}")]
    Domain { what: String, x: f64 },

    #[error("quadrature on [{lo}, {hi}] did not converge (achieved error estimate {achieved:e})")]
    Quadrature { lo: f64, hi: f64, achieved: f64 },

    #[error("invalid curve parameters: {0}")]
    InvalidCurve(String),

    #[error("invalid knot vector: {0}")]
    InvalidKnots(String),

    #[error("non-finite input: {0}")]
    NonFinite(String),

    #[error("invalid solver configuration: {0}")]
    InvalidConfig(String),

    #[error("point is not a KKT point (stationarity residual {residual:e} > {tol:e})")]
    NotKkt { residual: f64, tol: f64 },

    #[error("solver aborted: {0}")]
    Solver(String),

    #[error("catalog: {0}")]
    Catalog(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = KnotError> = std::result::Result<T, E>;
