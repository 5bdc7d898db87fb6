use thiserror::Error;

/// Errors produced by the embedding pipeline and its helpers.
#[derive(Debug, Error)]
pub enum LleError {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("empty support: the hole covers the whole parameter domain")]
    EmptySupport,

    #[error("no rows")]
    NoRows,

    #[error("parse error at line {line}: {message}")]
    Parse { line: u64, message: String },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("infeasible stationarity: 1ᵀC⁺1 vanishes")]
    InfeasibleStationarity,

    #[error("at point {index}: {source}")]
    AtPoint {
        index: usize,
        #[source]
        source: Box<LleError>,
    },

    #[error("rank condition violated: rank(X) < {d} (singular value ratio {ratio:e})")]
    RankDeficient { d: usize, ratio: f64 },

    #[error("eigensolver did not converge (max relative residual {max_residual:e})")]
    EigenNonConvergence { max_residual: f64, residuals: Vec<f64> },

    #[error("degenerate input: {0}")]
    Degenerate(String),
}

pub type Result<T> = std::result::Result<T, LleError>;
