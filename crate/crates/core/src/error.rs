use thiserror::Error;

/// Errors produced by graph loading, the exact oracle, the solver and the estimators.
#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: edge weight must be positive, got {weight}")]
    NonPositiveWeight { line: usize, weight: f64 },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("dense oracle refuses n = {n} (limit {limit})")]
    OracleSize { n: usize, limit: usize },

    #[error("solver did not converge: residual {residual:e} after {iterations} iterations (target {target:e})")]
    Solver {
        residual: f64,
        iterations: usize,
        target: f64,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("mismatched inputs: {0}")]
    Mismatch(String),

    #[error("malformed result file: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
