use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument failed a precondition (non-finite value, wrong length, ...).
    #[error("invalid input: {0}")]
    Validation(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    /// A recursion lost the positivity it depends on (RLS denominator,
    /// adaptive accumulator, Kohonen step accumulator).
    #[error("numerical breakdown: {0}")]
    NumericalBreakdown(String),

    #[error("degenerate regressor: squared norm {0:e} is too small")]
    DegenerateRegressor(f64),

    #[error("degenerate range: min {min} is not below max {max}")]
    DegenerateRange { min: f64, max: f64 },

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: u64,
        message: String,
    },

    #[error("metric undefined: {0}")]
    MetricUndefined(String),

    #[error("oracle not applicable: {0}")]
    OracleInapplicable(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn ensure_finite(values: &[f64], what: &str) -> Result<()> {
    match values.iter().position(|v| !v.is_finite()) {
        Some(i) => Err(Error::Validation(format!(
            "{what}[{i}] = {} is not finite",
            values[i]
        ))),
        None => Ok(()),
    }
}
