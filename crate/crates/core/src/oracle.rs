//! Reference computations used to check the online learners.
//!
//! Nothing here shares code with the recursive update routines: the batch
//! solver works on the assembled normal equations through `nalgebra`.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    BatchLeastSquares,
    RunningMean,
    FineStepIntegration,
    HandUnrolled,
}

/// An expected value together with the tolerance it must be met at.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleResult {
    pub expected: Vec<f64>,
    pub tolerance: f64,
    pub provenance: Provenance,
}

impl OracleResult {
    pub fn new(expected: Vec<f64>, tolerance: f64, provenance: Provenance) -> Self {
        Self {
            expected,
            tolerance,
            provenance,
        }
    }

    /// Largest componentwise deviation of `actual` from the expectation.
    pub fn max_deviation(&self, actual: &[f64]) -> f64 {
        assert_eq!(actual.len(), self.expected.len(), "length mismatch");
        self.expected
            .iter()
            .zip(actual)
            .map(|(e, a)| (e - a).abs())
            .fold(0.0, f64::max)
    }

    pub fn accepts(&self, actual: &[f64]) -> bool {
        self.max_deviation(actual) <= self.tolerance
    }
}

/// Least-squares weights of `regressors * w ~ targets` from the normal
/// equations `(X^T X) w = X^T y`, solved by Cholesky factorization.
pub fn batch_least_squares(regressors: &[Vec<f64>], targets: &[f64]) -> Result<Vec<f64>> {
    let rows = regressors.len();
    if rows != targets.len() {
        return Err(Error::Validation(format!(
            "{rows} regressor rows but {} targets",
            targets.len()
        )));
    }
    let cols = regressors.first().map_or(0, Vec::len);
    if cols == 0 || rows < cols {
        return Err(Error::OracleInapplicable(format!(
            "need at least as many rows as columns, got {rows}x{cols}"
        )));
    }
    if regressors.iter().any(|r| r.len() != cols) {
        return Err(Error::Validation("ragged regressor matrix".into()));
    }

    let x = DMatrix::from_fn(rows, cols, |r, c| regressors[r][c]);
    let y = DVector::from_column_slice(targets);
    let gram = x.transpose() * &x;

    // relative pivot check: Cholesky alone accepts nearly singular systems
    let svd = gram.clone().svd(false, false);
    let largest = svd.singular_values.max();
    let smallest = svd.singular_values.min();
    if !(smallest > largest * 1e-12) {
        return Err(Error::OracleInapplicable(
            "regressor matrix is rank deficient".into(),
        ));
    }
    let chol = gram.cholesky().ok_or_else(|| {
        Error::OracleInapplicable("normal equations are not positive definite".into())
    })?;
    Ok(chol.solve(&(x.transpose() * y)).as_slice().to_vec())
}

pub fn running_mean(values: &[f64]) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::InsufficientData("mean of an empty list".into()));
    }
    Ok(values.iter().sum::<f64>() / values.len() as f64)
}
