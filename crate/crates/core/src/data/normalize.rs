use serde::{Deserialize, Serialize};

use crate::error::{ensure_finite, Error, Result};

/// Affine map from `[observed_min, observed_max]` onto `[-1, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormalizationMap {
    pub observed_min: f64,
    pub observed_max: f64,
}

impl NormalizationMap {
    pub fn new(observed_min: f64, observed_max: f64) -> Result<Self> {
        if !(observed_min.is_finite() && observed_max.is_finite()) || observed_min >= observed_max
        {
            return Err(Error::DegenerateRange {
                min: observed_min,
                max: observed_max,
            });
        }
        Ok(Self {
            observed_min,
            observed_max,
        })
    }

    /// Map spanning the extremes of `series`.
    pub fn fit(series: &[f64]) -> Result<Self> {
        if series.is_empty() {
            return Err(Error::InsufficientData("cannot normalize an empty series".into()));
        }
        ensure_finite(series, "series")?;
        let (min, max) = series
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
                (lo.min(v), hi.max(v))
            });
        Self::new(min, max)
    }

    fn span(&self) -> f64 {
        self.observed_max - self.observed_min
    }

    pub fn normalize(&self, v: f64) -> f64 {
        2.0 * (v - self.observed_min) / self.span() - 1.0
    }

    pub fn denormalize(&self, u: f64) -> f64 {
        self.observed_min + 0.5 * (u + 1.0) * self.span()
    }

    pub fn normalize_all(&self, series: &[f64]) -> Vec<f64> {
        series.iter().map(|&v| self.normalize(v)).collect()
    }

    pub fn denormalize_all(&self, series: &[f64]) -> Vec<f64> {
        series.iter().map(|&u| self.denormalize(u)).collect()
    }
}

/// Min-max normalization of a whole series onto `[-1, 1]`.
pub fn normalize(series: &[f64]) -> Result<(Vec<f64>, NormalizationMap)> {
    let map = NormalizationMap::fit(series)?;
    Ok((map.normalize_all(series), map))
}
