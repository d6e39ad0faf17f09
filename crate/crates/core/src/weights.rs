//! Recursive supervised learners for the output-layer weights.
//!
//! All three learners consume the normalized basis vector `phi` of one
//! sample and the target `y`, and update the weights in place. Updates
//! validate first and only mutate once every check has passed, so a failed
//! update leaves the learner untouched.

use serde::{Deserialize, Serialize};

use crate::error::{ensure_finite, Error, Result};
use crate::inference::dot;

/// Squared regressor norms below this are treated as a zero regressor.
pub const MIN_REGRESSOR_NORM_SQ: f64 = 1e-300;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    /// Exponentially weighted recursive least squares.
    Rls,
    /// One-step Kaczmarz / Widrow-Hoff projection.
    Kaczmarz,
    /// Scalar-gain learner with tracking and smoothing behaviour.
    Adaptive,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LearnerConfig {
    pub algorithm: Algorithm,
    /// Forgetting factor. Ignored by the Kaczmarz learner.
    pub beta: f64,
    /// RLS starts from `P = p_init * I`.
    pub p_init: f64,
    /// Initial accumulator of the adaptive learner.
    pub p0: f64,
}

impl Default for LearnerConfig {
    fn default() -> Self {
        Self {
            algorithm: Algorithm::Kaczmarz,
            beta: 1.0,
            p_init: 1e4,
            p0: 1.0,
        }
    }
}

impl LearnerConfig {
    pub fn new(algorithm: Algorithm) -> Self {
        Self {
            algorithm,
            ..Self::default()
        }
    }

    pub fn with_beta(mut self, beta: f64) -> Self {
        self.beta = beta;
        self
    }

    pub fn validate(&self) -> Result<()> {
        match self.algorithm {
            Algorithm::Rls => {
                if !(self.beta > 0.0 && self.beta <= 1.0) {
                    return Err(Error::Config(format!(
                        "rls forgetting factor must lie in (0, 1], got {}",
                        self.beta
                    )));
                }
                if !(self.p_init.is_finite() && self.p_init > 0.0) {
                    return Err(Error::Config(format!(
                        "p_init must be positive, got {}",
                        self.p_init
                    )));
                }
            }
            Algorithm::Adaptive => {
                if !(0.0..=1.0).contains(&self.beta) {
                    return Err(Error::Config(format!(
                        "adaptive forgetting factor must lie in [0, 1], got {}",
                        self.beta
                    )));
                }
                if !(self.p0.is_finite() && self.p0 > 0.0) {
                    return Err(Error::Config(format!(
                        "p0 must be positive, got {}",
                        self.p0
                    )));
                }
            }
            Algorithm::Kaczmarz => {}
        }
        Ok(())
    }
}

/// Learner-specific recursion state.
#[derive(Debug, Clone, PartialEq)]
pub enum LearnerState {
    /// Row-major `h x h` matrix `P`.
    Rls { cov: Vec<f64> },
    Kaczmarz,
    Adaptive { accumulator: f64 },
}

/// Output weights together with the state of the learner that tunes them.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightLearner {
    config: LearnerConfig,
    weights: Vec<f64>,
    state: LearnerState,
}

impl WeightLearner {
    /// Zero weights and the configured initial recursion state.
    pub fn new(config: LearnerConfig, rules: usize) -> Result<Self> {
        config.validate()?;
        if rules == 0 {
            return Err(Error::Config("learner needs at least one weight".into()));
        }
        let state = match config.algorithm {
            Algorithm::Rls => {
                let mut cov = vec![0.0; rules * rules];
                for i in 0..rules {
                    cov[i * rules + i] = config.p_init;
                }
                LearnerState::Rls { cov }
            }
            Algorithm::Kaczmarz => LearnerState::Kaczmarz,
            Algorithm::Adaptive => LearnerState::Adaptive {
                accumulator: config.p0,
            },
        };
        Ok(Self {
            config,
            weights: vec![0.0; rules],
            state,
        })
    }

    /// Learner starting from the given weights instead of zeros.
    pub fn with_weights(config: LearnerConfig, weights: Vec<f64>) -> Result<Self> {
        ensure_finite(&weights, "weights")?;
        let mut learner = Self::new(config, weights.len())?;
        learner.weights = weights;
        Ok(learner)
    }

    pub fn config(&self) -> &LearnerConfig {
        &self.config
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn state(&self) -> &LearnerState {
        &self.state
    }

    pub fn predict(&self, phi: &[f64]) -> f64 {
        dot(&self.weights, phi)
    }

    /// One online step. Returns the prior error `y - w(k-1)^T phi`.
    pub fn update(&mut self, phi: &[f64], y: f64) -> Result<f64> {
        let prior = y - self.predict(phi);
        match &mut self.state {
            LearnerState::Rls { cov } => {
                rls_update(&mut self.weights, cov, phi, y, self.config.beta)?
            }
            LearnerState::Kaczmarz => kaczmarz_update(&mut self.weights, phi, y)?,
            LearnerState::Adaptive { accumulator } => {
                adaptive_update(&mut self.weights, accumulator, phi, y, self.config.beta)?
            }
        }
        Ok(prior)
    }
}

fn check_sample(weights: &[f64], phi: &[f64], y: f64) -> Result<()> {
    if phi.len() != weights.len() {
        return Err(Error::Validation(format!(
            "regressor has {} entries, expected {}",
            phi.len(),
            weights.len()
        )));
    }
    ensure_finite(phi, "phi")?;
    if !y.is_finite() {
        return Err(Error::Validation(format!("target {y} is not finite")));
    }
    Ok(())
}

/// Exponentially weighted RLS step.
///
/// `cov` is the row-major `h x h` matrix `P(k-1)` and becomes `P(k)`,
/// re-symmetrized as `(P + P^T) / 2`.
pub fn rls_update(weights: &mut [f64], cov: &mut [f64], phi: &[f64], y: f64, beta: f64) -> Result<()> {
    check_sample(weights, phi, y)?;
    let h = weights.len();
    if cov.len() != h * h {
        return Err(Error::Validation(format!(
            "covariance has {} entries, expected {}",
            cov.len(),
            h * h
        )));
    }

    // gain = P(k-1) phi
    let gain: Vec<f64> = cov.chunks(h).map(|row| dot(row, phi)).collect();
    let denom = beta + dot(phi, &gain);
    if !(denom > 0.0) || !denom.is_finite() {
        return Err(Error::NumericalBreakdown(format!(
            "rls denominator beta + phi^T P phi = {denom} is not positive"
        )));
    }

    let innovation = y - dot(weights, phi);
    let scale = innovation / denom;
    for (w, g) in weights.iter_mut().zip(&gain) {
        *w += scale * g;
    }

    for r in 0..h {
        for c in 0..h {
            cov[r * h + c] = (cov[r * h + c] - gain[r] * gain[c] / denom) / beta;
        }
    }
    for r in 0..h {
        for c in r + 1..h {
            let mean = 0.5 * (cov[r * h + c] + cov[c * h + r]);
            cov[r * h + c] = mean;
            cov[c * h + r] = mean;
        }
    }
    Ok(())
}

/// Kaczmarz projection: after the step the model reproduces `y` exactly at `phi`.
pub fn kaczmarz_update(weights: &mut [f64], phi: &[f64], y: f64) -> Result<()> {
    check_sample(weights, phi, y)?;
    let norm_sq = dot(phi, phi);
    if norm_sq < MIN_REGRESSOR_NORM_SQ {
        return Err(Error::DegenerateRegressor(norm_sq));
    }
    let scale = (y - dot(weights, phi)) / norm_sq;
    for (w, p) in weights.iter_mut().zip(phi) {
        *w += scale * p;
    }
    Ok(())
}

/// Scalar-gain step. The accumulator advances to
/// `p(k) = beta * p(k-1) + |phi|^2` before the weights use `1 / p(k)`,
/// so `beta = 0` reproduces [`kaczmarz_update`].
pub fn adaptive_update(
    weights: &mut [f64],
    accumulator: &mut f64,
    phi: &[f64],
    y: f64,
    beta: f64,
) -> Result<()> {
    check_sample(weights, phi, y)?;
    let next = beta * *accumulator + dot(phi, phi);
    if !(next > 0.0) || !next.is_finite() {
        return Err(Error::NumericalBreakdown(format!(
            "adaptive accumulator became {next}"
        )));
    }
    *accumulator = next;
    let scale = (y - dot(weights, phi)) / next;
    for (w, p) in weights.iter_mut().zip(phi) {
        *w += scale * p;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn rls_scalar_first_step() {
        let alpha = 1e4;
        let mut w = [0.0];
        let mut cov = [alpha];
        rls_update(&mut w, &mut cov, &[1.0], 1.0, 1.0).unwrap();
        assert_abs_diff_eq!(w[0], alpha / (1.0 + alpha), epsilon = 1e-15);
        assert_abs_diff_eq!(w[0], 0.999_900_009_999_000_1, epsilon = 1e-15);
        assert_abs_diff_eq!(cov[0], alpha / (1.0 + alpha), epsilon = 1e-12);
    }

    #[test]
    fn rls_zero_innovation_keeps_weights() {
        let mut w = [0.5, -0.25];
        let mut cov = [2.0, 0.1, 0.1, 1.0];
        let phi = [0.3, 0.7];
        let y = 0.5 * 0.3 - 0.25 * 0.7;
        rls_update(&mut w, &mut cov, &phi, y, 0.95).unwrap();
        assert_eq!(w, [0.5, -0.25]);
        assert_ne!(cov, [2.0, 0.1, 0.1, 1.0]);
    }

    #[test]
    fn rls_breakdown_on_indefinite_cov() {
        let mut w = [0.0, 0.0];
        let mut cov = [-5.0, 0.0, 0.0, -5.0];
        let err = rls_update(&mut w, &mut cov, &[0.5, 0.5], 1.0, 1.0).unwrap_err();
        assert!(matches!(err, Error::NumericalBreakdown(_)));
        assert_eq!(cov, [-5.0, 0.0, 0.0, -5.0]);
    }

    #[test]
    fn kaczmarz_from_zero() {
        let mut w = [0.0, 0.0];
        kaczmarz_update(&mut w, &[0.5, 0.5], 2.0).unwrap();
        assert_eq!(w, [2.0, 2.0]);
    }

    #[test]
    fn kaczmarz_hits_target() {
        let phi = [0.1, 0.6, 0.3];
        let mut w = [0.0; 3];
        kaczmarz_update(&mut w, &phi, 1.0).unwrap();
        let norm_sq = dot(&phi, &phi);
        for (wi, pi) in w.iter().zip(&phi) {
            assert_abs_diff_eq!(*wi, pi / norm_sq, epsilon = 1e-15);
        }
        assert_abs_diff_eq!(dot(&w, &phi), 1.0, epsilon = 1e-15);

        let before = w;
        kaczmarz_update(&mut w, &phi, dot(&before, &phi)).unwrap();
        assert_eq!(w, before);
    }

    #[test]
    fn kaczmarz_rejects_zero_regressor() {
        let mut w = [1.0, 1.0];
        assert!(matches!(
            kaczmarz_update(&mut w, &[0.0, 0.0], 1.0),
            Err(Error::DegenerateRegressor(_))
        ));
    }

    #[test]
    fn adaptive_advances_accumulator_first() {
        let mut w = [0.0];
        let mut p = 1.0;
        adaptive_update(&mut w, &mut p, &[1.0], 1.0, 1.0).unwrap();
        assert_eq!(p, 2.0);
        // using p(k-1) would have given 1.0
        assert_eq!(w[0], 0.5);
    }

    #[test]
    fn adaptive_zero_innovation() {
        let mut w = [1.0, 3.0];
        let mut p = 0.7;
        adaptive_update(&mut w, &mut p, &[0.25, 0.75], 2.5, 0.9).unwrap();
        assert_eq!(w, [1.0, 3.0]);
        assert_abs_diff_eq!(p, 0.9 * 0.7 + 0.625, epsilon = 1e-15);
    }

    #[test]
    fn adaptive_breakdown() {
        let mut w = [0.0, 0.0];
        let mut p = 1.0;
        let err = adaptive_update(&mut w, &mut p, &[0.0, 0.0], 1.0, 0.0).unwrap_err();
        assert!(matches!(err, Error::NumericalBreakdown(_)));
        assert_eq!(p, 1.0);
    }

    #[test]
    fn config_ranges() {
        assert!(LearnerConfig::new(Algorithm::Rls).with_beta(0.0).validate().is_err());
        assert!(LearnerConfig::new(Algorithm::Rls).with_beta(1.0).validate().is_ok());
        assert!(LearnerConfig::new(Algorithm::Adaptive).with_beta(0.0).validate().is_ok());
        assert!(LearnerConfig::new(Algorithm::Adaptive).with_beta(1.1).validate().is_err());
        assert!(LearnerConfig::new(Algorithm::Kaczmarz).with_beta(7.0).validate().is_ok());
    }

    #[test]
    fn learner_update_reports_prior_error() {
        let mut learner = WeightLearner::new(LearnerConfig::default(), 2).unwrap();
        let prior = learner.update(&[0.5, 0.5], 2.0).unwrap();
        assert_eq!(prior, 2.0);
        assert_eq!(learner.weights(), &[2.0, 2.0]);
        assert!(learner.update(&[0.5], 1.0).is_err());
    }

    #[test]
    fn rls_learner_starts_from_scaled_identity() {
        let learner = WeightLearner::new(LearnerConfig::new(Algorithm::Rls), 3).unwrap();
        match learner.state() {
            LearnerState::Rls { cov } => {
                assert_eq!(cov[0], 1e4);
                assert_eq!(cov[1], 0.0);
                assert_eq!(cov[8], 1e4);
            }
            other => panic!("unexpected state {other:?}"),
        }
    }
}
