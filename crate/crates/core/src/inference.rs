//! Forward pass of the five-layer network: Gaussian fuzzification, rule
//! aggregation and the normalized weighted output.
//!
//! Rule `l` pairs the `l`-th membership function of every input axis, so a
//! model with `h` functions per axis has exactly `h` rules. Because all
//! axes share one width, the product of the per-axis memberships of a rule
//! collapses to a radial Gaussian around the rule's center vector, which is
//! how [`aggregate`] evaluates it.

use serde::{Deserialize, Serialize};

use crate::error::{ensure_finite, Error, Result};

/// Structural parameters of a model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelConfig {
    /// Input dimensionality `n`.
    pub inputs: usize,
    /// Membership functions per axis, which is also the rule count `h`.
    pub rules: usize,
    /// Width shared by every membership function, in normalized units.
    pub sigma: f64,
}

impl ModelConfig {
    /// Config with the width matched to the initial grid spacing `2 / (h - 1)`.
    pub fn new(inputs: usize, rules: usize) -> Result<Self> {
        if rules < 2 {
            return Err(Error::Config(format!(
                "need at least 2 membership functions per axis, got {rules}"
            )));
        }
        Self::with_sigma(inputs, rules, initial_spacing(rules))
    }

    pub fn with_sigma(inputs: usize, rules: usize, sigma: f64) -> Result<Self> {
        let config = Self {
            inputs,
            rules,
            sigma,
        };
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if self.inputs < 1 {
            return Err(Error::Config("input dimension must be at least 1".into()));
        }
        if self.rules < 2 {
            return Err(Error::Config(format!(
                "need at least 2 membership functions per axis, got {}",
                self.rules
            )));
        }
        if !(self.sigma.is_finite() && self.sigma > 0.0) {
            return Err(Error::Config(format!(
                "sigma must be positive and finite, got {}",
                self.sigma
            )));
        }
        Ok(())
    }
}

/// Distance between neighbouring centers of an evenly spaced grid on `[-1, 1]`.
pub fn initial_spacing(rules: usize) -> f64 {
    2.0 / (rules as f64 - 1.0)
}

/// Membership function centers (`h` rows by `n` columns) and their shared width.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MembershipGrid {
    rules: usize,
    inputs: usize,
    /// Row-major, `centers[l * inputs + i]` is the center of function `l` on axis `i`.
    centers: Vec<f64>,
    sigma: f64,
}

impl MembershipGrid {
    pub fn new(rows: Vec<Vec<f64>>, sigma: f64) -> Result<Self> {
        let rules = rows.len();
        if rules == 0 {
            return Err(Error::Validation("grid needs at least one rule".into()));
        }
        let inputs = rows[0].len();
        if inputs == 0 {
            return Err(Error::Validation("grid needs at least one input".into()));
        }
        if let Some(l) = rows.iter().position(|r| r.len() != inputs) {
            return Err(Error::Validation(format!(
                "row {l} has {} centers, expected {inputs}",
                rows[l].len()
            )));
        }
        if !(sigma.is_finite() && sigma > 0.0) {
            return Err(Error::Validation(format!(
                "sigma must be positive and finite, got {sigma}"
            )));
        }
        let centers: Vec<f64> = rows.into_iter().flatten().collect();
        ensure_finite(&centers, "centers")?;
        Ok(Self {
            rules,
            inputs,
            centers,
            sigma,
        })
    }

    pub fn rules(&self) -> usize {
        self.rules
    }

    pub fn inputs(&self) -> usize {
        self.inputs
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn center(&self, rule: usize, axis: usize) -> f64 {
        self.centers[rule * self.inputs + axis]
    }

    pub(crate) fn center_mut(&mut self, rule: usize, axis: usize) -> &mut f64 {
        &mut self.centers[rule * self.inputs + axis]
    }

    /// Center vector `c_l` of one rule.
    pub fn rule_center(&self, rule: usize) -> &[f64] {
        &self.centers[rule * self.inputs..(rule + 1) * self.inputs]
    }

    /// Centers of every membership function on one axis, in rule order.
    pub fn axis(&self, axis: usize) -> impl Iterator<Item = f64> + '_ {
        (0..self.rules).map(move |l| self.center(l, axis))
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.centers
            .chunks(self.inputs)
            .map(<[f64]>::to_vec)
            .collect()
    }

    pub(crate) fn check_input(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.inputs {
            return Err(Error::Validation(format!(
                "input has {} components, model expects {}",
                x.len(),
                self.inputs
            )));
        }
        ensure_finite(x, "x")
    }
}

/// Rule activations for one input and their normalized form.
#[derive(Debug, Clone, PartialEq)]
pub struct FiringStrengths {
    /// Activations rescaled so the strongest rule is exactly 1. They differ
    /// from the raw products by one common factor.
    pub aggregates: Vec<f64>,
    /// Normalized fuzzy basis functions; they sum to one.
    pub normalized: Vec<f64>,
}

/// Layer 1: membership level of every input component in every function.
/// Row `l`, column `i` holds `exp(-(x_i - c_li)^2 / (2 sigma^2))`.
pub fn fuzzify(x: &[f64], grid: &MembershipGrid) -> Result<Vec<Vec<f64>>> {
    grid.check_input(x)?;
    let denom = 2.0 * grid.sigma * grid.sigma;
    Ok((0..grid.rules)
        .map(|l| {
            x.iter()
                .zip(grid.rule_center(l))
                .map(|(xi, c)| (-(xi - c).powi(2) / denom).exp())
                .collect()
        })
        .collect())
}

fn squared_distances(x: &[f64], grid: &MembershipGrid) -> Vec<f64> {
    (0..grid.rules)
        .map(|l| {
            x.iter()
                .zip(grid.rule_center(l))
                .map(|(xi, c)| (xi - c).powi(2))
                .sum()
        })
        .collect()
}

/// Layer 2: product of the memberships of each rule, evaluated as a single
/// exponential of the summed squared distances.
pub fn aggregate(x: &[f64], grid: &MembershipGrid) -> Result<Vec<f64>> {
    grid.check_input(x)?;
    let denom = 2.0 * grid.sigma * grid.sigma;
    Ok(squared_distances(x, grid)
        .into_iter()
        .map(|d| (-d / denom).exp())
        .collect())
}

/// Rule activations and normalized basis functions with the minimum squared
/// distance removed from the exponent. The shift cancels in the
/// normalization and keeps the winning rule at exactly 1, so the
/// denominator never underflows.
pub fn firing_strengths(x: &[f64], grid: &MembershipGrid) -> Result<FiringStrengths> {
    grid.check_input(x)?;
    let denom = 2.0 * grid.sigma * grid.sigma;
    let dist = squared_distances(x, grid);
    let nearest = dist.iter().copied().fold(f64::INFINITY, f64::min);
    let aggregates: Vec<f64> = dist
        .iter()
        .map(|d| (-(d - nearest) / denom).exp())
        .collect();
    let total: f64 = aggregates.iter().sum();
    let normalized = aggregates.iter().map(|a| a / total).collect();
    Ok(FiringStrengths {
        aggregates,
        normalized,
    })
}

/// Full forward pass: `y = w^T phi(x)`.
pub fn forward(x: &[f64], grid: &MembershipGrid, w: &[f64]) -> Result<(f64, FiringStrengths)> {
    if w.len() != grid.rules {
        return Err(Error::Validation(format!(
            "weight vector has {} entries, model has {} rules",
            w.len(),
            grid.rules
        )));
    }
    ensure_finite(w, "w")?;
    let strengths = firing_strengths(x, grid)?;
    Ok((dot(w, &strengths.normalized), strengths))
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
