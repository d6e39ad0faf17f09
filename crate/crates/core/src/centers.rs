//! Winner-take-all self-learning of the membership function centers.
//!
//! Each axis is handled independently: the center nearest to the input
//! component wins and moves toward it, every other center stays put. The
//! winners on different axes may belong to different rules.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::inference::{MembershipGrid, ModelConfig};

/// How the step size of a winning center is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StepRule {
    /// `1 / k`, with `k` the number of wins so far: an online running mean.
    Kmeans,
    /// `1 / p` with the accumulator `p <- beta * p + x_i^2`.
    Kohonen,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CenterConfig {
    pub rule: StepRule,
    /// Forgetting factor of the Kohonen accumulator.
    pub beta: f64,
    /// Initial value of every Kohonen accumulator.
    pub p0: f64,
}

impl Default for CenterConfig {
    fn default() -> Self {
        Self {
            rule: StepRule::Kmeans,
            beta: 1.0,
            p0: 1.0,
        }
    }
}

impl CenterConfig {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.beta) {
            return Err(Error::Config(format!(
                "center forgetting factor must lie in [0, 1], got {}",
                self.beta
            )));
        }
        if !(self.p0.is_finite() && self.p0 > 0.0) {
            return Err(Error::Config(format!(
                "center accumulator p0 must be positive, got {}",
                self.p0
            )));
        }
        Ok(())
    }
}

/// Evenly spaced centers on `[-1, 1]` along every axis.
pub fn init_centers(config: &ModelConfig) -> Result<MembershipGrid> {
    config.validate()?;
    let h = config.rules;
    let span = (h - 1) as f64;
    let rows = (0..h)
        .map(|l| vec![-1.0 + 2.0 * l as f64 / span; config.inputs])
        .collect();
    MembershipGrid::new(rows, config.sigma)
}

/// Index of the nearest center on each axis; ties go to the lower index.
pub fn find_winners(x: &[f64], grid: &MembershipGrid) -> Result<Vec<usize>> {
    grid.check_input(x)?;
    Ok(x.iter()
        .enumerate()
        .map(|(i, &xi)| {
            let mut best = 0;
            let mut best_dist = (xi - grid.center(0, i)).abs();
            for l in 1..grid.rules() {
                let d = (xi - grid.center(l, i)).abs();
                if d < best_dist {
                    best = l;
                    best_dist = d;
                }
            }
            best
        })
        .collect())
}

/// Step `1 / k` for a center that has now won `wins` times.
pub fn kmeans_step(wins: u64) -> f64 {
    debug_assert!(wins >= 1);
    1.0 / wins as f64
}

/// Advances a Kohonen accumulator and returns `(p, step)`, the step being
/// `1 / p` clamped to at most 1.
pub fn kohonen_step(accumulator: f64, x_i: f64, beta: f64) -> Result<(f64, f64)> {
    let p = beta * accumulator + x_i * x_i;
    if !(p > 0.0) || !p.is_finite() {
        return Err(Error::NumericalBreakdown(format!(
            "kohonen accumulator became {p}"
        )));
    }
    Ok((p, (1.0 / p).min(1.0)))
}

/// Win counters and step accumulators, one per center coordinate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CenterLearner {
    config: CenterConfig,
    rules: usize,
    inputs: usize,
    win_counts: Vec<u64>,
    accumulators: Vec<f64>,
    samples: u64,
}

impl CenterLearner {
    pub fn new(config: CenterConfig, rules: usize, inputs: usize) -> Result<Self> {
        config.validate()?;
        Ok(Self {
            config,
            rules,
            inputs,
            win_counts: vec![0; rules * inputs],
            accumulators: vec![config.p0; rules * inputs],
            samples: 0,
        })
    }

    pub fn config(&self) -> &CenterConfig {
        &self.config
    }

    pub fn wins(&self, rule: usize, axis: usize) -> u64 {
        self.win_counts[rule * self.inputs + axis]
    }

    pub fn accumulator(&self, rule: usize, axis: usize) -> f64 {
        self.accumulators[rule * self.inputs + axis]
    }

    /// Number of samples processed so far.
    pub fn samples(&self) -> u64 {
        self.samples
    }

    /// Records a win for `(rule, axis)` and returns the K-means step.
    pub fn step_kmeans(&mut self, rule: usize, axis: usize) -> f64 {
        let k = &mut self.win_counts[rule * self.inputs + axis];
        *k += 1;
        kmeans_step(*k)
    }

    /// Records a win for `(rule, axis)`, advances its accumulator and
    /// returns the clamped Kohonen step. On error nothing is recorded.
    pub fn step_kohonen(&mut self, rule: usize, axis: usize, x_i: f64) -> Result<f64> {
        let idx = rule * self.inputs + axis;
        let (p, step) = kohonen_step(self.accumulators[idx], x_i, self.config.beta)?;
        self.accumulators[idx] = p;
        self.win_counts[idx] += 1;
        Ok(step)
    }

    /// Moves the winning center of every axis toward `x` and returns the
    /// winners. Either every axis is updated or, on error, none is.
    pub fn update(&mut self, grid: &mut MembershipGrid, x: &[f64]) -> Result<Vec<usize>> {
        if grid.rules() != self.rules || grid.inputs() != self.inputs {
            return Err(Error::Validation(format!(
                "grid is {}x{}, learner tracks {}x{}",
                grid.rules(),
                grid.inputs(),
                self.rules,
                self.inputs
            )));
        }
        let winners = find_winners(x, grid)?;

        if self.config.rule == StepRule::Kohonen {
            for (i, &l) in winners.iter().enumerate() {
                kohonen_step(self.accumulator(l, i), x[i], self.config.beta)?;
            }
        }

        for (i, &l) in winners.iter().enumerate() {
            let step = match self.config.rule {
                StepRule::Kmeans => self.step_kmeans(l, i),
                StepRule::Kohonen => self.step_kohonen(l, i, x[i])?,
            };
            let c = grid.center_mut(l, i);
            *c += step * (x[i] - *c);
        }
        self.samples += 1;
        Ok(winners)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn grid5(inputs: usize) -> MembershipGrid {
        init_centers(&ModelConfig::new(inputs, 5).unwrap()).unwrap()
    }

    #[test]
    fn init_five() {
        let g = grid5(3);
        for i in 0..3 {
            assert_eq!(g.axis(i).collect::<Vec<_>>(), vec![-1.0, -0.5, 0.0, 0.5, 1.0]);
        }
    }

    #[test]
    fn init_small() {
        let g = init_centers(&ModelConfig::new(1, 2).unwrap()).unwrap();
        assert_eq!(g.axis(0).collect::<Vec<_>>(), vec![-1.0, 1.0]);
        let g = init_centers(&ModelConfig::new(2, 3).unwrap()).unwrap();
        assert_eq!(g.axis(1).collect::<Vec<_>>(), vec![-1.0, 0.0, 1.0]);
    }

    #[test]
    fn init_endpoints_exact_for_awkward_counts() {
        for h in 2..40 {
            let g = init_centers(&ModelConfig::new(1, h).unwrap()).unwrap();
            assert_eq!(g.center(0, 0), -1.0);
            assert_eq!(g.center(h - 1, 0), 1.0);
        }
    }

    #[test]
    fn init_rejects_single_function() {
        let cfg = ModelConfig {
            inputs: 2,
            rules: 1,
            sigma: 1.0,
        };
        assert!(matches!(init_centers(&cfg), Err(Error::Config(_))));
    }

    #[test]
    fn winners_nearest_per_axis() {
        let g = grid5(2);
        assert_eq!(find_winners(&[0.3, -0.8], &g).unwrap(), vec![3, 0]);
        assert_eq!(find_winners(&[0.0, 1.0], &g).unwrap(), vec![2, 4]);
    }

    #[test]
    fn winners_tie_goes_low() {
        let g = grid5(1);
        assert_eq!(find_winners(&[0.25], &g).unwrap(), vec![2]);
        assert_eq!(find_winners(&[-0.75], &g).unwrap(), vec![0]);
    }

    #[test]
    fn first_win_jumps_to_input() {
        let mut g = grid5(2);
        let mut learner = CenterLearner::new(CenterConfig::default(), 5, 2).unwrap();
        learner.update(&mut g, &[0.3, -0.8]).unwrap();
        assert_eq!(g.center(3, 0), 0.3);
        assert_eq!(g.center(0, 1), -0.8);
        assert_eq!(learner.wins(3, 0), 1);
        assert_eq!(learner.wins(0, 1), 1);
    }

    #[test]
    fn losers_do_not_move() {
        let mut g = grid5(2);
        let before = g.clone();
        let mut learner = CenterLearner::new(CenterConfig::default(), 5, 2).unwrap();
        let winners = learner.update(&mut g, &[0.1, 0.9]).unwrap();
        for i in 0..2 {
            for l in 0..5 {
                if l != winners[i] {
                    assert_eq!(g.center(l, i).to_bits(), before.center(l, i).to_bits());
                }
            }
        }
    }

    #[test]
    fn kmeans_running_mean() {
        let mut g = MembershipGrid::new(vec![vec![-1.0], vec![0.9]], 0.5).unwrap();
        let mut learner = CenterLearner::new(CenterConfig::default(), 2, 1).unwrap();
        for v in [0.2, 0.4, 0.6] {
            assert_eq!(learner.update(&mut g, &[v]).unwrap(), vec![1]);
        }
        assert_abs_diff_eq!(g.center(1, 0), 0.4, epsilon = 1e-15);
        assert_eq!(learner.wins(1, 0), 3);
    }

    #[test]
    fn kmeans_steps() {
        let mut learner = CenterLearner::new(CenterConfig::default(), 2, 1).unwrap();
        assert_eq!(learner.step_kmeans(0, 0), 1.0);
        learner.step_kmeans(0, 0);
        learner.step_kmeans(0, 0);
        assert_eq!(learner.step_kmeans(0, 0), 0.25);
    }

    #[test]
    fn kohonen_first_win() {
        let config = CenterConfig {
            rule: StepRule::Kohonen,
            beta: 1.0,
            p0: 1.0,
        };
        let mut learner = CenterLearner::new(config, 2, 1).unwrap();
        assert_eq!(learner.step_kohonen(0, 0, 1.0).unwrap(), 0.5);
        assert_eq!(learner.accumulator(0, 0), 2.0);
    }

    #[test]
    fn kohonen_step_is_clamped() {
        let (p, step) = kohonen_step(1.0, 0.5, 0.0).unwrap();
        assert_eq!(p, 0.25);
        assert_eq!(step, 1.0);
    }

    #[test]
    fn kohonen_zero_accumulator_errors() {
        assert!(matches!(
            kohonen_step(1.0, 0.0, 0.0),
            Err(Error::NumericalBreakdown(_))
        ));
        let config = CenterConfig {
            rule: StepRule::Kohonen,
            beta: 0.0,
            p0: 1.0,
        };
        let mut g = grid5(2);
        let before = g.clone();
        let mut learner = CenterLearner::new(config, 5, 2).unwrap();
        let snapshot = learner.clone();
        // second axis hits the degenerate accumulator; first axis must not move either
        assert!(learner.update(&mut g, &[0.4, 0.0]).is_err());
        assert_eq!(g, before);
        assert_eq!(learner, snapshot);
    }

    #[test]
    fn config_validation() {
        let mut c = CenterConfig::default();
        c.beta = -0.1;
        assert!(CenterLearner::new(c, 3, 1).is_err());
        c.beta = 0.5;
        c.p0 = 0.0;
        assert!(CenterLearner::new(c, 3, 1).is_err());
    }
}
