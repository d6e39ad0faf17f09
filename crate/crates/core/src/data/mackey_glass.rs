//! Mackey-Glass delay differential equation
//! `dx/dt = beta * x(t - tau) / (1 + x(t - tau)^n) - gamma * x(t)`
//! integrated with classical fourth-order Runge-Kutta.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MackeyGlassParams {
    pub mg_beta: f64,
    pub mg_gamma: f64,
    pub mg_n: f64,
    pub tau: f64,
    pub dt: f64,
    /// Value of the whole history before `t = 0`, and `x(0)`.
    pub x0: f64,
}

impl Default for MackeyGlassParams {
    fn default() -> Self {
        Self {
            mg_beta: 0.2,
            mg_gamma: 0.1,
            mg_n: 10.0,
            tau: 17.0,
            dt: 0.1,
            x0: 1.2,
        }
    }
}

impl MackeyGlassParams {
    /// Integration steps spanned by the delay.
    pub fn delay_steps(&self) -> Result<usize> {
        self.validate()?;
        Ok((self.tau / self.dt).round() as usize)
    }

    /// Integration steps between two returned samples.
    pub fn stride(&self) -> usize {
        (1.0 / self.dt + 1e-9).floor() as usize
    }

    pub fn validate(&self) -> Result<()> {
        let all = [
            self.mg_beta,
            self.mg_gamma,
            self.mg_n,
            self.tau,
            self.dt,
            self.x0,
        ];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(Error::Config("Mackey-Glass parameters must be finite".into()));
        }
        if !(self.dt > 0.0 && self.dt <= 1.0) {
            return Err(Error::Config(format!(
                "integration step must lie in (0, 1], got {}",
                self.dt
            )));
        }
        if self.tau < 0.0 {
            return Err(Error::Config(format!("delay must be non-negative, got {}", self.tau)));
        }
        let steps = self.tau / self.dt;
        if (steps - steps.round()).abs() > 1e-6 {
            return Err(Error::Config(format!(
                "delay {} is not a whole number of steps of {}",
                self.tau, self.dt
            )));
        }
        Ok(())
    }

    fn rhs(&self, x: f64, delayed: f64) -> f64 {
        self.mg_beta * delayed / (1.0 + delayed.powf(self.mg_n)) - self.mg_gamma * x
    }
}

/// Integrated trajectory on the step grid, with the right-hand side at
/// every grid point kept for interpolating the delayed term.
struct Trajectory<'a> {
    params: &'a MackeyGlassParams,
    delay: usize,
    values: Vec<f64>,
    slopes: Vec<f64>,
}

impl Trajectory<'_> {
    /// Value and slope at grid index `j`, which may lie in the constant
    /// history before `t = 0`.
    fn at(&self, j: isize) -> (f64, f64) {
        if j < 0 {
            (self.params.x0, 0.0)
        } else {
            (self.values[j as usize], self.slopes[j as usize])
        }
    }

    /// Cubic Hermite value halfway between grid points `j` and `j + 1`.
    fn midpoint(&self, j: isize) -> f64 {
        if j + 1 <= 0 {
            return self.params.x0;
        }
        let (a, fa) = self.at(j);
        let (b, fb) = self.at(j + 1);
        0.5 * (a + b) + self.params.dt * (fa - fb) / 8.0
    }

    fn step(&mut self) {
        let p = self.params;
        let dt = p.dt;
        let n = self.values.len() - 1;
        let x = self.values[n];

        if self.delay == 0 {
            let k1 = p.rhs(x, x);
            self.slopes.push(k1);
            let x2 = x + 0.5 * dt * k1;
            let k2 = p.rhs(x2, x2);
            let x3 = x + 0.5 * dt * k2;
            let k3 = p.rhs(x3, x3);
            let x4 = x + dt * k3;
            let k4 = p.rhs(x4, x4);
            self.values.push(x + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
            return;
        }

        let lag = n as isize - self.delay as isize;
        let (start, _) = self.at(lag);
        let k1 = p.rhs(x, start);
        // slope at t_n must exist before the midpoint may read it (delay of one step)
        self.slopes.push(k1);
        let mid = self.midpoint(lag);
        let (end, _) = self.at(lag + 1);
        let k2 = p.rhs(x + 0.5 * dt * k1, mid);
        let k3 = p.rhs(x + 0.5 * dt * k2, mid);
        let k4 = p.rhs(x + dt * k3, end);
        self.values.push(x + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
    }
}

/// `count` samples at unit time spacing starting with `x(0) = x0`.
///
/// Inside each Runge-Kutta step the delayed value at the half step comes
/// from cubic Hermite interpolation of the stored trajectory; the delay is
/// a whole number of steps, so the other stages read grid points directly
/// and every kink of the solution falls on a step boundary.
pub fn generate_mackey_glass(params: &MackeyGlassParams, count: usize) -> Result<Vec<f64>> {
    let delay = params.delay_steps()?;
    let stride = params.stride();
    if count == 0 {
        return Ok(Vec::new());
    }
    let steps = (count - 1) * stride;
    let mut traj = Trajectory {
        params,
        delay,
        values: Vec::with_capacity(steps + 1),
        slopes: Vec::with_capacity(steps + 1),
    };
    traj.values.push(params.x0);
    for _ in 0..steps {
        traj.step();
    }
    Ok(traj.values.into_iter().step_by(stride).collect())
}
