//! The combined learning loop, the train/test protocol and error reporting.
//!
//! For every sample the winning centers move first, the basis functions are
//! then evaluated on the corrected grid and the weight learner consumes
//! them. Forecasting never touches the model state.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::centers::{init_centers, CenterConfig, CenterLearner, StepRule};
use crate::data::{
    embed, generate_mackey_glass, max_lag, write_csv, ForecastPoint, MackeyGlassParams,
    NormalizationMap, TimeSeriesFrame,
};
use crate::error::{Error, Result};
use crate::inference::{firing_strengths, initial_spacing, MembershipGrid, ModelConfig};
use crate::weights::{Algorithm, LearnerConfig, WeightLearner};

/// Flat experiment description, read from and echoed to JSON. Every key is
/// optional in the file and falls back to [`ExperimentConfig::default`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    /// Membership functions per axis (= rules).
    pub h: usize,
    /// Shared width; `None` uses the initial center spacing `2 / (h - 1)`.
    pub sigma: Option<f64>,
    pub learner: Algorithm,
    pub beta: f64,
    pub p_init: f64,
    pub p0: f64,
    pub center_rule: StepRule,
    pub center_beta: f64,
    pub center_p0: f64,
    /// Keep the initial grid instead of self-learning the centers.
    pub freeze_centers: bool,
    /// Fraction of the series used for training, taken from the start.
    pub split: f64,
    pub horizon: usize,
    pub lags: Vec<usize>,
    /// Recorded with the results. The learning loop itself is deterministic.
    pub seed: u64,
    /// Length of a generated Mackey-Glass series.
    pub count: usize,
    pub mg_beta: f64,
    pub mg_gamma: f64,
    pub mg_n: f64,
    pub tau: f64,
    pub dt: f64,
    pub x0: f64,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        let learner = LearnerConfig::default();
        let centers = CenterConfig::default();
        let mg = MackeyGlassParams::default();
        Self {
            h: 5,
            sigma: None,
            learner: learner.algorithm,
            beta: learner.beta,
            p_init: learner.p_init,
            p0: learner.p0,
            center_rule: centers.rule,
            center_beta: centers.beta,
            center_p0: centers.p0,
            freeze_centers: false,
            split: 0.4,
            horizon: 14,
            lags: vec![1, 2, 3],
            seed: 0,
            count: 1600,
            mg_beta: mg.mg_beta,
            mg_gamma: mg.mg_gamma,
            mg_n: mg.mg_n,
            tau: mg.tau,
            dt: mg.dt,
            x0: mg.x0,
        }
    }
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let config: Self = serde_json::from_str(text)?;
        config.validate()?;
        Ok(config)
    }

    pub fn model_config(&self) -> Result<ModelConfig> {
        if self.h < 2 {
            return Err(Error::Config(format!(
                "need at least 2 membership functions per axis, got {}",
                self.h
            )));
        }
        let sigma = self.sigma.unwrap_or_else(|| initial_spacing(self.h));
        ModelConfig::with_sigma(self.lags.len(), self.h, sigma)
    }

    pub fn learner_config(&self) -> LearnerConfig {
        LearnerConfig {
            algorithm: self.learner,
            beta: self.beta,
            p_init: self.p_init,
            p0: self.p0,
        }
    }

    pub fn center_config(&self) -> CenterConfig {
        CenterConfig {
            rule: self.center_rule,
            beta: self.center_beta,
            p0: self.center_p0,
        }
    }

    pub fn mackey_glass(&self) -> MackeyGlassParams {
        MackeyGlassParams {
            mg_beta: self.mg_beta,
            mg_gamma: self.mg_gamma,
            mg_n: self.mg_n,
            tau: self.tau,
            dt: self.dt,
            x0: self.x0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        max_lag(&self.lags)?;
        self.model_config()?;
        self.learner_config().validate()?;
        self.center_config().validate()?;
        if !(self.split > 0.0 && self.split < 1.0) {
            return Err(Error::Config(format!(
                "split must lie strictly between 0 and 1, got {}",
                self.split
            )));
        }
        if self.horizon < 1 {
            return Err(Error::Config("forecast horizon must be at least 1".into()));
        }
        Ok(())
    }
}

/// Membership grid, output weights and both learners of one system.
#[derive(Debug, Clone, PartialEq)]
pub struct NeuroFuzzyModel {
    grid: MembershipGrid,
    weights: WeightLearner,
    centers: CenterLearner,
    freeze_centers: bool,
}

impl NeuroFuzzyModel {
    pub fn new(model: ModelConfig, learner: LearnerConfig, centers: CenterConfig) -> Result<Self> {
        Ok(Self {
            grid: init_centers(&model)?,
            weights: WeightLearner::new(learner, model.rules)?,
            centers: CenterLearner::new(centers, model.rules, model.inputs)?,
            freeze_centers: false,
        })
    }

    /// Assembles a model from existing state; centers start frozen or
    /// learning according to `freeze_centers`.
    pub fn from_parts(
        grid: MembershipGrid,
        weights: WeightLearner,
        centers: CenterLearner,
        freeze_centers: bool,
    ) -> Result<Self> {
        if weights.weights().len() != grid.rules() {
            return Err(Error::Validation(format!(
                "{} weights for {} rules",
                weights.weights().len(),
                grid.rules()
            )));
        }
        Ok(Self {
            grid,
            weights,
            centers,
            freeze_centers,
        })
    }

    pub fn from_config(config: &ExperimentConfig) -> Result<Self> {
        config.validate()?;
        let mut model = Self::new(
            config.model_config()?,
            config.learner_config(),
            config.center_config(),
        )?;
        model.freeze_centers = config.freeze_centers;
        Ok(model)
    }

    pub fn with_frozen_centers(mut self, frozen: bool) -> Self {
        self.freeze_centers = frozen;
        self
    }

    pub fn grid(&self) -> &MembershipGrid {
        &self.grid
    }

    pub fn weights(&self) -> &WeightLearner {
        &self.weights
    }

    pub fn center_learner(&self) -> &CenterLearner {
        &self.centers
    }

    pub fn predict(&self, x: &[f64]) -> Result<f64> {
        let strengths = firing_strengths(x, &self.grid)?;
        Ok(self.weights.predict(&strengths.normalized))
    }

    /// One combined step: center self-learning, then the weight update on
    /// the corrected basis functions. Returns the prediction made with the
    /// corrected grid and the previous weights.
    pub fn learn(&mut self, x: &[f64], y: f64) -> Result<f64> {
        if !self.freeze_centers {
            self.centers.update(&mut self.grid, x)?;
        }
        let strengths = firing_strengths(x, &self.grid)?;
        let prior = self.weights.predict(&strengths.normalized);
        self.weights.update(&strengths.normalized, y)?;
        Ok(prior)
    }
}

/// Error figures on source-unit values.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Metrics {
    /// Mean absolute percentage error in percent; `None` if an actual is zero.
    pub mape: Option<f64>,
    pub rmse: f64,
    /// RMSE divided by the range of the actuals; `None` for a constant actual.
    pub nrmse: Option<f64>,
}

/// `(100 / N) * sum |a - p| / |a|`.
pub fn mape(actual: &[f64], predicted: &[f64]) -> Result<f64> {
    check_lengths(actual, predicted)?;
    if let Some(i) = actual.iter().position(|&a| a == 0.0) {
        return Err(Error::MetricUndefined(format!(
            "MAPE needs nonzero actuals, actual[{i}] is zero"
        )));
    }
    let total: f64 = actual
        .iter()
        .zip(predicted)
        .map(|(a, p)| ((a - p) / a).abs())
        .sum();
    Ok(100.0 * total / actual.len() as f64)
}

pub fn rmse(actual: &[f64], predicted: &[f64]) -> Result<f64> {
    check_lengths(actual, predicted)?;
    let sq: f64 = actual.iter().zip(predicted).map(|(a, p)| (a - p).powi(2)).sum();
    Ok((sq / actual.len() as f64).sqrt())
}

fn check_lengths(actual: &[f64], predicted: &[f64]) -> Result<()> {
    if actual.len() != predicted.len() {
        return Err(Error::Validation(format!(
            "{} actual values but {} predictions",
            actual.len(),
            predicted.len()
        )));
    }
    if actual.is_empty() {
        return Err(Error::InsufficientData("no values to evaluate".into()));
    }
    Ok(())
}

impl Metrics {
    pub fn compute(actual: &[f64], predicted: &[f64]) -> Result<Self> {
        let rmse = rmse(actual, predicted)?;
        let mape = match mape(actual, predicted) {
            Ok(v) => Some(v),
            Err(Error::MetricUndefined(_)) => None,
            Err(e) => return Err(e),
        };
        let (lo, hi) = actual
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &a| {
                (lo.min(a), hi.max(a))
            });
        let nrmse = (hi > lo).then(|| rmse / (hi - lo));
        Ok(Self { mape, rmse, nrmse })
    }
}

/// Per-step values in source units and their error figures.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ForecastReport {
    pub points: Vec<ForecastPoint>,
    pub metrics: Metrics,
}

impl ForecastReport {
    /// Report on values that are already in source units.
    pub fn from_points(points: Vec<ForecastPoint>) -> Result<Self> {
        let actual: Vec<f64> = points.iter().map(|p| p.actual).collect();
        let predicted: Vec<f64> = points.iter().map(|p| p.predicted).collect();
        let metrics = Metrics::compute(&actual, &predicted)?;
        Ok(Self { points, metrics })
    }

    pub fn actual(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.actual).collect()
    }

    pub fn predicted(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.predicted).collect()
    }
}

/// Denormalizes `actual` and `predicted` with `map` and scores them.
pub fn evaluate(
    times: &[usize],
    actual: &[f64],
    predicted: &[f64],
    map: &NormalizationMap,
) -> Result<ForecastReport> {
    check_lengths(actual, predicted)?;
    if times.len() != actual.len() {
        return Err(Error::Validation(format!(
            "{} time stamps for {} values",
            times.len(),
            actual.len()
        )));
    }
    let points = times
        .iter()
        .zip(actual.iter().zip(predicted))
        .map(|(&time, (&a, &p))| ForecastPoint {
            time,
            actual: map.denormalize(a),
            predicted: map.denormalize(p),
        })
        .collect();
    ForecastReport::from_points(points)
}

/// Single pass of the combined learning loop over `frame`. The report holds
/// the prediction made for each sample before its weight update.
pub fn train_online(
    frame: &TimeSeriesFrame,
    config: &ExperimentConfig,
    map: &NormalizationMap,
) -> Result<(NeuroFuzzyModel, ForecastReport)> {
    if frame.is_empty() {
        return Err(Error::InsufficientData("training frame is empty".into()));
    }
    if frame.lags != config.lags {
        return Err(Error::Config(format!(
            "frame was embedded with lags {:?}, config has {:?}",
            frame.lags, config.lags
        )));
    }
    let mut model = NeuroFuzzyModel::from_config(config)?;
    let mut predicted = Vec::with_capacity(frame.len());
    for sample in &frame.samples {
        predicted.push(model.learn(&sample.input, sample.target)?);
    }
    let times: Vec<usize> = frame.samples.iter().map(|s| s.index).collect();
    let actual: Vec<f64> = frame.samples.iter().map(|s| s.target).collect();
    let report = evaluate(&times, &actual, &predicted, map)?;
    Ok((model, report))
}

/// One-step-ahead predictions over `frame` with the model held fixed.
pub fn predict_frame(model: &NeuroFuzzyModel, frame: &TimeSeriesFrame) -> Result<Vec<f64>> {
    frame
        .samples
        .iter()
        .map(|s| model.predict(&s.input))
        .collect()
}

/// Iterated forecast: each prediction is appended to the history and feeds
/// the inputs of later steps. Returns the `horizon` normalized predictions.
pub fn forecast_recursive(
    model: &NeuroFuzzyModel,
    seed_history: &[f64],
    horizon: usize,
    lags: &[usize],
) -> Result<Vec<f64>> {
    let m = max_lag(lags)?;
    if seed_history.len() < m {
        return Err(Error::InsufficientData(format!(
            "forecast needs {m} values of history, got {}",
            seed_history.len()
        )));
    }
    let mut history = seed_history.to_vec();
    let mut out = Vec::with_capacity(horizon);
    for _ in 0..horizon {
        let k = history.len();
        let input: Vec<f64> = lags.iter().map(|&lag| history[k - lag]).collect();
        let y = model.predict(&input)?;
        history.push(y);
        out.push(y);
    }
    Ok(out)
}

/// Where the series of an experiment comes from.
#[derive(Debug, Clone, PartialEq)]
pub enum DataSource {
    /// Generate `count` Mackey-Glass samples from the config parameters.
    MackeyGlass,
    Series(Vec<f64>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleCounts {
    pub series: usize,
    /// Series index of the first test target; training uses values before it.
    pub split_index: usize,
    pub train: usize,
    pub test: usize,
    pub forecast: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentOutcome {
    pub config: ExperimentConfig,
    pub normalization: NormalizationMap,
    pub counts: SampleCounts,
    pub train: ForecastReport,
    pub test_onestep: ForecastReport,
    pub forecast: ForecastReport,
    pub model: NeuroFuzzyModel,
}

#[derive(Serialize)]
struct Summary<'a> {
    config: &'a ExperimentConfig,
    normalization: &'a NormalizationMap,
    counts: &'a SampleCounts,
    train: &'a Metrics,
    test_onestep: &'a Metrics,
    forecast: &'a Metrics,
}

impl ExperimentOutcome {
    pub fn summary_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&Summary {
            config: &self.config,
            normalization: &self.normalization,
            counts: &self.counts,
            train: &self.train.metrics,
            test_onestep: &self.test_onestep.metrics,
            forecast: &self.forecast.metrics,
        })?)
    }

    /// Writes `train.csv`, `test_onestep.csv`, `forecast.csv` and `summary.json`.
    pub fn write(&self, out_dir: impl AsRef<Path>) -> Result<()> {
        let dir = out_dir.as_ref();
        fs::create_dir_all(dir).map_err(|source| Error::Io {
            path: dir.to_path_buf(),
            source,
        })?;
        write_csv(dir.join("train.csv"), &self.train.points)?;
        write_csv(dir.join("test_onestep.csv"), &self.test_onestep.points)?;
        write_csv(dir.join("forecast.csv"), &self.forecast.points)?;
        let path = dir.join("summary.json");
        fs::write(&path, self.summary_json()? + "\n").map_err(|source| Error::Io { path, source })
    }
}

/// Full protocol: normalize on the training span, embed, train online,
/// score one-step-ahead predictions on the test span and run a recursive
/// forecast from the training boundary.
pub fn run_experiment(config: &ExperimentConfig, source: DataSource) -> Result<ExperimentOutcome> {
    config.validate()?;
    let series = match source {
        DataSource::MackeyGlass => generate_mackey_glass(&config.mackey_glass(), config.count)?,
        DataSource::Series(s) => s,
    };
    let m = max_lag(&config.lags)?;
    let split_index = (config.split * series.len() as f64).round() as usize;
    if split_index <= m {
        return Err(Error::InsufficientData(format!(
            "training span of {split_index} values leaves no sample for maximum lag {m}"
        )));
    }
    if split_index + config.horizon > series.len() {
        return Err(Error::InsufficientData(format!(
            "{} values after the training span, forecast horizon needs {}",
            series.len() - split_index,
            config.horizon
        )));
    }

    // the map only sees training values
    let map = NormalizationMap::fit(&series[..split_index])?;
    let normalized = map.normalize_all(&series);
    let frame = embed(&normalized, &config.lags)?;
    let (train_frame, test_frame) = frame.split_at_index(split_index);

    let (model, train) = train_online(&train_frame, config, &map)?;

    let test_pred = predict_frame(&model, &test_frame)?;
    let test_times: Vec<usize> = test_frame.samples.iter().map(|s| s.index).collect();
    let test_actual: Vec<f64> = test_frame.samples.iter().map(|s| s.target).collect();
    let test_onestep = evaluate(&test_times, &test_actual, &test_pred, &map)?;

    let fc_pred = forecast_recursive(&model, &normalized[..split_index], config.horizon, &config.lags)?;
    let fc_times: Vec<usize> = (split_index..split_index + config.horizon).collect();
    let forecast = evaluate(
        &fc_times,
        &normalized[split_index..split_index + config.horizon],
        &fc_pred,
        &map,
    )?;

    let counts = SampleCounts {
        series: series.len(),
        split_index,
        train: train_frame.len(),
        test: test_frame.len(),
        forecast: forecast.points.len(),
    };
    Ok(ExperimentOutcome {
        config: config.clone(),
        normalization: map,
        counts,
        train,
        test_onestep,
        forecast,
        model,
    })
}
