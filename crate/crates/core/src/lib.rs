//! Online neuro-fuzzy forecasting.
//!
//! A zero-order Takagi-Sugeno-Kang system with Gaussian membership
//! functions whose centers are tuned by per-axis winner-take-all
//! self-learning, and whose output weights are tuned by a recursive
//! supervised learner (RLS with forgetting, Kaczmarz, or an adaptive
//! scalar-gain rule). Both learners run sample by sample in one pass.

pub mod centers;
pub mod data;
pub mod error;
pub mod fixtures;
pub mod harness;
pub mod inference;
pub mod oracle;
pub mod weights;

pub use centers::{find_winners, init_centers, CenterConfig, CenterLearner, StepRule};
pub use data::{
    embed, generate_mackey_glass, normalize, read_column, read_csv, write_csv, write_series,
    ForecastPoint, MackeyGlassParams, NormalizationMap, Sample, TimeSeriesFrame,
};
pub use error::{Error, Result};
pub use harness::{
    evaluate, forecast_recursive, predict_frame, run_experiment, train_online, DataSource,
    ExperimentConfig, ExperimentOutcome, ForecastReport, Metrics, NeuroFuzzyModel, SampleCounts,
};
pub use inference::{aggregate, forward, fuzzify, FiringStrengths, MembershipGrid, ModelConfig};
pub use weights::{
    adaptive_update, kaczmarz_update, rls_update, Algorithm, LearnerConfig, LearnerState,
    WeightLearner,
};
