//! Shared workloads for the benchmarks.

use neurofuzzy::{
    embed, generate_mackey_glass, init_centers, ExperimentConfig, MackeyGlassParams, ModelConfig,
    MembershipGrid, NormalizationMap, TimeSeriesFrame,
};

/// Normalized Mackey-Glass series of `count` values.
pub fn normalized_series(count: usize) -> (Vec<f64>, NormalizationMap) {
    let raw = generate_mackey_glass(&MackeyGlassParams::default(), count).expect("valid params");
    let map = NormalizationMap::fit(&raw).expect("non-constant series");
    (map.normalize_all(&raw), map)
}

/// Lagged frame over a normalized Mackey-Glass series.
pub fn frame(count: usize, lags: &[usize]) -> (TimeSeriesFrame, NormalizationMap) {
    let (series, map) = normalized_series(count);
    (embed(&series, lags).expect("series long enough"), map)
}

/// Initial grid with `rules` rules on `inputs` axes.
pub fn grid(inputs: usize, rules: usize) -> MembershipGrid {
    let model = ModelConfig::new(inputs, rules).expect("valid model");
    init_centers(&model).expect("valid model")
}

pub fn config(rules: usize) -> ExperimentConfig {
    ExperimentConfig {
        h: rules,
        ..ExperimentConfig::default()
    }
}
