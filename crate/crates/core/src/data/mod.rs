//! Series preparation: normalization, lag embedding, CSV I/O and the
//! Mackey-Glass generator.

mod embed;
mod io;
mod mackey_glass;
mod normalize;

pub use embed::{embed, max_lag, Sample, TimeSeriesFrame};
pub use io::{read_column, read_csv, write_csv, write_series, ForecastPoint};
pub use mackey_glass::{generate_mackey_glass, MackeyGlassParams};
pub use normalize::{normalize, NormalizationMap};
