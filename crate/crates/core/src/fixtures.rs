//! Data shipped with the crate.
//!
//! * `electricity_table1.csv`: monthly electricity consumption in Ukraine,
//!   October 2013 to May 2014. `x1` is next month's consumption, `x2` the
//!   current month's and `x3` the seasonal value from twelve months earlier
//!   (only given for the first four months). Stored verbatim; note that the
//!   March and April 2014 entries of `x2` are swapped relative to `x1`.
//! * `mackey_glass_reference.csv`: the default chaotic Mackey-Glass
//!   trajectory on `t = 0..=50`, integrated with a fine step by
//!   `tools/mackey_glass_reference.py`.

pub const ELECTRICITY_TABLE_CSV: &str = include_str!("../fixtures/electricity_table1.csv");
pub const MACKEY_GLASS_REFERENCE_CSV: &str = include_str!("../fixtures/mackey_glass_reference.csv");

#[derive(Debug, Clone, PartialEq)]
pub struct ElectricityRow {
    pub month: &'static str,
    pub next_month: f64,
    pub current_month: f64,
    pub seasonal: Option<f64>,
}

fn number(field: &str) -> f64 {
    field.parse().expect("fixture holds numbers")
}

pub fn electricity_table() -> Vec<ElectricityRow> {
    ELECTRICITY_TABLE_CSV
        .lines()
        .skip(1)
        .filter(|l| !l.trim().is_empty())
        .map(|line| {
            let f: Vec<&'static str> = line.split(',').collect();
            ElectricityRow {
                month: f[0],
                next_month: number(f[1]),
                current_month: number(f[2]),
                seasonal: f.get(3).filter(|s| !s.is_empty()).map(|s| number(s)),
            }
        })
        .collect()
}

/// The `x1` row: consumption of the following month.
pub fn electricity_next_month() -> Vec<f64> {
    electricity_table().iter().map(|r| r.next_month).collect()
}

/// `(t, x(t))` pairs of the reference trajectory.
pub fn mackey_glass_reference() -> Vec<(usize, f64)> {
    MACKEY_GLASS_REFERENCE_CSV
        .lines()
        .skip(1)
        .filter(|l| !l.trim().is_empty())
        .map(|line| {
            let (t, v) = line.split_once(',').expect("two columns");
            (t.parse().expect("integer time"), number(v))
        })
        .collect()
}
