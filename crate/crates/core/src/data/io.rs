use std::fs::File;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One row of a per-step result file.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ForecastPoint {
    pub time: usize,
    pub actual: f64,
    pub predicted: f64,
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> Error + '_ {
    move |source| Error::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn csv_err(path: &Path, err: csv::Error) -> Error {
    let line = err.position().map(|p| p.line()).unwrap_or(0);
    match err.into_kind() {
        csv::ErrorKind::Io(source) => Error::Io {
            path: path.to_path_buf(),
            source,
        },
        kind => Error::Parse {
            path: path.to_path_buf(),
            line,
            message: format!("{kind:?}"),
        },
    }
}

/// Reads a single-column numeric CSV with a header row.
pub fn read_csv(path: impl AsRef<Path>) -> Result<Vec<f64>> {
    read_column(path, None)
}

/// Reads one numeric column of a CSV with a header row. With `column` set
/// to `None` the file must have exactly one column.
pub fn read_column(path: impl AsRef<Path>, column: Option<&str>) -> Result<Vec<f64>> {
    let path = path.as_ref();
    let file = File::open(path).map_err(io_err(path))?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(file);

    let headers = reader.headers().map_err(|e| csv_err(path, e))?.clone();
    let col = match column {
        Some(name) => headers.iter().position(|h| h == name).ok_or_else(|| Error::Parse {
            path: path.to_path_buf(),
            line: 1,
            message: format!("no column named {name:?}"),
        })?,
        None if headers.len() == 1 => 0,
        None => {
            return Err(Error::Parse {
                path: path.to_path_buf(),
                line: 1,
                message: format!(
                    "expected a single column, found {}; select one by name",
                    headers.len()
                ),
            })
        }
    };

    let mut values = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| csv_err(path, e))?;
        let line = record.position().map(|p| p.line()).unwrap_or(0);
        let field = record.get(col).unwrap_or("");
        let value: f64 = field.parse().map_err(|_| Error::Parse {
            path: path.to_path_buf(),
            line,
            message: format!("cannot parse {field:?} as a number"),
        })?;
        values.push(value);
    }
    Ok(values)
}

/// Writes a single-column CSV under the given header.
pub fn write_series(path: impl AsRef<Path>, header: &str, values: &[f64]) -> Result<()> {
    let path = path.as_ref();
    let file = File::create(path).map_err(io_err(path))?;
    let mut writer = csv::Writer::from_writer(file);
    writer.write_record([header]).map_err(|e| csv_err(path, e))?;
    for v in values {
        writer
            .write_record([v.to_string()])
            .map_err(|e| csv_err(path, e))?;
    }
    writer.flush().map_err(io_err(path))
}

/// Writes `time,actual,predicted` rows.
pub fn write_csv(path: impl AsRef<Path>, rows: &[ForecastPoint]) -> Result<()> {
    let path = path.as_ref();
    let file = File::create(path).map_err(io_err(path))?;
    let mut writer = csv::Writer::from_writer(file);
    writer
        .write_record(["time", "actual", "predicted"])
        .map_err(|e| csv_err(path, e))?;
    for row in rows {
        writer
            .write_record([
                row.time.to_string(),
                row.actual.to_string(),
                row.predicted.to_string(),
            ])
            .map_err(|e| csv_err(path, e))?;
    }
    writer.flush().map_err(io_err(path))
}
