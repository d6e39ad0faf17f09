use crate::error::{Error, Result};

/// One supervised pair taken from a series.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    /// Position of the target in the source series.
    pub index: usize,
    /// `input[j] = series[index - lags[j]]`.
    pub input: Vec<f64>,
    pub target: f64,
}

/// Lag-embedded series in chronological order.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeriesFrame {
    pub samples: Vec<Sample>,
    pub lags: Vec<usize>,
}

impl TimeSeriesFrame {
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn inputs(&self) -> usize {
        self.lags.len()
    }

    /// Splits into samples whose target index is below `index` and the rest.
    pub fn split_at_index(&self, index: usize) -> (TimeSeriesFrame, TimeSeriesFrame) {
        let cut = self.samples.partition_point(|s| s.index < index);
        let (head, tail) = self.samples.split_at(cut);
        (
            TimeSeriesFrame {
                samples: head.to_vec(),
                lags: self.lags.clone(),
            },
            TimeSeriesFrame {
                samples: tail.to_vec(),
                lags: self.lags.clone(),
            },
        )
    }
}

pub fn max_lag(lags: &[usize]) -> Result<usize> {
    if lags.is_empty() {
        return Err(Error::Config("lag list is empty".into()));
    }
    if lags.contains(&0) {
        return Err(Error::Config("lags must be positive".into()));
    }
    Ok(*lags.iter().max().expect("non-empty"))
}

/// Builds `(series[k - lag_1], ..., series[k - lag_n]) -> series[k]` for
/// every `k` with a complete history.
pub fn embed(series: &[f64], lags: &[usize]) -> Result<TimeSeriesFrame> {
    let m = max_lag(lags)?;
    if series.len() <= m {
        return Err(Error::InsufficientData(format!(
            "series of length {} cannot be embedded with maximum lag {m}",
            series.len()
        )));
    }
    let samples = (m..series.len())
        .map(|k| Sample {
            index: k,
            input: lags.iter().map(|&lag| series[k - lag]).collect(),
            target: series[k],
        })
        .collect();
    Ok(TimeSeriesFrame {
        samples,
        lags: lags.to_vec(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn pairs(frame: &TimeSeriesFrame) -> Vec<(Vec<f64>, f64)> {
        frame
            .samples
            .iter()
            .map(|s| (s.input.clone(), s.target))
            .collect()
    }

    #[test]
    fn unit_lag() {
        let f = embed(&[1.0, 2.0, 3.0, 4.0, 5.0], &[1]).unwrap();
        assert_eq!(
            pairs(&f),
            vec![
                (vec![1.0], 2.0),
                (vec![2.0], 3.0),
                (vec![3.0], 4.0),
                (vec![4.0], 5.0)
            ]
        );
        assert_eq!(f.samples[0].index, 1);
    }

    #[test]
    fn two_lags() {
        let f = embed(&[1.0, 2.0, 3.0, 4.0], &[1, 2]).unwrap();
        assert_eq!(
            pairs(&f),
            vec![(vec![2.0, 1.0], 3.0), (vec![3.0, 2.0], 4.0)]
        );
    }

    #[test]
    fn seasonal_boundary() {
        let series: Vec<f64> = (0..13).map(f64::from).collect();
        let f = embed(&series, &[1, 12]).unwrap();
        assert_eq!(pairs(&f), vec![(vec![11.0, 0.0], 12.0)]);
        assert!(matches!(
            embed(&series[..12], &[1, 12]),
            Err(Error::InsufficientData(_))
        ));
    }

    #[test]
    fn bad_lags() {
        assert!(embed(&[1.0, 2.0], &[]).is_err());
        assert!(embed(&[1.0, 2.0], &[0]).is_err());
    }

    #[test]
    fn split_by_target_index() {
        let series: Vec<f64> = (0..10).map(f64::from).collect();
        let f = embed(&series, &[1, 2]).unwrap();
        let (train, test) = f.split_at_index(4);
        assert_eq!(train.len(), 2);
        assert_eq!(test.len(), 6);
        assert_eq!(test.samples[0].index, 4);
    }

    #[test]
    fn electricity_current_month_is_lagged_next_month() {
        // x2(k) should equal x1(k - 1); the table breaks the pattern at Mar/Apr 2014
        let table = fixtures::electricity_table();
        let x1: Vec<f64> = table.iter().map(|r| r.next_month).collect();
        let f = embed(&x1, &[1]).unwrap();
        let lagged: Vec<f64> = f.samples.iter().map(|s| s.input[0]).collect();
        let current: Vec<f64> = table[1..].iter().map(|r| r.current_month).collect();
        assert_eq!(lagged[..4], current[..4]);
        assert_eq!(lagged[6], current[6]);
        assert_eq!((lagged[4], lagged[5]), (current[5], current[4]));
    }
}
