//! Sampled continuous paths and aligned market frames.
//!
//! A [`SampledPath`] is a continuous function observed on a finite, strictly
//! increasing time grid and interpreted between grid points by linear
//! interpolation. Every analysis in this crate operates on these objects; all
//! of them are immutable after construction.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::stats::CompensatedSum;

/// A continuous path sampled on a finite grid, evaluated between samples by
/// linear interpolation. Evaluation outside `[first_time, last_time]` is an
/// error: the data says nothing there.
#[derive(Debug, Clone)]
pub struct SampledPath {
    times: Arc<Vec<f64>>,
    values: Arc<Vec<f64>>,
}

fn validate_times(times: &[f64]) -> Result<()> {
    for (i, w) in times.windows(2).enumerate() {
        if !w[0].is_finite() {
            return Err(Error::NonFiniteValue(i));
        }
        if !(w[1] > w[0]) {
            return Err(Error::NonMonotoneTimes(i + 1));
        }
    }
    if let Some(last) = times.last() {
        if !last.is_finite() {
            return Err(Error::NonFiniteValue(times.len() - 1));
        }
    }
    Ok(())
}

/// Build a path from raw samples. Round-trips its inputs exactly.
pub fn build_path(times: Vec<f64>, values: Vec<f64>) -> Result<SampledPath> {
    if times.len() != values.len() {
        return Err(Error::LengthMismatch {
            times: times.len(),
            values: values.len(),
        });
    }
    if times.len() < 2 {
        return Err(Error::BadParameter(format!(
            "a path needs at least 2 samples, got {}",
            times.len()
        )));
    }
    validate_times(&times)?;
    for (i, v) in values.iter().enumerate() {
        if !v.is_finite() {
            return Err(Error::NonFiniteValue(i));
        }
    }
    Ok(SampledPath {
        times: Arc::new(times),
        values: Arc::new(values),
    })
}

impl SampledPath {
    /// Build a path reusing an existing (already validated) grid.
    pub fn with_grid(grid: Arc<Vec<f64>>, values: Vec<f64>) -> Result<Self> {
        if grid.len() != values.len() {
            return Err(Error::LengthMismatch {
                times: grid.len(),
                values: values.len(),
            });
        }
        for (i, v) in values.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::NonFiniteValue(i));
            }
        }
        Ok(SampledPath {
            times: grid,
            values: Arc::new(values),
        })
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        false // construction requires >= 2 samples
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn grid(&self) -> Arc<Vec<f64>> {
        Arc::clone(&self.times)
    }

    pub fn first_time(&self) -> f64 {
        self.times[0]
    }

    pub fn last_time(&self) -> f64 {
        *self.times.last().unwrap()
    }

    pub fn first_value(&self) -> f64 {
        self.values[0]
    }

    pub fn last_value(&self) -> f64 {
        *self.values.last().unwrap()
    }

    /// True when both paths are defined on the identical grid.
    pub fn same_grid(&self, other: &SampledPath) -> bool {
        Arc::ptr_eq(&self.times, &other.times) || self.times[..] == other.times[..]
    }

    /// Evaluate at `t`: exact at grid points, affine between adjacent ones.
    pub fn value_at(&self, t: f64) -> Result<f64> {
        let (lo, hi) = (self.first_time(), self.last_time());
        if !(t >= lo && t <= hi) {
            return Err(Error::OutOfDomain { t, lo, hi });
        }
        // index of the first grid point >= t
        let i = self.times.partition_point(|&u| u < t);
        if self.times[i] == t {
            return Ok(self.values[i]);
        }
        let (t0, t1) = (self.times[i - 1], self.times[i]);
        let (v0, v1) = (self.values[i - 1], self.values[i]);
        let w = (t - t0) / (t1 - t0);
        Ok(v0 + w * (v1 - v0))
    }

    /// max |value| over the grid.
    pub fn sup_abs(&self) -> f64 {
        self.values.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    /// max value minus min value over the grid.
    pub fn range(&self) -> f64 {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for &v in self.values.iter() {
            lo = lo.min(v);
            hi = hi.max(v);
        }
        hi - lo
    }

    /// Total variation of the sampled path (sum of absolute increments).
    pub fn total_variation(&self) -> f64 {
        let mut acc = CompensatedSum::new();
        for w in self.values.windows(2) {
            acc.add((w[1] - w[0]).abs());
        }
        acc.total()
    }

    /// Pointwise map onto the same grid. Errors if the image is not finite.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> Result<SampledPath> {
        let values: Vec<f64> = self.values.iter().map(|&v| f(v)).collect();
        SampledPath::with_grid(self.grid(), values)
    }

    /// Pointwise combination of two same-grid paths.
    pub fn zip_with(&self, other: &SampledPath, f: impl Fn(f64, f64) -> f64) -> Result<SampledPath> {
        if !self.same_grid(other) {
            return Err(Error::DomainMismatch(
                "paths are sampled on different grids".into(),
            ));
        }
        let values: Vec<f64> = self
            .values
            .iter()
            .zip(other.values.iter())
            .map(|(&a, &b)| f(a, b))
            .collect();
        SampledPath::with_grid(self.grid(), values)
    }

    /// Sup-norm distance to another path on the shared grid.
    pub fn sup_distance(&self, other: &SampledPath) -> Result<f64> {
        if !self.same_grid(other) {
            return Err(Error::DomainMismatch(
                "sup distance needs a shared grid".into(),
            ));
        }
        Ok(self
            .values
            .iter()
            .zip(other.values.iter())
            .fold(0.0f64, |m, (&a, &b)| m.max((a - b).abs())))
    }

    /// Index of the first strictly positive violation, if any.
    pub fn check_strictly_positive(&self) -> Result<()> {
        for (i, &v) in self.values.iter().enumerate() {
            if !(v > 0.0) {
                return Err(Error::NonPositivePath(i));
            }
        }
        Ok(())
    }

    /// Resample onto a grid that must contain this path's domain; values at
    /// new points come from linear interpolation.
    pub fn resample(&self, grid: Arc<Vec<f64>>) -> Result<SampledPath> {
        let mut values = Vec::with_capacity(grid.len());
        for &t in grid.iter() {
            values.push(self.value_at(t)?);
        }
        SampledPath::with_grid(grid, values)
    }
}

/// Evaluate `sample_at`: the free-function spelling of [`SampledPath::value_at`].
pub fn sample_at(path: &SampledPath, t: f64) -> Result<f64> {
    path.value_at(t)
}

/// Merge two strictly increasing grids into their sorted union (exact
/// de-duplication on equal floats).
pub fn merge_grids(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let next = match (a.get(i), b.get(j)) {
            (Some(&x), Some(&y)) => {
                if x < y {
                    i += 1;
                    x
                } else if y < x {
                    j += 1;
                    y
                } else {
                    i += 1;
                    j += 1;
                    x
                }
            }
            (Some(&x), None) => {
                i += 1;
                x
            }
            (None, Some(&y)) => {
                j += 1;
                y
            }
            (None, None) => break,
        };
        out.push(next);
    }
    out
}

/// `J` aligned path columns on one shared grid; the first `traded_count`
/// columns are traded securities, the rest are side information.
#[derive(Debug, Clone)]
pub struct MarketFrame {
    grid: Arc<Vec<f64>>,
    columns: Vec<Arc<Vec<f64>>>,
    traded_count: usize,
}

impl MarketFrame {
    pub fn new(grid: Vec<f64>, columns: Vec<Vec<f64>>, traded_count: usize) -> Result<Self> {
        if grid.len() < 2 {
            return Err(Error::BadParameter(format!(
                "a frame needs at least 2 grid points, got {}",
                grid.len()
            )));
        }
        validate_times(&grid)?;
        if columns.is_empty() {
            return Err(Error::BadParameter("a frame needs at least one column".into()));
        }
        if !(1 <= traded_count && traded_count <= columns.len()) {
            return Err(Error::BadParameter(format!(
                "traded_count {} must lie in 1..={}",
                traded_count,
                columns.len()
            )));
        }
        let grid = Arc::new(grid);
        let mut cols = Vec::with_capacity(columns.len());
        for col in columns {
            if col.len() != grid.len() {
                return Err(Error::LengthMismatch {
                    times: grid.len(),
                    values: col.len(),
                });
            }
            for (i, v) in col.iter().enumerate() {
                if !v.is_finite() {
                    return Err(Error::NonFiniteValue(i));
                }
            }
            cols.push(Arc::new(col));
        }
        Ok(MarketFrame {
            grid,
            columns: cols,
            traded_count,
        })
    }

    pub fn grid(&self) -> Arc<Vec<f64>> {
        Arc::clone(&self.grid)
    }

    pub fn times(&self) -> &[f64] {
        &self.grid
    }

    pub fn column_count(&self) -> usize {
        self.columns.len()
    }

    pub fn traded_count(&self) -> usize {
        self.traded_count
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn horizon(&self) -> f64 {
        *self.grid.last().unwrap()
    }

    /// Column `j` as a path sharing the frame grid (cheap: both buffers are
    /// reference-counted).
    pub fn column(&self, j: usize) -> Result<SampledPath> {
        let col = self.columns.get(j).ok_or(Error::MissingColumn(format!(
            "column index {j} out of range ({} columns)",
            self.columns.len()
        )))?;
        Ok(SampledPath {
            times: Arc::clone(&self.grid),
            values: Arc::clone(col),
        })
    }

    /// All traded columns as paths.
    pub fn traded_columns(&self) -> Vec<SampledPath> {
        (0..self.traded_count)
            .map(|j| self.column(j).expect("traded column in range"))
            .collect()
    }

    /// A new frame with every column divided by `numeraire` (pointwise).
    pub fn discounted_by(&self, numeraire: &SampledPath) -> Result<MarketFrame> {
        numeraire.check_strictly_positive()?;
        let mut cols = Vec::with_capacity(self.columns.len());
        for col in &self.columns {
            let mut v = Vec::with_capacity(col.len());
            for (i, &x) in col.iter().enumerate() {
                let d = numeraire.value_at(self.grid[i])?;
                v.push(x / d);
            }
            cols.push(v);
        }
        MarketFrame::new(self.grid.to_vec(), cols, self.traded_count)
    }
}
