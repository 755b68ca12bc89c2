//! Level-crossing stopping-time partitions.
//!
//! A partition at level `n` stops every time any monitored path has moved by
//! the level threshold `eps0 * 2^-n` since the previous stop. Stop times are
//! realized at sample times: the stop is the first grid time at which the
//! running deviation has reached the threshold. On sampled data the recorded
//! increment can overshoot the threshold by at most the oscillation of the
//! crossing segment, which vanishes as the sampling grid refines; in exchange
//! the stopped increments are genuine path increments, so sums of squared
//! increments stay unbiased for the underlying variation (no part of the
//! movement between samples is invented or discarded).

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::path::SampledPath;

/// One refinement level: the threshold that generated it and the realized
/// stopping times (as grid indices and times).
///
/// Between consecutive stop times the oscillation of every monitored path is
/// bounded by `2 * threshold` plus the oscillation of the single crossing
/// segment (the sampling-resolution slack).
#[derive(Debug, Clone)]
pub struct PartitionLevel {
    level: u32,
    threshold: f64,
    grid: Arc<Vec<f64>>,
    stop_indices: Vec<usize>,
    stop_times: Vec<f64>,
    exhausted: bool,
}

impl PartitionLevel {
    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn threshold(&self) -> f64 {
        self.threshold
    }

    /// Realized stopping times; the first element is the domain start.
    pub fn stop_times(&self) -> &[f64] {
        &self.stop_times
    }

    /// Stop times as indices into the shared sample grid.
    pub fn stop_indices(&self) -> &[usize] {
        &self.stop_indices
    }

    /// True when no further crossing occurs after the last stop time.
    pub fn exhausted(&self) -> bool {
        self.exhausted
    }

    /// Number of crossings after the initial time.
    pub fn crossing_count(&self) -> usize {
        self.stop_times.len() - 1
    }

    pub fn grid(&self) -> Arc<Vec<f64>> {
        Arc::clone(&self.grid)
    }

    /// The partition indexes into a specific grid; it only applies to paths
    /// sampled on that grid.
    pub fn compatible_with(&self, path: &SampledPath) -> bool {
        Arc::ptr_eq(&self.grid, &path.grid()) || self.grid[..] == path.times()[..]
    }

    pub(crate) fn check_compatible(&self, path: &SampledPath) -> Result<()> {
        if self.compatible_with(path) {
            Ok(())
        } else {
            Err(Error::DomainMismatch(
                "partition grid differs from the path grid".into(),
            ))
        }
    }
}

fn shared_grid(monitored: &[SampledPath]) -> Result<Arc<Vec<f64>>> {
    let first = monitored.first().ok_or(Error::EmptyMonitorSet)?;
    for p in &monitored[1..] {
        if !first.same_grid(p) {
            return Err(Error::DomainMismatch(
                "monitored paths must share one sample grid".into(),
            ));
        }
    }
    Ok(first.grid())
}

/// Build the level-`n` crossing partition of the monitored paths.
///
/// Starting from the previous stop, the next stop is the first grid time at
/// which `max_j |path_j(t) - path_j(previous stop)|` reaches
/// `eps0 * 2^-n`; the sequence is truncated at the horizon and `exhausted`
/// records that no further crossing exists.
pub fn lebesgue_partition(monitored: &[SampledPath], n: u32, eps0: f64) -> Result<PartitionLevel> {
    if n < 1 {
        return Err(Error::BadParameter("level index must be >= 1".into()));
    }
    if !(eps0 > 0.0 && eps0.is_finite()) {
        return Err(Error::BadParameter(format!("eps0 must be > 0, got {eps0}")));
    }
    let grid = shared_grid(monitored)?;
    let threshold = eps0 * 0.5f64.powi(n as i32);
    let len = grid.len();
    let mut stop_indices = vec![0usize];
    let mut ref_idx = 0usize;
    let mut i = 1usize;
    while i < len {
        let mut dev = 0.0f64;
        for p in monitored {
            let v = p.values();
            dev = dev.max((v[i] - v[ref_idx]).abs());
        }
        if dev >= threshold {
            stop_indices.push(i);
            ref_idx = i;
        }
        i += 1;
    }
    let stop_times: Vec<f64> = stop_indices.iter().map(|&k| grid[k]).collect();
    let exhausted = true; // the scan always runs to the horizon
    Ok(PartitionLevel {
        level: n,
        threshold,
        grid,
        stop_indices,
        stop_times,
        exhausted,
    })
}

/// Result of an oscillation scan over the intervals of a partition.
#[derive(Debug, Clone, Copy)]
pub struct FinenessReport {
    pub within_bound: bool,
    pub max_oscillation: f64,
}

/// Check that the path oscillates by at most `bound` on every partition
/// interval (including the tail after the last stop), reporting the largest
/// oscillation found. This is a direct sup-minus-inf scan, independent of how
/// the partition was built.
pub fn verify_fineness(p: &PartitionLevel, path: &SampledPath, bound: f64) -> Result<FinenessReport> {
    p.check_compatible(path)?;
    let v = path.values();
    let mut max_osc = 0.0f64;
    let mut window_start = p.stop_indices[0];
    // interval k runs from stop k-1 to stop k; the final window runs to the horizon
    let ends = p
        .stop_indices
        .iter()
        .skip(1)
        .copied()
        .chain(std::iter::once(v.len() - 1));
    for end in ends {
        let mut lo = v[window_start];
        let mut hi = v[window_start];
        for &x in &v[window_start..=end] {
            if x < lo {
                lo = x;
            }
            if x > hi {
                hi = x;
            }
        }
        max_osc = max_osc.max(hi - lo);
        window_start = end;
    }
    Ok(FinenessReport {
        within_bound: max_osc <= bound,
        max_oscillation: max_osc,
    })
}

/// Build one [`PartitionLevel`] per `n` in `n_min..=n_max`; each level's
/// threshold halves the previous one.
pub fn partition_sequence(
    monitored: &[SampledPath],
    n_min: u32,
    n_max: u32,
    eps0: f64,
) -> Result<Vec<PartitionLevel>> {
    if n_min > n_max {
        return Err(Error::BadParameter(format!(
            "level range is empty: {n_min} > {n_max}"
        )));
    }
    (n_min..=n_max)
        .map(|n| lebesgue_partition(monitored, n, eps0))
        .collect()
}

/// Largest oscillation of any single sampling segment; the slack by which a
/// realized stop can overshoot the crossing threshold.
pub fn max_segment_oscillation(path: &SampledPath) -> f64 {
    path.values()
        .windows(2)
        .fold(0.0f64, |m, w| m.max((w[1] - w[0]).abs()))
}
