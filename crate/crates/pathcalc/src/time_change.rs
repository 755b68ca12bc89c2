//! Quadratic-variation time change and Monte Carlo upper-expectation
//! estimates.
//!
//! Reading a path on its own variation clock turns diffusive paths into
//! unit-rate ones; the normality gate checks exactly that on time-changed
//! increments. The upper-expectation estimate is a weighted Monte Carlo
//! mean: it lower-bounds the superhedging-style upper expectation for the
//! generators used here, so the theoretical inequalities are checked in the
//! direction that is falsifiable (estimate below the Brownian-side integral
//! plus Monte Carlo slack).

use serde::Serialize;

use crate::calculus::quadratic_variation;
use crate::error::{Error, Result};
use crate::generate::Ensemble;
use crate::partition::PartitionLevel;
use crate::path::SampledPath;
use crate::stats::{ks_statistic, mean_se, normal_cdf};

/// First time the nondecreasing `clock` path reaches `s`, interpolating
/// linearly inside the crossing segment. `None` when the clock never gets
/// there.
pub fn first_clock_crossing(clock: &SampledPath, s: f64) -> Option<f64> {
    let v = clock.values();
    let t = clock.times();
    if s <= v[0] {
        return Some(t[0]);
    }
    let i = v.partition_point(|&q| q < s);
    if i >= v.len() {
        return None;
    }
    let (q0, q1) = (v[i - 1], v[i]);
    let w = (s - q0) / (q1 - q0);
    Some(t[i - 1] + w * (t[i] - t[i - 1]))
}

/// Inverse of the level-`p` variation clock of `x` at the requested clock
/// times: for each `s`, the first `t` with `[X]^p_t >= s`.
pub fn qv_inverse_times(x: &SampledPath, p: &PartitionLevel, s_grid: &[f64]) -> Result<Vec<f64>> {
    let qv = quadratic_variation(x, p)?;
    let total = qv.last_value();
    let mut out = Vec::with_capacity(s_grid.len());
    for &s in s_grid {
        if !(s >= 0.0) {
            return Err(Error::BadParameter(format!("clock time {s} must be >= 0")));
        }
        if s > total {
            return Err(Error::QvRangeExceeded { s, max: total });
        }
        out.push(first_clock_crossing(&qv, s).expect("s <= total"));
    }
    Ok(out)
}

/// The path read on its own variation clock: `s -> X` at the first `t` with
/// `[X]^p_t >= s`. The output is indexed by the strictly increasing clock
/// times `s_grid`.
pub fn qv_time_change(
    x: &SampledPath,
    p: &PartitionLevel,
    s_grid: &[f64],
) -> Result<SampledPath> {
    if s_grid.len() < 2 {
        return Err(Error::BadParameter(
            "the clock grid needs at least 2 points".into(),
        ));
    }
    let times = qv_inverse_times(x, p, s_grid)?;
    let mut values = Vec::with_capacity(times.len());
    for &t in &times {
        values.push(x.value_at(t)?);
    }
    crate::path::build_path(s_grid.to_vec(), values)
}

/// Weighted Monte Carlo estimate of a path functional over an ensemble.
#[derive(Debug, Clone, Serialize)]
pub struct UpperExpectationEstimate {
    pub estimate: f64,
    pub std_error: f64,
    pub n_paths: usize,
}

impl UpperExpectationEstimate {
    /// Check the theoretical upper bound `estimate <= bound` with three
    /// standard errors of Monte Carlo slack.
    pub fn within_bound(&self, bound: f64) -> bool {
        self.estimate <= bound + 3.0 * self.std_error
    }
}

/// Monte Carlo mean of `F(target column)` weighted by the terminal-over-
/// initial level of the numeraire column when one is given (weights 1
/// otherwise). The weights are not renormalized: for a driftless numeraire
/// they average to one, and the unnormalized mean is the quantity bounded by
/// the Brownian-side integral.
pub fn upper_expectation_estimate<F>(
    ensemble: &Ensemble,
    target_column: usize,
    numeraire_column: Option<usize>,
    f: F,
) -> Result<UpperExpectationEstimate>
where
    F: Fn(&SampledPath) -> f64 + Sync,
{
    if ensemble.is_empty() {
        return Err(Error::EmptyEnsemble);
    }
    let weighted: Vec<f64> = ensemble.map_frames(|_, frame| {
        let target = frame.column(target_column)?;
        let w = match numeraire_column {
            None => 1.0,
            Some(j) => {
                let numeraire = frame.column(j)?;
                numeraire.check_strictly_positive()?;
                numeraire.last_value() / numeraire.first_value()
            }
        };
        Ok(w * f(&target))
    })?;
    let (estimate, std_error) = mean_se(&weighted);
    Ok(UpperExpectationEstimate {
        estimate,
        std_error,
        n_paths: weighted.len(),
    })
}

/// Kolmogorov–Smirnov gate for standard-normal increments, at the 1% level.
#[derive(Debug, Clone, Serialize)]
pub struct BrownianLawReport {
    pub n_samples: usize,
    pub statistic: f64,
    pub critical_value: f64,
    pub pass: bool,
}

/// Test unit-clock time-changed increments against the standard normal law.
/// Passes when the two-sided KS statistic stays below the 1% critical value
/// `1.63 / sqrt(n)`.
pub fn brownian_law_test(increments: &[f64]) -> Result<BrownianLawReport> {
    const MIN_SAMPLES: usize = 100;
    if increments.len() < MIN_SAMPLES {
        return Err(Error::TooFewSamples {
            got: increments.len(),
            min: MIN_SAMPLES,
        });
    }
    let statistic = ks_statistic(increments, normal_cdf);
    let critical_value = 1.63 / (increments.len() as f64).sqrt();
    Ok(BrownianLawReport {
        n_samples: increments.len(),
        statistic,
        critical_value,
        pass: statistic < critical_value,
    })
}
