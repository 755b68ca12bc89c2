//! Relative growth, relative covariation, equity-premium and CAPM deviation
//! processes, with central-limit and iterated-logarithm diagnostics.
//!
//! For a positive path `X`, the cumulative relative growth is the running
//! integral of `dX / X`; the relative covariation of positive `X, Y` is the
//! running integral of `d[X, Y] / (X Y)`. The deviation `growth(S) -
//! relcov(S, I)` is the process that becomes a martingale under the index
//! numeraire; every diagnostic here measures how far sampled data is from
//! that statement.

use serde::Serialize;

use crate::calculus::{covariation_approx, ito_approx, stieltjes_integral};
use crate::doleans::doleans_log;
use crate::error::{Error, Result};
use crate::generate::Ensemble;
use crate::partition::{lebesgue_partition, PartitionLevel};
use crate::path::SampledPath;
use crate::stats::{normal_upper_quantile, weighted_mean_se};
use crate::time_change::first_clock_crossing;

/// Cumulative relative growth `t -> int_0^t dX / X` at level `p`.
pub fn relative_growth(x: &SampledPath, p: &PartitionLevel) -> Result<SampledPath> {
    x.check_strictly_positive()?;
    let recip = x.map(f64::recip)?;
    ito_approx(&recip, x, p)
}

/// Relative covariation `t -> int_0^t d[X, Y] / (X Y)` at level `p`,
/// computed as a left-point Stieltjes sum against the covariation
/// approximant.
pub fn relative_covariation(
    x: &SampledPath,
    y: &SampledPath,
    p: &PartitionLevel,
) -> Result<SampledPath> {
    x.check_strictly_positive()?;
    y.check_strictly_positive()?;
    let cov = covariation_approx(x, y, p)?;
    let integrand = x.zip_with(y, |a, b| 1.0 / (a * b))?;
    stieltjes_integral(&integrand, &cov)
}

/// The same quantity along the logarithm route: `[log(X), log(Y)]^p` with
/// the stochastic logarithms of the inputs. Used as the cross-check of
/// [`relative_covariation`].
pub fn relative_covariation_via_logs(
    x: &SampledPath,
    y: &SampledPath,
    p: &PartitionLevel,
) -> Result<SampledPath> {
    let lx = doleans_log(x, p)?;
    let ly = doleans_log(y, p)?;
    covariation_approx(&lx, &ly, p)
}

/// Relative quadratic variation `relcov(X, X)`.
pub fn relative_quadratic_variation(x: &SampledPath, p: &PartitionLevel) -> Result<SampledPath> {
    relative_covariation(x, x, p)
}

/// CAPM deviation process `growth(S) - relcov(S, I)`; the equity premium is
/// the `S == I` case.
pub fn capm_deviation(s: &SampledPath, i: &SampledPath, p: &PartitionLevel) -> Result<SampledPath> {
    let growth = relative_growth(s, p)?;
    let relcov = relative_covariation(s, i, p)?;
    growth.zip_with(&relcov, |a, b| a - b)
}

/// Exponential test process `exp(eps * (growth(S) - relcov(S, I)) - eps^2/2 * relqv(S))`.
pub fn exp_test_process(
    s: &SampledPath,
    i: &SampledPath,
    p: &PartitionLevel,
    eps: f64,
) -> Result<SampledPath> {
    if !eps.is_finite() {
        return Err(Error::BadParameter(format!("eps must be finite, got {eps}")));
    }
    let dev = capm_deviation(s, i, p)?;
    let relqv = relative_quadratic_variation(s, p)?;
    dev.zip_with(&relqv, |d, q| (eps * d - 0.5 * eps * eps * q).exp())
}

/// Outcome of the central-limit bound check over an ensemble.
#[derive(Debug, Clone, Serialize)]
pub struct CltBoundReport {
    pub qv_budget: f64,
    pub delta: f64,
    pub z_quantile: f64,
    pub exceed_frequency: f64,
    pub std_error: f64,
    pub n_paths: usize,
    /// Frequency within `delta` plus three standard errors.
    pub within_bound: bool,
}

/// Index-weighted frequency of `|deviation at tau| >= z_{delta/2} sqrt(T)`,
/// where `tau` is the first time the relative quadratic variation of the
/// stock reaches the budget `T` (the event counts as false when the budget
/// is never reached). The crossing is located by linear interpolation of the
/// variation clock.
pub fn clt_bound_check(
    ensemble: &Ensemble,
    stock_column: usize,
    index_column: usize,
    delta: f64,
    qv_budget: f64,
    level: u32,
    eps0: f64,
) -> Result<CltBoundReport> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::BadParameter(format!(
            "delta must lie in (0, 1), got {delta}"
        )));
    }
    if !(qv_budget > 0.0) {
        return Err(Error::BadParameter(format!(
            "the variation budget must be > 0, got {qv_budget}"
        )));
    }
    let z = normal_upper_quantile(delta / 2.0)?;
    let threshold = z * qv_budget.sqrt();
    let outcomes: Vec<(f64, f64)> = ensemble.map_frames(|_, frame| {
        let s = frame.column(stock_column)?;
        let i = frame.column(index_column)?;
        let p = lebesgue_partition(&[s.clone(), i.clone()], level, eps0)?;
        let relqv = relative_quadratic_variation(&s, &p)?;
        let weight = {
            i.check_strictly_positive()?;
            i.last_value() / i.first_value()
        };
        let event = match first_clock_crossing(&relqv, qv_budget) {
            None => 0.0,
            Some(tau) => {
                let dev = capm_deviation(&s, &i, &p)?;
                if dev.value_at(tau)?.abs() >= threshold {
                    1.0
                } else {
                    0.0
                }
            }
        };
        Ok((event, weight))
    })?;
    let events: Vec<f64> = outcomes.iter().map(|&(e, _)| e).collect();
    let weights: Vec<f64> = outcomes.iter().map(|&(_, w)| w).collect();
    let (exceed_frequency, std_error) = weighted_mean_se(&events, &weights)?;
    Ok(CltBoundReport {
        qv_budget,
        delta,
        z_quantile: z,
        exceed_frequency,
        std_error,
        n_paths: outcomes.len(),
        within_bound: exceed_frequency <= delta + 3.0 * std_error,
    })
}

/// Iterated-logarithm envelope diagnostic.
#[derive(Debug, Clone)]
pub struct LilRatioReport {
    /// `|deviation| / sqrt(2 relqv ln ln relqv)` on the region where the
    /// relative variation exceeds `e`; `None` when that region is empty.
    pub ratio: Option<SampledPath>,
    pub running_max: Option<f64>,
    pub region_nonempty: bool,
}

/// Envelope ratio of the deviation against the iterated-logarithm scale.
/// The statement behind it is asymptotic; this reports the realized ratio
/// path and its running maximum, and leaves judgment to wide qualitative
/// bands.
pub fn lil_ratio(s: &SampledPath, i: &SampledPath, p: &PartitionLevel) -> Result<LilRatioReport> {
    let dev = capm_deviation(s, i, p)?;
    let relqv = relative_quadratic_variation(s, p)?;
    let mut times = Vec::new();
    let mut values = Vec::new();
    let mut running_max = f64::NEG_INFINITY;
    for k in 0..relqv.len() {
        let q = relqv.values()[k];
        if q > std::f64::consts::E {
            let scale = (2.0 * q * q.ln().ln()).sqrt();
            let r = dev.values()[k].abs() / scale;
            times.push(relqv.times()[k]);
            values.push(r);
            running_max = running_max.max(r);
        }
    }
    if times.len() < 2 {
        return Ok(LilRatioReport {
            ratio: None,
            running_max: if times.is_empty() { None } else { Some(running_max) },
            region_nonempty: !times.is_empty(),
        });
    }
    Ok(LilRatioReport {
        ratio: Some(crate::path::build_path(times, values)?),
        running_max: Some(running_max),
        region_nonempty: true,
    })
}

/// Both sides of the realized-beta relation at time `t`:
/// `lhs = growth(S)_t`, `rhs = relcov(S, I)_t / relqv(I)_t * growth(I)_t`.
/// No verdict is attached; the relation is only meaningful once the
/// variation scales are large.
pub fn capm_beta(
    s: &SampledPath,
    i: &SampledPath,
    p: &PartitionLevel,
    t: f64,
) -> Result<(f64, f64)> {
    let growth_s = relative_growth(s, p)?;
    let growth_i = relative_growth(i, p)?;
    let relcov = relative_covariation(s, i, p)?;
    let relqv_i = relative_quadratic_variation(i, p)?;
    let denom = relqv_i.value_at(t)?;
    if denom == 0.0 {
        return Err(Error::DegenerateDenominator(t));
    }
    let lhs = growth_s.value_at(t)?;
    let rhs = relcov.value_at(t)? / denom * growth_i.value_at(t)?;
    Ok((lhs, rhs))
}

/// Scalar summary emitted by the `capm` analysis: the central-limit bound
/// fields plus the realized-beta sides and the envelope maximum.
#[derive(Debug, Clone, Serialize)]
pub struct CapmReport {
    pub qv_budget: f64,
    pub delta: f64,
    pub z_quantile: f64,
    pub exceed_frequency: f64,
    pub exceed_std_error: f64,
    pub clt_within_bound: bool,
    pub n_paths: usize,
    pub beta_lhs: f64,
    pub beta_rhs: f64,
    pub lil_region_nonempty: bool,
    pub lil_running_max: Option<f64>,
}
