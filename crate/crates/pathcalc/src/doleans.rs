//! Stochastic exponential and logarithm along a partition level.
//!
//! The exponential of `X` is `exp(X - [X]/2)`; the logarithm of a positive
//! `Y` is `ln Y + [ln Y]/2`, equivalently `ln Y_0 + int dY/Y`. All variation
//! terms are computed at a caller-supplied partition level, so round-trip
//! tests can control the single source of discretization error.

use crate::calculus::{ito_approx, quadratic_variation};
use crate::error::Result;
use crate::partition::PartitionLevel;
use crate::path::SampledPath;

/// `t -> exp(X_t - [X]^p_t / 2)`. Strictly positive by construction.
pub fn doleans_exp(x: &SampledPath, p: &PartitionLevel) -> Result<SampledPath> {
    let qv = quadratic_variation(x, p)?;
    x.zip_with(&qv, |v, q| (v - 0.5 * q).exp())
}

/// `t -> ln Y_t + [ln Y]^p_t / 2` for strictly positive `Y`.
pub fn doleans_log(y: &SampledPath, p: &PartitionLevel) -> Result<SampledPath> {
    y.check_strictly_positive()?;
    let log_y = y.map(f64::ln)?;
    let qv = quadratic_variation(&log_y, p)?;
    log_y.zip_with(&qv, |v, q| v + 0.5 * q)
}

/// The integral form of the logarithm: `ln Y_0 + (H . Y)^p` with `H = 1/Y`.
pub fn doleans_log_integral(y: &SampledPath, p: &PartitionLevel) -> Result<SampledPath> {
    y.check_strictly_positive()?;
    let recip = y.map(f64::recip)?;
    let integral = ito_approx(&recip, y, p)?;
    let ln_y0 = y.first_value().ln();
    integral.map(|v| ln_y0 + v)
}

/// Sup over the grid of `|Y_t - Y_0 - (Y . X)^p_t|`: how far `Y` is from
/// solving `dY = Y dX` at level `p`.
pub fn sde_residual(y: &SampledPath, x: &SampledPath, p: &PartitionLevel) -> Result<f64> {
    let integral = ito_approx(y, x, p)?;
    let y0 = y.first_value();
    let mut worst = 0.0f64;
    for i in 0..y.len() {
        worst = worst.max((y.values()[i] - y0 - integral.values()[i]).abs());
    }
    Ok(worst)
}
