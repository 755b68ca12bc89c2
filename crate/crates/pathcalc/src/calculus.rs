//! Integral and covariation approximants along a partition level, with
//! convergence diagnostics across levels.
//!
//! All approximants are evaluated on the integrator's sample grid. Because
//! partition stops are realized at sample times, the min(stop, t) terms in
//! the defining sums are exact on that grid: within the k-th stop interval
//! the running value is `acc + H(T_{k-1}) * (X(t) - X(T_{k-1}))`, and the
//! completed terms accumulate with compensated summation.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::partition::PartitionLevel;
use crate::path::SampledPath;
use crate::stats::CompensatedSum;

fn check_pair(a: &SampledPath, b: &SampledPath, p: &PartitionLevel) -> Result<()> {
    if !a.same_grid(b) {
        return Err(Error::DomainMismatch(
            "paths must share one sample grid".into(),
        ));
    }
    p.check_compatible(a)
}

/// Left-point integral approximant `t -> sum_k H(T_{k-1} ^ t) (X(T_k ^ t) - X(T_{k-1} ^ t))`.
///
/// The value at the domain start is 0; a constant integrand telescopes to
/// `H * (X_t - X_0)` exactly, at every level.
pub fn ito_approx(h: &SampledPath, x: &SampledPath, p: &PartitionLevel) -> Result<SampledPath> {
    check_pair(h, x, p)?;
    let hv = h.values();
    let xv = x.values();
    let stops = p.stop_indices();
    let mut out = Vec::with_capacity(xv.len());
    let mut acc = CompensatedSum::new();
    let mut next_stop = 1usize; // index into stops
    let mut a = stops[0];
    for i in 0..xv.len() {
        out.push(acc.total() + hv[a] * (xv[i] - xv[a]));
        if next_stop < stops.len() && i == stops[next_stop] {
            acc.add(hv[a] * (xv[i] - xv[a]));
            a = i;
            next_stop += 1;
        }
    }
    SampledPath::with_grid(x.grid(), out)
}

/// Covariation approximant `t -> sum_k (X(T_k ^ t) - X(T_{k-1} ^ t)) (Y(T_k ^ t) - Y(T_{k-1} ^ t))`.
///
/// Quadratic variation is the `x == y` case.
pub fn covariation_approx(
    x: &SampledPath,
    y: &SampledPath,
    p: &PartitionLevel,
) -> Result<SampledPath> {
    check_pair(x, y, p)?;
    let xv = x.values();
    let yv = y.values();
    let stops = p.stop_indices();
    let mut out = Vec::with_capacity(xv.len());
    let mut acc = CompensatedSum::new();
    let mut next_stop = 1usize;
    let mut a = stops[0];
    for i in 0..xv.len() {
        out.push(acc.total() + (xv[i] - xv[a]) * (yv[i] - yv[a]));
        if next_stop < stops.len() && i == stops[next_stop] {
            acc.add((xv[i] - xv[a]) * (yv[i] - yv[a]));
            a = i;
            next_stop += 1;
        }
    }
    SampledPath::with_grid(x.grid(), out)
}

/// Quadratic variation approximant `[X]^p = [X, X]^p`.
pub fn quadratic_variation(x: &SampledPath, p: &PartitionLevel) -> Result<SampledPath> {
    covariation_approx(x, x, p)
}

/// Left-point Riemann–Stieltjes sum of `H` against the increments of `A`,
/// on `A`'s native grid. `H` may live on a different grid as long as its
/// domain covers `A`'s; it is then read off by interpolation.
pub fn stieltjes_integral(h: &SampledPath, a: &SampledPath) -> Result<SampledPath> {
    let at = a.times();
    let av = a.values();
    let shared = h.same_grid(a);
    let mut out = Vec::with_capacity(av.len());
    let mut acc = CompensatedSum::new();
    out.push(0.0);
    for i in 1..av.len() {
        let left = if shared {
            h.values()[i - 1]
        } else {
            h.value_at(at[i - 1])?
        };
        acc.add(left * (av[i] - av[i - 1]));
        out.push(acc.total());
    }
    SampledPath::with_grid(a.grid(), out)
}

/// Sup over the evaluation grid of
/// `|X_t Y_t - X_0 Y_0 - (X.Y)^p_t - (Y.X)^p_t - [X,Y]^p_t|`,
/// the integration-by-parts defect. Exact telescoping makes this a rounding
/// residual at every level.
pub fn by_parts_residual(x: &SampledPath, y: &SampledPath, p: &PartitionLevel) -> Result<f64> {
    let xy = ito_approx(x, y, p)?;
    let yx = ito_approx(y, x, p)?;
    let cov = covariation_approx(x, y, p)?;
    let xv = x.values();
    let yv = y.values();
    let x0y0 = xv[0] * yv[0];
    let mut worst = 0.0f64;
    for i in 0..xv.len() {
        let r = xv[i] * yv[i] - x0y0 - xy.values()[i] - yx.values()[i] - cov.values()[i];
        worst = worst.max(r.abs());
    }
    Ok(worst)
}

/// Polarization form of the covariation:
/// `([X+Y]^p - [X]^p - [Y]^p) / 2` on the evaluation grid.
pub fn polarization(x: &SampledPath, y: &SampledPath, p: &PartitionLevel) -> Result<SampledPath> {
    let sum = x.zip_with(y, |a, b| a + b)?;
    let q_sum = quadratic_variation(&sum, p)?;
    let q_x = quadratic_variation(x, p)?;
    let q_y = quadratic_variation(y, p)?;
    q_sum
        .zip_with(&q_x, |s, a| s - a)?
        .zip_with(&q_y, |s, b| 0.5 * (s - b))
}

/// A twice-differentiable scalar field on `d` variables, given with its
/// first and second partial derivatives.
pub struct ScalarField<'a> {
    pub value: &'a dyn Fn(&[f64]) -> f64,
    pub gradient: &'a dyn Fn(&[f64], usize) -> f64,
    pub hessian: &'a dyn Fn(&[f64], usize, usize) -> f64,
}

/// Sup over the grid of the second-order expansion defect
/// `|F(X_t) - F(X_0) - sum_i int dF_i dX^i - 1/2 sum_ij int d2F_ij d[X^i,X^j]|`.
///
/// First-order integrals use [`ito_approx`] at level `p`; the second-order
/// integrals are Stieltjes sums against [`covariation_approx`] at the same
/// level, so one partition drives the whole expansion.
pub fn ito_formula_residual(
    field: &ScalarField,
    components: &[SampledPath],
    p: &PartitionLevel,
) -> Result<f64> {
    let d = components.len();
    if d == 0 {
        return Err(Error::DimensionMismatch { expected: 1, got: 0 });
    }
    for c in components {
        check_pair(c, &components[0], p)?;
    }
    let len = components[0].len();
    let grid = components[0].grid();
    let mut arg = vec![0.0f64; d];
    let at = |i: usize, arg: &mut [f64]| {
        for (k, c) in components.iter().enumerate() {
            arg[k] = c.values()[i];
        }
    };

    // total of the first- and second-order integral terms, per grid point
    let mut terms = vec![CompensatedSum::new(); len];
    for (k, xk) in components.iter().enumerate() {
        let mut g = Vec::with_capacity(len);
        for i in 0..len {
            at(i, &mut arg);
            g.push((field.gradient)(&arg, k));
        }
        let g_path = SampledPath::with_grid(grid.clone(), g)?;
        let integral = ito_approx(&g_path, xk, p)?;
        for i in 0..len {
            terms[i].add(integral.values()[i]);
        }
    }
    for (a, xa) in components.iter().enumerate() {
        for (b, xb) in components.iter().enumerate() {
            let cov = covariation_approx(xa, xb, p)?;
            let mut hcol = Vec::with_capacity(len);
            for i in 0..len {
                at(i, &mut arg);
                hcol.push((field.hessian)(&arg, a, b));
            }
            let h_path = SampledPath::with_grid(grid.clone(), hcol)?;
            let integral = stieltjes_integral(&h_path, &cov)?;
            for i in 0..len {
                terms[i].add(0.5 * integral.values()[i]);
            }
        }
    }

    at(0, &mut arg);
    let f0 = (field.value)(&arg);
    let mut worst = 0.0f64;
    for i in 0..len {
        at(i, &mut arg);
        let fi = (field.value)(&arg);
        worst = worst.max((fi - f0 - terms[i].total()).abs());
    }
    Ok(worst)
}

/// Convergence diagnostics across a range of refinement levels: sup-norm
/// distances between successive approximants and a Cauchy verdict at `tol`.
#[derive(Debug, Clone, Serialize)]
pub struct ConvergenceReport {
    pub levels: Vec<u32>,
    pub sup_deltas: Vec<f64>,
    pub converged: bool,
    pub tol: f64,
    /// The finest-level approximant, declared as the limit.
    #[serde(skip)]
    pub limit: SampledPath,
}

/// Run `make_approx` for every level in `n_min..=n_max`, measure sup-norm
/// deltas between consecutive approximants on the common grid, and declare
/// convergence when the last delta is within `tol`.
pub fn converge(
    n_min: u32,
    n_max: u32,
    tol: f64,
    mut make_approx: impl FnMut(u32) -> Result<SampledPath>,
) -> Result<ConvergenceReport> {
    if n_max <= n_min {
        return Err(Error::BadParameter(format!(
            "level range must satisfy n_max > n_min, got {n_min}..{n_max}"
        )));
    }
    if !(tol >= 0.0 && tol.is_finite()) {
        return Err(Error::BadParameter(format!("tol must be finite and >= 0, got {tol}")));
    }
    let mut levels = Vec::new();
    let mut sup_deltas = Vec::new();
    let mut prev: Option<SampledPath> = None;
    for n in n_min..=n_max {
        let cur = make_approx(n)?;
        if let Some(p) = &prev {
            sup_deltas.push(p.sup_distance(&cur)?);
        }
        levels.push(n);
        prev = Some(cur);
    }
    let limit = prev.expect("at least two levels");
    let last = *sup_deltas.last().expect("at least one delta");
    Ok(ConvergenceReport {
        levels,
        sup_deltas,
        converged: last <= tol,
        tol,
        limit,
    })
}
