//! Synthetic market generators: Brownian paths, driftless geometric Brownian
//! levels (exact in distribution at grid points, not an Euler scheme), a
//! correlated two-asset variant, and named deterministic test shapes.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::path::MarketFrame;

/// Deterministic single-column test paths.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "shape")]
pub enum TestShape {
    Constant { level: f64 },
    Line { from: f64, to: f64 },
    Tent { peak: f64 },
    Sine { amplitude: f64, cycles: f64, offset: f64 },
}

/// Path model selector with its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "model")]
pub enum PathModel {
    /// Arithmetic Brownian motion started at `x0`: cumulative Gaussian
    /// increments scaled by `sigma * sqrt(dt)`.
    Brownian { x0: f64, sigma: f64 },
    /// Driftless exponential martingale `x0 * exp(sigma W_t - sigma^2 t / 2)`.
    Gbm { x0: f64, sigma: f64 },
    /// Two driftless exponential levels whose Gaussian drivers have
    /// correlation `rho`; both columns are traded.
    CorrelatedGbm {
        s0: f64,
        i0: f64,
        sigma_s: f64,
        sigma_i: f64,
        rho: f64,
    },
    /// A named deterministic path.
    Deterministic { shape: TestShape },
}

/// Everything needed to regenerate a frame: model, horizon, step count, seed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    #[serde(flatten)]
    pub model: PathModel,
    pub horizon: f64,
    pub steps: usize,
    pub seed: u64,
}

fn validate(model: &PathModel, horizon: f64, steps: usize) -> Result<()> {
    if steps < 2 {
        return Err(Error::BadParameter(format!("steps must be >= 2, got {steps}")));
    }
    if !(horizon > 0.0 && horizon.is_finite()) {
        return Err(Error::BadParameter(format!("horizon must be > 0, got {horizon}")));
    }
    match *model {
        PathModel::Brownian { sigma, .. } => {
            if !(sigma >= 0.0) {
                return Err(Error::BadParameter(format!("sigma must be >= 0, got {sigma}")));
            }
        }
        PathModel::Gbm { x0, sigma } => {
            if !(sigma >= 0.0) {
                return Err(Error::BadParameter(format!("sigma must be >= 0, got {sigma}")));
            }
            if !(x0 > 0.0) {
                return Err(Error::BadParameter(format!(
                    "gbm initial level must be > 0, got {x0}"
                )));
            }
        }
        PathModel::CorrelatedGbm {
            s0,
            i0,
            sigma_s,
            sigma_i,
            rho,
        } => {
            if !(sigma_s >= 0.0 && sigma_i >= 0.0) {
                return Err(Error::BadParameter("volatilities must be >= 0".into()));
            }
            if !(s0 > 0.0 && i0 > 0.0) {
                return Err(Error::BadParameter("initial levels must be > 0".into()));
            }
            if !(-1.0..=1.0).contains(&rho) {
                return Err(Error::BadParameter(format!("|rho| must be <= 1, got {rho}")));
            }
        }
        PathModel::Deterministic { .. } => {}
    }
    Ok(())
}

fn uniform_grid(horizon: f64, steps: usize) -> Vec<f64> {
    let dt = horizon / steps as f64;
    let mut grid: Vec<f64> = (0..=steps).map(|i| i as f64 * dt).collect();
    // pin the endpoint to avoid accumulated rounding at the horizon
    *grid.last_mut().unwrap() = horizon;
    grid
}

fn gaussian_driver(rng: &mut ChaCha8Rng, steps: usize, sqrt_dt: f64) -> Vec<f64> {
    let mut w = Vec::with_capacity(steps + 1);
    let mut acc = 0.0f64;
    w.push(acc);
    for _ in 0..steps {
        let z: f64 = StandardNormal.sample(rng);
        acc += sqrt_dt * z;
        w.push(acc);
    }
    w
}

/// Generate a [`MarketFrame`] on a uniform grid over `[0, horizon]`.
///
/// Deterministic in `(model, horizon, steps, seed)`: two calls with the same
/// arguments produce identical frames.
pub fn generate_paths(model: PathModel, horizon: f64, steps: usize, seed: u64) -> Result<MarketFrame> {
    validate(&model, horizon, steps)?;
    let grid = uniform_grid(horizon, steps);
    let dt = horizon / steps as f64;
    let sqrt_dt = dt.sqrt();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match model {
        PathModel::Brownian { x0, sigma } => {
            let w = gaussian_driver(&mut rng, steps, sqrt_dt);
            let col: Vec<f64> = w.into_iter().map(|v| x0 + sigma * v).collect();
            MarketFrame::new(grid, vec![col], 1)
        }
        PathModel::Gbm { x0, sigma } => {
            let w = gaussian_driver(&mut rng, steps, sqrt_dt);
            let col: Vec<f64> = grid
                .iter()
                .zip(w)
                .map(|(&t, wt)| x0 * (sigma * wt - 0.5 * sigma * sigma * t).exp())
                .collect();
            MarketFrame::new(grid, vec![col], 1)
        }
        PathModel::CorrelatedGbm {
            s0,
            i0,
            sigma_s,
            sigma_i,
            rho,
        } => {
            let c = (1.0 - rho * rho).sqrt();
            let mut ws = 0.0f64;
            let mut wi = 0.0f64;
            let mut s_col = Vec::with_capacity(steps + 1);
            let mut i_col = Vec::with_capacity(steps + 1);
            s_col.push(s0);
            i_col.push(i0);
            for k in 1..=steps {
                let z1: f64 = StandardNormal.sample(&mut rng);
                let z2: f64 = StandardNormal.sample(&mut rng);
                ws += sqrt_dt * z1;
                wi += sqrt_dt * (rho * z1 + c * z2);
                let t = grid[k];
                s_col.push(s0 * (sigma_s * ws - 0.5 * sigma_s * sigma_s * t).exp());
                i_col.push(i0 * (sigma_i * wi - 0.5 * sigma_i * sigma_i * t).exp());
            }
            MarketFrame::new(grid, vec![s_col, i_col], 2)
        }
        PathModel::Deterministic { shape } => {
            let col: Vec<f64> = grid
                .iter()
                .map(|&t| match shape {
                    TestShape::Constant { level } => level,
                    TestShape::Line { from, to } => from + (to - from) * t / horizon,
                    TestShape::Tent { peak } => {
                        let half = horizon / 2.0;
                        if t <= half {
                            peak * t / half
                        } else {
                            peak * (horizon - t) / half
                        }
                    }
                    TestShape::Sine {
                        amplitude,
                        cycles,
                        offset,
                    } => offset + amplitude * (2.0 * std::f64::consts::PI * cycles * t / horizon).sin(),
                })
                .collect();
            MarketFrame::new(grid, vec![col], 1)
        }
    }
}

/// A reproducible collection of independent frames: stored as a recipe
/// (seed, model descriptor, count) and regenerated on demand. Member `i`
/// uses sub-seed `seed ^ i`, so members are independent of scheduling and
/// can be produced in parallel.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Ensemble {
    pub model_descriptor: GeneratorSpec,
    pub seed: u64,
    pub count: usize,
}

impl Ensemble {
    pub fn new(model_descriptor: GeneratorSpec, count: usize, seed: u64) -> Result<Self> {
        if count == 0 {
            return Err(Error::EmptyEnsemble);
        }
        validate(
            &model_descriptor.model,
            model_descriptor.horizon,
            model_descriptor.steps,
        )?;
        Ok(Ensemble {
            model_descriptor,
            seed,
            count,
        })
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    /// Regenerate member `i`.
    pub fn frame(&self, i: usize) -> Result<MarketFrame> {
        let d = &self.model_descriptor;
        generate_paths(d.model, d.horizon, d.steps, self.seed ^ i as u64)
    }

    /// Map every member frame in parallel; the output order follows member
    /// indices, so reductions over it are scheduling-independent.
    pub fn map_frames<T, F>(&self, f: F) -> Result<Vec<T>>
    where
        T: Send,
        F: Fn(usize, &MarketFrame) -> Result<T> + Sync,
    {
        (0..self.count)
            .into_par_iter()
            .map(|i| {
                let frame = self.frame(i)?;
                f(i, &frame)
            })
            .collect()
    }
}
