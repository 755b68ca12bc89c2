//! Simple trading strategies, self-financing numeraire mechanics, Girsanov
//! corrections, and Monte Carlo martingale testing.

use std::io::Read;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::calculus::{covariation_approx, stieltjes_integral};
use crate::doleans::doleans_log;
use crate::error::{Error, Result};
use crate::partition::PartitionLevel;
use crate::path::{merge_grids, MarketFrame, SampledPath};
use crate::stats::{weighted_mean_se, CompensatedSum};

/// A finite rebalancing schedule: `bets[k]` (one component per traded
/// security) is held over `(stop_times[k], stop_times[k+1]]`, the last bet
/// to the horizon. Stop times are realized per path.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SimpleStrategy {
    stop_times: Vec<f64>,
    bets: Vec<Vec<f64>>,
    bound: f64,
}

impl SimpleStrategy {
    pub fn new(stop_times: Vec<f64>, bets: Vec<Vec<f64>>, bound: f64) -> Result<Self> {
        if stop_times.len() != bets.len() {
            return Err(Error::LengthMismatch {
                times: stop_times.len(),
                values: bets.len(),
            });
        }
        if stop_times.is_empty() {
            return Err(Error::BadParameter("a strategy needs at least one rebalance".into()));
        }
        for (i, w) in stop_times.windows(2).enumerate() {
            if !(w[1] >= w[0]) {
                return Err(Error::NonMonotoneTimes(i + 1));
            }
        }
        let dim = bets[0].len();
        for row in &bets {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: row.len(),
                });
            }
            for (i, b) in row.iter().enumerate() {
                if !b.is_finite() {
                    return Err(Error::NonFiniteValue(i));
                }
                if b.abs() > bound {
                    return Err(Error::BadParameter(format!(
                        "bet {b} exceeds the declared bound {bound}"
                    )));
                }
            }
        }
        Ok(SimpleStrategy {
            stop_times,
            bets,
            bound,
        })
    }

    pub fn stop_times(&self) -> &[f64] {
        &self.stop_times
    }

    pub fn bets(&self) -> &[Vec<f64>] {
        &self.bets
    }

    pub fn dimension(&self) -> usize {
        self.bets[0].len()
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct StrategyRecord {
    time: f64,
    bets: Vec<f64>,
}

/// Load a strategy from a JSON array of `{time, bets: [..]}` records and
/// validate it against the frame's traded dimension.
pub fn strategy_from_json<R: Read>(source: R, frame: &MarketFrame) -> Result<SimpleStrategy> {
    let records: Vec<StrategyRecord> =
        serde_json::from_reader(source).map_err(|e| Error::ParseError(e.to_string()))?;
    let mut stop_times = Vec::with_capacity(records.len());
    let mut bets = Vec::with_capacity(records.len());
    for r in records {
        if r.bets.len() != frame.traded_count() {
            return Err(Error::DimensionMismatch {
                expected: frame.traded_count(),
                got: r.bets.len(),
            });
        }
        stop_times.push(r.time);
        bets.push(r.bets);
    }
    SimpleStrategy::new(stop_times, bets, f64::INFINITY)
}

fn check_strategy_frame(g: &SimpleStrategy, frame: &MarketFrame) -> Result<()> {
    if g.dimension() != frame.traded_count() {
        return Err(Error::DimensionMismatch {
            expected: frame.traded_count(),
            got: g.dimension(),
        });
    }
    let (lo, hi) = (frame.times()[0], frame.horizon());
    for &t in g.stop_times() {
        if !(t >= lo && t <= hi) {
            return Err(Error::DomainMismatch(format!(
                "rebalance time {t} outside the frame domain [{lo}, {hi}]"
            )));
        }
    }
    Ok(())
}

/// Shared evaluation grid for strategy-valued processes: the frame grid with
/// the rebalance times inserted, plus the traded columns read on it.
struct StrategyEvaluation {
    times: Arc<Vec<f64>>,
    traded: Vec<Vec<f64>>,
}

fn strategy_evaluation(g: &SimpleStrategy, frame: &MarketFrame) -> Result<StrategyEvaluation> {
    let union = merge_grids(frame.times(), g.stop_times());
    let times = Arc::new(union);
    let mut traded = Vec::with_capacity(frame.traded_count());
    for j in 0..frame.traded_count() {
        let col = frame.column(j)?;
        let mut v = Vec::with_capacity(times.len());
        for &t in times.iter() {
            v.push(col.value_at(t)?);
        }
        traded.push(v);
    }
    Ok(StrategyEvaluation { times, traded })
}

/// Capital of a simple strategy with initial capital `c`:
/// `t -> c + sum_n bets_n . (prices(stop_{n+1} ^ t) - prices(stop_n ^ t))`
/// over the traded columns, evaluated on the frame grid with the rebalance
/// times inserted.
pub fn capital_process(g: &SimpleStrategy, frame: &MarketFrame, c: f64) -> Result<SampledPath> {
    check_strategy_frame(g, frame)?;
    let eval = strategy_evaluation(g, frame)?;
    let n_stops = g.stop_times().len();
    let dim = g.dimension();
    let mut out = Vec::with_capacity(eval.times.len());
    let mut acc = CompensatedSum::new();
    let mut active: Option<usize> = None; // index of the bet currently held
    let mut entry_prices = vec![0.0f64; dim];
    let mut next = 0usize; // next rebalance to activate
    for (i, &t) in eval.times.iter().enumerate() {
        // roll over every rebalance time reached at t
        while next < n_stops && g.stop_times()[next] <= t {
            let price_at = |j: usize| -> f64 {
                // rebalance times are members of the evaluation grid
                if eval.times[i] == g.stop_times()[next] {
                    eval.traded[j][i]
                } else {
                    // t passed the stop exactly at a grid point earlier in
                    // this loop; find it by interpolation-free lookup
                    let k = eval
                        .times
                        .partition_point(|&u| u < g.stop_times()[next]);
                    eval.traded[j][k]
                }
            };
            if let Some(a) = active {
                for j in 0..dim {
                    acc.add(g.bets()[a][j] * (price_at(j) - entry_prices[j]));
                }
            }
            for (j, e) in entry_prices.iter_mut().enumerate() {
                *e = price_at(j);
            }
            active = Some(next);
            next += 1;
        }
        let mut v = c + acc.total();
        if let Some(a) = active {
            for j in 0..dim {
                v += g.bets()[a][j] * (eval.traded[j][i] - entry_prices[j]);
            }
        }
        out.push(v);
    }
    SampledPath::with_grid(eval.times, out)
}

/// One rebalance of the self-financing expansion: time, units of the
/// numeraire security, and the bets on the traded securities.
#[derive(Debug, Clone, Serialize)]
pub struct HoldingRecord {
    pub time: f64,
    pub numeraire_units: f64,
    pub bets: Vec<f64>,
}

/// A strategy expressed in undiscounted terms: full holdings per rebalance
/// and the undiscounted capital path.
#[derive(Debug, Clone)]
pub struct SelfFinancingExpansion {
    pub holdings: Vec<HoldingRecord>,
    pub undiscounted_capital: SampledPath,
}

/// Expand a strategy on a discounted frame into the self-financing strategy
/// of the undiscounted market, where `numeraire` is the price of one
/// numeraire unit and all capital not in the traded securities is parked in
/// the numeraire.
///
/// The numeraire units held after rebalance `n` are
/// `(capital(stop_n) - bets_n . prices(stop_n))` in discounted terms, which
/// makes the expansion self-financing at every rebalance and keeps the
/// undiscounted capital equal to `numeraire * discounted capital` at all
/// times. Before the first rebalance the strategy holds `c` numeraire units.
pub fn expand_self_financing(
    g: &SimpleStrategy,
    frame: &MarketFrame,
    numeraire: &SampledPath,
    c: f64,
) -> Result<SelfFinancingExpansion> {
    check_strategy_frame(g, frame)?;
    numeraire.check_strictly_positive()?;
    let discounted = capital_process(g, frame, c)?;
    let eval_times = discounted.grid();
    let eval = strategy_evaluation(g, frame)?;
    debug_assert!(eval.times[..] == eval_times[..]);

    let dim = g.dimension();
    let mut holdings = Vec::with_capacity(g.stop_times().len());
    for (n, &tau) in g.stop_times().iter().enumerate() {
        let k = discounted
            .times()
            .partition_point(|&u| u < tau);
        let mut pos_value = 0.0;
        for j in 0..dim {
            pos_value += g.bets()[n][j] * eval.traded[j][k];
        }
        holdings.push(HoldingRecord {
            time: tau,
            numeraire_units: discounted.values()[k] - pos_value,
            bets: g.bets()[n].clone(),
        });
    }

    // undiscounted capital from the holdings themselves: between rebalances
    // it is the mark-to-market of the held portfolio
    let mut out = Vec::with_capacity(eval.times.len());
    let mut active: Option<usize> = None;
    let mut next = 0usize;
    for (i, &t) in eval.times.iter().enumerate() {
        while next < g.stop_times().len() && g.stop_times()[next] <= t {
            active = Some(next);
            next += 1;
        }
        let numeraire_level = numeraire.value_at(t)?;
        let v = match active {
            None => c * numeraire_level,
            Some(n) => {
                let mut v = holdings[n].numeraire_units * numeraire_level;
                for j in 0..dim {
                    // undiscounted traded price = numeraire * discounted price
                    v += holdings[n].bets[j] * numeraire_level * eval.traded[j][i];
                }
                v
            }
        };
        out.push(v);
    }
    let undiscounted_capital = SampledPath::with_grid(eval_times, out)?;
    Ok(SelfFinancingExpansion {
        holdings,
        undiscounted_capital,
    })
}

/// Portfolio value of holding record `h` at time `t` in undiscounted terms.
/// Used to check the self-financing identity at rebalance times.
pub fn holding_value(
    h: &HoldingRecord,
    frame: &MarketFrame,
    numeraire: &SampledPath,
    t: f64,
) -> Result<f64> {
    let level = numeraire.value_at(t)?;
    let mut v = h.numeraire_units * level;
    for (j, b) in h.bets.iter().enumerate() {
        v += b * level * frame.column(j)?.value_at(t)?;
    }
    Ok(v)
}

/// `t -> X_t / I_t` for a strictly positive numeraire path `I`.
pub fn discount_by_numeraire(x: &SampledPath, i: &SampledPath) -> Result<SampledPath> {
    i.check_strictly_positive()?;
    if i.first_time() > x.first_time() || i.last_time() < x.last_time() {
        return Err(Error::DomainMismatch(
            "numeraire domain does not cover the path".into(),
        ));
    }
    let mut out = Vec::with_capacity(x.len());
    for (k, &t) in x.times().iter().enumerate() {
        out.push(x.values()[k] / i.value_at(t)?);
    }
    SampledPath::with_grid(x.grid(), out)
}

/// How the drift correction of [`girsanov_correct`] is computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GirsanovMethod {
    /// `M_t - int_0^t d[I, M]^p_s / I_s` (left-point Stieltjes sum against
    /// the covariation approximant).
    Stieltjes,
    /// `M_t - [L, M]^p_t` with `L` the stochastic logarithm of `I`.
    LogCovariation,
}

/// Remove from `M` the part that prices away under the numeraire `I`: the
/// corrected process is a numeraire-relative martingale. The two methods
/// compute the same correction along different algebraic routes and are
/// cross-checked in the test suite.
pub fn girsanov_correct(
    m: &SampledPath,
    i: &SampledPath,
    p: &PartitionLevel,
    method: GirsanovMethod,
) -> Result<SampledPath> {
    i.check_strictly_positive()?;
    match method {
        GirsanovMethod::Stieltjes => {
            let cov = covariation_approx(i, m, p)?;
            let recip = i.map(f64::recip)?;
            let correction = stieltjes_integral(&recip, &cov)?;
            m.zip_with(&correction, |a, b| a - b)
        }
        GirsanovMethod::LogCovariation => {
            let l = doleans_log(i, p)?;
            let correction = covariation_approx(&l, m, p)?;
            m.zip_with(&correction, |a, b| a - b)
        }
    }
}

/// Weighted-mean test of the martingale property of a batch of terminal
/// values: `z = (weighted mean - initial) / standard error`, passing at
/// `|z| <= 3`.
#[derive(Debug, Clone, Serialize)]
pub struct MartingaleTestReport {
    pub n_paths: usize,
    pub weighted_mean_terminal: f64,
    pub initial_value: f64,
    pub std_error: f64,
    pub z_score: f64,
    pub pass: bool,
}

pub fn martingale_test(
    terminal_values: &[f64],
    initial_value: f64,
    weights: &[f64],
) -> Result<MartingaleTestReport> {
    const MIN_SAMPLES: usize = 30;
    if terminal_values.len() < MIN_SAMPLES {
        return Err(Error::TooFewSamples {
            got: terminal_values.len(),
            min: MIN_SAMPLES,
        });
    }
    let (mean, se) = weighted_mean_se(terminal_values, weights)?;
    let z_score = if se > 0.0 {
        (mean - initial_value) / se
    } else if mean == initial_value {
        0.0
    } else {
        f64::INFINITY * (mean - initial_value).signum()
    };
    Ok(MartingaleTestReport {
        n_paths: terminal_values.len(),
        weighted_mean_terminal: mean,
        initial_value,
        std_error: se,
        z_score,
        pass: z_score.abs() <= 3.0,
    })
}
