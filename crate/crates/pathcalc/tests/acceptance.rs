//! Acceptance suite: one test per criterion, each printing a PASS line with
//! the measured numbers (run with `--nocapture` to see them on success).
//!
//! Criterion 14 (byte-identical selfcheck reports) exercises the CLI binary
//! and lives in the CLI crate's acceptance suite.

use std::time::Instant;

use rayon::prelude::*;

use pathcalc::*;

fn brownian_pair(steps: usize, seed: u64) -> (SampledPath, SampledPath) {
    let x = generate_paths(PathModel::Brownian { x0: 0.0, sigma: 1.0 }, 1.0, steps, seed)
        .unwrap()
        .column(0)
        .unwrap();
    let y_raw = generate_paths(
        PathModel::Brownian { x0: 0.0, sigma: 1.0 },
        1.0,
        steps,
        seed ^ 0x9e37_79b9_7f4a_7c15,
    )
    .unwrap()
    .column(0)
    .unwrap();
    let y = SampledPath::with_grid(x.grid(), y_raw.values().to_vec()).unwrap();
    (x, y)
}

fn correlated_spec(horizon: f64, steps: usize) -> GeneratorSpec {
    GeneratorSpec {
        model: PathModel::CorrelatedGbm {
            s0: 1.0,
            i0: 1.0,
            sigma_s: 0.2,
            sigma_i: 0.3,
            rho: 0.5,
        },
        horizon,
        steps,
        seed: 0,
    }
}

// Criterion 1: integration-by-parts exactness. 100 Brownian pairs, 1e5
// steps, levels 4..9, sup residual <= 1e-8 relative, within 2 minutes.
#[test]
fn acceptance_01_by_parts_exactness() {
    let clock = Instant::now();
    let worst = (0..100u64)
        .into_par_iter()
        .map(|seed| {
            let (x, y) = brownian_pair(100_000, 10_000 + seed);
            let scale = 1.0 + x.zip_with(&y, |a, b| a * b).unwrap().sup_abs();
            let mut worst_rel = 0.0f64;
            for n in 4..=9 {
                let p = lebesgue_partition(&[x.clone(), y.clone()], n, 0.5).unwrap();
                let r = by_parts_residual(&x, &y, &p).unwrap();
                worst_rel = worst_rel.max(r / scale);
            }
            worst_rel
        })
        .reduce(|| 0.0, f64::max);
    let secs = clock.elapsed().as_secs_f64();
    assert!(
        worst <= 1e-8,
        "[acceptance 1] FAIL: worst relative by-parts residual {worst:.3e} > 1e-8"
    );
    assert!(secs <= 120.0, "[acceptance 1] FAIL: took {secs:.1} s > 2 min");
    println!("[acceptance 1] PASS: by-parts residual <= {worst:.3e} relative over 100 pairs x levels 4..9 ({secs:.1} s)");
}

// Criterion 2: polarization identity on the same corpus, 1e-9 relative.
#[test]
fn acceptance_02_polarization_identity() {
    let worst = (0..100u64)
        .into_par_iter()
        .map(|seed| {
            let (x, y) = brownian_pair(100_000, 10_000 + seed);
            let mut worst_rel = 0.0f64;
            for n in 4..=9 {
                let p = lebesgue_partition(&[x.clone(), y.clone()], n, 0.5).unwrap();
                let pol = polarization(&x, &y, &p).unwrap();
                let cov = covariation_approx(&x, &y, &p).unwrap();
                let scale = 1.0 + cov.sup_abs();
                worst_rel = worst_rel.max(pol.sup_distance(&cov).unwrap() / scale);
            }
            worst_rel
        })
        .reduce(|| 0.0, f64::max);
    assert!(
        worst <= 1e-9,
        "[acceptance 2] FAIL: worst relative polarization defect {worst:.3e} > 1e-9"
    );
    println!("[acceptance 2] PASS: polarization matches covariation to {worst:.3e} relative");
}

// Criterion 3: quadratic-variation consistency. Unit-volatility Brownian,
// t = 1, level 8: per-path QV in [0.8, 1.2] for >= 95% of 1000 paths and
// ensemble mean within 1 +- 0.02.
#[test]
fn acceptance_03_quadratic_variation_consistency() {
    let qvs: Vec<f64> = (0..1000u64)
        .into_par_iter()
        .map(|seed| {
            let x = generate_paths(
                PathModel::Brownian { x0: 0.0, sigma: 1.0 },
                1.0,
                100_000,
                30_000 + seed,
            )
            .unwrap()
            .column(0)
            .unwrap();
            let p = lebesgue_partition(&[x.clone()], 8, 0.5).unwrap();
            quadratic_variation(&x, &p).unwrap().last_value()
        })
        .collect();
    let in_band = qvs.iter().filter(|&&q| (0.8..=1.2).contains(&q)).count();
    let mean = qvs.iter().sum::<f64>() / qvs.len() as f64;
    assert!(
        in_band >= 950,
        "[acceptance 3] FAIL: only {in_band}/1000 per-path QVs inside [0.8, 1.2]"
    );
    assert!(
        (mean - 1.0).abs() <= 0.02,
        "[acceptance 3] FAIL: ensemble mean QV {mean:.4} outside 1 +- 0.02"
    );
    println!("[acceptance 3] PASS: QV mean {mean:.4}, {in_band}/1000 paths in [0.8, 1.2]");
}

// Criterion 4: change-of-variable residuals decrease across levels 4..9 and
// end below 1e-2 scaled by the path range, for x^2 and exp(x - y/2).
#[test]
fn acceptance_04_ito_formula_residuals() {
    let square = ScalarField {
        value: &|a: &[f64]| a[0] * a[0],
        gradient: &|a: &[f64], _| 2.0 * a[0],
        hessian: &|_: &[f64], _, _| 2.0,
    };
    let compensated_exp = ScalarField {
        value: &|a: &[f64]| (a[0] - 0.5 * a[1]).exp(),
        gradient: &|a: &[f64], k| {
            let f = (a[0] - 0.5 * a[1]).exp();
            if k == 0 {
                f
            } else {
                -0.5 * f
            }
        },
        hessian: &|a: &[f64], i, j| {
            let f = (a[0] - 0.5 * a[1]).exp();
            match (i, j) {
                (0, 0) => f,
                (1, 1) => 0.25 * f,
                _ => -0.5 * f,
            }
        },
    };

    for seed in 0..5u64 {
        let x = generate_paths(
            PathModel::Brownian { x0: 0.0, sigma: 1.0 },
            1.0,
            200_000,
            40_000 + seed,
        )
        .unwrap()
        .column(0)
        .unwrap();

        let mut sq_res = Vec::new();
        let mut exp_res = Vec::new();
        let mut sq_scale = 0.0f64;
        let mut exp_scale = 0.0f64;
        for n in 4..=9 {
            let p = lebesgue_partition(&[x.clone()], n, 0.5).unwrap();
            let sq_path = x.map(|v| v * v).unwrap();
            sq_scale = 1.0f64.max(sq_path.range());
            sq_res.push(ito_formula_residual(&square, &[x.clone()], &p).unwrap() / sq_scale);

            let qv = quadratic_variation(&x, &p).unwrap();
            let e_path = x.zip_with(&qv, |v, q| (v - 0.5 * q).exp()).unwrap();
            exp_scale = 1.0f64.max(e_path.range());
            exp_res.push(
                ito_formula_residual(&compensated_exp, &[x.clone(), qv], &p).unwrap() / exp_scale,
            );
        }
        // numerically-zero floor: the square case telescopes exactly, so its
        // residuals sit at accumulated rounding and cannot strictly decrease
        let floor = 1e-10;
        for (name, res) in [("x^2", &sq_res), ("exp(x-y/2)", &exp_res)] {
            let first = res[0];
            let last = *res.last().unwrap();
            assert!(
                last <= 1e-2,
                "[acceptance 4] FAIL: {name} residual at n=9 is {last:.3e} > 1e-2 (seed {seed})"
            );
            assert!(
                last <= first || first <= floor,
                "[acceptance 4] FAIL: {name} residuals did not decrease: {res:?} (seed {seed})"
            );
        }
        if seed == 0 {
            println!(
                "[acceptance 4] PASS: scaled residuals n=4 -> 9: x^2 {:.2e} -> {:.2e}, exp {:.2e} -> {:.2e} (scales {:.2}, {:.2})",
                sq_res[0], sq_res[5], exp_res[0], exp_res[5], sq_scale, exp_scale
            );
        }
    }
}

// Criterion 5: exponential/logarithm round trips and the equation residual
// at level 9, sup errors <= 5e-2 on sigma <= 0.3 horizon-1 paths.
#[test]
fn acceptance_05_doleans_round_trips() {
    let mut worst_log_exp = 0.0f64;
    let mut worst_exp_log = 0.0f64;
    let mut worst_sde = 0.0f64;
    for (k, &sigma) in [0.2, 0.3].iter().enumerate() {
        for seed in 0..4u64 {
            let w = generate_paths(
                PathModel::Brownian { x0: 0.0, sigma },
                1.0,
                200_000,
                50_000 + 10 * k as u64 + seed,
            )
            .unwrap()
            .column(0)
            .unwrap();
            let p = lebesgue_partition(&[w.clone()], 9, 0.5).unwrap();
            let e = doleans_exp(&w, &p).unwrap();
            worst_log_exp =
                worst_log_exp.max(doleans_log(&e, &p).unwrap().sup_distance(&w).unwrap());
            worst_sde = worst_sde.max(sde_residual(&e, &w, &p).unwrap());

            let y = generate_paths(
                PathModel::Gbm { x0: 1.0, sigma },
                1.0,
                200_000,
                60_000 + 10 * k as u64 + seed,
            )
            .unwrap()
            .column(0)
            .unwrap();
            let py = lebesgue_partition(&[y.clone()], 9, 0.5).unwrap();
            let back = doleans_exp(&doleans_log(&y, &py).unwrap(), &py).unwrap();
            worst_exp_log = worst_exp_log.max(back.sup_distance(&y).unwrap());
        }
    }
    assert!(
        worst_log_exp <= 5e-2,
        "[acceptance 5] FAIL: log(exp(X)) error {worst_log_exp:.3e} > 5e-2"
    );
    assert!(
        worst_exp_log <= 5e-2,
        "[acceptance 5] FAIL: exp(log(Y)) error {worst_exp_log:.3e} > 5e-2"
    );
    assert!(
        worst_sde <= 5e-2,
        "[acceptance 5] FAIL: equation residual {worst_sde:.3e} > 5e-2"
    );
    println!(
        "[acceptance 5] PASS: round trips {worst_log_exp:.2e} / {worst_exp_log:.2e}, equation residual {worst_sde:.2e}"
    );
}

// Criterion 6: drift insensitivity of covariation. Adding t -> 0.5 t to a
// Brownian moves [., .] at level 9 by at most 1e-2 in sup norm.
#[test]
fn acceptance_06_drift_insensitivity() {
    let mut worst = 0.0f64;
    for seed in 0..5u64 {
        let (x, y) = brownian_pair(200_000, 70_000 + seed);
        let times = x.times().to_vec();
        let drifted = SampledPath::with_grid(
            x.grid(),
            x.values()
                .iter()
                .zip(&times)
                .map(|(&v, &t)| v + 0.5 * t)
                .collect(),
        )
        .unwrap();
        let p = lebesgue_partition(&[drifted.clone(), x.clone(), y.clone()], 9, 0.5).unwrap();
        let cross = covariation_approx(&drifted, &y, &p)
            .unwrap()
            .sup_distance(&covariation_approx(&x, &y, &p).unwrap())
            .unwrap();
        let own = quadratic_variation(&drifted, &p)
            .unwrap()
            .sup_distance(&quadratic_variation(&x, &p).unwrap())
            .unwrap();
        worst = worst.max(cross).max(own);
    }
    assert!(
        worst <= 1e-2,
        "[acceptance 6] FAIL: drift moved covariation by {worst:.3e} > 1e-2"
    );
    println!("[acceptance 6] PASS: drift changes covariation by <= {worst:.2e}");
}

// Criterion 7: numeraire consistency. For 20 random strategies on
// correlated frames, discounting the undiscounted capital reproduces the
// cash-coordinate capital, and the self-financing identity holds at every
// rebalance, both to 1e-9 relative.
#[test]
fn acceptance_07_numeraire_consistency() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(777);
    let mut worst_discount = 0.0f64;
    let mut worst_self_financing = 0.0f64;
    for case in 0..20u64 {
        let frame = generate_paths(correlated_spec(1.0, 4_000).model, 1.0, 4_000, 80_000 + case)
            .unwrap();
        let numeraire = generate_paths(PathModel::Gbm { x0: 1.5, sigma: 0.25 }, 1.0, 4_000, 90_000 + case)
            .unwrap()
            .column(0)
            .unwrap();
        let n_rebalances = rng.gen_range(2..6);
        let mut stop_times: Vec<f64> = (0..n_rebalances).map(|_| rng.gen_range(0.0..1.0)).collect();
        stop_times.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let bets: Vec<Vec<f64>> = (0..n_rebalances)
            .map(|_| vec![rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)])
            .collect();
        let g = SimpleStrategy::new(stop_times, bets, 2.0).unwrap();
        let c = rng.gen_range(-1.0..3.0);

        let expansion = expand_self_financing(&g, &frame, &numeraire, c).unwrap();
        let cash = capital_process(&g, &frame, c).unwrap();
        let discounted = discount_by_numeraire(&expansion.undiscounted_capital, &numeraire).unwrap();
        let scale = 1.0 + cash.sup_abs();
        worst_discount = worst_discount.max(discounted.sup_distance(&cash).unwrap() / scale);

        for n in 1..expansion.holdings.len() {
            let tau = expansion.holdings[n].time;
            let before =
                numeraire::holding_value(&expansion.holdings[n - 1], &frame, &numeraire, tau)
                    .unwrap();
            let after =
                numeraire::holding_value(&expansion.holdings[n], &frame, &numeraire, tau).unwrap();
            worst_self_financing =
                worst_self_financing.max((before - after).abs() / (1.0 + before.abs()));
        }
    }
    assert!(
        worst_discount <= 1e-9,
        "[acceptance 7] FAIL: discount consistency defect {worst_discount:.3e} > 1e-9"
    );
    assert!(
        worst_self_financing <= 1e-9,
        "[acceptance 7] FAIL: self-financing defect {worst_self_financing:.3e} > 1e-9"
    );
    println!(
        "[acceptance 7] PASS: discount defect {worst_discount:.2e}, self-financing defect {worst_self_financing:.2e}"
    );
}

struct WeightedTerminals {
    corrected: Vec<f64>,
    uncorrected: Vec<f64>,
    weights: Vec<f64>,
}

fn girsanov_terminals(n_paths: usize) -> WeightedTerminals {
    let ens = Ensemble::new(correlated_spec(1.0, 4_000), n_paths, 4242).unwrap();
    let rows: Vec<(f64, f64, f64)> = ens
        .map_frames(|_, frame| {
            let s = frame.column(0)?;
            let i = frame.column(1)?;
            let p = lebesgue_partition(&[s.clone(), i.clone()], 8, 0.5)?;
            let growth = relative_growth(&s, &p)?;
            let dev = capm_deviation(&s, &i, &p)?;
            let w = i.last_value() / i.first_value();
            Ok((dev.last_value(), growth.last_value(), w))
        })
        .unwrap();
    WeightedTerminals {
        corrected: rows.iter().map(|r| r.0).collect(),
        uncorrected: rows.iter().map(|r| r.1).collect(),
        weights: rows.iter().map(|r| r.2).collect(),
    }
}

// Criterion 8: the drift correction matters. Index-weighted mean of the
// corrected deviation passes the 3-sigma martingale gate over 1e4 paths;
// the uncorrected growth fails the same gate. Within 5 minutes.
#[test]
fn acceptance_08_girsanov_martingale_gate() {
    let clock = Instant::now();
    let t = girsanov_terminals(10_000);
    let corrected = martingale_test(&t.corrected, 0.0, &t.weights).unwrap();
    let uncorrected = martingale_test(&t.uncorrected, 0.0, &t.weights).unwrap();
    let secs = clock.elapsed().as_secs_f64();
    assert!(
        corrected.pass,
        "[acceptance 8] FAIL: corrected deviation z = {:.2} exceeds 3",
        corrected.z_score
    );
    assert!(
        !uncorrected.pass,
        "[acceptance 8] FAIL: uncorrected growth z = {:.2} did not exceed 3",
        uncorrected.z_score
    );
    assert!(secs <= 300.0, "[acceptance 8] FAIL: took {secs:.1} s > 5 min");
    println!(
        "[acceptance 8] PASS: corrected z = {:.2}, uncorrected z = {:.2} ({secs:.1} s)",
        corrected.z_score, uncorrected.z_score
    );
}

// Criterion 9: equity premium with the stock equal to the index. The
// index-weighted deviation passes the gate and the relative variation at
// t = 1 averages 0.09 +- 0.005.
#[test]
fn acceptance_09_equity_premium() {
    let spec = GeneratorSpec {
        model: PathModel::Gbm { x0: 1.0, sigma: 0.3 },
        horizon: 1.0,
        steps: 4_000,
        seed: 0,
    };
    let ens = Ensemble::new(spec, 10_000, 5150).unwrap();
    let rows: Vec<(f64, f64, f64)> = ens
        .map_frames(|_, frame| {
            let i = frame.column(0)?;
            let p = lebesgue_partition(&[i.clone()], 8, 0.5)?;
            let dev = capm_deviation(&i, &i, &p)?;
            let relqv = relative_quadratic_variation(&i, &p)?;
            let w = i.last_value() / i.first_value();
            Ok((dev.last_value(), relqv.last_value(), w))
        })
        .unwrap();
    let devs: Vec<f64> = rows.iter().map(|r| r.0).collect();
    let relqvs: Vec<f64> = rows.iter().map(|r| r.1).collect();
    let weights: Vec<f64> = rows.iter().map(|r| r.2).collect();
    let gate = martingale_test(&devs, 0.0, &weights).unwrap();
    let mean_relqv = relqvs.iter().sum::<f64>() / relqvs.len() as f64;
    assert!(
        gate.pass,
        "[acceptance 9] FAIL: equity-premium deviation z = {:.2} exceeds 3",
        gate.z_score
    );
    assert!(
        (mean_relqv - 0.09).abs() <= 0.005,
        "[acceptance 9] FAIL: mean relative variation {mean_relqv:.4} outside 0.09 +- 0.005"
    );
    println!(
        "[acceptance 9] PASS: deviation z = {:.2}, mean relative variation {mean_relqv:.4}",
        gate.z_score
    );
}

// Criterion 10: the exponential test process has index-weighted terminal
// mean 1 within 3 standard errors, for eps in {-1, +1}.
#[test]
fn acceptance_10_exponential_martingale() {
    let ens = Ensemble::new(correlated_spec(1.0, 4_000), 10_000, 6167).unwrap();
    for eps in [-1.0, 1.0] {
        let rows: Vec<(f64, f64)> = ens
            .map_frames(|_, frame| {
                let s = frame.column(0)?;
                let i = frame.column(1)?;
                let p = lebesgue_partition(&[s.clone(), i.clone()], 8, 0.5)?;
                let e = exp_test_process(&s, &i, &p, eps)?;
                Ok((e.last_value(), i.last_value() / i.first_value()))
            })
            .unwrap();
        let terminals: Vec<f64> = rows.iter().map(|r| r.0).collect();
        let weights: Vec<f64> = rows.iter().map(|r| r.1).collect();
        let gate = martingale_test(&terminals, 1.0, &weights).unwrap();
        assert!(
            gate.pass,
            "[acceptance 10] FAIL: eps = {eps}: weighted mean {:.4} is {:.2} sigma from 1",
            gate.weighted_mean_terminal, gate.z_score
        );
        println!(
            "[acceptance 10] PASS: eps = {eps:+}: weighted terminal mean {:.4} (z = {:.2})",
            gate.weighted_mean_terminal, gate.z_score
        );
    }
}

// Criterion 11: central-limit bound. delta = 0.05, variation budget 0.04:
// index-weighted exceedance frequency within 0.05 +- 0.01 over 1e4 paths,
// and the normal quantile is 1.959964 to 1e-6.
#[test]
fn acceptance_11_clt_bound() {
    // horizon 1.5 so every path's relative variation (~0.04/unit time)
    // comfortably crosses the 0.04 budget
    let ens = Ensemble::new(correlated_spec(1.5, 6_000), 10_000, 7333).unwrap();
    let rep = clt_bound_check(&ens, 0, 1, 0.05, 0.04, 8, 0.5).unwrap();
    assert!(
        (rep.z_quantile - 1.959_964).abs() <= 1e-6,
        "[acceptance 11] FAIL: z quantile {:.7}",
        rep.z_quantile
    );
    assert!(
        (rep.exceed_frequency - 0.05).abs() <= 0.01,
        "[acceptance 11] FAIL: exceedance frequency {:.4} outside 0.05 +- 0.01",
        rep.exceed_frequency
    );
    println!(
        "[acceptance 11] PASS: exceedance frequency {:.4} (z quantile {:.6})",
        rep.exceed_frequency, rep.z_quantile
    );
}

// Criterion 12: time-changed increments at 64 unit-variation steps over 200
// paths pass the 1% KS normality gate, and the unit functional's weighted
// estimate equals 1 within Monte Carlo error.
#[test]
fn acceptance_12_time_change_normality() {
    let increments: Vec<f64> = (0..200u64)
        .into_par_iter()
        .map(|seed| {
            // sigma 8.25 over a unit horizon: total variation ~ 68, enough
            // to read 64 unit steps off every path
            let x = generate_paths(
                PathModel::Brownian { x0: 0.0, sigma: 8.25 },
                1.0,
                64_000,
                100_000 + seed,
            )
            .unwrap()
            .column(0)
            .unwrap();
            let p = lebesgue_partition(&[x.clone()], 8, 0.5).unwrap();
            let s_grid: Vec<f64> = (0..=64).map(|k| k as f64).collect();
            let tc = qv_time_change(&x, &p, &s_grid).unwrap();
            tc.values().windows(2).map(|w| w[1] - w[0]).collect::<Vec<f64>>()
        })
        .flatten()
        .collect();
    assert_eq!(increments.len(), 200 * 64);
    let ks = brownian_law_test(&increments).unwrap();
    assert!(
        ks.pass,
        "[acceptance 12] FAIL: KS statistic {:.4} >= critical {:.4}",
        ks.statistic, ks.critical_value
    );

    let ens = Ensemble::new(
        GeneratorSpec {
            model: PathModel::Gbm { x0: 1.0, sigma: 0.2 },
            horizon: 1.0,
            steps: 500,
            seed: 0,
        },
        2_000,
        8484,
    )
    .unwrap();
    let unit = upper_expectation_estimate(&ens, 0, Some(0), |_| 1.0).unwrap();
    assert!(
        (unit.estimate - 1.0).abs() <= 3.0 * unit.std_error,
        "[acceptance 12] FAIL: unit-functional estimate {:.4} +- {:.4}",
        unit.estimate, unit.std_error
    );
    println!(
        "[acceptance 12] PASS: KS {:.4} < {:.4} on {} increments; unit estimate {:.4} +- {:.4}",
        ks.statistic,
        ks.critical_value,
        ks.n_samples,
        unit.estimate,
        unit.std_error
    );
}

// Criterion 13: partition-sequence invariance. Two fine sequences (stops
// driven by (H, X) versus (H, X, extra)) give limits within twice the
// convergence tolerance, over 50 cases.
#[test]
fn acceptance_13_partition_invariance() {
    let worst = (0..50u64)
        .into_par_iter()
        .map(|case| {
            let (x, h) = brownian_pair(100_000, 110_000 + case);
            let extra_raw = generate_paths(
                PathModel::Brownian { x0: 0.0, sigma: 1.0 },
                1.0,
                100_000,
                120_000 + case,
            )
            .unwrap()
            .column(0)
            .unwrap();
            let extra = SampledPath::with_grid(x.grid(), extra_raw.values().to_vec()).unwrap();
            let tol = 0.5f64.powi(6) * x.range();
            let report_a = converge(4, 9, tol, |n| {
                let p = lebesgue_partition(&[h.clone(), x.clone()], n, 0.5)?;
                ito_approx(&h, &x, &p)
            })
            .unwrap();
            let report_b = converge(4, 9, tol, |n| {
                let p = lebesgue_partition(&[h.clone(), x.clone(), extra.clone()], n, 0.5)?;
                ito_approx(&h, &x, &p)
            })
            .unwrap();
            assert!(report_a.converged && report_b.converged);
            report_a.limit.sup_distance(&report_b.limit).unwrap() / (2.0 * tol)
        })
        .reduce(|| 0.0, f64::max);
    assert!(
        worst <= 1.0,
        "[acceptance 13] FAIL: limits differ by {worst:.3} x (2 tol)"
    );
    println!("[acceptance 13] PASS: fine-sequence limits differ by <= {worst:.3} x (2 tol)");
}
