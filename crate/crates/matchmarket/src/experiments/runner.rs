//! The Monte Carlo sweeps behind each output table.
//!
//! Every sweep shares realizations across its sweep axis (common random
//! numbers): one realization draws its raw randomness once and every swept
//! parameter value is evaluated on it. Differences along the axis are then
//! far less noisy than the individual means, and the whole table is a pure
//! function of the master seed.

use crate::analytics;
use crate::dist::{CorrelationParams, DistributionSpec, SeedSpec};
use crate::error::{Error, Result};
use crate::market::{UtilityRule, VariantTable};
use crate::mc;
use crate::protocols;

use super::config::{Experiment, ExperimentConfig};
use super::table::ResultTable;

/// Run the sweep described by `config` and return its table.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ResultTable> {
    config.validate()?;
    match config.experiment {
        Experiment::Fig1DeltaK => fig1_delta_k(config),
        Experiment::Fig2MultiBuyer => fig2_multibuyer(config),
        Experiment::Fig3Correlated => fig3_correlated(config),
        Experiment::Fig4VendorProposes => fig4_vendor_proposes(config),
        Experiment::Fig5Search => fig5_search(config),
        Experiment::ClaimsTable => claims_report(config),
    }
}

fn single_n(config: &ExperimentConfig) -> Result<usize> {
    match config.n_variants.as_slice() {
        [n] => Ok(*n),
        other => Err(Error::Config(format!(
            "{} expects a single variant count, got {other:?}",
            config.experiment.id()
        ))),
    }
}

fn base_table(config: &ExperimentConfig) -> ResultTable {
    let mut t = ResultTable::new();
    for (k, v) in config.metadata() {
        t.push_meta(k, v);
    }
    t
}

/// Inequality Delta(k) under the k-norm rule at fixed N, swept over k.
fn fig1_delta_k(config: &ExperimentConfig) -> Result<ResultTable> {
    let n = single_n(config)?;
    let ks = config.k_values.clone();
    let spec = DistributionSpec::UniformSym;

    let stats = mc::accumulate(
        config.master_seed,
        0,
        config.realizations,
        2 * ks.len(),
        move |rng, row| {
            let mut xs = Vec::with_capacity(n);
            let mut ys = Vec::with_capacity(n);
            for _ in 0..n {
                xs.push(spec.draw(rng));
                ys.push(spec.draw(rng));
            }
            let table = VariantTable::single_buyer(xs, ys).expect("finite draws");
            for (i, &k) in ks.iter().enumerate() {
                let outcome = UtilityRule::KNorm { k }.select(&table).expect("valid rule");
                if let Some(trade) = outcome.trade() {
                    row[2 * i] = Some(trade.inequality.expect("single buyer"));
                    row[2 * i + 1] = Some(trade.total_utility);
                }
            }
        },
    );

    let mut t = base_table(config);
    let m = config.k_values.len();
    t.push_column("k", config.k_values.clone())?;
    t.push_column("delta_mc", (0..m).map(|i| stats[2 * i].mean()).collect())?;
    t.push_column(
        "delta_se",
        (0..m).map(|i| stats[2 * i].std_error()).collect(),
    )?;
    t.push_column("u_m_mc", (0..m).map(|i| stats[2 * i + 1].mean()).collect())?;
    t.push_column(
        "u_m_se",
        (0..m).map(|i| stats[2 * i + 1].std_error()).collect(),
    )?;
    t.push_column(
        "u_m_knorm_formula",
        config
            .k_values
            .iter()
            .map(|&k| analytics::u_m_knorm_approx(n as u64, k))
            .collect(),
    )?;
    t.push_column(
        "no_trade_fraction",
        (0..m).map(|i| stats[2 * i].missing_fraction()).collect(),
    )?;
    Ok(t)
}

/// Per-buyer utility of a single shared variant over an (M, N) grid.
fn fig2_multibuyer(config: &ExperimentConfig) -> Result<ResultTable> {
    let spec = DistributionSpec::UniformSym;
    let mut col_m = Vec::new();
    let mut col_n = Vec::new();
    let mut col_mean = Vec::new();
    let mut col_se = Vec::new();

    for &m in &config.m_buyers {
        for &n in &config.n_variants {
            let stats = mc::accumulate(
                config.master_seed,
                0,
                config.realizations,
                1,
                move |rng, row| {
                    let vendor: Vec<f64> = (0..n).map(|_| spec.draw(rng)).collect();
                    let buyers: Vec<Vec<f64>> = (0..m)
                        .map(|_| (0..n).map(|_| spec.draw(rng)).collect())
                        .collect();
                    let table = VariantTable::new(buyers, vendor).expect("finite draws");
                    let outcome = UtilityRule::MultiBuyerAverage
                        .select(&table)
                        .expect("valid");
                    row[0] = Some(outcome.trade().expect("never excluded").total_utility);
                },
            );
            col_m.push(m as f64);
            col_n.push(n as f64);
            col_mean.push(stats[0].mean());
            col_se.push(stats[0].std_error());
        }
    }

    let mut t = base_table(config);
    t.push_column("m", col_m)?;
    t.push_column("n", col_n)?;
    t.push_column("u_per_buyer_mc", col_mean)?;
    t.push_column("u_per_buyer_se", col_se)?;
    Ok(t)
}

/// Expected maximal total utility vs the correlation product s*t, next to
/// the implicit-equation root and its closed-form simplification.
fn fig3_correlated(config: &ExperimentConfig) -> Result<ResultTable> {
    let n = single_n(config)?;
    let sts = config.st_values.clone();
    let params: Vec<CorrelationParams> = sts
        .iter()
        .map(|&st| CorrelationParams::from_product(st))
        .collect::<Result<_>>()?;

    let params_eval = params.clone();
    let stats = mc::accumulate(
        config.master_seed,
        0,
        config.realizations,
        sts.len(),
        move |rng, row| {
            // one triple of normals per variant, shared by every st
            let mut x_part = Vec::with_capacity(n);
            let mut y_part = Vec::with_capacity(n);
            let mut common = Vec::with_capacity(n);
            for _ in 0..n {
                x_part.push(DistributionSpec::StdNormal.draw(rng));
                y_part.push(DistributionSpec::StdNormal.draw(rng));
                common.push(DistributionSpec::StdNormal.draw(rng));
            }
            for (i, p) in params_eval.iter().enumerate() {
                let mut xs = Vec::with_capacity(n);
                let mut ys = Vec::with_capacity(n);
                for j in 0..n {
                    let (x, y) = p.combine(x_part[j], y_part[j], common[j]);
                    xs.push(x);
                    ys.push(y);
                }
                let table = VariantTable::single_buyer(xs, ys).expect("finite draws");
                let outcome = UtilityRule::Linear.select(&table).expect("valid rule");
                row[i] = Some(outcome.trade().expect("linear always trades").total_utility);
            }
        },
    );

    let mut t = base_table(config);
    t.push_column("st", sts.clone())?;
    t.push_column("u_m_mc", stats.iter().map(|s| s.mean()).collect())?;
    t.push_column("u_m_se", stats.iter().map(|s| s.std_error()).collect())?;
    t.push_column(
        "u_m_implicit_root",
        sts.iter()
            .map(|&st| {
                let v = 2.0 * (1.0 + st);
                if v <= 0.0 {
                    // fully anti-correlated: the total utility is
                    // identically zero
                    0.0
                } else {
                    analytics::solve_u_m_normal(n as u64, v).expect("v > 0")
                }
            })
            .collect(),
    )?;
    t.push_column(
        "u_m_closed_form",
        sts.iter()
            .map(|&st| analytics::u_m_normal_approx(n as u64, st).unwrap_or(f64::NAN))
            .collect(),
    )?;
    Ok(t)
}

/// Matchmaker vs vendor-proposes across the variant count, one pass per
/// realization with prefix-tracked optima for every swept N.
fn fig4_vendor_proposes(config: &ExperimentConfig) -> Result<ResultTable> {
    let ns = config.n_variants.clone();
    let n_max = *ns.last().expect("validated non-empty");
    let params = CorrelationParams::new(config.t, config.s)
        .map_err(|e| Error::Config(format!("correlation: {e}")))?;

    let ns_eval = ns.clone();
    let stats = mc::accumulate(
        config.master_seed,
        0,
        config.realizations,
        4 * ns.len(),
        move |rng, row| {
            let mut mm_best = f64::NEG_INFINITY;
            let mut mm_gap = 0.0;
            // vendor proposes in decreasing y; the accepted variant is the
            // acceptable one maximizing y (first seen wins ties)
            let mut vp_best_y = f64::NEG_INFINITY;
            let mut vp_x = 0.0;
            let mut vp_found = false;
            let mut next = 0usize;
            for i in 0..n_max {
                let (x, y) = params.draw_pair(rng);
                let total = x + y;
                if total > mm_best {
                    mm_best = total;
                    mm_gap = (x - y).abs();
                }
                if x >= y && (!vp_found || y > vp_best_y) {
                    vp_found = true;
                    vp_best_y = y;
                    vp_x = x;
                }
                if i + 1 == ns_eval[next] {
                    row[4 * next] = Some(mm_best);
                    row[4 * next + 1] = Some(mm_gap);
                    if vp_found {
                        row[4 * next + 2] = Some(vp_x + vp_best_y);
                        row[4 * next + 3] = Some(vp_x - vp_best_y);
                    }
                    next += 1;
                    if next == ns_eval.len() {
                        break;
                    }
                }
            }
        },
    );

    let mut t = base_table(config);
    let m = ns.len();
    t.push_column("n", ns.iter().map(|&n| n as f64).collect())?;
    t.push_column(
        "matchmaker_total_mc",
        (0..m).map(|i| stats[4 * i].mean()).collect(),
    )?;
    t.push_column(
        "matchmaker_total_se",
        (0..m).map(|i| stats[4 * i].std_error()).collect(),
    )?;
    t.push_column(
        "matchmaker_inequality_mc",
        (0..m).map(|i| stats[4 * i + 1].mean()).collect(),
    )?;
    t.push_column(
        "matchmaker_inequality_se",
        (0..m).map(|i| stats[4 * i + 1].std_error()).collect(),
    )?;
    t.push_column(
        "vendor_total_mc",
        (0..m).map(|i| stats[4 * i + 2].mean()).collect(),
    )?;
    t.push_column(
        "vendor_total_se",
        (0..m).map(|i| stats[4 * i + 2].std_error()).collect(),
    )?;
    t.push_column(
        "vendor_inequality_mc",
        (0..m).map(|i| stats[4 * i + 3].mean()).collect(),
    )?;
    t.push_column(
        "vendor_inequality_se",
        (0..m).map(|i| stats[4 * i + 3].std_error()).collect(),
    )?;
    t.push_column(
        "vendor_no_trade_fraction",
        (0..m)
            .map(|i| stats[4 * i + 2].missing_fraction())
            .collect(),
    )?;
    Ok(t)
}

/// The net search utility curve u_S(beta, n) for the three distributions,
/// the empirical optima, and the analytic curves and optima beside them.
fn fig5_search(config: &ExperimentConfig) -> Result<ResultTable> {
    let n_max = *config.n_variants.last().expect("validated non-empty");
    if n_max < 2 {
        return Err(Error::Config(
            "fig5 needs n >= 2 to bracket an optimum".into(),
        ));
    }
    let beta = config.beta;
    let gamma = config.gamma;
    let r = config.realizations;
    let specs = [
        ("uniform", DistributionSpec::UniformSym),
        ("normal", DistributionSpec::StdNormal),
        ("powerlaw", DistributionSpec::PowerLaw { gamma }),
    ];

    let mut t = base_table(config);
    t.push_column("n", (1..=n_max).map(|n| n as f64).collect())?;

    for (idx, (name, spec)) in specs.iter().enumerate() {
        // disjoint stream ranges keep the three curves independent
        let seed = SeedSpec::new(config.master_seed, idx as u64 * r);
        let scan = protocols::n_opt_scan(beta, spec, n_max, r, &seed)?;
        t.push_column(
            format!("u_s_{name}_mc"),
            scan.curve.iter().map(|p| p.mean_net_utility).collect(),
        )?;
        t.push_column(
            format!("u_s_{name}_se"),
            scan.curve.iter().map(|p| p.std_error).collect(),
        )?;
        let analytic: Vec<f64> = (1..=n_max)
            .map(|n| {
                let mean_max = match spec {
                    DistributionSpec::UniformSym => Some(analytics::x_m_uniform_exact(n as u64)),
                    DistributionSpec::StdNormal if n >= 2 => {
                        Some(analytics::x_m_normal_approx(n as u64).expect("v = 1"))
                    }
                    DistributionSpec::StdNormal => None,
                    DistributionSpec::PowerLaw { gamma } => Some(
                        analytics::x_m_powerlaw_approx(n as u64, *gamma, 1.0).expect("gamma > 2"),
                    ),
                };
                mean_max.map_or(f64::NAN, |m| m - beta * n as f64)
            })
            .collect();
        t.push_column(format!("u_s_{name}_analytic"), analytic)?;

        t.push_meta(format!("n_opt_empirical_{name}"), scan.n_opt_empirical);
        t.push_meta(format!("rising_at_n_max_{name}"), scan.rising_at_n_max);
        let analytic_opt = match spec {
            DistributionSpec::UniformSym => Some(analytics::n_opt_uniform(beta)),
            DistributionSpec::StdNormal => analytics::n_opt_normal(beta).ok(),
            DistributionSpec::PowerLaw { gamma } => analytics::n_opt_powerlaw(beta, *gamma).ok(),
        };
        if let Some(v) = analytic_opt {
            t.push_meta(format!("n_opt_analytic_{name}"), v);
        }
    }

    // The heavy tail makes the mean, median and mode of the best found
    // utility part ways; report all three at the analytic power-law
    // optimum and let the reader decide what to trust.
    let n_ref = (analytics::n_opt_powerlaw(beta, gamma)?.round() as usize).clamp(1, n_max);
    let spec = DistributionSpec::PowerLaw { gamma };
    let reals = config.realizations.min(20_000);
    let mut maxima: Vec<f64> = (0..reals)
        .map(|i| {
            let mut rng = SeedSpec::new(config.master_seed, 3 * r + i).rng();
            (0..n_ref)
                .map(|_| spec.draw(&mut rng))
                .fold(f64::NEG_INFINITY, f64::max)
        })
        .collect();
    maxima.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mean = maxima.iter().sum::<f64>() / maxima.len() as f64;
    let median = maxima[maxima.len() / 2];
    t.push_meta("x_m_stats_at_n", n_ref);
    t.push_meta("x_m_mean", mean);
    t.push_meta("x_m_median", median);
    t.push_meta("x_m_mode", histogram_mode(&maxima));
    Ok(t)
}

/// Crude mode estimate: the center of the tallest histogram bin, with the
/// top percentile trimmed so a single outlier cannot stretch the bins.
fn histogram_mode(sorted: &[f64]) -> f64 {
    let lo = sorted[0];
    let hi = sorted[(sorted.len() - 1) * 99 / 100];
    let bins = 200usize;
    if hi <= lo {
        return lo;
    }
    let width = (hi - lo) / bins as f64;
    let mut counts = vec![0u64; bins];
    for &x in sorted {
        if x >= hi {
            break;
        }
        let b = ((x - lo) / width) as usize;
        counts[b.min(bins - 1)] += 1;
    }
    let best = counts
        .iter()
        .enumerate()
        .max_by_key(|(_, &c)| c)
        .map(|(i, _)| i)
        .unwrap();
    lo + (best as f64 + 0.5) * width
}

/// The headline scalar comparisons at fixed N: the min-rule trade-off on
/// uniform utilities, matchmaker vs vendor-proposes inequality on standard
/// normals, and the accuracy of the closed-form extreme mean at N = 17.
pub fn claims_report(config: &ExperimentConfig) -> Result<ResultTable> {
    config.validate()?;
    let n = single_n(config)?;
    let spec = DistributionSpec::UniformSym;

    // paired run: the same tables scored under both rules
    let stats = mc::accumulate(
        config.master_seed,
        0,
        config.realizations,
        4,
        move |rng, row| {
            let mut xs = Vec::with_capacity(n);
            let mut ys = Vec::with_capacity(n);
            for _ in 0..n {
                xs.push(spec.draw(rng));
                ys.push(spec.draw(rng));
            }
            let table = VariantTable::single_buyer(xs, ys).expect("finite draws");
            let lin = UtilityRule::Linear.select(&table).expect("valid");
            let lin = lin.trade().expect("linear always trades");
            row[0] = Some(lin.inequality.expect("single buyer"));
            row[1] = Some(lin.total_utility);
            let min = UtilityRule::MinRule.select(&table).expect("valid");
            let min = min.trade().expect("min always trades");
            row[2] = Some(min.inequality.expect("single buyer"));
            // the joint x + y of the variant the min rule picks, so both
            // rules are compared on the same welfare metric
            row[3] = Some(min.buyer_utility + min.vendor_utility);
        },
    );
    let (d_lin, u_lin, d_min, u_min) = (&stats[0], &stats[1], &stats[2], &stats[3]);

    // matchmaker vs vendor-proposes on standard normals, uncorrelated
    let normal_reals = config.realizations.min(10_000);
    let nstats = mc::accumulate(
        config.master_seed,
        config.realizations,
        normal_reals,
        2,
        move |rng, row| {
            let g = DistributionSpec::StdNormal;
            let mut xs = Vec::with_capacity(n);
            let mut ys = Vec::with_capacity(n);
            for _ in 0..n {
                xs.push(g.draw(rng));
                ys.push(g.draw(rng));
            }
            let table = VariantTable::single_buyer(xs, ys).expect("finite draws");
            let mm = UtilityRule::Linear.select(&table).expect("valid");
            row[0] = Some(
                mm.trade()
                    .expect("trades")
                    .inequality
                    .expect("single buyer"),
            );
            if let Some(tr) = protocols::vendor_proposes(&table)
                .expect("single buyer")
                .trade()
            {
                row[1] = Some(tr.inequality.expect("single buyer"));
            }
        },
    );

    // accuracy of the closed-form extreme mean where it is claimed to be
    // within one percent
    let approx17 = analytics::u_m_uniform_approx(17);
    let exact17 = analytics::tent_extreme_mean(17);
    let rel_err_pct = ((approx17 - exact17) / exact17).abs() * 100.0;

    // Reduction uncertainties ignore the (positive) covariance between the
    // paired rules, so they overstate the error a little.
    let red = |a: &mc::StatAcc, b: &mc::StatAcc| {
        let pct = (a.mean() - b.mean()) / a.mean() * 100.0;
        let se = 100.0 * (a.std_error().powi(2) + b.std_error().powi(2)).sqrt() / a.mean();
        (pct, se)
    };
    let (d_red, d_red_se) = red(d_lin, d_min);
    let (u_red, u_red_se) = red(u_lin, u_min);

    let mut t = base_table(config);
    t.push_meta("normal_realizations", normal_reals);
    let cols: [(&str, f64); 17] = [
        ("delta_linear", d_lin.mean()),
        ("delta_linear_se", d_lin.std_error()),
        ("delta_min_rule", d_min.mean()),
        ("delta_min_rule_se", d_min.std_error()),
        ("inequality_reduction_pct", d_red),
        ("inequality_reduction_pct_se", d_red_se),
        ("total_linear", u_lin.mean()),
        ("total_linear_se", u_lin.std_error()),
        ("total_min_rule", u_min.mean()),
        ("total_min_rule_se", u_min.std_error()),
        ("total_reduction_pct", u_red),
        ("total_reduction_pct_se", u_red_se),
        ("matchmaker_inequality_normal", nstats[0].mean()),
        ("matchmaker_inequality_normal_se", nstats[0].std_error()),
        ("vendor_inequality_normal", nstats[1].mean()),
        ("vendor_inequality_normal_se", nstats[1].std_error()),
        ("u_m_approx_rel_error_n17_pct", rel_err_pct),
    ];
    for (name, v) in cols {
        t.push_column(name, vec![v])?;
    }
    Ok(t)
}

/// One point of the exponential-demand scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdPoint {
    pub m_buyers: usize,
    /// Smallest scanned variant count whose expected best mean-buyer
    /// utility reaches the threshold; `None` if the cap was hit first.
    pub n_star: Option<usize>,
}

/// Result of [`threshold_variant_scan`].
#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdScan {
    pub threshold: f64,
    pub points: Vec<ThresholdPoint>,
    /// Least-squares slope and intercept of ln(n_star) against M over the
    /// crossed points.
    pub log_slope: f64,
    pub log_intercept: f64,
}

/// Default threshold for [`threshold_variant_scan`].
///
/// The threshold must sit well inside the upper half of the mean-utility
/// support: there the crossing count grows exponentially with the buyer
/// count (large-deviation regime, rate near 1 per buyer at 0.75). Small
/// thresholds probe only the central-limit regime, where the required
/// variant count grows much more slowly.
pub const SHARED_UTILITY_THRESHOLD: f64 = 0.75;

/// How many variants are needed before the best *shared* variant is worth
/// anything to the average buyer? For each buyer count `m`, scan the
/// variant count until the expected maximum of the mean buyer utility
/// `a_alpha` (mean of m uniforms) reaches `threshold`, and fit
/// ln(n_star) against m.
///
/// The scan evaluates a geometric grid of checkpoints (7% spacing) with a
/// shared-stream prefix maximum, extending the cap until the threshold is
/// crossed, so each point costs one pass over its final grid.
pub fn threshold_variant_scan(
    max_m: usize,
    threshold: f64,
    realizations: u64,
    master_seed: u64,
) -> Result<ThresholdScan> {
    if !(0.0 < threshold && threshold < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "threshold must lie in (0, 1), got {threshold}"
        )));
    }
    if max_m == 0 {
        return Err(Error::InvalidParameter("need at least one buyer".into()));
    }
    if realizations < 50 {
        return Err(Error::InvalidParameter(
            "need at least 50 realizations".into(),
        ));
    }
    const HARD_CAP: usize = 8_000_000;

    let mut points = Vec::with_capacity(max_m);
    let mut fit_x = Vec::new();
    let mut fit_y = Vec::new();
    for m in 1..=max_m {
        // Start from an extrapolation of the points so far. The pass costs
        // realizations * cap * m draws whether or not it crosses, so the
        // headroom factor is kept small and the cap grows geometrically on
        // a miss.
        let mut cap = if fit_x.len() >= 2 {
            let (slope, intercept) = least_squares(&fit_x, &fit_y);
            ((slope * m as f64 + intercept).exp() * 1.5) as usize
        } else {
            64
        }
        .clamp(64, HARD_CAP);

        let n_star = loop {
            match scan_one_m(m, threshold, realizations, master_seed, cap) {
                Some(n) => break Some(n),
                None if cap >= HARD_CAP => break None,
                None => cap = (cap * 4).min(HARD_CAP),
            }
        };
        points.push(ThresholdPoint {
            m_buyers: m,
            n_star,
        });
        if let Some(n) = n_star {
            fit_x.push(m as f64);
            fit_y.push((n as f64).ln());
        }
    }

    if fit_x.len() < 2 {
        return Err(Error::InvalidInput(
            "fewer than two scan points crossed the threshold; cannot fit a slope".into(),
        ));
    }
    let (log_slope, log_intercept) = least_squares(&fit_x, &fit_y);
    Ok(ThresholdScan {
        threshold,
        points,
        log_slope,
        log_intercept,
    })
}

/// Expected prefix maximum of mean buyer utility on a geometric checkpoint
/// grid up to `cap`; returns the first checkpoint at or above threshold.
fn scan_one_m(
    m: usize,
    threshold: f64,
    realizations: u64,
    master_seed: u64,
    cap: usize,
) -> Option<usize> {
    let checkpoints = geometric_grid(cap);
    let spec = DistributionSpec::UniformSym;
    let cps = checkpoints.clone();
    let stats = mc::accumulate(
        // well-separated stream ranges per buyer count
        master_seed ^ ((m as u64) << 32),
        0,
        realizations,
        cps.len(),
        move |rng, row| {
            let mut best = f64::NEG_INFINITY;
            let mut next = 0usize;
            for i in 1..=cap {
                let mut sum = 0.0;
                for _ in 0..m {
                    sum += spec.draw(rng);
                }
                best = best.max(sum / m as f64);
                if i == cps[next] {
                    row[next] = Some(best);
                    next += 1;
                    if next == cps.len() {
                        break;
                    }
                }
            }
        },
    );
    stats
        .iter()
        .position(|s| s.mean() >= threshold)
        .map(|i| checkpoints[i])
}

/// 1, 2, 3, ... with ~7% growth once past the small counts, ending at cap.
fn geometric_grid(cap: usize) -> Vec<usize> {
    let mut grid = Vec::new();
    let mut x = 1.0f64;
    loop {
        let n = x.round() as usize;
        let n = grid.last().map_or(n, |&last: &usize| n.max(last + 1));
        if n >= cap {
            grid.push(cap);
            break;
        }
        grid.push(n);
        x *= 1.07;
    }
    grid
}

fn least_squares(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    (slope, my - slope * mx)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick(experiment: Experiment) -> ExperimentConfig {
        let mut cfg = ExperimentConfig::defaults_for(experiment);
        cfg.realizations = 400;
        cfg
    }

    #[test]
    fn fig1_small_run_shape() {
        let mut cfg = quick(Experiment::Fig1DeltaK);
        cfg.set("k", "1,100").unwrap();
        cfg.set("n", "50").unwrap();
        let t = run_experiment(&cfg).unwrap();
        assert_eq!(t.n_rows(), 2);
        let delta = t.column("delta_mc").unwrap();
        // inequality grows with k
        assert!(delta[1] > delta[0]);
        assert_eq!(t.meta("experiment").unwrap(), "fig1_delta_k");
    }

    #[test]
    fn fig2_small_run_decreases_in_m() {
        let mut cfg = quick(Experiment::Fig2MultiBuyer);
        cfg.set("m", "1,10").unwrap();
        cfg.set("n", "200").unwrap();
        let t = run_experiment(&cfg).unwrap();
        let u = t.column("u_per_buyer_mc").unwrap();
        assert!(u[1] < u[0]);
    }

    #[test]
    fn fig3_small_run_increases_in_st() {
        let mut cfg = quick(Experiment::Fig3Correlated);
        cfg.set("st", "-0.5,0,0.5").unwrap();
        cfg.set("n", "100").unwrap();
        let t = run_experiment(&cfg).unwrap();
        let u = t.column("u_m_mc").unwrap();
        assert!(u[0] < u[1] && u[1] < u[2]);
        let root = t.column("u_m_implicit_root").unwrap();
        assert!(root[0] < root[1] && root[1] < root[2]);
        // closed form sits above the root everywhere it is defined
        let cf = t.column("u_m_closed_form").unwrap();
        for (r, c) in root.iter().zip(cf) {
            assert!(c >= r);
        }
    }

    #[test]
    fn fig3_uncorrelated_point_matches_known_values() {
        // at st = 0, N = 1000 the simulated mean sits near the exact
        // 4.584 (= sqrt(2) times the expected max of 1000 standard
        // normals) and the implicit root near 4.406
        let mut cfg = ExperimentConfig::defaults_for(Experiment::Fig3Correlated);
        cfg.set("st", "0").unwrap();
        cfg.realizations = 10_000;
        let t = run_experiment(&cfg).unwrap();
        let mc = t.column("u_m_mc").unwrap()[0];
        let se = t.column("u_m_se").unwrap()[0];
        assert!((mc - 4.5841).abs() < 3.0 * se + 0.01, "mc {mc} se {se}");
        let root = t.column("u_m_implicit_root").unwrap()[0];
        assert!((root - 4.4057).abs() < 1e-3, "root {root}");
    }

    #[test]
    fn fig3_full_anticorrelation_is_degenerate() {
        let mut cfg = quick(Experiment::Fig3Correlated);
        cfg.set("st", "-1,0").unwrap();
        cfg.set("n", "50").unwrap();
        let t = run_experiment(&cfg).unwrap();
        let mc = t.column("u_m_mc").unwrap();
        let root = t.column("u_m_implicit_root").unwrap();
        assert_eq!(mc[0], 0.0);
        assert_eq!(root[0], 0.0);
        assert!(t.column("u_m_closed_form").unwrap()[0].is_nan());
    }

    #[test]
    fn fig4_small_run_matchmaker_dominates() {
        let mut cfg = quick(Experiment::Fig4VendorProposes);
        cfg.set("n", "1,10,100").unwrap();
        let t = run_experiment(&cfg).unwrap();
        let mm = t.column("matchmaker_total_mc").unwrap();
        let vp = t.column("vendor_total_mc").unwrap();
        // skip n = 1, where both means are truly zero and noise decides
        for (a, b) in mm.iter().zip(vp).skip(1) {
            assert!(a > b);
        }
        // no-trade rate at n = 1 is one half
        let nt = t.column("vendor_no_trade_fraction").unwrap();
        assert!((nt[0] - 0.5).abs() < 0.1);
    }

    #[test]
    fn fig5_small_run_has_optimum_and_metadata() {
        let mut cfg = quick(Experiment::Fig5Search);
        cfg.set("n", "60").unwrap();
        cfg.set("beta", "0.05").unwrap();
        cfg.realizations = 2000;
        let t = run_experiment(&cfg).unwrap();
        assert_eq!(t.n_rows(), 60);
        assert!(t.meta("n_opt_empirical_uniform").is_some());
        assert!(t.meta("x_m_mode").is_some());
        // uniform analytic curve peaks near sqrt(2/beta) - 1 ~ 5.3
        let ua = t.column("u_s_uniform_analytic").unwrap();
        let arg = ua
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
            .unwrap()
            .0
            + 1;
        assert!((5..=6).contains(&arg), "analytic argmax {arg}");
    }

    #[test]
    fn claims_small_run_has_all_columns() {
        let mut cfg = quick(Experiment::ClaimsTable);
        cfg.set("n", "100").unwrap();
        cfg.realizations = 2000;
        let t = run_experiment(&cfg).unwrap();
        assert_eq!(t.n_rows(), 1);
        for name in [
            "delta_linear",
            "delta_min_rule",
            "inequality_reduction_pct",
            "total_reduction_pct",
            "matchmaker_inequality_normal",
            "vendor_inequality_normal",
            "u_m_approx_rel_error_n17_pct",
        ] {
            assert!(t.column(name).is_some(), "missing {name}");
        }
        // the closed-form error at N = 17 is just under one percent
        let e = t.column("u_m_approx_rel_error_n17_pct").unwrap()[0];
        assert!(e > 0.8 && e < 1.0, "rel err {e}%");
    }

    #[test]
    fn identical_config_reproduces_bytes() {
        let mut cfg = quick(Experiment::Fig3Correlated);
        cfg.set("st", "-0.4,0.4").unwrap();
        cfg.set("n", "80").unwrap();
        let a = run_experiment(&cfg).unwrap().to_csv_string();
        let b = run_experiment(&cfg).unwrap().to_csv_string();
        assert_eq!(a, b);
    }

    #[test]
    fn geometric_grid_is_strictly_increasing() {
        let g = geometric_grid(10_000);
        assert_eq!(g[0], 1);
        assert_eq!(*g.last().unwrap(), 10_000);
        assert!(g.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn threshold_scan_small() {
        let scan = threshold_variant_scan(3, 0.75, 200, 55).unwrap();
        assert_eq!(scan.points.len(), 3);
        // single buyer: exact mean of the max is 1 - 2/(n+1), crossing
        // 0.75 at n = 7; the geometric grid contains 7
        let p1 = scan.points[0].n_star.unwrap();
        assert!((6..=8).contains(&p1), "n*(1) = {p1}");
        // demand grows with the buyer count
        assert!(scan.points[2].n_star.unwrap() > p1);
        assert!(scan.log_slope > 0.0);
    }

    #[test]
    fn threshold_scan_validation() {
        assert!(threshold_variant_scan(0, 0.75, 200, 1).is_err());
        assert!(threshold_variant_scan(3, 1.5, 200, 1).is_err());
        assert!(threshold_variant_scan(3, 0.75, 10, 1).is_err());
    }
}
