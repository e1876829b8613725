//! Matchmaker-free variant selection: sequential vendor offers and the
//! buyer's costly solo search.

use crate::dist::{DistributionSpec, SeedSpec};
use crate::error::{Error, Result};
use crate::market::{MatchOutcome, Trade, VariantTable};
use crate::mc;

/// Vendor offers variants in decreasing order of his own utility; the
/// buyer accepts the first offer on which she profits at least as much as
/// the vendor (x >= y). Applies to single-buyer tables.
///
/// Equivalently, the accepted variant maximizes the vendor utility over
/// the acceptable set {alpha : x_alpha >= y_alpha}; the tests exercise
/// that characterization as an independent oracle.
pub fn vendor_proposes(table: &VariantTable) -> Result<MatchOutcome> {
    if table.m_buyers() != 1 {
        return Err(Error::InvalidInput(format!(
            "vendor-proposes is a single-buyer protocol, table has {} buyers",
            table.m_buyers()
        )));
    }
    let x = table.buyer_row(0);
    let y = table.vendor_utilities();
    let mut order: Vec<usize> = (0..table.n_variants()).collect();
    order.sort_by(|&a, &b| y[b].partial_cmp(&y[a]).unwrap().then(a.cmp(&b)));
    for alpha in order {
        if x[alpha] >= y[alpha] {
            return Ok(MatchOutcome::Trade(Trade {
                chosen_index: alpha,
                total_utility: x[alpha] + y[alpha],
                buyer_utility: x[alpha],
                vendor_utility: y[alpha],
                inequality: Some(x[alpha] - y[alpha]),
            }));
        }
    }
    Ok(MatchOutcome::NoTrade)
}

/// Parameters of the buyer's sequential search: examine `n` variants drawn
/// from `spec`, paying `beta` per examination.
///
/// The cost is linear in the number of examined variants; a superlinear
/// exponent can be configured but sits outside the validated envelope.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchParams {
    pub beta: f64,
    pub n: usize,
    pub spec: DistributionSpec,
    cost_exponent: f64,
}

impl SearchParams {
    pub fn new(beta: f64, n: usize, spec: DistributionSpec) -> Result<Self> {
        if !(beta.is_finite() && beta > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "search cost per variant must be positive, got {beta}"
            )));
        }
        if n == 0 {
            return Err(Error::InvalidParameter(
                "must examine at least one variant".into(),
            ));
        }
        spec.validate()?;
        Ok(Self {
            beta,
            n,
            spec,
            cost_exponent: 1.0,
        })
    }

    /// Raise the cost term to `beta * n^exponent`. Exponents above 1 model
    /// escalating search frustration; only the linear default is validated.
    pub fn with_cost_exponent(mut self, exponent: f64) -> Result<Self> {
        if !(exponent.is_finite() && exponent >= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "cost exponent must be >= 1, got {exponent}"
            )));
        }
        self.cost_exponent = exponent;
        Ok(self)
    }

    pub fn cost_exponent(&self) -> f64 {
        self.cost_exponent
    }

    fn cost(&self, examined: usize) -> f64 {
        self.beta * (examined as f64).powf(self.cost_exponent)
    }
}

/// What one search realization produced.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchOutcome {
    /// Best utility among the examined variants.
    pub best_utility: f64,
    /// Best utility minus the search cost.
    pub net_utility: f64,
    pub examined: usize,
}

/// Examine `params.n` variants using the stream named by `seed`.
pub fn buyer_search(params: &SearchParams, seed: &SeedSpec) -> Result<SearchOutcome> {
    params.spec.validate()?;
    let mut rng = seed.rng();
    let mut best = f64::NEG_INFINITY;
    for _ in 0..params.n {
        best = best.max(params.spec.draw(&mut rng));
    }
    Ok(SearchOutcome {
        best_utility: best,
        net_utility: best - params.cost(params.n),
        examined: params.n,
    })
}

/// One point of the estimated expected-net-utility curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchCurvePoint {
    pub n: usize,
    pub mean_net_utility: f64,
    pub std_error: f64,
}

/// Result of scanning the search length n = 1..n_max.
#[derive(Debug, Clone, PartialEq)]
pub struct NOptScan {
    /// Argmax of the estimated mean net utility.
    pub n_opt_empirical: usize,
    pub curve: Vec<SearchCurvePoint>,
    /// Set when the curve is still rising at n_max, i.e. the maximum was
    /// not bracketed and the argmax is untrustworthy.
    pub rising_at_n_max: bool,
}

/// Estimate the mean net search utility for every n up to `n_max` and
/// locate the empirical optimum.
///
/// Uses common random numbers: each realization draws a single stream of
/// `n_max` utilities whose prefix maxima provide the best-of-n for every n
/// at once. Differences between adjacent n are then far less noisy than
/// the individual means, which is what makes the argmax identifiable.
/// Realization `r` uses the stream `(seed.master_seed,
/// seed.realization_index + r)`; the parallel reduction is fixed-order, so
/// results do not depend on the worker count.
pub fn n_opt_scan(
    beta: f64,
    spec: &DistributionSpec,
    n_max: usize,
    realizations: u64,
    seed: &SeedSpec,
) -> Result<NOptScan> {
    if !(beta.is_finite() && beta > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "search cost per variant must be positive, got {beta}"
        )));
    }
    if n_max < 2 {
        return Err(Error::InvalidParameter(
            "n_max must be >= 2 to locate a maximum".into(),
        ));
    }
    if realizations < 100 {
        return Err(Error::InvalidParameter(
            "need at least 100 realizations for a usable curve".into(),
        ));
    }
    spec.validate()?;

    let spec = *spec;
    let stats = mc::accumulate(
        seed.master_seed,
        seed.realization_index,
        realizations,
        n_max,
        move |rng, row| {
            let mut best = f64::NEG_INFINITY;
            for slot in row.iter_mut() {
                best = best.max(spec.draw(rng));
                *slot = Some(best);
            }
        },
    );

    let curve: Vec<SearchCurvePoint> = stats
        .iter()
        .enumerate()
        .map(|(i, acc)| {
            let n = i + 1;
            SearchCurvePoint {
                n,
                mean_net_utility: acc.mean() - beta * n as f64,
                std_error: acc.std_error(),
            }
        })
        .collect();

    let n_opt_empirical = curve
        .iter()
        .max_by(|a, b| a.mean_net_utility.partial_cmp(&b.mean_net_utility).unwrap())
        .map(|p| p.n)
        .unwrap();

    Ok(NOptScan {
        n_opt_empirical,
        curve,
        rising_at_n_max: n_opt_empirical == n_max,
    })
}
