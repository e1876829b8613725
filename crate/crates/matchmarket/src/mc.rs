//! Deterministic parallel Monte Carlo accumulation.
//!
//! Realizations are grouped into fixed-size blocks; blocks evaluate in
//! parallel but each block folds its realizations in index order, and the
//! block partials are folded in block order afterwards. The floating-point
//! reduction tree therefore never depends on the worker count, which keeps
//! reported means bit-identical across thread pools.

use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::dist::SeedSpec;

const BLOCK: u64 = 1024;

/// Running sums for one reported statistic. Realizations that do not
/// produce the statistic (no trade) are skipped but still counted in
/// `attempts`.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct StatAcc {
    pub attempts: u64,
    pub count: u64,
    pub sum: f64,
    pub sumsq: f64,
}

impl StatAcc {
    fn push(&mut self, value: Option<f64>) {
        self.attempts += 1;
        if let Some(v) = value {
            self.count += 1;
            self.sum += v;
            self.sumsq += v * v;
        }
    }

    fn merge(&mut self, other: &StatAcc) {
        self.attempts += other.attempts;
        self.count += other.count;
        self.sum += other.sum;
        self.sumsq += other.sumsq;
    }

    /// Conditional mean over the realizations that produced the statistic.
    pub fn mean(&self) -> f64 {
        if self.count == 0 {
            f64::NAN
        } else {
            self.sum / self.count as f64
        }
    }

    /// Standard error: sample standard deviation over sqrt(count).
    pub fn std_error(&self) -> f64 {
        if self.count < 2 {
            return f64::NAN;
        }
        let n = self.count as f64;
        let var = ((self.sumsq - self.sum * self.sum / n) / (n - 1.0)).max(0.0);
        (var / n).sqrt()
    }

    /// Fraction of realizations that produced no value.
    pub fn missing_fraction(&self) -> f64 {
        if self.attempts == 0 {
            0.0
        } else {
            1.0 - self.count as f64 / self.attempts as f64
        }
    }
}

/// Run `realizations` evaluations and accumulate `width` statistics.
///
/// `eval` receives the realization's generator and a scratch row of
/// `width` slots, all pre-set to `None`; it fills in what the realization
/// produced. Realization `r` draws from the stream
/// `(master_seed, base_index + r)`.
pub(crate) fn accumulate<F>(
    master_seed: u64,
    base_index: u64,
    realizations: u64,
    width: usize,
    eval: F,
) -> Vec<StatAcc>
where
    F: Fn(&mut ChaCha8Rng, &mut [Option<f64>]) + Sync,
{
    let blocks = realizations.div_ceil(BLOCK);
    let partials: Vec<Vec<StatAcc>> = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let lo = b * BLOCK;
            let hi = ((b + 1) * BLOCK).min(realizations);
            let mut acc = vec![StatAcc::default(); width];
            let mut row: Vec<Option<f64>> = vec![None; width];
            for r in lo..hi {
                let mut rng = SeedSpec::new(master_seed, base_index + r).rng();
                row.fill(None);
                eval(&mut rng, &mut row);
                for (a, v) in acc.iter_mut().zip(&row) {
                    a.push(*v);
                }
            }
            acc
        })
        .collect();

    let mut total = vec![StatAcc::default(); width];
    for block in &partials {
        for (t, b) in total.iter_mut().zip(block) {
            t.merge(b);
        }
    }
    total
}
