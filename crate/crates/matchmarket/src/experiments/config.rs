//! Declarative experiment descriptions: which sweep to run, its axes and
//! realization count, and where the CSV goes.
//!
//! Configs come from per-experiment defaults, optionally a flat
//! `key = value` file, and finally individual overrides (the CLI flags);
//! later layers win. The full resolved config is echoed into the output
//! metadata so a result file names everything needed to reproduce it.

use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};

/// The built-in sweeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Experiment {
    /// Inequality as a function of the k-norm exponent, fixed N.
    Fig1DeltaK,
    /// Per-buyer utility saturation as the buyer count grows.
    Fig2MultiBuyer,
    /// Expected maximal total utility vs the utility correlation, with the
    /// implicit-equation root and its closed-form simplification.
    Fig3Correlated,
    /// Matchmaker vs vendor-proposes totals and inequalities across N.
    Fig4VendorProposes,
    /// The buyer's net search utility curve and its optimum for the three
    /// utility distributions.
    Fig5Search,
    /// The headline scalar comparisons at N = 1000.
    ClaimsTable,
}

impl Experiment {
    pub fn id(&self) -> &'static str {
        match self {
            Experiment::Fig1DeltaK => "fig1_delta_k",
            Experiment::Fig2MultiBuyer => "fig2_multibuyer",
            Experiment::Fig3Correlated => "fig3_correlated",
            Experiment::Fig4VendorProposes => "fig4_vendor_proposes",
            Experiment::Fig5Search => "fig5_search",
            Experiment::ClaimsTable => "claims_table",
        }
    }

    pub fn describe(&self) -> &'static str {
        match self {
            Experiment::Fig1DeltaK => {
                "buyer-vendor inequality Delta(k) under the k-norm rule, swept over k (figure 1)"
            }
            Experiment::Fig2MultiBuyer => {
                "per-buyer utility of one shared variant, swept over the buyer count M (figure 2)"
            }
            Experiment::Fig3Correlated => {
                "expected maximal total utility vs correlation s*t, with both analytic curves (figure 3)"
            }
            Experiment::Fig4VendorProposes => {
                "matchmaker vs vendor-proposes: totals, inequalities and no-trade rate vs N (figure 4)"
            }
            Experiment::Fig5Search => {
                "buyer's net search utility u_S(beta, n) and its optimum for all three distributions (figure 5)"
            }
            Experiment::ClaimsTable => {
                "scalar claims: min-rule trade-off, matchmaker vs vendor-proposes inequality, approximation error"
            }
        }
    }

    pub fn all() -> [Experiment; 6] {
        [
            Experiment::Fig1DeltaK,
            Experiment::Fig2MultiBuyer,
            Experiment::Fig3Correlated,
            Experiment::Fig4VendorProposes,
            Experiment::Fig5Search,
            Experiment::ClaimsTable,
        ]
    }

    pub fn parse(s: &str) -> Result<Self> {
        Experiment::all()
            .into_iter()
            .find(|e| e.id() == s)
            .ok_or_else(|| {
                let known: Vec<&str> = Experiment::all().iter().map(|e| e.id()).collect();
                Error::Config(format!(
                    "unknown experiment `{s}`; known: {}",
                    known.join(", ")
                ))
            })
    }
}

/// Everything a sweep needs. Which fields matter depends on the
/// experiment; the rest are carried along and echoed for the record.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub experiment: Experiment,
    /// Variant counts: a sweep for fig4, a fixed count elsewhere. Fig5
    /// scans every n up to the largest entry.
    pub n_variants: Vec<usize>,
    /// Buyer counts; swept by fig2.
    pub m_buyers: Vec<usize>,
    /// k-norm exponents; swept by fig1.
    pub k_values: Vec<f64>,
    /// Correlation products s*t; swept by fig3.
    pub st_values: Vec<f64>,
    /// Correlation strength and sign used by fig4.
    pub t: f64,
    pub s: i32,
    /// Search cost per examined variant (fig5).
    pub beta: f64,
    /// Power-law exponent (fig5).
    pub gamma: f64,
    pub realizations: u64,
    pub master_seed: u64,
    pub output_path: Option<PathBuf>,
    /// Exponent of the search-cost term; 1 is the validated default.
    pub cost_exponent: f64,
}

impl ExperimentConfig {
    /// The per-experiment default axes and realization counts.
    pub fn defaults_for(experiment: Experiment) -> Self {
        let mut cfg = Self {
            experiment,
            n_variants: vec![1000],
            m_buyers: vec![1],
            k_values: vec![
                0.1, 0.2, 0.3, 0.5, 0.7, 1.0, 1.5, 2.0, 3.0, 5.0, 7.0, 10.0, 15.0, 20.0, 30.0,
                50.0, 70.0, 100.0, 150.0, 200.0,
            ],
            st_values: vec![-1.0, -0.8, -0.6, -0.4, -0.2, 0.0, 0.2, 0.4, 0.6, 0.8, 1.0],
            t: 0.0,
            s: 1,
            beta: 0.01,
            gamma: 4.0,
            realizations: 1000,
            master_seed: 1,
            output_path: None,
            cost_exponent: 1.0,
        };
        match experiment {
            Experiment::Fig1DeltaK => {
                cfg.realizations = 10_000;
                cfg.master_seed = 1;
            }
            Experiment::Fig2MultiBuyer => {
                cfg.m_buyers = vec![1, 2, 3, 5, 10, 20, 30, 50, 100];
                cfg.realizations = 1_000;
                cfg.master_seed = 2;
            }
            Experiment::Fig3Correlated => {
                cfg.realizations = 1_000;
                cfg.master_seed = 3;
            }
            Experiment::Fig4VendorProposes => {
                cfg.n_variants = vec![1, 2, 5, 10, 20, 50, 100, 200, 500, 1000];
                cfg.realizations = 1_000;
                cfg.master_seed = 4;
            }
            Experiment::Fig5Search => {
                cfg.n_variants = vec![700];
                cfg.realizations = 10_000;
                cfg.master_seed = 5;
            }
            Experiment::ClaimsTable => {
                cfg.realizations = 100_000;
                cfg.master_seed = 6;
            }
        }
        cfg
    }

    /// Load a flat `key = value` file on top of the experiment's defaults.
    /// Blank lines and `#` comments are ignored.
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut experiment = None;
        let mut pairs = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| {
                Error::Config(format!(
                    "{}:{}: expected `key = value`",
                    path.display(),
                    lineno + 1
                ))
            })?;
            let (k, v) = (k.trim(), v.trim());
            if k == "experiment" {
                experiment = Some(Experiment::parse(v)?);
            } else {
                pairs.push((k.to_string(), v.to_string()));
            }
        }
        let experiment = experiment
            .ok_or_else(|| Error::Config(format!("{}: missing `experiment`", path.display())))?;
        let mut cfg = Self::defaults_for(experiment);
        for (k, v) in pairs {
            cfg.set(&k, &v)?;
        }
        Ok(cfg)
    }

    /// Apply one override; keys match the CLI flag names.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "n" => self.n_variants = parse_list(value, "n")?,
            "m" => self.m_buyers = parse_list(value, "m")?,
            "k" => self.k_values = parse_list(value, "k")?,
            "st" => self.st_values = parse_list(value, "st")?,
            "t" => {
                // a t sweep combines with the sign into the fig3 axis
                let ts: Vec<f64> = parse_list(value, "t")?;
                self.t = ts[0];
                self.st_values = ts.iter().map(|t| self.s as f64 * t).collect();
            }
            "s" => {
                self.s = value
                    .parse()
                    .map_err(|_| Error::Config(format!("bad sign `{value}`")))?;
                self.st_values = self
                    .st_values
                    .iter()
                    .map(|st| st.abs() * self.s as f64)
                    .collect();
                if self.s == -1 {
                    self.st_values.reverse();
                }
            }
            "beta" => self.beta = parse_num(value, "beta")?,
            "gamma" => self.gamma = parse_num(value, "gamma")?,
            "realizations" => {
                self.realizations = value
                    .parse()
                    .map_err(|_| Error::Config(format!("bad realizations `{value}`")))?
            }
            "seed" => {
                self.master_seed = value
                    .parse()
                    .map_err(|_| Error::Config(format!("bad seed `{value}`")))?
            }
            "out" => self.output_path = Some(PathBuf::from(value)),
            "cost_exponent" => self.cost_exponent = parse_num(value, "cost_exponent")?,
            other => return Err(Error::Config(format!("unknown key `{other}`"))),
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        if self.realizations == 0 {
            return Err(Error::Config("realizations must be >= 1".into()));
        }
        check_sweep("n", &self.n_variants, |&v| v >= 1)?;
        check_sweep("m", &self.m_buyers, |&v| v >= 1)?;
        check_sweep("k", &self.k_values, |&v| v > 0.0 && v.is_finite())?;
        check_sweep("st", &self.st_values, |&v| (-1.0..=1.0).contains(&v))?;
        if !(0.0..=1.0).contains(&self.t) {
            return Err(Error::Config(format!(
                "t must lie in [0, 1], got {}",
                self.t
            )));
        }
        if self.s != 1 && self.s != -1 {
            return Err(Error::Config(format!("s must be +1 or -1, got {}", self.s)));
        }
        if !(self.beta.is_finite() && self.beta > 0.0) {
            return Err(Error::Config(format!(
                "beta must be positive, got {}",
                self.beta
            )));
        }
        if !(self.gamma.is_finite() && self.gamma > 2.0) {
            return Err(Error::Config(format!(
                "gamma must exceed 2, got {}",
                self.gamma
            )));
        }
        if !(self.cost_exponent.is_finite() && self.cost_exponent >= 1.0) {
            return Err(Error::Config(format!(
                "cost_exponent must be >= 1, got {}",
                self.cost_exponent
            )));
        }
        Ok(())
    }

    /// The config echo that goes into every output's metadata block.
    pub fn metadata(&self) -> Vec<(String, String)> {
        let join_us = |v: &[usize]| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        let join_f = |v: &[f64]| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        let mut meta = vec![
            ("experiment".to_string(), self.experiment.id().to_string()),
            (
                "code_version".to_string(),
                env!("CARGO_PKG_VERSION").to_string(),
            ),
            ("master_seed".to_string(), self.master_seed.to_string()),
            ("realizations".to_string(), self.realizations.to_string()),
            ("n".to_string(), join_us(&self.n_variants)),
            ("m".to_string(), join_us(&self.m_buyers)),
        ];
        match self.experiment {
            Experiment::Fig1DeltaK => meta.push(("k".into(), join_f(&self.k_values))),
            Experiment::Fig3Correlated => meta.push(("st".into(), join_f(&self.st_values))),
            Experiment::Fig4VendorProposes => {
                meta.push(("t".into(), self.t.to_string()));
                meta.push(("s".into(), self.s.to_string()));
            }
            Experiment::Fig5Search => {
                meta.push(("beta".into(), self.beta.to_string()));
                meta.push(("gamma".into(), self.gamma.to_string()));
                meta.push(("cost_exponent".into(), self.cost_exponent.to_string()));
            }
            _ => {}
        }
        meta
    }
}

fn parse_num(value: &str, key: &str) -> Result<f64> {
    value
        .parse()
        .map_err(|_| Error::Config(format!("bad number for `{key}`: `{value}`")))
}

fn parse_list<T: std::str::FromStr>(value: &str, key: &str) -> Result<Vec<T>> {
    value
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<T>()
                .map_err(|_| Error::Config(format!("bad list entry for `{key}`: `{s}`")))
        })
        .collect()
}

fn check_sweep<T: PartialOrd + std::fmt::Debug>(
    name: &str,
    values: &[T],
    ok: impl Fn(&T) -> bool,
) -> Result<()> {
    if values.is_empty() {
        return Err(Error::Config(format!("sweep `{name}` must be non-empty")));
    }
    if !values.iter().all(&ok) {
        return Err(Error::Config(format!(
            "sweep `{name}` has out-of-range entries: {values:?}"
        )));
    }
    if values.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Config(format!(
            "sweep `{name}` must be strictly increasing"
        )));
    }
    Ok(())
}
