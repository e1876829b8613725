//! Market instances and matchmaker selection.
//!
//! A [`VariantTable`] holds the utilities of `N` variants for one vendor
//! and `M` buyers. A [`UtilityRule`] turns a variant's utilities into one
//! joint number; [`UtilityRule::select`] picks the variant maximizing it
//! and records the realized buyer-vendor inequality.

use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Utilities of `N` variants: one row of buyer utilities per buyer, plus
/// the vendor's. Immutable after construction; all entries finite.
#[derive(Debug, Clone, PartialEq)]
pub struct VariantTable {
    /// M rows (buyers) x N columns (variants).
    buyer_utilities: Vec<Vec<f64>>,
    /// N vendor utilities.
    vendor_utilities: Vec<f64>,
}

impl VariantTable {
    pub fn new(buyer_utilities: Vec<Vec<f64>>, vendor_utilities: Vec<f64>) -> Result<Self> {
        let n = vendor_utilities.len();
        if n == 0 {
            return Err(Error::InvalidInput("need at least one variant".into()));
        }
        if buyer_utilities.is_empty() {
            return Err(Error::InvalidInput("need at least one buyer".into()));
        }
        for row in &buyer_utilities {
            if row.len() != n {
                return Err(Error::InvalidInput(format!(
                    "buyer row length {} does not match {} variants",
                    row.len(),
                    n
                )));
            }
        }
        let finite = vendor_utilities.iter().all(|v| v.is_finite())
            && buyer_utilities.iter().flatten().all(|v| v.is_finite());
        if !finite {
            return Err(Error::InvalidInput("utilities must be finite".into()));
        }
        Ok(Self {
            buyer_utilities,
            vendor_utilities,
        })
    }

    /// The single-buyer table used throughout the one-buyer analysis.
    pub fn single_buyer(buyer: Vec<f64>, vendor: Vec<f64>) -> Result<Self> {
        Self::new(vec![buyer], vendor)
    }

    pub fn n_variants(&self) -> usize {
        self.vendor_utilities.len()
    }

    pub fn m_buyers(&self) -> usize {
        self.buyer_utilities.len()
    }

    pub fn vendor_utilities(&self) -> &[f64] {
        &self.vendor_utilities
    }

    pub fn buyer_row(&self, buyer: usize) -> &[f64] {
        &self.buyer_utilities[buyer]
    }

    /// Mean buyer utility of one variant (the `a_alpha` of the multi-buyer
    /// rule).
    pub fn mean_buyer_utility(&self, variant: usize) -> f64 {
        let m = self.m_buyers() as f64;
        self.buyer_utilities
            .iter()
            .map(|row| row[variant])
            .sum::<f64>()
            / m
    }

    /// A copy with every utility multiplied by `c`.
    pub fn scaled(&self, c: f64) -> Self {
        Self {
            buyer_utilities: self
                .buyer_utilities
                .iter()
                .map(|row| row.iter().map(|v| c * v).collect())
                .collect(),
            vendor_utilities: self.vendor_utilities.iter().map(|v| c * v).collect(),
        }
    }

    /// Serialize as CSV with header `alpha,y,x_1..x_M`, one row per
    /// variant. Values are printed in shortest round-trip form, so parsing
    /// the output reproduces the table bit for bit.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("alpha,y");
        for i in 1..=self.m_buyers() {
            let _ = write!(out, ",x_{i}");
        }
        out.push('\n');
        for alpha in 0..self.n_variants() {
            let _ = write!(out, "{alpha},{}", self.vendor_utilities[alpha]);
            for row in &self.buyer_utilities {
                let _ = write!(out, ",{}", row[alpha]);
            }
            out.push('\n');
        }
        out
    }

    /// Parse the layout produced by [`VariantTable::to_csv`].
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::InvalidInput("empty variant CSV".into()))?;
        let cols: Vec<&str> = header.split(',').collect();
        if cols.len() < 3 || cols[0] != "alpha" || cols[1] != "y" {
            return Err(Error::InvalidInput(format!("unexpected header `{header}`")));
        }
        for (i, name) in cols[2..].iter().enumerate() {
            if *name != format!("x_{}", i + 1) {
                return Err(Error::InvalidInput(format!(
                    "unexpected header column `{name}`"
                )));
            }
        }
        let m = cols.len() - 2;
        let mut vendor = Vec::new();
        let mut buyers: Vec<Vec<f64>> = vec![Vec::new(); m];
        for (row_idx, line) in lines.enumerate() {
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != cols.len() {
                return Err(Error::InvalidInput(format!(
                    "row {row_idx}: expected {} fields, got {}",
                    cols.len(),
                    fields.len()
                )));
            }
            let alpha: usize = fields[0]
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad variant index `{}`", fields[0])))?;
            if alpha != row_idx {
                return Err(Error::InvalidInput(format!(
                    "rows out of order: expected {row_idx}, got {alpha}"
                )));
            }
            let parse = |s: &str| {
                s.parse::<f64>()
                    .map_err(|_| Error::InvalidInput(format!("bad value `{s}`")))
            };
            vendor.push(parse(fields[1])?);
            for (i, field) in fields[2..].iter().enumerate() {
                buyers[i].push(parse(field)?);
            }
        }
        Self::new(buyers, vendor)
    }
}

/// The matchmaker's joint-utility functional.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum UtilityRule {
    /// x + y.
    Linear,
    /// (x^k + y^k)^(1/k) on the positive quadrant; variants with a
    /// non-positive utility are excluded outright.
    KNorm { k: f64 },
    /// min(x, y): optimize the outcome of the weaker side.
    MinRule,
    /// y + mean of the buyers' utilities; the only rule defined for
    /// several buyers.
    MultiBuyerAverage,
}

impl UtilityRule {
    pub fn validate(&self) -> Result<()> {
        match self {
            UtilityRule::KNorm { k } if !(k.is_finite() && *k > 0.0) => Err(
                Error::InvalidParameter(format!("k-norm exponent must be positive, got {k}")),
            ),
            _ => Ok(()),
        }
    }

    fn check_table(&self, table: &VariantTable) -> Result<()> {
        self.validate()?;
        match self {
            UtilityRule::MultiBuyerAverage => Ok(()),
            _ if table.m_buyers() == 1 => Ok(()),
            _ => Err(Error::InvalidRule(format!(
                "{self:?} is defined for a single buyer, table has {}",
                table.m_buyers()
            ))),
        }
    }

    /// Joint utility of one variant, or `None` when the rule excludes it
    /// (possible only for the k-norm).
    pub fn total_utility(&self, table: &VariantTable, alpha: usize) -> Result<Option<f64>> {
        self.check_table(table)?;
        if alpha >= table.n_variants() {
            return Err(Error::InvalidInput(format!(
                "variant index {alpha} out of range for {} variants",
                table.n_variants()
            )));
        }
        let y = table.vendor_utilities[alpha];
        Ok(match self {
            UtilityRule::Linear => Some(table.buyer_utilities[0][alpha] + y),
            UtilityRule::MinRule => Some(table.buyer_utilities[0][alpha].min(y)),
            UtilityRule::KNorm { k } => knorm(table.buyer_utilities[0][alpha], y, *k),
            UtilityRule::MultiBuyerAverage => Some(y + table.mean_buyer_utility(alpha)),
        })
    }

    /// Pick the variant maximizing the joint utility over all
    /// non-excluded variants; ties break to the lowest index. Returns
    /// [`MatchOutcome::NoTrade`] only when every variant is excluded.
    pub fn select(&self, table: &VariantTable) -> Result<MatchOutcome> {
        self.check_table(table)?;
        let mut best: Option<(usize, f64)> = None;
        for alpha in 0..table.n_variants() {
            let y = table.vendor_utilities[alpha];
            let total = match self {
                UtilityRule::Linear => Some(table.buyer_utilities[0][alpha] + y),
                UtilityRule::MinRule => Some(table.buyer_utilities[0][alpha].min(y)),
                UtilityRule::KNorm { k } => knorm(table.buyer_utilities[0][alpha], y, *k),
                UtilityRule::MultiBuyerAverage => Some(y + table.mean_buyer_utility(alpha)),
            };
            if let Some(u) = total {
                match best {
                    Some((_, u_best)) if u <= u_best => {}
                    _ => best = Some((alpha, u)),
                }
            }
        }
        let Some((alpha, total)) = best else {
            return Ok(MatchOutcome::NoTrade);
        };
        let vendor_utility = table.vendor_utilities[alpha];
        let (buyer_utility, inequality) = if table.m_buyers() == 1 {
            let x = table.buyer_utilities[0][alpha];
            (x, Some((x - vendor_utility).abs()))
        } else {
            (table.mean_buyer_utility(alpha), None)
        };
        Ok(MatchOutcome::Trade(Trade {
            chosen_index: alpha,
            total_utility: total,
            buyer_utility,
            vendor_utility,
            inequality,
        }))
    }
}

/// Stable k-norm: `max * (1 + (min/max)^k)^(1/k)`, which never overflows
/// or underflows for the k range of interest and degrades gracefully to
/// `max(x, y)` as k grows.
fn knorm(x: f64, y: f64, k: f64) -> Option<f64> {
    if x <= 0.0 || y <= 0.0 {
        return None;
    }
    let hi = x.max(y);
    let ratio = x.min(y) / hi;
    Some(hi * (ratio.powf(k).ln_1p() / k).exp())
}

/// Result of a selection: either the chosen variant with its utilities, or
/// no trade at all.
#[derive(Debug, Clone, PartialEq)]
pub enum MatchOutcome {
    Trade(Trade),
    NoTrade,
}

/// The chosen variant and its realized utilities.
#[derive(Debug, Clone, PartialEq)]
pub struct Trade {
    pub chosen_index: usize,
    pub total_utility: f64,
    /// The buyer's utility, or the mean buyer utility when there are
    /// several buyers.
    pub buyer_utility: f64,
    pub vendor_utility: f64,
    /// |x - y| of the chosen variant; defined only for a single buyer.
    pub inequality: Option<f64>,
}

impl MatchOutcome {
    pub fn is_trade(&self) -> bool {
        matches!(self, MatchOutcome::Trade(_))
    }

    pub fn trade(&self) -> Option<&Trade> {
        match self {
            MatchOutcome::Trade(t) => Some(t),
            MatchOutcome::NoTrade => None,
        }
    }
}

/// True iff selection on the table scaled by `c > 0` picks the same
/// variant as selection on the original.
pub fn scale_invariance_check(rule: &UtilityRule, table: &VariantTable, c: f64) -> Result<bool> {
    if !(c.is_finite() && c > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "scale must be positive, got {c}"
        )));
    }
    if matches!(rule, UtilityRule::MultiBuyerAverage) {
        return Err(Error::InvalidRule(
            "scale invariance check applies to the single-buyer rules".into(),
        ));
    }
    let base = rule.select(table)?;
    let scaled = rule.select(&table.scaled(c))?;
    Ok(match (base, scaled) {
        (MatchOutcome::Trade(a), MatchOutcome::Trade(b)) => a.chosen_index == b.chosen_index,
        (MatchOutcome::NoTrade, MatchOutcome::NoTrade) => true,
        _ => false,
    })
}
