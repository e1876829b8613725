//! A simulation and analytics toolkit for a toy buyer-vendor market.
//!
//! A vendor offers `N` variants of a product; a buyer values variant
//! `alpha` at `x_alpha` and the vendor values it at `y_alpha`. A matchmaker
//! with perfect information picks the variant maximizing a configurable
//! joint-utility rule, or the parties trade without one (sequential vendor
//! offers, or the buyer's costly solo search). The crate provides:
//!
//! - [`dist`]: seeded sampling of the utility distributions (symmetric
//!   uniform, standard normal, power law) and the correlated-pair
//!   construction, plus exact densities and tail probabilities;
//! - [`market`]: variant tables, joint-utility rules and matchmaker
//!   selection with inequality measurement;
//! - [`protocols`]: matchmaker-free selection: vendor-proposes and the
//!   buyer's search with a linear cost per examined variant;
//! - [`analytics`]: closed-form and implicit-equation approximations for
//!   the expected maxima, optimal search lengths, and the numeric
//!   primitives (gamma, erf, quadrature, bracketed root solving) they need;
//! - [`experiments`]: a deterministic, parallel Monte Carlo harness that
//!   sweeps the model parameters and writes figure-ready CSV tables.
//!
//! Everything downstream of a [`dist::SeedSpec`] is a pure function of it,
//! so any experiment re-run with the same master seed reproduces its output
//! byte for byte, regardless of thread count.

pub mod analytics;
pub mod dist;
pub mod error;
pub mod experiments;
pub mod market;
pub mod protocols;

mod mc;

pub use error::{Error, Result};
