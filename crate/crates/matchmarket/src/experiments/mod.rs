//! Monte Carlo harness: declarative experiment configs, deterministic
//! parallel sweeps, and CSV emission.
//!
//! Each experiment reproduces one figure-style data table or the scalar
//! claims summary. Outputs carry a metadata block (config echo, master
//! seed, code version) sufficient to reproduce the file byte for byte.

mod config;
mod runner;
mod table;

pub use config::{Experiment, ExperimentConfig};
pub use runner::{
    claims_report, run_experiment, threshold_variant_scan, ThresholdPoint, ThresholdScan,
    SHARED_UTILITY_THRESHOLD,
};
pub use table::{Column, ResultTable};
