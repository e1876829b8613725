//! One variant for many buyers: the per-buyer utility of the best shared
//! variant collapses towards the vendor-only value as the buyer count
//! grows, and the variant count needed to fight that grows exponentially.
//!
//! ```bash
//! cargo run --release --example multi_buyer_saturation
//! ```

use matchmarket::experiments::{
    run_experiment, threshold_variant_scan, Experiment, ExperimentConfig, SHARED_UTILITY_THRESHOLD,
};

fn main() -> matchmarket::Result<()> {
    let mut cfg = ExperimentConfig::defaults_for(Experiment::Fig2MultiBuyer);
    cfg.m_buyers = vec![1, 3, 10, 30, 100];
    cfg.n_variants = vec![1000];
    cfg.realizations = 2_000;

    let table = run_experiment(&cfg)?;
    let m = table.column("m").unwrap();
    let u = table.column("u_per_buyer_mc").unwrap();
    println!("per-buyer utility of the best shared variant (N = 1000):");
    for i in 0..m.len() {
        println!("  M = {:>3}: {:.4}", m[i] as usize, u[i]);
    }

    println!("\nvariants needed before the best shared pick clears {SHARED_UTILITY_THRESHOLD}:");
    let scan = threshold_variant_scan(8, SHARED_UTILITY_THRESHOLD, 100, 7)?;
    for p in &scan.points {
        match p.n_star {
            Some(n) => println!("  M = {:>2}: N* = {n}", p.m_buyers),
            None => println!("  M = {:>2}: beyond the scan cap", p.m_buyers),
        }
    }
    println!(
        "ln N* grows by {:.2} per extra buyer (exponential demand for variety)",
        scan.log_slope
    );
    Ok(())
}
