//! Sweep the k-norm exponent and watch the buyer-vendor inequality grow
//! from the balanced small-k regime towards the winner-takes-most limit
//! of one half.
//!
//! ```bash
//! cargo run --release --example inequality_vs_k
//! ```

use matchmarket::experiments::{run_experiment, Experiment, ExperimentConfig};

fn main() -> matchmarket::Result<()> {
    let mut cfg = ExperimentConfig::defaults_for(Experiment::Fig1DeltaK);
    cfg.k_values = vec![0.2, 0.5, 1.0, 2.0, 5.0, 10.0, 30.0, 100.0];
    cfg.n_variants = vec![1000];
    cfg.realizations = 2_000; // a fast preview; the default is 10x more

    let table = run_experiment(&cfg)?;
    let k = table.column("k").unwrap();
    let delta = table.column("delta_mc").unwrap();
    let se = table.column("delta_se").unwrap();
    let total = table.column("u_m_mc").unwrap();

    println!("{:>7}  {:>16}  {:>9}", "k", "inequality", "total");
    for i in 0..k.len() {
        println!(
            "{:>7}  {:>8.4} +- {:.4}  {:>9.4}",
            k[i], delta[i], se[i], total[i]
        );
    }
    println!("\nlarge k picks whichever side can be made happiest: inequality -> 0.5");
    Ok(())
}
