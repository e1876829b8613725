//! Drive the harness from code: configure a sweep, run it, write the CSV,
//! and read it back bit-for-bit. The same tables are available from the
//! `matchmarket` binary.
//!
//! ```bash
//! cargo run --release --example figure_data_export
//! ```

use matchmarket::experiments::{run_experiment, Experiment, ExperimentConfig, ResultTable};

fn main() -> matchmarket::Result<()> {
    let mut cfg = ExperimentConfig::defaults_for(Experiment::Fig4VendorProposes);
    cfg.n_variants = vec![2, 10, 50, 200, 1000];
    cfg.realizations = 1_000;
    cfg.master_seed = 2026;

    let table = run_experiment(&cfg)?;
    let path = std::env::temp_dir().join("matchmarket_fig4.csv");
    table.write_csv(&path)?;
    println!("wrote {}", path.display());

    let back = ResultTable::read_csv(&path)?;
    assert_eq!(back, table);
    println!("read back {} rows, bit-identical", back.n_rows());

    println!(
        "\ncolumns: {}",
        back.columns
            .iter()
            .map(|c| c.name.as_str())
            .collect::<Vec<_>>()
            .join(", ")
    );
    let n = back.column("n").unwrap();
    let mm = back.column("matchmaker_total_mc").unwrap();
    let vp = back.column("vendor_total_mc").unwrap();
    for i in 0..n.len() {
        println!(
            "  N = {:>4}: matchmaker {:+.3}, vendor-proposes {:+.3}",
            n[i], mm[i], vp[i]
        );
    }
    Ok(())
}
