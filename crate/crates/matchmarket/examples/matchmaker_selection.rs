//! Build a small market by hand and watch each joint-utility rule pick a
//! different variant.
//!
//! ```bash
//! cargo run --example matchmaker_selection
//! ```

use matchmarket::market::{MatchOutcome, UtilityRule, VariantTable};

fn main() -> matchmarket::Result<()> {
    // five variants: buyer utilities x, vendor utilities y
    let x = vec![0.92, 0.55, 0.48, -0.30, 0.05];
    let y = vec![-0.40, 0.50, 0.46, 0.95, 0.10];
    let table = VariantTable::single_buyer(x, y)?;

    println!(
        "market ({} variants):\n{}",
        table.n_variants(),
        table.to_csv()
    );

    let rules = [
        ("linear x+y", UtilityRule::Linear),
        ("k-norm k=0.5", UtilityRule::KNorm { k: 0.5 }),
        ("k-norm k=8", UtilityRule::KNorm { k: 8.0 }),
        ("min rule", UtilityRule::MinRule),
    ];
    for (name, rule) in rules {
        match rule.select(&table)? {
            MatchOutcome::Trade(t) => println!(
                "{name:<14} -> variant {} (total {:+.3}, buyer {:+.2}, vendor {:+.2}, inequality {:.3})",
                t.chosen_index,
                t.total_utility,
                t.buyer_utility,
                t.vendor_utility,
                t.inequality.unwrap(),
            ),
            MatchOutcome::NoTrade => println!("{name:<14} -> no trade"),
        }
    }

    // the linear argmax never moves under positive rescaling
    let invariant = matchmarket::market::scale_invariance_check(&UtilityRule::Linear, &table, 7.3)?;
    println!("\nargmax invariant under x7.3 rescaling: {invariant}");
    Ok(())
}
