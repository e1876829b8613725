//! The analytic ladder for the expected best total utility with uniform
//! utilities: exact quadrature of the maximum-of-N density vs the
//! closed-form approximation 2 - sqrt(2 pi / N).
//!
//! ```bash
//! cargo run --example extreme_value_analytics
//! ```

use matchmarket::analytics::{
    extreme_pdf, integrate, tent_extreme_mean, tent_pdf, tent_tail, u_m_uniform_approx,
};

fn main() {
    println!(
        "tent density: f(0) = {}, f(+-2) = {}",
        tent_pdf(0.0),
        tent_pdf(2.0)
    );
    let norm = integrate(
        &|u| extreme_pdf(u, 5, tent_pdf, tent_tail),
        -2.0,
        0.0,
        1e-12,
    ) + integrate(&|u| extreme_pdf(u, 5, tent_pdf, tent_tail), 0.0, 2.0, 1e-12);
    println!("max-of-5 density integrates to {norm:.12}\n");

    println!(
        "{:>6}  {:>10}  {:>10}  {:>9}",
        "N", "quadrature", "closed", "rel err"
    );
    for n in [2u64, 5, 10, 17, 50, 200, 1000] {
        let exact = tent_extreme_mean(n);
        let approx = u_m_uniform_approx(n);
        println!(
            "{n:>6}  {exact:>10.5}  {approx:>10.5}  {:>8.3}%",
            (approx - exact).abs() / exact * 100.0
        );
    }
    println!("\nthe closed form dips under 1% error by N = 17 and keeps improving");
}
