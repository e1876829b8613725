//! Closed-form and implicit-equation results for the expected extremes and
//! the buyer's optimal search length, plus the numeric primitives they need.
//!
//! Three tiers of "truth" are exposed: exact quadrature of the
//! maximum-of-n density (the oracle), the implicit-equation roots, and the
//! closed-form large-n approximations. The approximations reproduce the
//! model's published method, biases included; the tests document the gap
//! against quadrature and Monte Carlo rather than correcting it.

mod numerics;

pub use numerics::{bisect, erf, erfc, gamma_fn, integrate};

use crate::error::{Error, Result};

use std::f64::consts::PI;

/// Density of the sum of two independent uniforms on [-1, 1]: the tent on
/// [-2, 2] peaking at 1/2.
pub fn tent_pdf(u: f64) -> f64 {
    if !(-2.0..=2.0).contains(&u) {
        0.0
    } else if u < 0.0 {
        (2.0 + u) / 4.0
    } else {
        (2.0 - u) / 4.0
    }
}

/// Upper-tail probability of the tent distribution, P(U > u).
pub fn tent_tail(u: f64) -> f64 {
    if u <= -2.0 {
        1.0
    } else if u >= 2.0 {
        0.0
    } else if u < 0.0 {
        1.0 - (2.0 + u) * (2.0 + u) / 8.0
    } else {
        (2.0 - u) * (2.0 - u) / 8.0
    }
}

/// Density of the maximum of `n` i.i.d. draws:
/// `n * f(u) * (1 - P(u))^(n-1)`, where `P` is the upper tail paired
/// with the density `f`.
pub fn extreme_pdf<F, G>(u: f64, n: u64, base_pdf: F, base_tail: G) -> f64
where
    F: Fn(f64) -> f64,
    G: Fn(f64) -> f64,
{
    assert!(n >= 1, "sample count must be >= 1");
    let cdf = 1.0 - base_tail(u);
    n as f64 * base_pdf(u) * cdf.powf((n - 1) as f64)
}

/// Quadrature mean of the maximum of `n` draws from the density/tail pair,
/// integrating piecewise between consecutive `breakpoints`.
pub fn extreme_mean<F, G>(n: u64, base_pdf: F, base_tail: G, breakpoints: &[f64]) -> f64
where
    F: Fn(f64) -> f64,
    G: Fn(f64) -> f64,
{
    let integrand = |u: f64| u * extreme_pdf(u, n, &base_pdf, &base_tail);
    breakpoints
        .windows(2)
        .map(|w| integrate(&integrand, w[0], w[1], 1e-11))
        .sum()
}

/// Exact (quadrature) mean of the maximal total utility for `n` variants
/// with uniform utilities; the oracle the closed forms are judged against.
pub fn tent_extreme_mean(n: u64) -> f64 {
    extreme_mean(n, tent_pdf, tent_tail, &[-2.0, 0.0, 2.0])
}

/// Large-n approximation of the expected maximal total utility for uniform
/// utilities: `2 - sqrt(2 pi / n)`.
pub fn u_m_uniform_approx(n: u64) -> f64 {
    assert!(n >= 2);
    2.0 - (2.0 * PI / n as f64).sqrt()
}

/// Expected buyer-vendor inequality under the linear rule,
/// `1 - <u_m>/2` with the large-n approximation plugged in. Evaluated as
/// the algebraically equal `sqrt(pi / (2n))`, which keeps full relative
/// precision at large n where the subtraction form cancels.
pub fn delta_uniform_approx(n: u64) -> f64 {
    assert!(n >= 2);
    (PI / (2.0 * n as f64)).sqrt()
}

/// The published k-norm generalization of the expected maximal utility,
///
/// ```text
/// 2 - ( Gamma(1/2 + 1/k) sqrt(pi) / (Gamma(1 + 1/k) 4^(1 - 1/k)) )^(1/2) n^(-1/2)
/// ```
///
/// evaluated verbatim. Note it does not reduce to the linear-rule result at
/// k = 1 (deficit coefficient sqrt(pi/2) vs sqrt(2 pi)), and for k > 1 the
/// k-norm utility is bounded by 2^(1/k) < 2, so the formula drifts from
/// simulation as k grows; the tests record the measured gap.
pub fn u_m_knorm_approx(n: u64, k: f64) -> f64 {
    assert!(n >= 2);
    assert!(k > 0.0 && k.is_finite());
    let inv_k = 1.0 / k;
    let coef = gamma_fn(0.5 + inv_k).unwrap() * PI.sqrt()
        / (gamma_fn(1.0 + inv_k).unwrap() * 4f64.powf(1.0 - inv_k));
    2.0 - coef.sqrt() / (n as f64).sqrt()
}

/// Solve the implicit equation for the expected maximum of `n` normal
/// totals with variance `v`:
///
/// ```text
/// u exp(u^2 / 2v) = n sqrt(v / 2 pi)
/// ```
///
/// The left side is strictly increasing for u > 0, so the positive root is
/// unique; it is bracketed on (0, 2 sqrt(v ln n + v)], where the left side
/// provably exceeds the right for n >= 2.
pub fn solve_u_m_normal(n: u64, v: f64) -> Result<f64> {
    assert!(n >= 2);
    if !(v.is_finite() && v > 0.0) {
        return Err(Error::DegenerateVariance);
    }
    let rhs = n as f64 * (v / (2.0 * PI)).sqrt();
    let f = |u: f64| u * (u * u / (2.0 * v)).exp() - rhs;
    let hi = 2.0 * (v * (n as f64).ln() + v).sqrt();
    bisect(&f, 1e-300, hi)
}

/// Closed-form approximation of the same quantity with the `u` prefactor
/// dropped: `u^2 = 4 (1 + st) ln(n sqrt((1 + st)/pi))`.
///
/// Valid only while the logarithm is non-negative; the boundary
/// (argument 1) maps to 0.
pub fn u_m_normal_approx(n: u64, st: f64) -> Result<f64> {
    assert!(n >= 2);
    if !((-1.0..=1.0).contains(&st)) {
        return Err(Error::InvalidParameter(format!(
            "st must lie in [-1, 1], got {st}"
        )));
    }
    let one_plus = 1.0 + st;
    let arg = n as f64 * (one_plus / PI).sqrt();
    // tolerate floating-point dust exactly at the boundary arg = 1
    let log = arg.ln();
    if log < -1e-9 {
        return Err(Error::ApproximationDomain(format!(
            "n sqrt((1+st)/pi) = {arg} <= 1; the large-n expansion does not apply"
        )));
    }
    Ok((4.0 * one_plus * log.max(0.0)).sqrt())
}

/// Exact mean of the maximum of `n` uniforms on [-1, 1]: `1 - 2/(n + 1)`.
pub fn x_m_uniform_exact(n: u64) -> f64 {
    assert!(n >= 1);
    1.0 - 2.0 / (n as f64 + 1.0)
}

/// Expected maximum of `n` standard normals via the implicit equation with
/// v = 1.
pub fn x_m_normal_approx(n: u64) -> Result<f64> {
    solve_u_m_normal(n, 1.0)
}

/// Expected maximum of `n` power-law draws when a fraction `r` of them
/// follows the power law: `(n r)^(1/(gamma-1)) Gamma(delta)` with
/// `delta = (gamma-2)/(gamma-1)`.
pub fn x_m_powerlaw_approx(n: u64, gamma: f64, r: f64) -> Result<f64> {
    if !(gamma.is_finite() && gamma > 2.0) {
        return Err(Error::DivergentMean(format!(
            "expected maximum requires gamma > 2, got {gamma}"
        )));
    }
    if !(r > 0.0 && r <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "fraction r must lie in (0, 1], got {r}"
        )));
    }
    let nr = n as f64 * r;
    if nr < 1.0 {
        return Err(Error::InvalidParameter(format!(
            "n r must be >= 1 for the extreme to form, got {nr}"
        )));
    }
    let delta = (gamma - 2.0) / (gamma - 1.0);
    Ok(nr.powf(1.0 / (gamma - 1.0)) * gamma_fn(delta)?)
}

/// Optimal number of examined variants for uniform utilities:
/// `(beta/2)^(-1/2) - 1`, the exact stationary point of
/// `1 - 2/(n+1) - beta n`.
pub fn n_opt_uniform(beta: f64) -> f64 {
    assert!(beta > 0.0 && beta.is_finite());
    (2.0 / beta).sqrt() - 1.0
}

/// Optimal number of examined variants for standard-normal utilities:
/// `(beta sqrt(-ln(2 pi beta^2)))^(-1)`, from the two-step refinement of
/// the rough estimate 1/beta.
pub fn n_opt_normal(beta: f64) -> Result<f64> {
    assert!(beta > 0.0 && beta.is_finite());
    let arg = 2.0 * PI * beta * beta;
    if arg >= 1.0 {
        return Err(Error::ApproximationDomain(format!(
            "requires 2 pi beta^2 < 1, got {arg}"
        )));
    }
    Ok(1.0 / (beta * (-arg.ln()).sqrt()))
}

/// Optimal number of examined variants for power-law utilities:
/// `(beta (gamma-1) / Gamma(delta))^(-1/delta)`.
pub fn n_opt_powerlaw(beta: f64, gamma: f64) -> Result<f64> {
    assert!(beta > 0.0 && beta.is_finite());
    if !(gamma.is_finite() && gamma > 2.0) {
        return Err(Error::DivergentMean(format!(
            "optimal search length requires gamma > 2, got {gamma}"
        )));
    }
    let delta = (gamma - 2.0) / (gamma - 1.0);
    Ok((beta * (gamma - 1.0) / gamma_fn(delta)?).powf(-1.0 / delta))
}

/// Standard normal density.
pub fn normal_pdf(x: f64) -> f64 {
    (-0.5 * x * x).exp() / (2.0 * PI).sqrt()
}

/// Standard normal upper tail Q(x) = P(X > x).
pub fn normal_upper_tail(x: f64) -> f64 {
    0.5 * erfc(x / std::f64::consts::SQRT_2)
}

/// The point beyond which the standard normal carries at most `tail_mass`
/// probability; used to truncate quadrature domains.
pub fn normal_truncation_point(tail_mass: f64) -> f64 {
    assert!(tail_mass > 0.0 && tail_mass < 0.5);
    bisect(&|x| normal_upper_tail(x) - tail_mass, 0.0, 40.0)
        .expect("tail is monotone; bracket always valid")
}
