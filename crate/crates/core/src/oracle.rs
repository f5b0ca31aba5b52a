//! Brute-force reference evaluations.
//!
//! Nothing here goes through the adaptive quadrature, the rational
//! substitution, or the complex Green's tensor path. The Green's tensor on
//! the imaginary axis is written out in real arithmetic:
//!
//! ```text
//! G_xx(z, iξ) = −(1/(32π z)) (a² + 2a + 4) e^{−2/a},   a = c/(ξz)
//! G_zz(z, iξ) = −(1/(16π z)) (a² + 2a) e^{−2/a}
//! ```

use std::f64::consts::PI;

use crate::greens::DipoleWeights;
use crate::params::{C, HBAR, MU0};

/// Real-arithmetic `Σ_i w_i G_ii(z, iξ)`.
pub fn greens_imaginary_axis(z: f64, xi: f64, w: DipoleWeights) -> f64 {
    let a = C / (xi * z);
    let decay = (-2.0 * xi * z / C).exp();
    let gxx = -(a * a + 2.0 * a + 4.0) * decay / (32.0 * PI * z);
    let gzz = -(a * a + 2.0 * a) * decay / (16.0 * PI * z);
    (w.xx + w.yy) * gxx + w.zz * gzz
}

/// Trapezoid rule on `n` log-spaced nodes in `[lo, hi]`, plus a flat
/// `f(lo)·lo` contribution for `[0, lo]`.
pub fn log_grid_trapezoid<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, n: usize) -> f64 {
    assert!(n >= 2 && 0.0 < lo && lo < hi);
    let (ln_lo, ln_hi) = (lo.ln(), hi.ln());
    let h = (ln_hi - ln_lo) / (n - 1) as f64;
    let mut sum = 0.0;
    for k in 0..n {
        let x = (ln_lo + h * k as f64).exp();
        let weight = if k == 0 || k == n - 1 { 0.5 } else { 1.0 };
        sum += weight * f(x) * x;
    }
    sum * h + f(lo) * lo
}

/// Integration window covering the ξ² rise, the `1/(ξ²+ω²)` knee and the
/// `e^{−2ξz/c}` cutoff.
fn window(z: f64, omega: f64) -> (f64, f64) {
    let decay = C / (2.0 * z);
    (1e-9 * decay.min(omega), 60.0 * decay.max(omega))
}

/// Nonresonant ground-state term `(μ0/π)∫ dξ ω ξ²/(ξ²+ω²) d·G(iξ)·d` by
/// brute force.
pub fn nonresonant_bruteforce(z: f64, omega: f64, d: f64, w: DipoleWeights, n: usize) -> f64 {
    let (lo, hi) = window(z, omega);
    let f = |xi: f64| omega * xi * xi / (xi * xi + omega * omega) * greens_imaginary_axis(z, xi, w);
    MU0 / PI * d * d * log_grid_trapezoid(f, lo, hi, n)
}

/// Textbook ground-state potential `(ħμ0/2π)∫ dξ ξ² α(iξ) d̂·G(iξ)·d̂` with
/// `α(iξ) = 2ω₁₀d²/(ħ(ω₁₀² + ξ²))`, by brute force.
pub fn ground_state_cp_literature(z: f64, omega10: f64, d: f64, w: DipoleWeights, n: usize) -> f64 {
    let (lo, hi) = window(z, omega10);
    let alpha = |xi: f64| 2.0 * omega10 * d * d / (HBAR * (omega10 * omega10 + xi * xi));
    let f = |xi: f64| xi * xi * alpha(xi) * greens_imaginary_axis(z, xi, w);
    HBAR * MU0 / (2.0 * PI) * log_grid_trapezoid(f, lo, hi, n)
}
