//! Semi-infinite imaginary-frequency integration for the nonresonant
//! potential terms.
//!
//! `ξ ∈ [0, ∞)` is mapped onto `u ∈ [0, 1)` by `ξ = ω_L u/(1−u)` and the
//! result is integrated with adaptive 15-point Gauss–Kronrod, bisecting the
//! interval with the largest error estimate first.

#![allow(clippy::excessive_precision)]

use num_complex::Complex64;
use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::greens::{greens_scattering, DipoleWeights};
use crate::params::{C, MU0};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    pub est_error: f64,
    pub n_evals: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureOptions {
    pub rel_tol: f64,
    /// Absolute floor on the error target, in the units of the integral.
    pub abs_tol: f64,
    pub max_evaluations: usize,
}

impl Default for QuadratureOptions {
    fn default() -> Self {
        Self {
            rel_tol: 1e-9,
            abs_tol: 1e-40,
            max_evaluations: 100_000,
        }
    }
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

/// Gauss weights for the odd Kronrod nodes `XGK[1], XGK[3], XGK[5], XGK[7]`.
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}

impl Eq for Segment {}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod<F>(f: &mut F, a: f64, b: f64) -> Result<Segment>
where
    F: FnMut(f64) -> Result<f64>,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center)?;
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = f(center - dx)? + f(center + dx)?;
        kronrod += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    Ok(Segment {
        a,
        b,
        value: kronrod * half,
        error: ((kronrod - gauss) * half).abs(),
    })
}

/// Adaptive Gauss–Kronrod over `[breaks[0], breaks[last]]`, starting from
/// the given partition.
pub fn integrate_adaptive<F>(
    mut f: F,
    breaks: &[f64],
    opts: &QuadratureOptions,
) -> Result<QuadratureResult>
where
    F: FnMut(f64) -> Result<f64>,
{
    if breaks.len() < 2
        || breaks
            .windows(2)
            .any(|w| w[0].partial_cmp(&w[1]) != Some(Ordering::Less))
    {
        return Err(Error::InvalidParameter(
            "quadrature breakpoints must be increasing".into(),
        ));
    }
    let mut heap = BinaryHeap::new();
    let mut n_evals = 0;
    for w in breaks.windows(2) {
        heap.push(kronrod(&mut f, w[0], w[1])?);
        n_evals += 15;
    }

    loop {
        let (value, error) = heap
            .iter()
            .fold((0.0, 0.0), |(v, e), s| (v + s.value, e + s.error));
        let target = (opts.rel_tol * value.abs()).max(opts.abs_tol);
        if error <= target {
            return Ok(QuadratureResult {
                value,
                est_error: error,
                n_evals,
            });
        }
        if n_evals + 30 > opts.max_evaluations {
            return Err(Error::Convergence {
                partial: value,
                est_error: error,
                evaluations: n_evals,
            });
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        if !(worst.a < mid && mid < worst.b) {
            // Interval exhausted at machine resolution.
            return Err(Error::Convergence {
                partial: value,
                est_error: error,
                evaluations: n_evals,
            });
        }
        heap.push(kronrod(&mut f, worst.a, mid)?);
        heap.push(kronrod(&mut f, mid, worst.b)?);
        n_evals += 30;
    }
}

/// `(μ0/π) ω_L ξ²/(ξ²+ω_L²) d² Σ_i w_i G_ii(z, iξ)` [J s].
pub fn nonresonant_integrand(
    z: f64,
    omega_l: f64,
    d: f64,
    weights: DipoleWeights,
    xi: f64,
) -> Result<f64> {
    let g = greens_scattering(z, Complex64::new(0.0, xi))?.contract(weights);
    if g.im.abs() > 1e-12 * g.re.abs() {
        return Err(Error::NonRealIntegrand { xi, imag: g.im });
    }
    let xi2 = xi * xi;
    Ok(MU0 / PI * omega_l * xi2 / (xi2 + omega_l * omega_l) * d * d * g.re)
}

/// `(μ0/π) ∫₀^∞ dξ ω_L ξ²/(ξ²+ω_L²) d·G(z, iξ)·d` [J].
pub fn integrate_nonresonant(
    z: f64,
    omega_l: f64,
    d: f64,
    weights: DipoleWeights,
    opts: &QuadratureOptions,
) -> Result<QuadratureResult> {
    crate::error::require_distance(z)?;
    if !(omega_l.is_finite() && omega_l > 0.0) {
        return Err(Error::Domain(format!(
            "laser frequency must be positive, got {omega_l:e}"
        )));
    }

    // Seed the partition around the decay scale c/2z so narrow features are
    // never missed by the first Kronrod pass.
    let decay = C / (2.0 * z);
    let mut breaks = vec![0.0];
    for k in [1e-2, 1e-1, 1.0, 1e1, 1e2] {
        let xi = k * decay;
        breaks.push(xi / (xi + omega_l));
    }
    breaks.push(1.0);
    breaks.dedup_by(|b, a| a.partial_cmp(&b) != Some(Ordering::Less));

    integrate_adaptive(
        |u| {
            let one_minus = 1.0 - u;
            let xi = omega_l * u / one_minus;
            if xi == 0.0 || !xi.is_finite() {
                return Ok(0.0);
            }
            let jacobian = omega_l / (one_minus * one_minus);
            Ok(nonresonant_integrand(z, omega_l, d, weights, xi)? * jacobian)
        },
        &breaks,
        opts,
    )
}
