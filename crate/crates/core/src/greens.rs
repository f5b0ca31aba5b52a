//! Scattering Green's tensor of a perfectly conducting half-space at
//! coincident points, `G⁽¹⁾(r, r, ω)` with the atom at height `z`.
//!
//! Reflection coefficients are fixed to `r_s = −1`, `r_p = 1`. The tensor is
//! diagonal with `G_xx = G_yy`. Frequencies are complex so that real-axis
//! (resonant) and imaginary-axis (nonresonant) evaluations share one path.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{require_distance, Error, Result};
use crate::params::C;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GreensValue {
    pub gxx: Complex64,
    pub gyy: Complex64,
    pub gzz: Complex64,
    pub z: f64,
    pub omega: Complex64,
}

impl GreensValue {
    /// `Σ_i w_i G_ii`, i.e. `d̂·G·d̂` for a diagonal tensor.
    pub fn contract(&self, w: DipoleWeights) -> Complex64 {
        self.gxx * w.xx + self.gyy * w.yy + self.gzz * w.zz
    }

    pub fn conj(&self) -> Self {
        Self {
            gxx: self.gxx.conj(),
            gyy: self.gyy.conj(),
            gzz: self.gzz.conj(),
            ..*self
        }
    }
}

/// Squared direction cosines of a dipole (or field) against the mirror axes.
///
/// `d·G·d = d² (xx G_xx + yy G_yy + zz G_zz)` for the diagonal mirror tensor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DipoleWeights {
    pub xx: f64,
    pub yy: f64,
    pub zz: f64,
}

impl DipoleWeights {
    pub const fn new(xx: f64, yy: f64, zz: f64) -> Self {
        Self { xx, yy, zz }
    }

    /// Dipole along x carrying one third of `d²`.
    pub const X_THIRD: Self = Self::new(1.0 / 3.0, 0.0, 0.0);

    /// Orientation average, one third on each axis.
    pub const ISOTROPIC: Self = Self::new(1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0);

    /// Unit vector `(sin θ, 0, cos θ)` squared.
    pub fn field_direction(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Self::new(s * s, 0.0, c * c)
    }

    pub fn total(&self) -> f64 {
        self.xx + self.yy + self.zz
    }
}

fn require_frequency(omega: Complex64) -> Result<()> {
    if omega == Complex64::new(0.0, 0.0) {
        return Err(Error::Pole(
            "Green's tensor closed form is singular at omega = 0".into(),
        ));
    }
    if !(omega.re.is_finite() && omega.im.is_finite()) {
        return Err(Error::Domain(format!("non-finite frequency {omega}")));
    }
    Ok(())
}

/// Full closed form including retardation.
pub fn greens_scattering(z: f64, omega: Complex64) -> Result<GreensValue> {
    require_distance(z)?;
    require_frequency(omega)?;

    let i = Complex64::i();
    let x = C / (omega * z);
    let x2 = x * x;
    let x3 = x2 * x;
    let phase = (2.0 * i * omega * z / C).exp();

    let gxx = omega / (32.0 * PI * C) * (x3 - 2.0 * i * x2 - 4.0 * x) * phase;
    let gzz = omega / (16.0 * PI * C) * (x3 - 2.0 * i * x2) * phase;

    Ok(GreensValue {
        gxx,
        gyy: gxx,
        gzz,
        z,
        omega,
    })
}

/// Leading `(c/ωz)³` term only, with the retardation phase set to one.
pub fn greens_nonretarded(z: f64, omega: Complex64) -> Result<GreensValue> {
    require_distance(z)?;
    require_frequency(omega)?;

    let x = C / (omega * z);
    let x3 = x * x * x;
    let gxx = omega / (32.0 * PI * C) * x3;

    Ok(GreensValue {
        gxx,
        gyy: gxx,
        gzz: 2.0 * gxx,
        z,
        omega,
    })
}

/// Real-frequency shortcut for `Re G(z, ω)` contracted with `w`.
pub fn re_greens_contracted(z: f64, omega: f64, w: DipoleWeights) -> Result<f64> {
    Ok(greens_scattering(z, Complex64::new(omega, 0.0))?
        .contract(w)
        .re)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm()
    }

    #[test]
    fn xx_equals_yy_exactly() {
        for &(z, w) in &[
            (1e-7, Complex64::new(3.24e15, 0.0)),
            (3e-9, Complex64::new(1e14, 2e15)),
        ] {
            let g = greens_scattering(z, w).unwrap();
            assert_eq!(g.gxx, g.gyy);
        }
    }

    #[test]
    fn imaginary_frequency_is_real() {
        let g = greens_scattering(1e-7, Complex64::new(0.0, 1e15)).unwrap();
        assert!(g.gxx.im.abs() <= 1e-14 * g.gxx.re.abs());
        assert!(g.gzz.im.abs() <= 1e-14 * g.gzz.re.abs());
        // Attractive near field: negative on the imaginary axis.
        assert!(g.gxx.re < 0.0 && g.gzz.re < 0.0);
    }

    #[test]
    fn matches_high_precision_reference() {
        // 50-digit mpmath evaluation of the same closed form.
        let g = greens_scattering(1e-7, Complex64::new(3.24e15, 0.0)).unwrap();
        assert!(
            rel(
                g.gxx,
                Complex64::new(327_056.842_241_487, -157_211.961_711_211_57)
            ) < 1e-13
        );
        assert!(
            rel(
                g.gzz,
                Complex64::new(210_913.543_446_190_98, 346_508.019_178_013_4)
            ) < 1e-13
        );
        let g = greens_scattering(1e-7, Complex64::new(0.0, 1e15)).unwrap();
        assert!(rel(g.gxx, Complex64::new(-969_045.296_010_625_2, 0.0)) < 1e-13);
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(
            greens_scattering(0.0, Complex64::new(1.0, 0.0)),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            greens_scattering(-1e-9, Complex64::new(1.0, 0.0)),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            greens_scattering(1e-7, Complex64::new(0.0, 0.0)),
            Err(Error::Pole(_))
        ));
        assert!(greens_nonretarded(0.0, Complex64::new(1.0, 0.0)).is_err());
    }

    #[test]
    fn nonretarded_term_dominates_at_small_argument() {
        // ωz/c = 1e-3
        let omega = 3.24e15;
        let z = 1e-3 * C / omega;
        let full = greens_scattering(z, Complex64::new(omega, 0.0)).unwrap();
        let nr = greens_nonretarded(z, Complex64::new(omega, 0.0)).unwrap();
        assert!((full.gzz.re - nr.gzz.re).abs() / full.gzz.re.abs() < 1e-2);
        assert!((full.gxx.re - nr.gxx.re).abs() / full.gxx.re.abs() < 1e-2);
        assert_eq!(nr.gxx, nr.gyy);
    }

    #[test]
    fn zz_to_xx_ratio_tends_to_two() {
        let omega = Complex64::new(3.24e15, 0.0);
        let mut last = f64::INFINITY;
        for k in 2..7 {
            let z = 10f64.powi(-k) * C / omega.re;
            let g = greens_scattering(z, omega).unwrap();
            let dev = (g.gzz.re / g.gxx.re - 2.0).abs();
            assert!(dev < last);
            last = dev;
        }
        assert!(last < 1e-9);
    }

    #[test]
    fn schwarz_reflection() {
        for &w in &[
            Complex64::new(3.24e15, 0.0),
            Complex64::new(1e15, 3e14),
            Complex64::new(-2e14, 7e15),
            Complex64::new(0.0, 1e16),
        ] {
            for &z in &[3e-9, 1e-7, 2e-6] {
                let a = greens_scattering(z, -w.conj()).unwrap();
                let b = greens_scattering(z, w).unwrap().conj();
                assert!(rel(a.gxx, b.gxx) < 1e-13);
                assert!(rel(a.gzz, b.gzz) < 1e-13);
            }
        }
    }

    #[test]
    fn imaginary_axis_decay_is_monotone() {
        let z = 1e-7;
        let start = C / (2.0 * z);
        let mut prev = f64::INFINITY;
        for k in 0..60 {
            let xi = start * 10f64.powf(k as f64 * 0.05);
            let g = greens_scattering(z, Complex64::new(0.0, xi)).unwrap();
            let m = g.gxx.norm() + g.gzz.norm();
            if m == 0.0 {
                break;
            }
            assert!(m < prev, "not decaying at xi = {xi:e}");
            prev = m;
        }
    }

    #[test]
    fn length_frequency_scaling() {
        let (z, w) = (1.3e-7, Complex64::new(2.1e15, 4e14));
        let g = greens_scattering(z, w).unwrap();
        for &lambda in &[2.0, 10.0] {
            let s = greens_scattering(lambda * z, w / lambda).unwrap();
            assert!(rel(s.gxx * lambda, g.gxx) < 1e-13);
            assert!(rel(s.gzz * lambda, g.gzz) < 1e-13);
        }
    }

    #[test]
    fn weights() {
        let w = DipoleWeights::field_direction(std::f64::consts::FRAC_PI_2);
        assert!((w.xx - 1.0).abs() < 1e-15 && w.zz < 1e-30);
        assert!((DipoleWeights::ISOTROPIC.total() - 1.0).abs() < 1e-15);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn symmetries(log_z in -9.5f64..-5.0, re in -1e16f64..1e16, im in -1e16f64..1e16) {
                let z = 10f64.powf(log_z);
                let w = Complex64::new(re, im);
                prop_assume!(w.norm() > 1e10);
                let g = greens_scattering(z, w).unwrap();
                prop_assert_eq!(g.gxx, g.gyy);
                let m = greens_scattering(z, -w.conj()).unwrap();
                prop_assert!(rel(m.gxx, g.gxx.conj()) < 1e-12);
                prop_assert!(rel(m.gzz, g.gzz.conj()) < 1e-12);
            }

            #[test]
            fn real_and_negative_on_imaginary_axis(log_z in -9.5f64..-5.0, log_xi in 10.0f64..18.0) {
                let z = 10f64.powf(log_z);
                let g = greens_scattering(z, Complex64::new(0.0, 10f64.powf(log_xi))).unwrap();
                for c in [g.gxx, g.gzz] {
                    prop_assert!(c.im.abs() <= 1e-12 * c.re.abs());
                    prop_assert!(c.re <= 0.0);
                }
            }
        }
    }
}
