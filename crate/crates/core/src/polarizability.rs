//! Two-level atomic polarizability.
//!
//! The tensor is proportional to the unit tensor for every form used here,
//! so only the scalar prefactor is carried.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::params::{Alignment, AtomParams, HBAR};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolarizabilityForm {
    /// Damped, complex frequency.
    ComplexFull,
    /// Undamped, dipole along the field (`dd` tensor).
    RealTwoLevel,
    /// Undamped, orientation averaged (`d²/3`).
    IsotropicReal,
    /// Isotropic, leading order in `Δ/ω̃₁₀`.
    DetuningApprox,
}

/// Scalar polarizability [C² m²/J].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Polarizability {
    pub value: Complex64,
    pub form: PolarizabilityForm,
}

impl Polarizability {
    fn real(value: f64, form: PolarizabilityForm) -> Self {
        Self {
            value: Complex64::new(value, 0.0),
            form,
        }
    }

    /// Real part, rejecting genuinely complex values.
    pub fn real_value(&self) -> Result<f64> {
        if self.value.im != 0.0 {
            return Err(Error::Domain(format!(
                "potential formula needs a real polarizability, got {}",
                self.value
            )));
        }
        Ok(self.value.re)
    }

    /// α/(4πε0) [m³].
    pub fn volume(&self) -> f64 {
        self.value.re / (4.0 * std::f64::consts::PI * crate::params::EPS0)
    }
}

/// `(1/ħ)[d²/(ω̃₁₀ − ω − iγ/2) + d²/(ω̃₁₀ + ω + iγ/2)]` with `d²` scaled by
/// the alignment factor.
pub fn alpha_complex(
    atom: AtomParams,
    gamma_sum: f64,
    omega: Complex64,
    alignment: Alignment,
) -> Result<Polarizability> {
    if !(gamma_sum.is_finite() && gamma_sum >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "damping must be non-negative, got {gamma_sum:e}"
        )));
    }
    let w10 = atom.omega10();
    let damp = Complex64::new(0.0, gamma_sum / 2.0);
    let lower = w10 - omega - damp;
    let upper = w10 + omega + damp;
    if lower == Complex64::new(0.0, 0.0) || upper == Complex64::new(0.0, 0.0) {
        return Err(Error::Pole(format!(
            "undamped polarizability evaluated on resonance at omega = {omega}"
        )));
    }
    let d2 = atom.d() * atom.d() * alignment.dipole_squared_factor();
    Ok(Polarizability {
        value: d2 / HBAR * (1.0 / lower + 1.0 / upper),
        form: PolarizabilityForm::ComplexFull,
    })
}

fn undamped(
    atom: AtomParams,
    omega_l: f64,
    factor: f64,
    form: PolarizabilityForm,
) -> Result<Polarizability> {
    let w10 = atom.omega10();
    // Factored to keep precision for ω_L ≈ ω̃₁₀.
    let denom = (w10 - omega_l) * (w10 + omega_l);
    if denom == 0.0 {
        return Err(Error::Pole(format!(
            "polarizability pole at omega_L = {omega_l:e}"
        )));
    }
    let d2 = atom.d() * atom.d() * factor;
    Ok(Polarizability::real(2.0 * w10 * d2 / (HBAR * denom), form))
}

/// `2ω̃₁₀ d²/(ħ(ω̃₁₀² − ω_L²))`, dipole along the field.
pub fn alpha_two_level(atom: AtomParams, omega_l: f64) -> Result<Polarizability> {
    undamped(atom, omega_l, 1.0, PolarizabilityForm::RealTwoLevel)
}

/// `2ω̃₁₀ d²/(3ħ(ω̃₁₀² − ω_L²))`.
pub fn alpha_isotropic(atom: AtomParams, omega_l: f64) -> Result<Polarizability> {
    undamped(atom, omega_l, 1.0 / 3.0, PolarizabilityForm::IsotropicReal)
}

/// `−d²/(3ħΔ)`.
pub fn alpha_detuning(atom: AtomParams, delta: f64) -> Result<Polarizability> {
    if delta == 0.0 {
        return Err(Error::Pole(
            "large-detuning polarizability at zero detuning".into(),
        ));
    }
    Ok(Polarizability::real(
        -atom.d() * atom.d() / (3.0 * HBAR * delta),
        PolarizabilityForm::DetuningApprox,
    ))
}
