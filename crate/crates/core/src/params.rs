//! Physical constants, parameter records and the derived driven system.
//!
//! Everything is strict SI; angular frequencies are in rad/s.

use crate::error::{Error, Result};

/// CODATA 2018 values, 12 significant digits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    /// Speed of light [m/s].
    pub c: f64,
    /// Reduced Planck constant [J s].
    pub hbar: f64,
    /// Vacuum permittivity [F/m].
    pub eps0: f64,
    /// Vacuum permeability [N/A^2].
    pub mu0: f64,
}

pub const SI: PhysicalConstants = PhysicalConstants {
    c: 299_792_458.0,
    hbar: 1.054_571_817_65e-34,
    eps0: 8.854_187_812_80e-12,
    mu0: 1.256_637_062_12e-6,
};

pub const C: f64 = SI.c;
pub const HBAR: f64 = SI.hbar;
pub const EPS0: f64 = SI.eps0;
pub const MU0: f64 = SI.mu0;

/// Two-level atom: transition dipole and surface-shifted transition frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AtomParams {
    d: f64,
    omega10: f64,
}

impl AtomParams {
    /// `d` in C m, `omega10` in rad/s; both must be positive and finite.
    pub fn new(d: f64, omega10: f64) -> Result<Self> {
        if !(d.is_finite() && d > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "dipole moment must be positive, got {d:e}"
            )));
        }
        if !(omega10.is_finite() && omega10 > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "transition frequency must be positive, got {omega10:e}"
            )));
        }
        Ok(Self { d, omega10 })
    }

    pub fn d(&self) -> f64 {
        self.d
    }

    pub fn omega10(&self) -> f64 {
        self.omega10
    }

    /// Same atom with a different transition frequency.
    pub fn with_omega10(&self, omega10: f64) -> Result<Self> {
        Self::new(self.d, omega10)
    }
}

/// Monochromatic drive `E0 (sin θ, 0, cos θ) cos(ω_L t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaserParams {
    omega_l: f64,
    e0: f64,
    theta: f64,
}

impl LaserParams {
    /// `theta` is the angle between the field and the surface normal, in [0, π/2].
    pub fn new(omega_l: f64, e0: f64, theta: f64) -> Result<Self> {
        if !(omega_l.is_finite() && omega_l > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "laser frequency must be positive, got {omega_l:e}"
            )));
        }
        if !(e0.is_finite() && e0 >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "field amplitude must be non-negative, got {e0:e}"
            )));
        }
        if !(theta.is_finite() && (0.0..=std::f64::consts::FRAC_PI_2).contains(&theta)) {
            return Err(Error::InvalidParameter(format!(
                "polarization angle must lie in [0, pi/2], got {theta}"
            )));
        }
        Ok(Self { omega_l, e0, theta })
    }

    /// Drive specified by intensity [W/m^2] instead of field amplitude.
    pub fn from_intensity(omega_l: f64, intensity: f64, theta: f64) -> Result<Self> {
        Self::new(omega_l, intensity_to_field(intensity)?, theta)
    }

    pub fn omega_l(&self) -> f64 {
        self.omega_l
    }

    pub fn e0(&self) -> f64 {
        self.e0
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn intensity(&self) -> f64 {
        field_to_intensity(self.e0)
    }

    /// Field direction `(sin θ, 0, cos θ)`.
    pub fn direction(&self) -> [f64; 3] {
        [self.theta.sin(), 0.0, self.theta.cos()]
    }
}

/// How the transition dipole projects onto the drive field when forming Ω.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Alignment {
    /// Dipole parallel to the field: `E·d = E0 d`.
    Parallel,
    /// Orientation-averaged atom: `E·d = E0 d/√3`.
    Isotropic,
}

impl Alignment {
    pub fn effective_dipole(self, d: f64) -> f64 {
        match self {
            Alignment::Parallel => d,
            Alignment::Isotropic => d / 3f64.sqrt(),
        }
    }

    /// Factor multiplying `d²` in the polarizability.
    pub fn dipole_squared_factor(self) -> f64 {
        match self {
            Alignment::Parallel => 1.0,
            Alignment::Isotropic => 1.0 / 3.0,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Alignment::Parallel => "parallel",
            Alignment::Isotropic => "isotropic",
        }
    }
}

impl std::str::FromStr for Alignment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "parallel" => Ok(Alignment::Parallel),
            "isotropic" => Ok(Alignment::Isotropic),
            other => Err(Error::InvalidParameter(format!(
                "unknown alignment '{other}'"
            ))),
        }
    }
}

/// Atom plus drive, with the Rabi frequency, detuning and dressed frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DrivenSystem {
    pub atom: AtomParams,
    pub laser: LaserParams,
    pub alignment: Alignment,
    omega_rabi: f64,
    delta: f64,
    omega_dressed: f64,
}

impl DrivenSystem {
    /// Rabi frequency Ω [rad/s].
    pub fn omega_rabi(&self) -> f64 {
        self.omega_rabi
    }

    /// Signed detuning Δ = ω_L − ω̃₁₀ [rad/s].
    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// √(Δ² + Ω²) [rad/s].
    pub fn omega_dressed(&self) -> f64 {
        self.omega_dressed
    }

    pub fn omega_l(&self) -> f64 {
        self.laser.omega_l()
    }

    /// Ω²/(Δ²+Ω²), the population oscillation amplitude. Zero for an
    /// undriven resonant atom.
    pub fn excitation_amplitude(&self) -> f64 {
        if self.omega_dressed == 0.0 {
            0.0
        } else {
            let r = self.omega_rabi / self.omega_dressed;
            r * r
        }
    }

    /// Copy with Ω negated. Only used to inject faults into the verification
    /// suite; the result violates the `Ω = E·d/ħ` invariant on purpose.
    pub fn with_flipped_rabi_sign(&self) -> Self {
        Self {
            omega_rabi: -self.omega_rabi,
            ..*self
        }
    }
}

/// Field amplitude for a given intensity, `E0 = √(2I/(ε0 c))`.
pub fn intensity_to_field(intensity: f64) -> Result<f64> {
    if !(intensity.is_finite() && intensity >= 0.0) {
        return Err(Error::Domain(format!(
            "intensity must be non-negative, got {intensity:e} W/m^2"
        )));
    }
    Ok((2.0 * intensity / (EPS0 * C)).sqrt())
}

/// Inverse of [`intensity_to_field`], `I = ε0 c E0²/2`.
pub fn field_to_intensity(e0: f64) -> f64 {
    EPS0 * C * e0 * e0 / 2.0
}

pub fn build_driven_system(
    atom: AtomParams,
    laser: LaserParams,
    alignment: Alignment,
) -> DrivenSystem {
    let omega_rabi = laser.e0() * alignment.effective_dipole(atom.d()) / HBAR;
    let delta = laser.omega_l() - atom.omega10();
    DrivenSystem {
        atom,
        laser,
        alignment,
        omega_rabi,
        delta,
        omega_dressed: delta.hypot(omega_rabi),
    }
}

/// Sodium D-line parameters used by the figure presets.
pub mod sodium {
    use std::f64::consts::PI;

    /// Transition dipole [C m].
    pub const DIPOLE: f64 = 3.71e-29;
    /// Transition frequency [rad/s].
    pub const OMEGA10: f64 = 3.24e15;
    /// Drive intensity, 5 W/cm² [W/m²].
    pub const INTENSITY: f64 = 5.0e4;
    /// Blue detuning, 2π × 100 MHz [rad/s].
    pub const DETUNING: f64 = 2.0 * PI * 1.0e8;
    /// Field parallel to the surface.
    pub const THETA: f64 = PI / 2.0;
    /// Static polarizability α/(4πε0) quoted for these parameters [m³].
    pub const STATIC_POLARIZABILITY_VOLUME: f64 = 24.11e-30;
    /// Quoted detuning-to-Rabi ratio.
    pub const DETUNING_OVER_RABI: f64 = 0.29;
    /// Quoted light-potential value [J]. Reported, never asserted.
    pub const QUOTED_LIGHT_POTENTIAL: f64 = -1.30e-27;
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn constants_are_consistent() {
        assert!((MU0 * EPS0 * C * C - 1.0).abs() < 1e-12);
    }

    #[test]
    fn zero_intensity_gives_zero_field() {
        assert_eq!(intensity_to_field(0.0).unwrap(), 0.0);
    }

    #[test]
    fn sodium_intensity_field() {
        // √(2 · 5e4 / (8.8541878128e-12 · 299792458)) = 6137.836...
        let e0 = intensity_to_field(5.0e4).unwrap();
        assert_relative_eq!(e0, 6137.836049, max_relative = 1e-9);
        assert_relative_eq!(field_to_intensity(e0), 5.0e4, max_relative = 1e-12);
    }

    #[test]
    fn negative_intensity_is_rejected() {
        assert!(matches!(intensity_to_field(-1.0), Err(Error::Domain(_))));
    }

    #[test]
    fn invalid_records_are_rejected() {
        assert!(AtomParams::new(0.0, 1.0).is_err());
        assert!(AtomParams::new(1.0, f64::NAN).is_err());
        assert!(LaserParams::new(1.0, -1.0, 0.0).is_err());
        assert!(LaserParams::new(1.0, 1.0, 2.0).is_err());
        assert!(LaserParams::new(0.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn undriven_system() {
        let atom = AtomParams::new(sodium::DIPOLE, sodium::OMEGA10).unwrap();
        let laser = LaserParams::new(sodium::OMEGA10 + 5.0e8, 0.0, 0.0).unwrap();
        let sys = build_driven_system(atom, laser, Alignment::Parallel);
        assert_eq!(sys.omega_rabi(), 0.0);
        assert_eq!(sys.delta(), laser.omega_l() - atom.omega10());
        assert_eq!(sys.omega_dressed(), sys.delta().abs());
        assert_eq!(sys.excitation_amplitude(), 0.0);
    }

    #[test]
    fn resonant_dressed_frequency_is_rabi() {
        let atom = AtomParams::new(sodium::DIPOLE, sodium::OMEGA10).unwrap();
        let laser = LaserParams::new(sodium::OMEGA10, 1.0e3, 0.0).unwrap();
        let sys = build_driven_system(atom, laser, Alignment::Isotropic);
        assert_eq!(sys.delta(), 0.0);
        assert_eq!(sys.omega_dressed(), sys.omega_rabi());
    }

    #[test]
    fn sodium_detuning_ratio() {
        let atom = AtomParams::new(sodium::DIPOLE, sodium::OMEGA10).unwrap();
        let laser = LaserParams::from_intensity(
            sodium::OMEGA10 + sodium::DETUNING,
            sodium::INTENSITY,
            sodium::THETA,
        )
        .unwrap();
        let sys = build_driven_system(atom, laser, Alignment::Parallel);
        let ratio = sys.delta() / sys.omega_rabi();
        assert!(
            (ratio / sodium::DETUNING_OVER_RABI - 1.0).abs() < 0.03,
            "ratio {ratio}"
        );
        let iso = build_driven_system(atom, laser, Alignment::Isotropic);
        assert_relative_eq!(
            iso.omega_rabi() * 3f64.sqrt(),
            sys.omega_rabi(),
            max_relative = 1e-15
        );
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn dressed_frequency_dominates(
                d in 1e-31f64..1e-27,
                w10 in 1e13f64..1e16,
                detune in -1e12f64..1e12,
                e0 in 0.0f64..1e7,
                theta in 0.0f64..std::f64::consts::FRAC_PI_2,
                iso in any::<bool>(),
            ) {
                let atom = AtomParams::new(d, w10).unwrap();
                prop_assume!(w10 + detune > 0.0);
                let laser = LaserParams::new(w10 + detune, e0, theta).unwrap();
                let align = if iso { Alignment::Isotropic } else { Alignment::Parallel };
                let sys = build_driven_system(atom, laser, align);
                prop_assert!(sys.omega_dressed() >= sys.delta().abs());
                prop_assert!(sys.omega_dressed() >= sys.omega_rabi());
                let w2 = sys.delta().powi(2) + sys.omega_rabi().powi(2);
                prop_assert!((sys.omega_dressed().powi(2) - w2).abs() <= 4.0 * f64::EPSILON * w2);
            }

            #[test]
            fn field_squared_is_linear_in_intensity(i1 in 0.0f64..1e9, i2 in 0.0f64..1e9) {
                let (e1, e2) = (intensity_to_field(i1).unwrap(), intensity_to_field(i2).unwrap());
                let e12 = intensity_to_field(i1 + i2).unwrap();
                prop_assert!((e12 * e12 - (e1 * e1 + e2 * e2)).abs() <= 1e-12 * (e12 * e12).max(1e-300));
                if i1 < i2 { prop_assert!(e1 <= e2); }
            }
        }
    }
}
