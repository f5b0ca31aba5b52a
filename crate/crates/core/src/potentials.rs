//! Potentials of the driven atom in front of the mirror.
//!
//! Conventions differ between formulas and are recorded on every sample:
//!
//! * perturbative potentials contract the field `E0 (sin θ, 0, cos θ)` with an
//!   isotropic scalar polarizability ([`Convention::FieldAligned`]);
//! * undriven and Bloch-route potentials use a dipole along x carrying
//!   `d_x² = d²/3` ([`Convention::XThird`]);
//! * the light potential uses the isotropic `d²/3` average
//!   ([`Convention::Isotropic`]).
//!
//! With `b = c/(ωz)` and `φ = 2ωz/c`, every resonant closed form is built from
//! `b³ cos φ`, `2b² sin φ` and `−4b cos φ`.

use std::f64::consts::PI;

use crate::bloch::{bloch_analytic, mean_excited_population};
use crate::error::{require_distance, Error, Result};
use crate::greens::{re_greens_contracted, DipoleWeights};
use crate::params::{AtomParams, DrivenSystem, C, EPS0, HBAR, MU0};
use crate::polarizability::Polarizability;
use crate::quadrature::{integrate_nonresonant, QuadratureOptions, QuadratureResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Route {
    Perturbative,
    Bloch,
    Undriven,
    Perreault,
    LightForce,
    RetardedLimit,
    NonretardedLimit,
    U0,
    U1,
}

impl Route {
    pub fn as_str(self) -> &'static str {
        match self {
            Route::Perturbative => "pert",
            Route::Bloch => "bloch",
            Route::Undriven => "undriven",
            Route::Perreault => "perreault",
            Route::LightForce => "light",
            Route::RetardedLimit => "retarded",
            Route::NonretardedLimit => "nonretarded",
            Route::U0 => "u0",
            Route::U1 => "u1",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Convention {
    /// Field along `(sin θ, 0, cos θ)`, isotropic scalar polarizability.
    FieldAligned,
    /// Dipole along x with `d_x² = d²/3`.
    XThird,
    /// Orientation average `d²/3`, no surface.
    Isotropic,
}

impl Convention {
    pub fn as_str(self) -> &'static str {
        match self {
            Convention::FieldAligned => "field_aligned",
            Convention::XThird => "x_third",
            Convention::Isotropic => "isotropic",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialSample {
    pub z: f64,
    /// `None` for time-averaged values.
    pub t: Option<f64>,
    pub value: f64,
    pub route: Route,
    pub convention: Convention,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TimeSpec {
    Averaged,
    At(f64),
}

impl TimeSpec {
    pub fn time(self) -> Option<f64> {
        match self {
            TimeSpec::Averaged => None,
            TimeSpec::At(t) => Some(t),
        }
    }
}

/// How the Bloch-route potential is assembled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlochMode {
    /// Closed resonant form with its `sin²(2√(Δ²+Ω²) t)` time factor.
    ResonantPrinted,
    /// `p₀(t) U₀ + p₁(t) U₁` from the analytic populations.
    PopulationWeighted,
}

impl BlochMode {
    pub fn as_str(self) -> &'static str {
        match self {
            BlochMode::ResonantPrinted => "resonant",
            BlochMode::PopulationWeighted => "population",
        }
    }
}

impl std::str::FromStr for BlochMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "resonant" => Ok(BlochMode::ResonantPrinted),
            "population" => Ok(BlochMode::PopulationWeighted),
            other => Err(Error::InvalidParameter(format!(
                "unknown Bloch mode '{other}'"
            ))),
        }
    }
}

/// The three retardation terms `(b³ cos φ, 2b² sin φ, −4b cos φ)`.
fn retardation_terms(omega: f64, z: f64) -> (f64, f64, f64) {
    let b = C / (omega * z);
    let (sin, cos) = (2.0 * omega * z / C).sin_cos();
    (b * b * b * cos, 2.0 * b * b * sin, -4.0 * b * cos)
}

/// `−μ0ω³d²/(96πc){…}` evaluated at frequency `omega`.
fn x_third_resonant(d: f64, omega: f64, z: f64) -> f64 {
    let (near, mid, far) = retardation_terms(omega, z);
    -MU0 * omega.powi(3) * d * d / (96.0 * PI * C) * (near + mid + far)
}

fn require_nonzero_detuning(sys: &DrivenSystem) -> Result<()> {
    if sys.delta() == 0.0 {
        Err(Error::Pole(
            "light potential diverges at zero detuning".into(),
        ))
    } else {
        Ok(())
    }
}

/// Free-field light potential `d²E0²/(12ħΔ)`, time averaged, isotropic atom.
pub fn u_light(sys: &DrivenSystem) -> Result<f64> {
    require_nonzero_detuning(sys)?;
    let (d, e0) = (sys.atom.d(), sys.laser.e0());
    Ok(d * d * e0 * e0 / (12.0 * HBAR * sys.delta()))
}

/// Bloch-route light potential `½ (E·d) ΔΩ/(Δ²+Ω²) sin²(½√(Δ²+Ω²) t)`,
/// with `E·d = ħΩ`. Averaging replaces `sin²` by ½.
pub fn u_light_bloch(sys: &DrivenSystem, time: TimeSpec) -> f64 {
    let w = sys.omega_dressed();
    if w == 0.0 {
        return 0.0;
    }
    let omega = sys.omega_rabi();
    let field_dot_dipole = HBAR * omega;
    let s2 = match time {
        TimeSpec::Averaged => 0.5,
        TimeSpec::At(t) => (0.5 * w * t).sin().powi(2),
    };
    0.5 * field_dot_dipole * sys.delta() * omega / (w * w) * s2
}

/// Perturbative driven potential from the braced closed form
/// `−μ0ω_L³α²E0²/(64πc){(1+cos²θ)b³cos φ + 2(1+cos²θ)b² sin φ − 4 sin²θ b cos φ}`.
pub fn u_lcp_perturbative(sys: &DrivenSystem, alpha: &Polarizability, z: f64) -> Result<f64> {
    require_distance(z)?;
    let a = alpha.real_value()?;
    let (wl, e0, theta) = (sys.omega_l(), sys.laser.e0(), sys.laser.theta());
    let cos2 = theta.cos().powi(2);
    let sin2 = theta.sin().powi(2);
    let (near, mid, far) = retardation_terms(wl, z);
    let braces = (1.0 + cos2) * near + (1.0 + cos2) * mid + sin2 * far;
    Ok(-MU0 * wl.powi(3) * a * a * e0 * e0 / (64.0 * PI * C) * braces)
}

/// Same potential as the tensor contraction `−½μ0ω_L² E·α·Re G(ω_L)·α·E`.
pub fn u_lcp_perturbative_tensor(
    sys: &DrivenSystem,
    alpha: &Polarizability,
    z: f64,
) -> Result<f64> {
    require_distance(z)?;
    let a = alpha.real_value()?;
    let (wl, e0) = (sys.omega_l(), sys.laser.e0());
    let weights = DipoleWeights::field_direction(sys.laser.theta());
    let re_g = re_greens_contracted(z, wl, weights)?;
    Ok(-0.5 * MU0 * wl * wl * a * a * e0 * e0 * re_g)
}

/// `−μ0α²E0²c²/(64πz³)(1+cos²θ)`.
pub fn u_lcp_perturbative_nonretarded(
    sys: &DrivenSystem,
    alpha: &Polarizability,
    z: f64,
) -> Result<f64> {
    require_distance(z)?;
    let a = alpha.real_value()?;
    let e0 = sys.laser.e0();
    let cos2 = sys.laser.theta().cos().powi(2);
    Ok(-MU0 * a * a * e0 * e0 * C * C / (64.0 * PI * z.powi(3)) * (1.0 + cos2))
}

/// `μ0ω_L²α²E0²/(16πz) sin²θ cos(2ω_L z/c)`.
pub fn u_lcp_perturbative_retarded(
    sys: &DrivenSystem,
    alpha: &Polarizability,
    z: f64,
) -> Result<f64> {
    require_distance(z)?;
    let a = alpha.real_value()?;
    let (wl, e0) = (sys.omega_l(), sys.laser.e0());
    let sin2 = sys.laser.theta().sin().powi(2);
    Ok(MU0 * wl * wl * a * a * e0 * e0 / (16.0 * PI * z) * sin2 * (2.0 * wl * z / C).cos())
}

/// Image-dipole form with only the `z⁻³` term:
/// `−α²E0²/(64πε0z³)(1+cos²θ) cos(2ω_L z/c)`.
pub fn u_lcp_perreault(sys: &DrivenSystem, alpha: &Polarizability, z: f64) -> Result<f64> {
    require_distance(z)?;
    let a = alpha.real_value()?;
    let (wl, e0) = (sys.omega_l(), sys.laser.e0());
    let cos2 = sys.laser.theta().cos().powi(2);
    Ok(-a * a * e0 * e0 / (64.0 * PI * EPS0 * z.powi(3)) * (1.0 + cos2) * (2.0 * wl * z / C).cos())
}

/// Excited-state potential of the undriven atom,
/// `−μ0ω̃₁₀³d²/(96πc){b³cos φ + 2b² sin φ − 4b cos φ}`.
pub fn u_cp_undriven_excited(atom: AtomParams, z: f64) -> Result<f64> {
    require_distance(z)?;
    Ok(x_third_resonant(atom.d(), atom.omega10(), z))
}

/// `−μ0d²c²/(96πz³)`.
pub fn u_cp_undriven_nonretarded(atom: AtomParams, z: f64) -> Result<f64> {
    require_distance(z)?;
    let d = atom.d();
    Ok(-MU0 * d * d * C * C / (96.0 * PI * z.powi(3)))
}

/// `μ0ω̃₁₀²d²/(24πz) cos(2ω̃₁₀z/c)`.
pub fn u_cp_undriven_retarded(atom: AtomParams, z: f64) -> Result<f64> {
    require_distance(z)?;
    let (d, w) = (atom.d(), atom.omega10());
    Ok(MU0 * w * w * d * d / (24.0 * PI * z) * (2.0 * w * z / C).cos())
}

/// Ground- and excited-state potentials entering the Bloch route.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StatePotentials {
    pub u0: f64,
    pub u1: f64,
    /// `μ0ω_L² d·Re G(ω_L)·d`, so that `U₁ = −U₀ − resonant`.
    pub resonant: f64,
    pub quadrature: QuadratureResult,
}

/// `U₀ = (μ0/π)∫ dξ ω_Lξ²/(ξ²+ω_L²) d·G(iξ)·d` and
/// `U₁ = −U₀ − μ0ω_L² d·Re G(ω_L)·d`, with `d_x² = d²/3`.
pub fn u0_u1(
    atom: AtomParams,
    omega_l: f64,
    z: f64,
    opts: &QuadratureOptions,
) -> Result<StatePotentials> {
    require_distance(z)?;
    let d = atom.d();
    let quadrature = integrate_nonresonant(z, omega_l, d, DipoleWeights::X_THIRD, opts)?;
    let resonant =
        MU0 * omega_l * omega_l * d * d * re_greens_contracted(z, omega_l, DipoleWeights::X_THIRD)?;
    let u0 = quadrature.value;
    Ok(StatePotentials {
        u0,
        u1: -u0 - resonant,
        resonant,
        quadrature,
    })
}

/// Resonant Bloch-route potential
/// `−μ0ω_L³d²/(96πc) Ω²/(Δ²+Ω²) sin²(2√(Δ²+Ω²) t){…}`; averaging replaces
/// `sin²` by ½.
pub fn u_lcp_bloch_resonant(sys: &DrivenSystem, z: f64, time: TimeSpec) -> Result<f64> {
    require_distance(z)?;
    let factor = match time {
        TimeSpec::Averaged => 0.5,
        TimeSpec::At(t) => (2.0 * sys.omega_dressed() * t).sin().powi(2),
    };
    Ok(sys.excitation_amplitude() * factor * x_third_resonant(sys.atom.d(), sys.omega_l(), z))
}

/// Bloch-route driven potential in either assembly mode.
pub fn u_lcp_bloch(
    sys: &DrivenSystem,
    z: f64,
    time: TimeSpec,
    mode: BlochMode,
    opts: &QuadratureOptions,
) -> Result<f64> {
    match mode {
        BlochMode::ResonantPrinted => u_lcp_bloch_resonant(sys, z, time),
        BlochMode::PopulationWeighted => {
            let states = u0_u1(sys.atom, sys.omega_l(), z, opts)?;
            Ok(population_weighted(sys, &states, time))
        }
    }
}

/// `p₀ U₀ + p₁ U₁` for precomputed state potentials.
pub fn population_weighted(sys: &DrivenSystem, states: &StatePotentials, time: TimeSpec) -> f64 {
    let (p0, p1) = match time {
        TimeSpec::Averaged => {
            let p1 = mean_excited_population(sys);
            (1.0 - p1, p1)
        }
        TimeSpec::At(t) => {
            let s = bloch_analytic(sys, t);
            (s.p0, s.p1)
        }
    };
    p0 * states.u0 + p1 * states.u1
}

/// Averaged nonretarded limit `−μ0d²c²/(192πz³) Ω²/(Δ²+Ω²)`.
pub fn u_lcp_bloch_nonretarded(sys: &DrivenSystem, z: f64) -> Result<f64> {
    require_distance(z)?;
    let d = sys.atom.d();
    Ok(-MU0 * d * d * C * C / (192.0 * PI * z.powi(3)) * sys.excitation_amplitude())
}

/// Averaged retarded limit `μ0ω_L²d²/(48πz) Ω²/(Δ²+Ω²) cos(2ω_L z/c)`.
pub fn u_lcp_bloch_retarded(sys: &DrivenSystem, z: f64) -> Result<f64> {
    require_distance(z)?;
    let (d, wl) = (sys.atom.d(), sys.omega_l());
    Ok(MU0 * wl * wl * d * d / (48.0 * PI * z)
        * sys.excitation_amplitude()
        * (2.0 * wl * z / C).cos())
}
