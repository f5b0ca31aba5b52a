//! Curve sets for the five figures.
//!
//! Distances run over [`FigureParams::z_min`]..[`FigureParams::z_max`] on a
//! log grid; Fig. 4 runs over two dressed periods `2π/√(Δ²+Ω²)` in time.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::params::{
    build_driven_system, sodium, Alignment, AtomParams, DrivenSystem, LaserParams,
};
use crate::polarizability::alpha_isotropic;
use crate::potentials::{
    population_weighted, u0_u1, u_cp_undriven_excited, u_lcp_bloch, u_lcp_bloch_resonant,
    u_lcp_perreault, u_lcp_perturbative, BlochMode, Convention, PotentialSample, Route, TimeSpec,
};
use crate::quadrature::QuadratureOptions;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FigureId {
    One = 1,
    Two = 2,
    Three = 3,
    Four = 4,
    Five = 5,
}

impl TryFrom<u8> for FigureId {
    type Error = Error;

    fn try_from(id: u8) -> Result<Self> {
        match id {
            1 => Ok(FigureId::One),
            2 => Ok(FigureId::Two),
            3 => Ok(FigureId::Three),
            4 => Ok(FigureId::Four),
            5 => Ok(FigureId::Five),
            other => Err(Error::UnknownFigure(other)),
        }
    }
}

impl FigureId {
    pub const ALL: [FigureId; 5] = [
        FigureId::One,
        FigureId::Two,
        FigureId::Three,
        FigureId::Four,
        FigureId::Five,
    ];

    pub fn number(self) -> u8 {
        self as u8
    }

    /// Number of curves the figure is drawn with.
    pub fn curve_count(self) -> usize {
        match self {
            FigureId::One | FigureId::Four => 2,
            FigureId::Two | FigureId::Three => 4,
            FigureId::Five => 3,
        }
    }

    /// Whether the curves are sampled in time rather than distance.
    pub fn is_time_series(self) -> bool {
        self == FigureId::Four
    }
}

/// Inputs shared by all figures. [`Default`] gives the sodium preset.
#[derive(Debug, Clone, PartialEq)]
pub struct FigureParams {
    pub atom: AtomParams,
    pub intensity: f64,
    /// Reference detuning Δ; figures scale it by their multipliers.
    pub detuning: f64,
    pub theta: f64,
    pub alignment: Alignment,
    pub z_min: f64,
    pub z_max: f64,
    pub z_count: usize,
    pub t_count: usize,
    /// End of the time grid; `None` means two dressed periods.
    pub t_max: Option<f64>,
    /// Distances of the time series.
    pub dynamics_z: Vec<f64>,
    pub bloch_mode: BlochMode,
    /// Time selection for Bloch curves over distance.
    pub time: TimeSpec,
    pub quadrature: QuadratureOptions,
}

impl Default for FigureParams {
    fn default() -> Self {
        Self {
            atom: AtomParams::new(sodium::DIPOLE, sodium::OMEGA10)
                .expect("sodium parameters are valid"),
            intensity: sodium::INTENSITY,
            detuning: sodium::DETUNING,
            theta: sodium::THETA,
            alignment: Alignment::Parallel,
            z_min: 3e-8,
            z_max: 3e-6,
            z_count: 400,
            t_count: 400,
            t_max: None,
            dynamics_z: vec![1e-7, 2e-7],
            bloch_mode: BlochMode::ResonantPrinted,
            time: TimeSpec::Averaged,
            quadrature: QuadratureOptions::default(),
        }
    }
}

impl FigureParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.z_min > 0.0 && self.z_min < self.z_max && self.z_max.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "z range must satisfy 0 < z_min < z_max, got [{:e}, {:e}]",
                self.z_min, self.z_max
            )));
        }
        if self.z_count < 2 || self.t_count < 2 {
            return Err(Error::InvalidParameter(
                "grid counts must be at least 2".into(),
            ));
        }
        if self.dynamics_z.is_empty()
            || self.dynamics_z.iter().any(|z| !(z.is_finite() && *z > 0.0))
        {
            return Err(Error::InvalidParameter(
                "dynamics distances must be positive".into(),
            ));
        }
        if let Some(t) = self.t_max {
            if !(t.is_finite() && t > 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "t_max must be positive, got {t:e}"
                )));
            }
        }
        if let TimeSpec::At(t) = self.time {
            if !(t.is_finite() && t >= 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "time must be non-negative, got {t:e}"
                )));
            }
        }
        self.system(1.0)?;
        Ok(())
    }

    /// Driven system at `multiplier × detuning`.
    pub fn system(&self, multiplier: f64) -> Result<DrivenSystem> {
        let omega_l = self.atom.omega10() + multiplier * self.detuning;
        let laser = LaserParams::from_intensity(omega_l, self.intensity, self.theta)?;
        Ok(build_driven_system(self.atom, laser, self.alignment))
    }

    pub fn z_grid(&self) -> Vec<f64> {
        log_grid(self.z_min, self.z_max, self.z_count)
    }

    /// `[0, t_max]`, by default `[0, 2·2π/W]` for the reference drive.
    pub fn t_grid(&self) -> Result<Vec<f64>> {
        let t_end = match self.t_max {
            Some(t) => t,
            None => {
                let w = self.system(1.0)?.omega_dressed();
                if w == 0.0 {
                    return Err(Error::InvalidParameter(
                        "t_max is required for an undriven resonant atom".into(),
                    ));
                }
                2.0 * 2.0 * PI / w
            }
        };
        let n = self.t_count;
        Ok((0..n).map(|k| t_end * k as f64 / (n - 1) as f64).collect())
    }
}

/// `n` log-spaced points with exact endpoints.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..n)
        .map(|k| match k {
            0 => lo,
            k if k == n - 1 => hi,
            k => (a + (b - a) * k as f64 / (n - 1) as f64).exp(),
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct PotentialCurve {
    pub label: String,
    pub route: Route,
    pub convention: Convention,
    pub description: String,
    pub samples: Vec<PotentialSample>,
}

/// Evaluates `eval` over `grid` in parallel, keeping grid order.
pub fn z_curve<F>(
    label: &str,
    route: Route,
    convention: Convention,
    description: String,
    grid: &[f64],
    t: Option<f64>,
    eval: F,
) -> Result<PotentialCurve>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    let samples = grid
        .par_iter()
        .map(|&z| {
            let value = eval(z).map_err(|e| e.at_distance(z))?;
            Ok(PotentialSample {
                z,
                t,
                value,
                route,
                convention,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PotentialCurve {
        label: label.to_string(),
        route,
        convention,
        description,
        samples,
    })
}

fn time_label(time: TimeSpec) -> String {
    match time {
        TimeSpec::Averaged => "time averaged".into(),
        TimeSpec::At(t) => format!("t = {t:e} s"),
    }
}

fn multiplier_label(m: f64) -> String {
    format!("{m}").replace('.', "p")
}

fn perturbative_curve(p: &FigureParams, multiplier: f64, grid: &[f64]) -> Result<PotentialCurve> {
    let sys = p.system(multiplier)?;
    let alpha = alpha_isotropic(sys.atom, sys.omega_l())?;
    z_curve(
        &format!("pert_x{}", multiplier_label(multiplier)),
        Route::Perturbative,
        Convention::FieldAligned,
        format!("perturbative, detuning {multiplier} x Delta"),
        grid,
        None,
        |z| u_lcp_perturbative(&sys, &alpha, z),
    )
}

fn bloch_curve(p: &FigureParams, multiplier: f64, grid: &[f64]) -> Result<PotentialCurve> {
    let sys = p.system(multiplier)?;
    z_curve(
        &format!("bloch_x{}", multiplier_label(multiplier)),
        Route::Bloch,
        Convention::XThird,
        format!(
            "Bloch ({}), {}, detuning {multiplier} x Delta",
            p.bloch_mode.as_str(),
            time_label(p.time)
        ),
        grid,
        p.time.time(),
        |z| u_lcp_bloch(&sys, z, p.time, p.bloch_mode, &p.quadrature),
    )
}

fn undriven_curve(p: &FigureParams, grid: &[f64]) -> Result<PotentialCurve> {
    z_curve(
        "undriven",
        Route::Undriven,
        Convention::XThird,
        "undriven excited atom".into(),
        grid,
        None,
        |z| u_cp_undriven_excited(p.atom, z),
    )
}

/// Bloch potential versus time at fixed `z`.
pub fn dynamics_curve(
    p: &FigureParams,
    sys: &DrivenSystem,
    z: f64,
    times: &[f64],
) -> Result<PotentialCurve> {
    let states = match p.bloch_mode {
        BlochMode::PopulationWeighted => {
            Some(u0_u1(sys.atom, sys.omega_l(), z, &p.quadrature).map_err(|e| e.at_distance(z))?)
        }
        BlochMode::ResonantPrinted => None,
    };
    let samples = times
        .par_iter()
        .map(|&t| {
            let value = match &states {
                Some(s) => population_weighted(sys, s, TimeSpec::At(t)),
                None => {
                    u_lcp_bloch_resonant(sys, z, TimeSpec::At(t)).map_err(|e| e.at_distance(z))?
                }
            };
            Ok(PotentialSample {
                z,
                t: Some(t),
                value,
                route: Route::Bloch,
                convention: Convention::XThird,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PotentialCurve {
        label: format!("bloch_z{z:e}"),
        route: Route::Bloch,
        convention: Convention::XThird,
        description: format!(
            "Bloch ({}) versus time at z = {z:e} m",
            p.bloch_mode.as_str()
        ),
        samples,
    })
}

/// Curves of one figure, in legend order.
pub fn figure_curves(id: FigureId, p: &FigureParams) -> Result<Vec<PotentialCurve>> {
    p.validate()?;
    let grid = p.z_grid();
    match id {
        FigureId::One => {
            let sys = p.system(1.0)?;
            let alpha = alpha_isotropic(sys.atom, sys.omega_l())?;
            let full = perturbative_curve(p, 1.0, &grid)?;
            let near = z_curve(
                "perreault",
                Route::Perreault,
                Convention::FieldAligned,
                "z^-3 term only".into(),
                &grid,
                None,
                |z| u_lcp_perreault(&sys, &alpha, z),
            )?;
            Ok(vec![full, near])
        }
        FigureId::Two => {
            let mut curves = [5.0, 2.0, 1.0]
                .iter()
                .map(|&m| perturbative_curve(p, m, &grid))
                .collect::<Result<Vec<_>>>()?;
            curves.push(undriven_curve(p, &grid)?);
            Ok(curves)
        }
        FigureId::Three => {
            let mut curves = [0.1, 10.0, 1.0]
                .iter()
                .map(|&m| bloch_curve(p, m, &grid))
                .collect::<Result<Vec<_>>>()?;
            curves.push(undriven_curve(p, &grid)?);
            Ok(curves)
        }
        FigureId::Four => {
            let sys = p.system(1.0)?;
            let times = p.t_grid()?;
            p.dynamics_z
                .iter()
                .map(|&z| dynamics_curve(p, &sys, z, &times))
                .collect()
        }
        FigureId::Five => Ok(vec![
            perturbative_curve(p, 1.0, &grid)?,
            bloch_curve(p, 1.0, &grid)?,
            undriven_curve(p, &grid)?,
        ]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::C;

    fn small() -> FigureParams {
        FigureParams {
            z_count: 60,
            t_count: 80,
            ..FigureParams::default()
        }
    }

    fn values(c: &PotentialCurve) -> Vec<f64> {
        c.samples.iter().map(|s| s.value).collect()
    }

    #[test]
    fn curve_counts_and_ids() {
        let p = small();
        for id in FigureId::ALL {
            let curves = figure_curves(id, &p).unwrap();
            assert_eq!(curves.len(), id.curve_count(), "figure {}", id.number());
            let n = if id.is_time_series() {
                p.t_count
            } else {
                p.z_count
            };
            assert!(curves.iter().all(|c| c.samples.len() == n));
        }
        assert!(matches!(
            FigureId::try_from(6),
            Err(Error::UnknownFigure(6))
        ));
        assert!(FigureId::try_from(0).is_err());
    }

    #[test]
    fn grid_endpoints() {
        let g = log_grid(3e-8, 3e-6, 400);
        assert_eq!(g.len(), 400);
        assert_eq!((g[0], g[399]), (3e-8, 3e-6));
        assert!(g.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn invalid_params() {
        let bad = FigureParams {
            z_min: 1e-6,
            z_max: 1e-7,
            ..small()
        };
        assert!(figure_curves(FigureId::One, &bad).is_err());
        let bad = FigureParams {
            z_count: 1,
            ..small()
        };
        assert!(figure_curves(FigureId::One, &bad).is_err());
    }

    #[test]
    fn fig1_agrees_close_and_departs_far() {
        let p = FigureParams {
            z_min: 1e-9,
            ..small()
        };
        let curves = figure_curves(FigureId::One, &p).unwrap();
        let (full, near) = (values(&curves[0]), values(&curves[1]));
        let r0 = near[0] / full[0];
        assert!((r0 - 1.0).abs() < 0.02);
        let wl = p.system(1.0).unwrap().omega_l();
        let far_dev = curves[0]
            .samples
            .iter()
            .zip(&near)
            .filter(|(s, _)| s.z * wl / C > 1.0)
            .map(|(s, n)| (n / s.value - 1.0).abs())
            .fold(0.0, f64::max);
        assert!(far_dev > 0.2);
    }

    #[test]
    fn fig2_closest_detuning_is_a_fixed_multiple_of_undriven() {
        let p = small();
        let curves = figure_curves(FigureId::Two, &p).unwrap();
        let sys = p.system(1.0).unwrap();
        // Same braces at θ = π/2; exact against the undriven form taken at ω_L.
        let alpha = alpha_isotropic(sys.atom, sys.omega_l()).unwrap().value.re;
        let exact = 1.5 * alpha.powi(2) * sys.laser.e0().powi(2) / sys.atom.d().powi(2);
        let shifted = sys.atom.with_omega10(sys.omega_l()).unwrap();
        for s in &curves[2].samples {
            let u = u_cp_undriven_excited(shifted, s.z).unwrap();
            assert!((s.value - exact * u).abs() <= 1e-10 * s.value.abs());
        }
        // Close to resonance the constant reduces to Ω²/(6Δ²) with Ω = E0 d/ħ.
        let expected = sys.omega_rabi().powi(2) / (6.0 * sys.delta().powi(2));
        assert!((exact / expected - 1.0).abs() < 1e-6);
        let mut ratios: Vec<f64> = values(&curves[2])
            .iter()
            .zip(values(&curves[3]))
            .map(|(a, b)| a / b)
            .collect();
        ratios.sort_by(f64::total_cmp);
        assert!((ratios[ratios.len() / 2] / expected - 1.0).abs() < 1e-4);
        // Larger detuning means weaker drive response.
        for k in 0..p.z_count {
            let v: Vec<f64> = (0..3).map(|i| curves[i].samples[k].value.abs()).collect();
            assert!(v[0] < v[1] && v[1] < v[2]);
        }
    }

    #[test]
    fn fig5_bloch_in_phase_and_below_half() {
        let p = small();
        let curves = figure_curves(FigureId::Five, &p).unwrap();
        let (bloch, undriven) = (values(&curves[1]), values(&curves[2]));
        for (b, u) in bloch.iter().zip(&undriven) {
            assert!(b.abs() <= 0.5 * u.abs());
            assert!(b * u >= 0.0);
        }
        assert_eq!(curves[0].convention, Convention::FieldAligned);
        assert_eq!(curves[1].convention, Convention::XThird);
    }

    #[test]
    fn fig4_oscillates_with_distance_dependent_amplitude() {
        let p = small();
        let curves = figure_curves(FigureId::Four, &p).unwrap();
        let amp = |c: &PotentialCurve| values(c).iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let (a, b) = (amp(&curves[0]), amp(&curves[1]));
        assert!(a > 2.0 * b, "{a:e} {b:e}");
        assert_eq!(curves[0].samples[0].z, 1e-7);
        assert_eq!(curves[0].samples[0].value, 0.0);
        assert!(curves[0].samples.iter().all(|s| s.t.is_some()));
    }

    #[test]
    fn population_mode_figures() {
        let p = FigureParams {
            bloch_mode: BlochMode::PopulationWeighted,
            z_count: 12,
            t_count: 20,
            ..FigureParams::default()
        };
        let five = figure_curves(FigureId::Five, &p).unwrap();
        assert!(five[1].samples.iter().all(|s| s.value.is_finite()));
        let four = figure_curves(FigureId::Four, &p).unwrap();
        assert_eq!(four.len(), 2);
    }
}
