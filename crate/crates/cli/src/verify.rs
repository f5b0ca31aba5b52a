//! Cross-route consistency checks run by `verify`.

use serde::Serialize;

use driven_cp_core::bloch::{bloch_analytic, bloch_ode_trajectory, dipole_bloch};
use driven_cp_core::figures::log_grid;
use driven_cp_core::greens::DipoleWeights;
use driven_cp_core::oracle::{ground_state_cp_literature, nonresonant_bruteforce};
use driven_cp_core::params::{sodium, C};
use driven_cp_core::polarizability::alpha_isotropic;
use driven_cp_core::potentials::{
    u0_u1, u_cp_undriven_excited, u_cp_undriven_nonretarded, u_cp_undriven_retarded,
    u_lcp_bloch_nonretarded, u_lcp_bloch_resonant, u_lcp_bloch_retarded, u_lcp_perturbative,
    u_lcp_perturbative_nonretarded, u_lcp_perturbative_retarded, u_lcp_perturbative_tensor,
    TimeSpec,
};
use driven_cp_core::quadrature::QuadratureOptions;
use driven_cp_core::{
    build_driven_system, Alignment, AtomParams, DrivenSystem, LaserParams, Result,
};

#[derive(Debug, Clone, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub passed: bool,
    /// Worst observed deviation.
    pub metric: f64,
    pub tolerance: f64,
    pub detail: String,
}

impl CheckRecord {
    fn new(name: &str, metric: f64, tolerance: f64, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed: metric <= tolerance,
            metric,
            tolerance,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Faults {
    /// Negate Ω in the system handed to the closed-form dipole.
    pub flip_rabi_sign: bool,
}

fn na_atom() -> AtomParams {
    AtomParams::new(sodium::DIPOLE, sodium::OMEGA10).expect("sodium parameters are valid")
}

/// Sodium drive with Δ = ratio · Ω (Ω from the parallel sodium drive).
fn ratio_system(ratio: f64, alignment: Alignment) -> Result<DrivenSystem> {
    let atom = na_atom();
    let probe = LaserParams::from_intensity(atom.omega10(), sodium::INTENSITY, sodium::THETA)?;
    let omega = build_driven_system(atom, probe, alignment).omega_rabi();
    let laser = LaserParams::new(atom.omega10() + ratio * omega, probe.e0(), sodium::THETA)?;
    Ok(build_driven_system(atom, laser, alignment))
}

fn na_system() -> Result<DrivenSystem> {
    let atom = na_atom();
    let laser = LaserParams::from_intensity(
        atom.omega10() + sodium::DETUNING,
        sodium::INTENSITY,
        sodium::THETA,
    )?;
    Ok(build_driven_system(atom, laser, Alignment::Parallel))
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn ode_vs_analytic(faults: Faults) -> Result<Vec<CheckRecord>> {
    let mut pop_err = 0.0f64;
    let mut dipole_err = 0.0f64;
    let mut norm_err = 0.0f64;
    for ratio in [0.0, 0.29, 1.0, 5.0, 20.0] {
        let sys = ratio_system(ratio, Alignment::Parallel)?;
        let closed = if faults.flip_rabi_sign {
            sys.with_flipped_rabi_sign()
        } else {
            sys
        };
        let t_end = 5.0 * 2.0 * std::f64::consts::PI / sys.omega_dressed();
        let dt = 2e-3 / sys.omega_dressed();
        for s in bloch_ode_trajectory(&sys, t_end, dt, 50)? {
            let a = bloch_analytic(&sys, s.t);
            let rot = (s.rotating_a10(sys.omega_l()) - a.rotating_a10(sys.omega_l())).norm();
            pop_err = pop_err
                .max((s.p0 - a.p0).abs())
                .max((s.p1 - a.p1).abs())
                .max(rot);
            let d_ode = s.dipole_factor() * sys.atom.d();
            dipole_err = dipole_err.max((dipole_bloch(&closed, s.t) - d_ode).abs() / sys.atom.d());
        }
        for k in 0..10_000 {
            let a = bloch_analytic(&sys, t_end * k as f64 / 9_999.0);
            norm_err = norm_err.max((a.p0 + a.p1 - 1.0).abs());
        }
    }
    Ok(vec![
        CheckRecord::new(
            "bloch_ode_vs_analytic",
            pop_err,
            1e-8,
            "max abs error over 5 dressed periods, Delta/Omega in {0, 0.29, 1, 5, 20}",
        ),
        CheckRecord::new(
            "population_normalization",
            norm_err,
            1e-12,
            "|p0 + p1 - 1| at 1e4 times",
        ),
        CheckRecord::new(
            "dipole_phase",
            dipole_err,
            1e-6,
            "closed-form dipole vs ODE coherences, relative to d",
        ),
    ])
}

fn quadrature_vs_bruteforce() -> Result<Vec<CheckRecord>> {
    let atom = na_atom();
    let opts = QuadratureOptions::default();
    let mut worst = 0.0f64;
    let mut worst_lit = 0.0f64;
    for z in log_grid(1e-8, 1e-5, 5) {
        let q = u0_u1(atom, atom.omega10(), z, &opts)?.u0;
        let brute =
            nonresonant_bruteforce(z, atom.omega10(), atom.d(), DipoleWeights::X_THIRD, 200_000);
        worst = worst.max(rel(q, brute));
        let lit = ground_state_cp_literature(
            z,
            atom.omega10(),
            atom.d(),
            DipoleWeights::X_THIRD,
            200_000,
        );
        worst_lit = worst_lit.max(rel(q, lit));
    }
    Ok(vec![
        CheckRecord::new(
            "quadrature_vs_bruteforce",
            worst,
            1e-6,
            "U0 vs log-grid sum at 5 distances",
        ),
        CheckRecord::new(
            "ground_state_literature_form",
            worst_lit,
            1e-6,
            "U0 at omega_L = omega10 vs textbook ground-state integral",
        ),
    ])
}

fn limits() -> Result<Vec<CheckRecord>> {
    let sys = na_system()?;
    let alpha = alpha_isotropic(sys.atom, sys.omega_l())?;
    let atom = sys.atom;
    let (wl, w10) = (sys.omega_l(), atom.omega10());

    let z = 1e-3 * C / wl;
    let nr = [
        rel(
            u_lcp_perturbative(&sys, &alpha, z)?,
            u_lcp_perturbative_nonretarded(&sys, &alpha, z)?,
        ),
        rel(
            u_cp_undriven_excited(atom, 1e-3 * C / w10)?,
            u_cp_undriven_nonretarded(atom, 1e-3 * C / w10)?,
        ),
        rel(
            u_lcp_bloch_resonant(&sys, z, TimeSpec::Averaged)?,
            u_lcp_bloch_nonretarded(&sys, z)?,
        ),
    ];

    // Distance from the 1/z term, relative to its envelope.
    let envelope = |full: f64, far: f64, phase: f64| (full - far).abs() / (far / phase.cos()).abs();
    let z = 1e2 * C / wl;
    let phase = 2.0 * wl * z / C;
    let z10 = 1e2 * C / w10;
    let phase10 = 2.0 * w10 * z10 / C;
    let r = [
        envelope(
            u_lcp_perturbative(&sys, &alpha, z)?,
            u_lcp_perturbative_retarded(&sys, &alpha, z)?,
            phase,
        ),
        envelope(
            u_cp_undriven_excited(atom, z10)?,
            u_cp_undriven_retarded(atom, z10)?,
            phase10,
        ),
        envelope(
            u_lcp_bloch_resonant(&sys, z, TimeSpec::Averaged)?,
            u_lcp_bloch_retarded(&sys, z)?,
            phase,
        ),
    ];
    let max = |v: [f64; 3]| v.into_iter().fold(0.0, f64::max);
    Ok(vec![
        CheckRecord::new(
            "nonretarded_limits",
            max(nr),
            5e-3,
            format!("relative deviation at omega z/c = 1e-3 (pert, undriven, bloch) = {nr:?}"),
        ),
        CheckRecord::new(
            "retarded_limits",
            max(r),
            1e-2,
            format!(
                "deviation over 1/z envelope at omega z/c = 1e2 (pert, undriven, bloch) = {r:?}"
            ),
        ),
    ])
}

fn saturation() -> Result<Vec<CheckRecord>> {
    // Ω/Δ = 100 close to resonance.
    let sys = ratio_system(0.01, Alignment::Parallel)?;
    let undriven_at_wl = sys.atom.with_omega10(sys.omega_l())?;
    let mut half = 0.0f64;
    for z in log_grid(3e-8, 3e-6, 10) {
        let b = u_lcp_bloch_resonant(&sys, z, TimeSpec::Averaged)?;
        half = half.max(rel(b, 0.5 * u_cp_undriven_excited(undriven_at_wl, z)?));
    }
    let mut excess = 0.0f64;
    for ratio in [0.0, 0.29, 1.0, 10.0] {
        let sys = ratio_system(ratio, Alignment::Parallel)?;
        let reference = sys.atom.with_omega10(sys.omega_l())?;
        let period = 2.0 * std::f64::consts::PI / sys.omega_dressed();
        for z in log_grid(3e-8, 3e-6, 25) {
            let u = u_cp_undriven_excited(reference, z)?.abs();
            for k in 0..40 {
                let t = period * k as f64 / 40.0;
                let b = u_lcp_bloch_resonant(&sys, z, TimeSpec::At(t))?.abs();
                excess = excess.max((b - u) / u);
            }
        }
    }
    Ok(vec![
        CheckRecord::new(
            "saturation_half",
            half,
            1e-3,
            "averaged Bloch vs half undriven, Omega/Delta = 100",
        ),
        CheckRecord::new(
            "saturation_bound",
            excess.max(0.0),
            1e-12,
            "|Bloch| <= |undriven| on a (z, t) grid",
        ),
    ])
}

fn tensor_consistency() -> Result<Vec<CheckRecord>> {
    let mut worst = 0.0f64;
    for (i, z) in log_grid(1e-9, 1e-5, 25).into_iter().enumerate() {
        let theta = std::f64::consts::FRAC_PI_2 * i as f64 / 24.0;
        let atom = na_atom();
        let laser = LaserParams::from_intensity(
            atom.omega10() + sodium::DETUNING,
            sodium::INTENSITY,
            theta,
        )?;
        let sys = build_driven_system(atom, laser, Alignment::Parallel);
        let alpha = alpha_isotropic(atom, sys.omega_l())?;
        worst = worst.max(rel(
            u_lcp_perturbative(&sys, &alpha, z)?,
            u_lcp_perturbative_tensor(&sys, &alpha, z)?,
        ));
    }
    Ok(vec![CheckRecord::new(
        "perturbative_tensor_form",
        worst,
        1e-12,
        "closed form vs Green's tensor contraction",
    )])
}

/// Runs every check. Numerical failures inside a check are reported as
/// errors rather than failed records.
pub fn run_all(faults: Faults) -> Result<Vec<CheckRecord>> {
    let mut out = ode_vs_analytic(faults)?;
    out.extend(quadrature_vs_bruteforce()?);
    out.extend(limits()?);
    out.extend(saturation()?);
    out.extend(tensor_consistency()?);
    Ok(out)
}

pub fn render_text(records: &[CheckRecord]) -> String {
    records
        .iter()
        .map(|r| {
            format!(
                "{} {} metric={:.3e} tol={:.1e} ({})\n",
                if r.passed { "PASS" } else { "FAIL" },
                r.name,
                r.metric,
                r.tolerance,
                r.detail
            )
        })
        .collect()
}
