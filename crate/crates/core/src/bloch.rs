//! Undamped optical Bloch equations of the driven two-level atom in the
//! rotating-wave approximation.
//!
//! The atom starts in the ground state. [`bloch_analytic`] evaluates the
//! closed-form solution; [`bloch_ode_oracle`] integrates the rotating-frame
//! equations with fixed-step RK4 and serves as an independent check.
//!
//! Rotating-frame system, with `ã₁₀ = e^{−iω_L t} a₁₀`, `ã₀₁ = e^{iω_L t} a₀₁`:
//!
//! ```text
//! dã₁₀/dt = −iΔ ã₁₀ + ½iΩ (p₁ − p₀)
//! dã₀₁/dt =  iΔ ã₀₁ − ½iΩ (p₁ − p₀)
//! dp₁/dt  =  ½iΩ (ã₁₀ − ã₀₁)
//! dp₀/dt  = −½iΩ (ã₁₀ − ã₀₁)
//! ```

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::params::DrivenSystem;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochState {
    pub t: f64,
    /// Ground-state population.
    pub p0: f64,
    /// Excited-state population.
    pub p1: f64,
    /// `⟨Â₁₀(t)⟩` in the lab frame.
    pub a10: Complex64,
    /// `⟨Â₀₁(t)⟩` in the lab frame.
    pub a01: Complex64,
}

impl BlochState {
    pub fn ground(t: f64) -> Self {
        let zero = Complex64::new(0.0, 0.0);
        Self {
            t,
            p0: 1.0,
            p1: 0.0,
            a10: zero,
            a01: zero,
        }
    }

    /// `⟨d̂⟩ / d = a₁₀ + a₀₁`, real for a consistent state.
    pub fn dipole_factor(&self) -> f64 {
        (self.a10 + self.a01).re
    }

    /// Coherence in the frame rotating with the laser.
    pub fn rotating_a10(&self, omega_l: f64) -> Complex64 {
        self.a10 * Complex64::from_polar(1.0, -omega_l * self.t)
    }
}

/// `(sin²(½Wt), sin(Wt))` for the dressed frequency `W`.
fn dressed_factors(sys: &DrivenSystem, t: f64) -> (f64, f64) {
    let w = sys.omega_dressed();
    let half = (0.5 * w * t).sin();
    (half * half, (w * t).sin())
}

/// Closed-form populations and coherences at time `t ≥ 0`.
pub fn bloch_analytic(sys: &DrivenSystem, t: f64) -> BlochState {
    let omega = sys.omega_rabi();
    if omega == 0.0 {
        return BlochState::ground(t);
    }
    let w = sys.omega_dressed();
    let delta = sys.delta();
    let amplitude = omega * omega / (w * w);
    let (s2, s1) = dressed_factors(sys, t);

    let p1 = amplitude * s2;
    let p0 = amplitude * (1.0 - s2) + delta * delta / (w * w);

    let rotating = Complex64::new(-omega * delta / (w * w) * s2, -omega / (2.0 * w) * s1);
    let phase = Complex64::from_polar(1.0, sys.omega_l() * t);
    let a10 = rotating * phase;

    BlochState {
        t,
        p0,
        p1,
        a10,
        a01: a10.conj(),
    }
}

/// `⟨d̂(t)⟩` projected on the dipole direction [C m].
pub fn dipole_bloch(sys: &DrivenSystem, t: f64) -> f64 {
    let omega = sys.omega_rabi();
    if omega == 0.0 {
        return 0.0;
    }
    let w = sys.omega_dressed();
    let delta = sys.delta();
    let (s2, s1) = dressed_factors(sys, t);
    let (sin_l, cos_l) = (sys.omega_l() * t).sin_cos();
    let factor = -2.0 * omega * delta / (w * w) * s2 * cos_l + omega / w * s1 * sin_l;
    factor * sys.atom.d()
}

/// Amplitude factors of `⟨Â₁₀(t)Â₀₁(τ)⟩` and `⟨Â₀₁(t)Â₁₀(τ)⟩` with the
/// `e^{±iω_L(t−τ)}` phase stripped. They coincide with `(p₁(t), p₀(t))`.
pub fn correlation_functions(sys: &DrivenSystem, t: f64) -> (f64, f64) {
    let amplitude = sys.excitation_amplitude();
    if amplitude == 0.0 {
        return (0.0, 1.0);
    }
    let w = sys.omega_dressed();
    let (s2, _) = dressed_factors(sys, t);
    let c_eg = amplitude * s2;
    let c_ge = sys.delta() * sys.delta() / (w * w) + amplitude * (1.0 - s2);
    (c_eg, c_ge)
}

/// Time-averaged excited population `½ Ω²/(Δ²+Ω²)`.
pub fn mean_excited_population(sys: &DrivenSystem) -> f64 {
    0.5 * sys.excitation_amplitude()
}

/// Largest step accepted by the ODE oracle.
pub fn max_oracle_step(sys: &DrivenSystem) -> f64 {
    let w = sys.omega_dressed();
    if w == 0.0 {
        f64::INFINITY
    } else {
        0.01 / w
    }
}

/// Rotating-frame state `[ã₁₀, ã₀₁, p₁, p₀]`.
type Rotating = [Complex64; 4];

fn rhs(delta: f64, omega: f64, y: &Rotating) -> Rotating {
    let i = Complex64::i();
    let inversion = y[2] - y[3];
    let coherence = y[0] - y[1];
    [
        -i * delta * y[0] + 0.5 * i * omega * inversion,
        i * delta * y[1] - 0.5 * i * omega * inversion,
        0.5 * i * omega * coherence,
        -0.5 * i * omega * coherence,
    ]
}

fn axpy(y: &Rotating, h: f64, k: &Rotating) -> Rotating {
    [
        y[0] + h * k[0],
        y[1] + h * k[1],
        y[2] + h * k[2],
        y[3] + h * k[3],
    ]
}

fn rk4_step(delta: f64, omega: f64, y: &Rotating, h: f64) -> Rotating {
    let k1 = rhs(delta, omega, y);
    let k2 = rhs(delta, omega, &axpy(y, 0.5 * h, &k1));
    let k3 = rhs(delta, omega, &axpy(y, 0.5 * h, &k2));
    let k4 = rhs(delta, omega, &axpy(y, h, &k3));
    let mut out = *y;
    for j in 0..4 {
        out[j] += h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
    }
    out
}

fn to_lab(y: &Rotating, omega_l: f64, t: f64) -> BlochState {
    let phase = Complex64::from_polar(1.0, omega_l * t);
    BlochState {
        t,
        p0: y[3].re,
        p1: y[2].re,
        a10: y[0] * phase,
        a01: y[1] * phase.conj(),
    }
}

/// Fixed-step RK4 trajectory on `[0, t_end]`, recording every
/// `record_every`-th step (and always the final one). The effective step is
/// `t_end / ceil(t_end / dt)`, never larger than `dt`.
pub fn bloch_ode_trajectory(
    sys: &DrivenSystem,
    t_end: f64,
    dt: f64,
    record_every: usize,
) -> Result<Vec<BlochState>> {
    if !(t_end.is_finite() && t_end >= 0.0) {
        return Err(Error::Domain(format!(
            "end time must be non-negative, got {t_end:e}"
        )));
    }
    let limit = max_oracle_step(sys);
    if dt.is_nan() || dt <= 0.0 || dt > limit {
        return Err(Error::Resolution { dt, limit });
    }
    let steps = (t_end / dt).ceil().max(1.0) as usize;
    let h = t_end / steps as f64;
    let record_every = record_every.max(1);

    let zero = Complex64::new(0.0, 0.0);
    let mut y: Rotating = [zero, zero, zero, Complex64::new(1.0, 0.0)];
    let (delta, omega, omega_l) = (sys.delta(), sys.omega_rabi(), sys.omega_l());

    let mut out = Vec::with_capacity(steps / record_every + 2);
    out.push(to_lab(&y, omega_l, 0.0));
    for n in 1..=steps {
        y = rk4_step(delta, omega, &y, h);
        if n % record_every == 0 || n == steps {
            out.push(to_lab(&y, omega_l, n as f64 * h));
        }
    }
    Ok(out)
}

/// RK4 state at `t_end`.
pub fn bloch_ode_oracle(sys: &DrivenSystem, t_end: f64, dt: f64) -> Result<BlochState> {
    let traj = bloch_ode_trajectory(sys, t_end, dt, usize::MAX)?;
    Ok(*traj
        .last()
        .expect("trajectory holds at least the initial state"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::{build_driven_system, sodium, Alignment, AtomParams, LaserParams};
    use std::f64::consts::PI;

    /// System with Ω fixed by the sodium drive and Δ = ratio · Ω.
    fn system(ratio: f64) -> DrivenSystem {
        let atom = AtomParams::new(sodium::DIPOLE, sodium::OMEGA10).unwrap();
        let probe =
            LaserParams::from_intensity(sodium::OMEGA10, sodium::INTENSITY, sodium::THETA).unwrap();
        let omega = build_driven_system(atom, probe, Alignment::Parallel).omega_rabi();
        let laser =
            LaserParams::new(sodium::OMEGA10 + ratio * omega, probe.e0(), sodium::THETA).unwrap();
        build_driven_system(atom, laser, Alignment::Parallel)
    }

    fn max_state_error(a: &BlochState, b: &BlochState) -> f64 {
        [
            (a.p0 - b.p0).abs(),
            (a.p1 - b.p1).abs(),
            (a.a10 - b.a10).norm(),
            (a.a01 - b.a01).norm(),
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }

    #[test]
    fn starts_in_ground_state() {
        let s = bloch_analytic(&system(0.29), 0.0);
        assert_eq!((s.p0, s.p1), (1.0, 0.0));
        assert_eq!(s.a10.norm(), 0.0);
        assert_eq!(s.a01.norm(), 0.0);
    }

    #[test]
    fn resonant_pi_pulse_inverts() {
        let sys = system(0.0);
        let s = bloch_analytic(&sys, PI / sys.omega_rabi());
        assert!((s.p1 - 1.0).abs() < 1e-15 && s.p0.abs() < 1e-15);
    }

    #[test]
    fn analytic_matches_oracle_at_generic_point() {
        let sys = system(0.7);
        let t = 3.3 / sys.omega_rabi();
        let oracle = bloch_ode_oracle(&sys, t, 0.002 / sys.omega_dressed()).unwrap();
        let exact = bloch_analytic(&sys, t);
        assert!(max_state_error(&oracle, &exact) < 1e-8);
    }

    #[test]
    fn oracle_without_drive_stays_in_ground_state() {
        let atom = AtomParams::new(sodium::DIPOLE, sodium::OMEGA10).unwrap();
        let laser = LaserParams::new(sodium::OMEGA10 + sodium::DETUNING, 0.0, 0.0).unwrap();
        let sys = build_driven_system(atom, laser, Alignment::Parallel);
        let traj = bloch_ode_trajectory(&sys, 1e-7, 0.005 / sys.omega_dressed(), 100).unwrap();
        for s in traj {
            assert_eq!((s.p0, s.p1), (1.0, 0.0));
            assert_eq!(s.a10.norm(), 0.0);
        }
    }

    #[test]
    fn oracle_rejects_coarse_steps() {
        let sys = system(1.0);
        let dt = 0.02 / sys.omega_dressed();
        assert!(matches!(
            bloch_ode_oracle(&sys, 1e-8, dt),
            Err(Error::Resolution { .. })
        ));
    }

    #[test]
    fn oracle_trace_is_preserved() {
        for &ratio in &[0.0, 0.29, 1.0, 5.0] {
            let sys = system(ratio);
            let period = 2.0 * PI / sys.omega_dressed();
            let traj =
                bloch_ode_trajectory(&sys, 5.0 * period, 0.01 / sys.omega_dressed(), 7).unwrap();
            for s in &traj {
                assert!((s.p0 + s.p1 - 1.0).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn oracle_agrees_over_five_periods() {
        for &ratio in &[0.0, 0.29, 1.0, 5.0] {
            let sys = system(ratio);
            let period = 2.0 * PI / sys.omega_dressed();
            let traj =
                bloch_ode_trajectory(&sys, 5.0 * period, 0.002 / sys.omega_dressed(), 10).unwrap();
            let worst = traj
                .iter()
                .map(|s| max_state_error(s, &bloch_analytic(&sys, s.t)))
                .fold(0.0, f64::max);
            assert!(worst < 1e-8, "ratio {ratio}: {worst:e}");
        }
    }

    #[test]
    fn resonant_dipole_has_only_quadrature_term() {
        let sys = system(0.0);
        for k in 0..50 {
            let t = k as f64 * 1.7e-11;
            let expected = (sys.omega_rabi() * t).sin() * (sys.omega_l() * t).sin() * sys.atom.d();
            assert!((dipole_bloch(&sys, t) - expected).abs() <= 1e-12 * sys.atom.d());
        }
        assert_eq!(dipole_bloch(&sys, 0.0), 0.0);
    }

    #[test]
    fn dipole_matches_coherences() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let sys = system(0.29);
        let period = 2.0 * PI / sys.omega_dressed();
        for _ in 0..100 {
            let t = rng.gen_range(0.0..10.0 * period);
            let s = bloch_analytic(&sys, t);
            let via_state = s.dipole_factor() * sys.atom.d();
            assert!((dipole_bloch(&sys, t) - via_state).abs() <= 1e-12 * sys.atom.d());
        }
    }

    #[test]
    fn correlations_equal_populations() {
        let sys = system(0.29);
        let (eg0, ge0) = correlation_functions(&sys, 0.0);
        assert!(eg0.abs() < 1e-15 && (ge0 - 1.0).abs() < 1e-15);
        for k in 0..200 {
            let t = k as f64 * 3.1e-11;
            let (eg, ge) = correlation_functions(&sys, t);
            let s = bloch_analytic(&sys, t);
            assert!((eg + ge - 1.0).abs() < 1e-14);
            assert!((eg - s.p1).abs() < 1e-15 && (ge - s.p0).abs() < 1e-15);
        }
    }

    #[test]
    fn far_detuned_correlation_bound() {
        let sys = system(30.0);
        let bound = (sys.omega_rabi() / sys.delta()).powi(2);
        for k in 0..500 {
            let (eg, _) = correlation_functions(&sys, k as f64 * 1e-12);
            assert!(eg <= bound);
        }
    }

    #[test]
    fn oscillation_amplitude_and_period() {
        for &ratio in &[0.0, 0.29, 1.0, 5.0, 20.0] {
            let sys = system(ratio);
            let period = 2.0 * PI / sys.omega_dressed();
            let n = 4000;
            let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
            for k in 0..=n {
                let t = period * k as f64 / n as f64;
                let s = bloch_analytic(&sys, t);
                lo = lo.min(s.p1);
                hi = hi.max(s.p1);
                let later = bloch_analytic(&sys, t + period);
                assert!((later.p1 - s.p1).abs() < 1e-12);
                let (a, b) = (
                    s.rotating_a10(sys.omega_l()),
                    later.rotating_a10(sys.omega_l()),
                );
                assert!((a - b).norm() < 1e-12);
            }
            // n is even, so t = period/2 (the maximum) is on the grid.
            assert!((hi - lo - sys.excitation_amplitude()).abs() < 1e-10);
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn populations_stay_normalized(ratio in -30.0f64..30.0, t in 0.0f64..1e-7) {
                let s = bloch_analytic(&system(ratio), t);
                prop_assert!((s.p0 + s.p1 - 1.0).abs() < 1e-12);
                prop_assert!((-1e-15..=1.0 + 1e-15).contains(&s.p0));
                prop_assert!((-1e-15..=1.0 + 1e-15).contains(&s.p1));
                prop_assert_eq!(s.a01, s.a10.conj());
            }
        }
    }
}
