//! `potential` and `dynamics` commands.

use rayon::prelude::*;

use driven_cp_core::bloch::bloch_analytic;
use driven_cp_core::figures::{
    dynamics_curve, figure_curves, z_curve, FigureParams, PotentialCurve,
};
use driven_cp_core::params::sodium;
use driven_cp_core::polarizability::alpha_isotropic;
use driven_cp_core::potentials::{
    population_weighted, u0_u1, u_cp_undriven_excited, u_lcp_bloch_resonant, u_lcp_perreault,
    u_lcp_perturbative, u_light, BlochMode, Convention, PotentialSample, Route,
};
use driven_cp_core::{Alignment, DrivenSystem};

use crate::config::{RouteSel, RunConfig};
use crate::csv::{num, CsvDoc};
use crate::CliError;

/// Scalar report printed by `potential`.
pub fn scalar_report(sys: &DrivenSystem) -> String {
    let mut out = String::new();
    let light = u_light(sys)
        .map(num)
        .unwrap_or_else(|e| format!("undefined ({e})"));
    out.push_str(&format!("alignment={}\n", sys.alignment.as_str()));
    out.push_str(&format!("omega_rabi_rad_s={}\n", num(sys.omega_rabi())));
    out.push_str(&format!("delta_rad_s={}\n", num(sys.delta())));
    out.push_str(&format!(
        "omega_dressed_rad_s={}\n",
        num(sys.omega_dressed())
    ));
    if sys.omega_rabi() != 0.0 {
        out.push_str(&format!(
            "delta_over_rabi={}\n",
            num(sys.delta() / sys.omega_rabi())
        ));
    }
    out.push_str(&format!("u_light_J={light}\n"));
    out.push_str(&format!(
        "u_light_quoted_J={}\n",
        num(sodium::QUOTED_LIGHT_POTENTIAL)
    ));
    out
}

/// Curves for a custom (non-preset) run, in route order.
fn custom_curves(cfg: &RunConfig) -> Result<Vec<PotentialCurve>, CliError> {
    let p = &cfg.params;
    let sys = p.system(1.0)?;
    let grid = p.z_grid();
    let mut curves = Vec::new();
    for sel in &cfg.routes {
        match sel {
            RouteSel::Pert => {
                let alpha = alpha_isotropic(sys.atom, sys.omega_l())?;
                curves.push(z_curve(
                    "pert",
                    Route::Perturbative,
                    Convention::FieldAligned,
                    "perturbative".into(),
                    &grid,
                    None,
                    |z| u_lcp_perturbative(&sys, &alpha, z),
                )?);
            }
            RouteSel::Perreault => {
                let alpha = alpha_isotropic(sys.atom, sys.omega_l())?;
                curves.push(z_curve(
                    "perreault",
                    Route::Perreault,
                    Convention::FieldAligned,
                    "z^-3 term only".into(),
                    &grid,
                    None,
                    |z| u_lcp_perreault(&sys, &alpha, z),
                )?);
            }
            RouteSel::Undriven => {
                curves.push(z_curve(
                    "undriven",
                    Route::Undriven,
                    Convention::XThird,
                    "undriven excited atom".into(),
                    &grid,
                    None,
                    |z| u_cp_undriven_excited(sys.atom, z),
                )?);
            }
            RouteSel::Bloch => curves.extend(bloch_with_states(cfg, &sys, &grid)?),
        }
    }
    Ok(curves)
}

/// Bloch curve plus the U₀ and U₁ curves it is assembled from.
fn bloch_with_states(
    cfg: &RunConfig,
    sys: &DrivenSystem,
    grid: &[f64],
) -> Result<Vec<PotentialCurve>, CliError> {
    let p = &cfg.params;
    let t = p.time.time();
    let states = grid
        .par_iter()
        .map(|&z| u0_u1(sys.atom, sys.omega_l(), z, &p.quadrature).map_err(|e| e.at_distance(z)))
        .collect::<Result<Vec<_>, _>>()?;
    let bloch = grid
        .iter()
        .zip(&states)
        .map(|(&z, s)| match p.bloch_mode {
            BlochMode::PopulationWeighted => Ok(population_weighted(sys, s, p.time)),
            BlochMode::ResonantPrinted => u_lcp_bloch_resonant(sys, z, p.time),
        })
        .collect::<Result<Vec<_>, _>>()?;
    let curve =
        |label: &str, route: Route, t: Option<f64>, description: String, values: Vec<f64>| {
            PotentialCurve {
                label: label.into(),
                route,
                convention: Convention::XThird,
                description,
                samples: grid
                    .iter()
                    .zip(values)
                    .map(|(&z, value)| PotentialSample {
                        z,
                        t,
                        value,
                        route,
                        convention: Convention::XThird,
                    })
                    .collect(),
            }
        };
    Ok(vec![
        curve(
            "bloch",
            Route::Bloch,
            t,
            format!("Bloch ({})", p.bloch_mode.as_str()),
            bloch,
        ),
        curve(
            "u0",
            Route::U0,
            None,
            "ground-state term".into(),
            states.iter().map(|s| s.u0).collect(),
        ),
        curve(
            "u1",
            Route::U1,
            None,
            "excited-state term".into(),
            states.iter().map(|s| s.u1).collect(),
        ),
    ])
}

/// CSV body of `potential` and the scalar report.
pub fn potential(cfg: &RunConfig) -> Result<(String, String), CliError> {
    let curves = match cfg.figure {
        Some(id) => figure_curves(id, &cfg.params)?
            .into_iter()
            .filter(|c| cfg.routes.iter().any(|r| r.covers(c.route)))
            .collect(),
        None => custom_curves(cfg)?,
    };
    if curves.is_empty() {
        return Err(CliError::Config(crate::config::ConfigError {
            origin: "--route".into(),
            line: None,
            field: Some("route".into()),
            message: "selection leaves no curve of this figure".into(),
        }));
    }

    let mut doc = CsvDoc::new("potential", &cfg.canonical());
    for c in &curves {
        doc.meta(&format!("curve.{}", c.label), &c.description);
    }
    let timed = curves
        .iter()
        .any(|c| c.samples.iter().any(|s| s.t.is_some()));
    let mut cols = vec!["curve", "z_m", "route", "value_J", "convention"];
    if timed {
        cols.push("t_s");
    }
    doc.columns(&cols);
    for c in &curves {
        for s in &c.samples {
            let mut row = vec![
                c.label.clone(),
                num(s.z),
                s.route.as_str().into(),
                num(s.value),
                s.convention.as_str().into(),
            ];
            if timed {
                row.push(s.t.map(num).unwrap_or_default());
            }
            doc.row(row);
        }
    }

    let sys = cfg.params.system(1.0)?;
    let mut report = scalar_report(&sys);
    if sys.alignment != Alignment::Isotropic {
        let iso = FigureParams {
            alignment: Alignment::Isotropic,
            ..cfg.params.clone()
        };
        let s = iso.system(1.0)?;
        report.push_str(&format!(
            "omega_rabi_isotropic_rad_s={}\n",
            num(s.omega_rabi())
        ));
    }
    report.push_str(&format!("rows={}\n", doc.row_count()));
    Ok((doc.render(), report))
}

/// CSV body of `dynamics`: one time series per configured distance.
pub fn dynamics(cfg: &RunConfig) -> Result<String, CliError> {
    let p = &cfg.params;
    let sys = p.system(1.0)?;
    let times = p.t_grid()?;
    let states: Vec<_> = times.iter().map(|&t| bloch_analytic(&sys, t)).collect();

    let mut doc = CsvDoc::new("dynamics", &cfg.canonical());
    let curves = p
        .dynamics_z
        .iter()
        .map(|&z| dynamics_curve(p, &sys, z, &times))
        .collect::<Result<Vec<_>, _>>()?;
    for c in &curves {
        doc.meta(&format!("curve.{}", c.label), &c.description);
    }
    doc.columns(&[
        "curve", "z_m", "t_s", "p0", "p1", "re_a10", "im_a10", "u_be_J",
    ]);
    for c in &curves {
        for (s, st) in c.samples.iter().zip(&states) {
            doc.row(vec![
                c.label.clone(),
                num(s.z),
                num(st.t),
                num(st.p0),
                num(st.p1),
                num(st.a10.re),
                num(st.a10.im),
                num(s.value),
            ]);
        }
    }
    Ok(doc.render())
}
