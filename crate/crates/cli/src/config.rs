//! Flat `key = value` run configuration.
//!
//! Blank lines and lines starting with `#` are ignored. Every key may also be
//! given on the command line as `--set key=value`, which wins over the file.

use std::fmt;
use std::str::FromStr;

use driven_cp_core::figures::{FigureId, FigureParams};
use driven_cp_core::potentials::{BlochMode, Route, TimeSpec};
use driven_cp_core::Alignment;

/// Routes selectable for `potential`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum RouteSel {
    Pert,
    Bloch,
    Undriven,
    Perreault,
}

impl RouteSel {
    pub const ALL: [RouteSel; 4] = [
        RouteSel::Pert,
        RouteSel::Bloch,
        RouteSel::Undriven,
        RouteSel::Perreault,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            RouteSel::Pert => "pert",
            RouteSel::Bloch => "bloch",
            RouteSel::Undriven => "undriven",
            RouteSel::Perreault => "perreault",
        }
    }

    /// Whether a curve of `route` belongs to this selection.
    pub fn covers(self, route: Route) -> bool {
        matches!(
            (self, route),
            (RouteSel::Pert, Route::Perturbative)
                | (RouteSel::Bloch, Route::Bloch | Route::U0 | Route::U1)
                | (RouteSel::Undriven, Route::Undriven)
                | (RouteSel::Perreault, Route::Perreault)
        )
    }
}

/// Parses `all` or a comma list of routes.
pub fn parse_routes(s: &str) -> Result<Vec<RouteSel>, String> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim) {
        match part {
            "all" => out.extend(RouteSel::ALL),
            "pert" => out.push(RouteSel::Pert),
            "bloch" => out.push(RouteSel::Bloch),
            "undriven" => out.push(RouteSel::Undriven),
            "perreault" => out.push(RouteSel::Perreault),
            other => {
                return Err(format!(
                    "unknown route '{other}' (expected pert, bloch, undriven, perreault or all)"
                ))
            }
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError {
    /// File path or `--set`.
    pub origin: String,
    pub line: Option<usize>,
    pub field: Option<String>,
    pub message: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.origin)?;
        if let Some(line) = self.line {
            write!(f, ":{line}")?;
        }
        if let Some(field) = &self.field {
            write!(f, ": field '{field}'")?;
        }
        write!(f, ": {}", self.message)
    }
}

impl std::error::Error for ConfigError {}

impl ConfigError {
    fn new(
        origin: &str,
        line: Option<usize>,
        field: Option<&str>,
        message: impl Into<String>,
    ) -> Self {
        Self {
            origin: origin.to_string(),
            line,
            field: field.map(str::to_string),
            message: message.into(),
        }
    }
}

pub const KEYS: [&str; 17] = [
    "d",
    "omega10",
    "intensity",
    "detuning",
    "theta",
    "alignment",
    "bloch_mode",
    "z_min",
    "z_max",
    "z_count",
    "t_max",
    "t_count",
    "dynamics_z",
    "rel_tol",
    "max_evaluations",
    "route",
    "time",
];

/// Fully resolved run parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub figure: Option<FigureId>,
    pub params: FigureParams,
    pub routes: Vec<RouteSel>,
}

/// One `key=value` assignment with its origin for diagnostics.
#[derive(Debug, Clone)]
pub struct Assignment {
    pub origin: String,
    pub line: Option<usize>,
    pub key: String,
    pub value: String,
}

/// Splits a config file into assignments, rejecting malformed lines,
/// unknown keys and duplicates.
pub fn parse_file(origin: &str, text: &str) -> Result<Vec<Assignment>, ConfigError> {
    let mut out: Vec<Assignment> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let a = split_assignment(origin, Some(line), trimmed)?;
        if out.iter().any(|b| b.key == a.key) {
            return Err(ConfigError::new(
                origin,
                Some(line),
                Some(&a.key),
                "duplicate key",
            ));
        }
        out.push(a);
    }
    Ok(out)
}

/// Parses a `--set key=value` override.
pub fn parse_override(text: &str) -> Result<Assignment, ConfigError> {
    split_assignment("--set", None, text.trim())
}

fn split_assignment(
    origin: &str,
    line: Option<usize>,
    text: &str,
) -> Result<Assignment, ConfigError> {
    let (key, value) = text.split_once('=').ok_or_else(|| {
        ConfigError::new(
            origin,
            line,
            None,
            format!("expected key = value, got '{text}'"),
        )
    })?;
    let (key, value) = (key.trim(), value.trim());
    if !KEYS.contains(&key) {
        return Err(ConfigError::new(origin, line, Some(key), "unknown key"));
    }
    if value.is_empty() {
        return Err(ConfigError::new(origin, line, Some(key), "missing value"));
    }
    Ok(Assignment {
        origin: origin.to_string(),
        line,
        key: key.to_string(),
        value: value.to_string(),
    })
}

fn parse_num<T: FromStr>(a: &Assignment) -> Result<T, ConfigError>
where
    T::Err: fmt::Display,
{
    a.value.parse::<T>().map_err(|e| {
        ConfigError::new(
            &a.origin,
            a.line,
            Some(&a.key),
            format!("cannot parse '{}': {e}", a.value),
        )
    })
}

fn parse_positive(a: &Assignment) -> Result<f64, ConfigError> {
    let v: f64 = parse_num(a)?;
    if !(v.is_finite() && v > 0.0) {
        return Err(ConfigError::new(
            &a.origin,
            a.line,
            Some(&a.key),
            format!("must be positive, got {v}"),
        ));
    }
    Ok(v)
}

impl RunConfig {
    /// Starts from the sodium preset. Custom runs (no figure) weight the
    /// Bloch route by populations unless told otherwise.
    pub fn build(
        figure: Option<FigureId>,
        assignments: &[Assignment],
    ) -> Result<Self, ConfigError> {
        let mut params = FigureParams::default();
        if figure.is_none() {
            params.bloch_mode = BlochMode::PopulationWeighted;
        }
        let mut routes = RouteSel::ALL.to_vec();
        for a in assignments {
            let err = |msg: String| ConfigError::new(&a.origin, a.line, Some(&a.key), msg);
            match a.key.as_str() {
                "d" => {
                    params.atom =
                        driven_cp_core::AtomParams::new(parse_positive(a)?, params.atom.omega10())
                            .map_err(|e| err(e.to_string()))?
                }
                "omega10" => {
                    params.atom = params
                        .atom
                        .with_omega10(parse_positive(a)?)
                        .map_err(|e| err(e.to_string()))?
                }
                "intensity" => {
                    let v: f64 = parse_num(a)?;
                    if !(v.is_finite() && v >= 0.0) {
                        return Err(err(format!("must be non-negative, got {v}")));
                    }
                    params.intensity = v;
                }
                "detuning" => {
                    let v: f64 = parse_num(a)?;
                    if !v.is_finite() {
                        return Err(err("must be finite".into()));
                    }
                    params.detuning = v;
                }
                "theta" => params.theta = parse_num(a)?,
                "alignment" => {
                    params.alignment =
                        Alignment::from_str(&a.value).map_err(|e| err(e.to_string()))?
                }
                "bloch_mode" => {
                    params.bloch_mode =
                        BlochMode::from_str(&a.value).map_err(|e| err(e.to_string()))?
                }
                "z_min" => params.z_min = parse_positive(a)?,
                "z_max" => params.z_max = parse_positive(a)?,
                "z_count" => params.z_count = parse_num(a)?,
                "t_max" => params.t_max = Some(parse_positive(a)?),
                "t_count" => params.t_count = parse_num(a)?,
                "dynamics_z" => {
                    params.dynamics_z = a
                        .value
                        .split(',')
                        .map(|part| {
                            let part = Assignment {
                                value: part.trim().to_string(),
                                ..a.clone()
                            };
                            parse_positive(&part)
                        })
                        .collect::<Result<_, _>>()?;
                }
                "rel_tol" => params.quadrature.rel_tol = parse_positive(a)?,
                "max_evaluations" => params.quadrature.max_evaluations = parse_num(a)?,
                "route" => routes = parse_routes(&a.value).map_err(err)?,
                "time" => params.time = parse_time(&a.value).map_err(err)?,
                other => unreachable!("key '{other}' passed validation"),
            }
        }
        params
            .validate()
            .map_err(|e| ConfigError::new("config", None, None, e.to_string()))?;
        Ok(Self {
            figure,
            params,
            routes,
        })
    }

    /// Stable `key=value` listing of every effective setting. Hashed into
    /// the CSV header.
    pub fn canonical(&self) -> String {
        let p = &self.params;
        let time = match p.time {
            TimeSpec::Averaged => "avg".to_string(),
            TimeSpec::At(t) => format!("{t:e}"),
        };
        let entries: Vec<(&str, String)> = vec![
            (
                "figure",
                self.figure
                    .map_or("none".into(), |f| f.number().to_string()),
            ),
            ("d", format!("{:e}", p.atom.d())),
            ("omega10", format!("{:e}", p.atom.omega10())),
            ("intensity", format!("{:e}", p.intensity)),
            ("detuning", format!("{:e}", p.detuning)),
            ("theta", format!("{:e}", p.theta)),
            ("alignment", p.alignment.as_str().into()),
            ("bloch_mode", p.bloch_mode.as_str().into()),
            ("z_min", format!("{:e}", p.z_min)),
            ("z_max", format!("{:e}", p.z_max)),
            ("z_count", p.z_count.to_string()),
            ("t_max", p.t_max.map_or("auto".into(), |t| format!("{t:e}"))),
            ("t_count", p.t_count.to_string()),
            (
                "dynamics_z",
                p.dynamics_z
                    .iter()
                    .map(|z| format!("{z:e}"))
                    .collect::<Vec<_>>()
                    .join(","),
            ),
            ("rel_tol", format!("{:e}", p.quadrature.rel_tol)),
            ("max_evaluations", p.quadrature.max_evaluations.to_string()),
            (
                "route",
                self.routes
                    .iter()
                    .map(|r| r.as_str())
                    .collect::<Vec<_>>()
                    .join(","),
            ),
            ("time", time),
        ];
        entries
            .into_iter()
            .map(|(k, v)| format!("{k}={v}\n"))
            .collect()
    }
}

/// `avg` or a time in seconds.
pub fn parse_time(s: &str) -> Result<TimeSpec, String> {
    if s == "avg" {
        return Ok(TimeSpec::Averaged);
    }
    let t: f64 = s
        .parse()
        .map_err(|e| format!("cannot parse time '{s}': {e}"))?;
    if !(t.is_finite() && t >= 0.0) {
        return Err(format!("time must be non-negative, got {t}"));
    }
    Ok(TimeSpec::At(t))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_and_values() {
        let text = "# sodium, closer grid\n\nz_min = 1e-8\nz_count=10\n  alignment = isotropic\n";
        let a = parse_file("run.cfg", text).unwrap();
        let cfg = RunConfig::build(None, &a).unwrap();
        assert_eq!(cfg.params.z_min, 1e-8);
        assert_eq!(cfg.params.z_count, 10);
        assert_eq!(cfg.params.alignment, Alignment::Isotropic);
        assert_eq!(cfg.params.bloch_mode, BlochMode::PopulationWeighted);
    }

    #[test]
    fn diagnostics_name_line_and_field() {
        let e = parse_file("run.cfg", "z_min = 1e-8\nz_count = ten\n")
            .and_then(|a| RunConfig::build(None, &a))
            .unwrap_err();
        assert_eq!((e.line, e.field.as_deref()), (Some(2), Some("z_count")));
        assert!(e.to_string().starts_with("run.cfg:2: field 'z_count'"));

        let e = parse_file("run.cfg", "\nfoo = 1\n").unwrap_err();
        assert_eq!((e.line, e.field.as_deref()), (Some(2), Some("foo")));
        let e = parse_file("run.cfg", "z_min 3\n").unwrap_err();
        assert_eq!(e.line, Some(1));
        let e = parse_file("run.cfg", "z_min=1\nz_min=2\n").unwrap_err();
        assert_eq!(e.message, "duplicate key");
        let e = parse_file("run.cfg", "z_min = -1\n")
            .and_then(|a| RunConfig::build(None, &a))
            .unwrap_err();
        assert_eq!(e.field.as_deref(), Some("z_min"));
    }

    #[test]
    fn overrides_win_and_grid_is_checked() {
        let mut a = parse_file("f", "z_count = 10\n").unwrap();
        a.push(parse_override("z_count=20").unwrap());
        assert_eq!(RunConfig::build(None, &a).unwrap().params.z_count, 20);
        let bad = vec![parse_override("z_count=1").unwrap()];
        assert!(RunConfig::build(None, &bad).is_err());
        let bad = vec![parse_override("z_min=1e-5").unwrap()];
        assert!(RunConfig::build(None, &bad).is_err());
        assert!(parse_override("time=bad").is_ok());
        assert!(RunConfig::build(None, &[parse_override("time=bad").unwrap()]).is_err());
    }

    #[test]
    fn routes_and_canonical_form() {
        assert_eq!(parse_routes("all").unwrap().len(), 4);
        assert_eq!(
            parse_routes("bloch,pert,bloch").unwrap(),
            vec![RouteSel::Pert, RouteSel::Bloch]
        );
        assert!(parse_routes("light").is_err());
        let a = RunConfig::build(Some(FigureId::Five), &[]).unwrap();
        let b = RunConfig::build(Some(FigureId::Five), &[]).unwrap();
        assert_eq!(a.canonical(), b.canonical());
        assert!(a.canonical().contains("bloch_mode=resonant\n"));
        let c = RunConfig::build(
            Some(FigureId::Five),
            &[parse_override("z_count=9").unwrap()],
        )
        .unwrap();
        assert_ne!(a.canonical(), c.canonical());
    }
}
