use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use driven_cp::config::{
    parse_file, parse_override, parse_routes, Assignment, ConfigError, RunConfig,
};
use driven_cp::verify::{render_text, run_all, Faults};
use driven_cp::{commands, CliError};
use driven_cp_core::figures::FigureId;

#[derive(Parser)]
#[command(
    name = "driven-cp",
    version,
    about = "Casimir-Polder potential of a laser-driven atom near a mirror"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Potential curves over distance, plus a scalar report on stdout.
    Potential(RunArgs),
    /// Populations, coherence and Bloch potential over time.
    Dynamics(RunArgs),
    /// Cross-route consistency checks.
    Verify {
        #[arg(long)]
        json: bool,
        /// Negate the Rabi frequency in the closed-form dipole.
        #[arg(long, hide = true)]
        inject_rabi_sign_flip: bool,
    },
}

#[derive(Args)]
struct RunArgs {
    /// Sodium figure preset.
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=5))]
    figure: Option<u8>,
    /// Output CSV; stdout if absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    config: Option<PathBuf>,
    /// pert, bloch, undriven, perreault or all; comma separated.
    #[arg(long)]
    route: Option<String>,
    /// Time-averaged Bloch potential (default).
    #[arg(long, conflicts_with = "time")]
    avg: bool,
    /// Bloch potential at this time [s].
    #[arg(long)]
    time: Option<f64>,
    /// KEY=VALUE override, repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
}

fn load(args: &RunArgs) -> Result<RunConfig, CliError> {
    let mut assignments: Vec<Assignment> = Vec::new();
    if let Some(path) = &args.config {
        let origin = path.display().to_string();
        let text = fs::read_to_string(path).map_err(|e| ConfigError {
            origin: origin.clone(),
            line: None,
            field: None,
            message: e.to_string(),
        })?;
        assignments.extend(parse_file(&origin, &text)?);
    }
    if let Some(route) = &args.route {
        parse_routes(route).map_err(|message| ConfigError {
            origin: "--route".into(),
            line: None,
            field: Some("route".into()),
            message,
        })?;
        assignments.push(parse_override(&format!("route={route}"))?);
    }
    if args.avg {
        assignments.push(parse_override("time=avg")?);
    }
    if let Some(t) = args.time {
        assignments.push(parse_override(&format!("time={t:e}"))?);
    }
    for s in &args.set {
        assignments.push(parse_override(s)?);
    }
    let figure = args.figure.map(FigureId::try_from).transpose()?;
    Ok(RunConfig::build(figure, &assignments)?)
}

fn emit(out: &Option<PathBuf>, body: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, body).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        }),
        None => std::io::stdout()
            .write_all(body.as_bytes())
            .map_err(|source| CliError::Io {
                path: "stdout".into(),
                source,
            }),
    }
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("DRIVEN_CP_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|n| *n > 0)
        .ok_or_else(|| ConfigError {
            origin: "DRIVEN_CP_THREADS".into(),
            line: None,
            field: None,
            message: format!("expected a positive integer, got '{raw}'"),
        })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| ConfigError {
            origin: "DRIVEN_CP_THREADS".into(),
            line: None,
            field: None,
            message: e.to_string(),
        })?;
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    configure_threads()?;
    match cli.command {
        Command::Potential(args) => {
            let cfg = load(&args)?;
            let (csv, report) = commands::potential(&cfg)?;
            if args.out.is_some() {
                emit(&args.out, &csv)?;
                print!("{report}");
            } else {
                emit(&None, &csv)?;
                eprint!("{report}");
            }
        }
        Command::Dynamics(args) => {
            let cfg = load(&args)?;
            emit(&args.out, &commands::dynamics(&cfg)?)?;
        }
        Command::Verify {
            json,
            inject_rabi_sign_flip,
        } => {
            let records = run_all(Faults {
                flip_rabi_sign: inject_rabi_sign_flip,
            })?;
            if json {
                let text = serde_json::to_string_pretty(&records).expect("records serialize");
                println!("{text}");
            } else {
                print!("{}", render_text(&records));
            }
            let failed = records.iter().filter(|r| !r.passed).count();
            if failed > 0 {
                return Err(CliError::Verification(failed));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("driven-cp: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
