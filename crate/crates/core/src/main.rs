use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use weakspin::cli::{self, DEFAULT_PHI_RANGE, DEFAULT_STEPS};
use weakspin::{Error, RunConfig};

#[derive(Parser)]
#[command(
    name = "weakspin",
    version,
    about = "Weak-measurement Stern-Gerlach simulator"
)]
struct Args {
    #[command(subcommand)]
    command: Command,
    /// Config file (`key = value` lines or JSON). Defaults to the final-experiment values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output CSV path; stdout when omitted.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Pre-selection angle θ in rad, overriding the config.
    #[arg(long, global = true, allow_hyphen_values = true)]
    theta: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Real and imaginary weak value over a φ sweep.
    WeakCurves {
        #[arg(long, default_value_t = DEFAULT_PHI_RANGE.0, allow_hyphen_values = true)]
        phi_min: f64,
        #[arg(long, default_value_t = DEFAULT_PHI_RANGE.1, allow_hyphen_values = true)]
        phi_max: f64,
        #[arg(long, default_value_t = DEFAULT_STEPS)]
        steps: usize,
    },
    /// First-order and exact detector densities.
    Simulate,
    /// Limit scan and largest limit where exact and first-order means coincide.
    Calibrate {
        /// Relative mean deviation counted as coincident.
        #[arg(long)]
        tolerance: Option<f64>,
    },
    /// Displacement plan, velocity sweep and resolvability.
    Plan,
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::NoValidLimit(_) => 3,
        Error::Config(_)
        | Error::InvalidParams(_)
        | Error::NonPositiveInputs(_)
        | Error::NonPositiveWidth(_) => 2,
        _ => 1,
    }
}

fn output(path: Option<&PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn run(args: Args) -> Result<(), (u8, String)> {
    let fail = |e: Error| (exit_code(&e), e.to_string());
    let io_fail = |e: io::Error| (1, e.to_string());

    let mut cfg = match (&args.config, &args.command) {
        (Some(path), _) => RunConfig::load(path).map_err(fail)?,
        (None, Command::Calibrate { .. }) => RunConfig::calibration_default(),
        (None, _) => RunConfig::default(),
    };
    if let Some(theta) = args.theta {
        cfg.theta = theta;
    }
    let out_path = args
        .out
        .clone()
        .or_else(|| cfg.out.clone().map(PathBuf::from));

    match args.command {
        Command::WeakCurves {
            phi_min,
            phi_max,
            steps,
        } => {
            let rows = cli::weak_curves(cfg.theta, phi_min, phi_max, steps).map_err(fail)?;
            let mut w = output(out_path.as_ref()).map_err(io_fail)?;
            cli::write_weak_curves(&mut w, cfg.theta, &rows)
                .and_then(|_| w.flush())
                .map_err(io_fail)?;
        }
        Command::Simulate => {
            let sim = cli::simulate(&cfg).map_err(fail)?;
            let mut w = output(out_path.as_ref()).map_err(io_fail)?;
            cli::write_simulation(&mut w, &cfg, &sim)
                .and_then(|_| w.flush())
                .map_err(io_fail)?;
        }
        Command::Calibrate { tolerance } => {
            let tolerance = tolerance.unwrap_or(cfg.tolerance);
            let cal = cli::calibrate(&cfg, tolerance).map_err(fail)?;
            let mut w = output(out_path.as_ref()).map_err(io_fail)?;
            cli::write_calibration(&mut w, &cfg, &cal)
                .and_then(|_| w.flush())
                .map_err(io_fail)?;
            eprintln!(
                "max limit L* = {:.2} (tolerance {tolerance})",
                cal.max_limit
            );
        }
        Command::Plan => {
            let report = cli::plan(&cfg).map_err(fail)?;
            let mut w = output(out_path.as_ref()).map_err(io_fail)?;
            cli::write_plan(&mut w, &cfg, &report)
                .and_then(|_| w.flush())
                .map_err(io_fail)?;
            let verdict = if report.resolvability.resolvable {
                "resolvable"
            } else {
                "below detector resolution"
            };
            eprintln!(
                "displacement {:.1} um at L = {:.2}: {verdict} (margin {:.2})",
                report.plan.displacement * 1e6,
                report.plan.limit,
                report.resolvability.margin
            );
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Args::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err((code, msg)) => {
            eprintln!("weakspin: error: {msg}");
            ExitCode::from(code)
        }
    }
}
