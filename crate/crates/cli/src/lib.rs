//! Command-line front end: configuration ingestion, subcommand dispatch,
//! and stream discipline. Data goes to stdout, diagnostics to stderr, and
//! the exit code classifies the failure:
//!
//! * 0 — success
//! * 2 — malformed input (CLI usage, unreadable or malformed config)
//! * 3 — validation failure (parameter invariants, domain violations)
//! * 4 — numerical failure (no sign change, degenerate point)
//! * 5 — output sink failure

pub mod config;
pub mod csv_out;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};

use dmp_core::{
    find_threshold, simulate, solve_equilibrium, validate_params, Error as ModelError, ModelPoint,
    SimConfig, SweepVariable,
};

use config::{parse_config, RunConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_VALIDATION: i32 = 3;
pub const EXIT_NUMERIC: i32 = 4;
pub const EXIT_IO: i32 = 5;

#[derive(Parser)]
#[command(
    name = "dmp",
    version,
    about = "Steady-state search-and-matching labor market toolkit",
    arg_required_else_help = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one steady-state equilibrium and print the report.
    Solve {
        /// JSON configuration file; defaults to the benchmark calibration.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Research cost; overrides the config value.
        #[arg(long)]
        eta: Option<f64>,
        /// Emit CSV instead of JSON.
        #[arg(long)]
        csv: bool,
    },
    /// Sweep one parameter over a uniform grid and print the table as CSV.
    Sweep {
        /// Swept variable.
        #[arg(long, value_enum)]
        var: VarArg,
        #[arg(long)]
        from: f64,
        #[arg(long)]
        to: f64,
        /// Number of grid intervals; the table has steps + 1 rows.
        #[arg(long)]
        steps: usize,
        #[arg(long)]
        config: Option<PathBuf>,
        /// Research cost held fixed (ignored when sweeping eta).
        #[arg(long)]
        eta: Option<f64>,
    },
    /// Locate the research-cost threshold where innovation stops reducing
    /// unemployment.
    Threshold {
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Run the agent-based matching simulator at the analytic tightness.
    Simulate {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        eta: Option<f64>,
        #[arg(long, default_value_t = 10_000)]
        workers: usize,
        #[arg(long, default_value_t = 2_000)]
        periods: usize,
        #[arg(long = "burn-in", default_value_t = 500)]
        burn_in: usize,
        /// Independent replications, each on its own RNG stream.
        #[arg(long, default_value_t = 20)]
        reps: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Emit a one-row CSV summary instead of JSON.
        #[arg(long)]
        csv: bool,
        /// Also write the per-period pooled unemployment path to this file.
        #[arg(long)]
        path_csv: Option<PathBuf>,
    },
    /// Validate the configured parameter point and report violations.
    Validate {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        eta: Option<f64>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VarArg {
    Eta,
    Gamma,
    #[value(name = "tau_f")]
    TauF,
}

impl From<VarArg> for SweepVariable {
    fn from(v: VarArg) -> Self {
        match v {
            VarArg::Eta => SweepVariable::Eta,
            VarArg::Gamma => SweepVariable::Gamma,
            VarArg::TauF => SweepVariable::TauF,
        }
    }
}

/// A failure carrying its exit code and a message for stderr.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }
}

fn model_failure(e: ModelError) -> Failure {
    let code = match e {
        ModelError::NegativeInput { .. }
        | ModelError::NonPositiveTightness(_)
        | ModelError::EtaOutsideDomain { .. }
        | ModelError::EtaExceedsOutput { .. }
        | ModelError::InvalidGrid(_)
        | ModelError::InvalidInput(_) => EXIT_VALIDATION,
        ModelError::Degenerate(_) | ModelError::NoSignChange { .. } => EXIT_NUMERIC,
    };
    Failure::new(code, e.to_string())
}

fn io_failure(e: std::io::Error) -> Failure {
    Failure::new(EXIT_IO, format!("write failed: {e}"))
}

/// Runs the CLI against explicit streams and returns the exit code.
/// `argv[0]` is the program name.
pub fn run_cli<O: Write, E: Write>(argv: &[String], stdout: &mut O, stderr: &mut E) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(stderr, "{e}");
                    EXIT_PARSE
                }
            };
        }
    };

    match dispatch(cli.command, stdout, stderr) {
        Ok(()) => EXIT_OK,
        Err(failure) => {
            let _ = writeln!(stderr, "error: {}", failure.message);
            failure.code
        }
    }
}

fn read_config(path: Option<&Path>) -> Result<RunConfig, Failure> {
    let text = match path {
        Some(p) => std::fs::read_to_string(p)
            .map_err(|e| Failure::new(EXIT_PARSE, format!("cannot read {}: {e}", p.display())))?,
        None => "{}".to_string(),
    };
    parse_config(&text).map_err(|e| Failure::new(EXIT_PARSE, format!("malformed config: {e}")))
}

/// Loads and fully validates a config; every command except `validate`
/// refuses to run on an invalid point.
fn load_valid_config(path: Option<&Path>) -> Result<RunConfig, Failure> {
    let config = read_config(path)?;
    let verdict = validate_params(&config.model_params(), &config.curve(), &config.policy());
    if !verdict.is_ok() {
        return Err(Failure::new(
            EXIT_VALIDATION,
            format!("invalid configuration:\n{verdict}"),
        ));
    }
    Ok(config)
}

fn require_eta(flag: Option<f64>, config: &RunConfig, context: &str) -> Result<f64, Failure> {
    flag.or(config.eta).ok_or_else(|| {
        Failure::new(
            EXIT_PARSE,
            format!("{context} needs a research cost: pass --eta or set \"eta\" in the config"),
        )
    })
}

fn point_from(config: &RunConfig, eta: f64) -> ModelPoint {
    ModelPoint {
        params: config.model_params(),
        curve: config.curve(),
        policy: config.policy(),
        eta,
    }
}

fn dispatch<O: Write, E: Write>(
    command: Command,
    stdout: &mut O,
    stderr: &mut E,
) -> Result<(), Failure> {
    match command {
        Command::Solve { config, eta, csv } => {
            let config = load_valid_config(config.as_deref())?;
            let eta = require_eta(eta, &config, "solve")?;
            let report = solve_equilibrium(&point_from(&config, eta)).map_err(model_failure)?;
            if report.rate_overflow {
                let _ = writeln!(
                    stderr,
                    "warning: matching rates exceed 1 at theta* (p = {}, q = {})",
                    report.p_star, report.q_star
                );
            }
            if csv {
                csv_out::write_report_csv(&mut *stdout, &report).map_err(io_failure)?;
            } else {
                write_json(stdout, &report)?;
            }
            Ok(())
        }

        Command::Sweep {
            var,
            from,
            to,
            steps,
            config,
            eta,
        } => {
            let config = load_valid_config(config.as_deref())?;
            let variable = SweepVariable::from(var);
            let eta = match variable {
                // The swept rows overwrite eta anyway.
                SweepVariable::Eta => eta.or(config.eta).unwrap_or(0.0),
                _ => require_eta(eta, &config, "sweep")?,
            };
            let grid = dmp_core::linspace(from, to, steps).map_err(model_failure)?;
            let table =
                dmp_core::sweep(variable, &grid, &point_from(&config, eta)).map_err(model_failure)?;
            for row in &table.rows {
                match &row.outcome {
                    Err(e) => {
                        let _ = writeln!(stderr, "warning: {} = {}: {e}", table.variable, row.value);
                    }
                    Ok(report) if report.rate_overflow => {
                        let _ = writeln!(
                            stderr,
                            "warning: {} = {}: matching rates exceed 1 at theta*",
                            table.variable, row.value
                        );
                    }
                    Ok(_) => {}
                }
            }
            csv_out::write_sweep_csv(&mut *stdout, &table).map_err(io_failure)
        }

        Command::Threshold { config } => {
            let config = load_valid_config(config.as_deref())?;
            let result =
                find_threshold(&config.curve(), &config.model_params()).map_err(model_failure)?;
            write_json(stdout, &result)
        }

        Command::Simulate {
            config,
            eta,
            workers,
            periods,
            burn_in,
            reps,
            seed,
            csv,
            path_csv,
        } => {
            let config = load_valid_config(config.as_deref())?;
            let eta = require_eta(eta, &config, "simulate")?;
            let sim_config = SimConfig {
                workers,
                periods,
                burn_in,
                replications: reps,
                seed,
                point: point_from(&config, eta),
                record_path: path_csv.is_some(),
            };
            let mut result = simulate(&sim_config).map_err(model_failure)?;
            if result.clamped_rate_events > 0 {
                let _ = writeln!(
                    stderr,
                    "warning: finding probability clamped to 1 in {} periods",
                    result.clamped_rate_events
                );
            }
            if let Some(path) = path_csv {
                let file = std::fs::File::create(&path).map_err(io_failure)?;
                let pooled = result.per_period_mean.take().expect("path was recorded");
                csv_out::write_path_csv(file, &pooled).map_err(io_failure)?;
            }
            if csv {
                csv_out::write_sim_csv(&mut *stdout, &result).map_err(io_failure)
            } else {
                write_json(stdout, &result)
            }
        }

        Command::Validate { config, eta } => {
            // Unlike the other commands, an invalid point is this command's
            // payload, not a refusal.
            let config = read_config(config.as_deref())?;
            let verdict = validate_params(&config.model_params(), &config.curve(), &config.policy());
            if verdict.is_ok() {
                if let Some(eta) = eta.or(config.eta) {
                    match solve_equilibrium(&point_from(&config, eta)) {
                        Ok(report) if report.rate_overflow => {
                            let _ = writeln!(
                                stderr,
                                "warning: matching rates exceed 1 at theta* (p = {}, q = {})",
                                report.p_star, report.q_star
                            );
                        }
                        Ok(_) => {}
                        Err(e) => {
                            let _ = writeln!(stderr, "warning: eta = {eta}: {e}");
                        }
                    }
                }
            }
            let payload = serde_json::json!({
                "ok": verdict.is_ok(),
                "violations": verdict.violations,
            });
            let text = serde_json::to_string_pretty(&payload)
                .map_err(|e| Failure::new(EXIT_IO, e.to_string()))?;
            writeln!(stdout, "{text}").map_err(io_failure)?;
            if verdict.is_ok() {
                Ok(())
            } else {
                Err(Failure::new(
                    EXIT_VALIDATION,
                    format!("{} constraint(s) violated", verdict.violations.len()),
                ))
            }
        }
    }
}

fn write_json<O: Write, T: serde::Serialize>(stdout: &mut O, value: &T) -> Result<(), Failure> {
    let text =
        serde_json::to_string_pretty(value).map_err(|e| Failure::new(EXIT_IO, e.to_string()))?;
    writeln!(stdout, "{text}").map_err(io_failure)
}
