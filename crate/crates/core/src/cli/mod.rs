//! Batch front-end: configuration and sweep files in, CSV out.
//!
//! Every command is a plain function returning a [`CommandOutput`], so the
//! binary is a thin wrapper around [`run`]. Exit codes are 0 on success, 1
//! when a Monte Carlo validation row fails and 2 for any input error.

mod sweep;

pub use sweep::{SweepSpec, DEFAULT_OVERLAY};

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use thiserror::Error;

use crate::analytic::{AnalyticEngine, CoverageResult, EEBreakdown, EngineError};
use crate::mc::{mc_validate, McError, Simulator};
use crate::model::{ConfigError, ConfigParams};

pub const EXIT_SUCCESS: i32 = 0;
pub const EXIT_VALIDATION_FAILED: i32 = 1;
pub const EXIT_INPUT_ERROR: i32 = 2;

/// Columns of a single evaluation, in output order.
pub const EVAL_COLUMNS: [&str; 9] =
    ["p_bu", "p_br", "p_ru", "lambda_prime", "tau_nc", "tau_c", "p_b_avg", "p_r_avg", "ee"];

pub const VALIDATE_COLUMNS: [&str; 6] = ["link", "analytic", "mc_mean", "half_width", "abs_diff", "pass"];

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read `{path}`: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("cannot write `{path}`: {source}")]
    Write { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Config { path: PathBuf, source: ConfigError },
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Mc(#[from] McError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        EXIT_INPUT_ERROR
    }
}

/// CSV text plus anything that belongs on stderr.
#[derive(Debug, Clone, PartialEq)]
pub struct CommandOutput {
    pub csv: String,
    pub warnings: Vec<String>,
    pub exit_code: i32,
}

impl CommandOutput {
    fn ok(csv: String) -> Self {
        Self { csv, warnings: Vec::new(), exit_code: EXIT_SUCCESS }
    }
}

/// Ten significant digits, scientific notation, `.` as decimal point.
pub fn format_number(x: f64) -> String {
    format!("{x:.9e}")
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Read { path: path.to_path_buf(), source })
}

pub fn load_config(path: &Path) -> Result<ConfigParams, CliError> {
    ConfigParams::from_text(&read_file(path)?).map_err(|source| CliError::Config { path: path.to_path_buf(), source })
}

pub fn load_sweep(path: &Path) -> Result<SweepSpec, CliError> {
    SweepSpec::from_text(&read_file(path)?).map_err(|source| CliError::Config { path: path.to_path_buf(), source })
}

fn eval_fields(cov: &CoverageResult, ee: &EEBreakdown) -> [f64; 9] {
    [cov.p_bu, cov.p_br, cov.p_ru, cov.lambda_prime, ee.tau_nc, ee.tau_c, ee.p_b_avg, ee.p_r_avg, ee.ee]
}

fn push_row(out: &mut String, leading: &[String], values: &[f64]) {
    let cells = leading.iter().cloned().chain(values.iter().map(|&v| format_number(v)));
    out.push_str(&cells.collect::<Vec<_>>().join(","));
    out.push('\n');
}

fn header(leading: &[&str], rest: &[&str]) -> String {
    let mut h = leading.iter().chain(rest).copied().collect::<Vec<_>>().join(",");
    h.push('\n');
    h
}

/// One evaluation of the configuration at `config_path`.
pub fn cmd_eval(config_path: &Path) -> Result<CommandOutput, CliError> {
    let cfg = load_config(config_path)?
        .to_config()
        .map_err(|source| CliError::Config { path: config_path.to_path_buf(), source })?;
    let (cov, ee) = AnalyticEngine::default().evaluate(&cfg)?;
    let mut csv = header(&[], &EVAL_COLUMNS);
    push_row(&mut csv, &[], &eval_fields(&cov, &ee));
    Ok(CommandOutput::ok(csv))
}

/// Evaluates every (overlay, value) point of the sweep; rows are
/// overlay-major and independent of evaluation order.
pub fn cmd_sweep(config_path: &Path, sweep_path: &Path) -> Result<CommandOutput, CliError> {
    let base = load_config(config_path)?;
    let spec = load_sweep(sweep_path)?;
    let points = spec
        .points(&base)
        .map_err(|source| CliError::Config { path: sweep_path.to_path_buf(), source })?;
    let configs = points
        .iter()
        .map(|(_, _, params)| params.to_config())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|source| CliError::Config { path: sweep_path.to_path_buf(), source })?;
    let engine = AnalyticEngine::default();
    let results = configs.par_iter().map(|cfg| engine.evaluate(cfg)).collect::<Result<Vec<_>, _>>()?;

    let mut csv = header(&["overlay", spec.variable()], &EVAL_COLUMNS);
    for ((overlay, value, _), (cov, ee)) in points.iter().zip(&results) {
        push_row(&mut csv, &[overlay.clone(), format_number(*value)], &eval_fields(cov, ee));
    }
    Ok(CommandOutput::ok(csv))
}

/// Energy-efficiency maximising BS density per overlay. The sweep must run
/// over `lambda_B`; its values form the search grid.
pub fn cmd_optimal(config_path: &Path, sweep_path: &Path) -> Result<CommandOutput, CliError> {
    let base = load_config(config_path)?;
    let spec = load_sweep(sweep_path)?;
    let config_err = |source| CliError::Config { path: sweep_path.to_path_buf(), source };
    if spec.variable() != "lambda_B" {
        return Err(config_err(ConfigError::Invalid {
            key: "sweep".into(),
            reason: format!("optimal density search needs `sweep = lambda_B`, found `{}`", spec.variable()),
        }));
    }
    let engine = AnalyticEngine::default();
    let mut output = CommandOutput::ok(header(&["overlay"], &["lambda_star", "ee_star", "at_boundary"]));
    for overlay in spec.overlay_names() {
        let cfg = spec.overlay_params(&base, &overlay).and_then(|p| p.to_config()).map_err(config_err)?;
        let best = engine.optimal_bs_density(&cfg, spec.values())?;
        writeln!(
            output.csv,
            "{overlay},{},{},{}",
            format_number(best.lambda_star),
            format_number(best.ee_star),
            best.at_boundary
        )
        .unwrap();
        if best.at_boundary {
            output.warnings.push(format!(
                "warning: overlay `{overlay}`: maximum at grid boundary lambda_B = {}; the optimum may lie outside the grid",
                format_number(best.lambda_star)
            ));
        }
    }
    Ok(output)
}

/// Monte Carlo check of all analytic coverage probabilities.
pub fn cmd_validate(config_path: &Path, trials: u64, seed: u64) -> Result<CommandOutput, CliError> {
    let cfg = load_config(config_path)?
        .to_config()
        .map_err(|source| CliError::Config { path: config_path.to_path_buf(), source })?;
    let report = mc_validate(&AnalyticEngine::default(), &Simulator::default(), &cfg, trials, seed)?;
    let mut output = CommandOutput::ok(header(&[], &VALIDATE_COLUMNS));
    for row in &report.rows {
        let numbers = [row.analytic, row.mc.mean, row.mc.half_width_95, row.abs_diff].map(format_number);
        writeln!(output.csv, "{},{},{}", row.link, numbers.join(","), row.pass).unwrap();
        if !row.pass {
            output.warnings.push(format!("validation failed for link `{}`", row.link));
        }
    }
    if !report.all_pass() {
        output.exit_code = EXIT_VALIDATION_FAILED;
    }
    Ok(output)
}

#[derive(Debug, Parser)]
#[command(name = "mmwave-ee", version, about = "Coverage and energy efficiency of relay-assisted mmWave networks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one configuration.
    Eval(EvalArgs),
    /// Evaluate a parameter sweep.
    Sweep(SweepArgs),
    /// Find the energy-efficiency maximising BS density.
    Optimal(SweepArgs),
    /// Compare analytic coverage with Monte Carlo simulation.
    Validate(ValidateArgs),
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(long)]
    pub config: PathBuf,
    /// Write CSV here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub config: PathBuf,
    #[arg(long)]
    pub sweep: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    #[arg(long)]
    pub config: PathBuf,
    #[arg(long, default_value_t = 100_000)]
    pub trials: u64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn dispatch(cli: &Cli) -> (Result<CommandOutput, CliError>, Option<&Path>) {
    match &cli.command {
        Command::Eval(a) => (cmd_eval(&a.config), a.out.as_deref()),
        Command::Sweep(a) => (cmd_sweep(&a.config, &a.sweep), a.out.as_deref()),
        Command::Optimal(a) => (cmd_optimal(&a.config, &a.sweep), a.out.as_deref()),
        Command::Validate(a) => (cmd_validate(&a.config, a.trials, a.seed), a.out.as_deref()),
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return if e.use_stderr() { EXIT_INPUT_ERROR } else { EXIT_SUCCESS };
        }
    };
    let (result, out_path) = dispatch(&cli);
    let output = match result {
        Ok(output) => output,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return e.exit_code();
        }
    };
    for w in &output.warnings {
        let _ = writeln!(stderr, "{w}");
    }
    let written = match out_path {
        Some(path) => std::fs::write(path, &output.csv)
            .map_err(|source| CliError::Write { path: path.to_path_buf(), source }),
        None => stdout
            .write_all(output.csv.as_bytes())
            .map_err(|source| CliError::Write { path: PathBuf::from("<stdout>"), source }),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: {e}");
        return e.exit_code();
    }
    output.exit_code
}
