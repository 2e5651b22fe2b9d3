//! Command-line front end for `fracrelax-core`.
//!
//! * `eval` prints one Mittag-Leffler value with its error estimate;
//! * `figures` writes the data (CSV) and plots (SVG) of Ψ_α, −Φ_α, r_α and
//!   R_α for a set of α;
//! * `verify` runs the equivalence, Laplace and solver cross-check suites.
//!
//! Exit codes: 0 success, 1 verification failure, 2 domain or usage error,
//! 3 I/O error.

pub mod config;
pub mod error;
pub mod figures;
pub mod svg;
pub mod verify;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use fracrelax_core::{ml_eval, MlParams};

use crate::config::{parse_alphas, OutputFormat, Overrides, RunConfig};
use crate::error::CliError;
use crate::verify::{Suite, DEFAULT_FDE_STEPS};

#[derive(Debug, Parser)]
#[command(name = "fracrelax", version, about = "Fractional relaxation: evaluation, figures, verification")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Directory for figure output.
    #[arg(long, global = true)]
    pub out_dir: Option<PathBuf>,
    /// csv, svg or both.
    #[arg(long, global = true)]
    pub format: Option<OutputFormat>,
    /// Comma-separated orders, e.g. 0.25,0.5,0.75,1.
    #[arg(long, global = true, value_parser = |s: &str| parse_alphas(s).map(AlphaList))]
    pub alphas: Option<AlphaList>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub t_start: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub t_end: Option<f64>,
    /// Samples per figure series.
    #[arg(long, global = true)]
    pub points: Option<usize>,
    /// key = value file with defaults; flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

/// A comma-separated list taken as one argument value.
#[derive(Debug, Clone, PartialEq)]
pub struct AlphaList(pub Vec<f64>);

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate E_{α,β}(z) for z ≤ 0.
    Eval {
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        beta: f64,
        #[arg(long, allow_negative_numbers = true)]
        z: f64,
    },
    /// Write the four figure data sets.
    Figures,
    /// Run verification suites; exits 1 if any check fails.
    Verify {
        /// equivalence, laplace, fde-cross-check or all.
        #[arg(long, default_value = "all")]
        suite: Suite,
        /// Steps of the fractional solver in the cross-check.
        #[arg(long, default_value_t = DEFAULT_FDE_STEPS)]
        n: usize,
    },
}

impl GlobalArgs {
    fn overrides(&self) -> Overrides {
        Overrides {
            alphas: self.alphas.clone().map(|a| a.0),
            t_start: self.t_start,
            t_end: self.t_end,
            num_points: self.points,
            output_dir: self.out_dir.clone(),
            format: self.format,
        }
    }
}

fn cmd_eval(alpha: f64, beta: f64, z: f64, cfg: &RunConfig, out: &mut dyn Write) -> Result<(), CliError> {
    let params = MlParams::new(alpha, beta)?;
    let r = ml_eval(params, z, &cfg.solver)?;
    let io = |source| CliError::Io { path: PathBuf::from("<stdout>"), source };
    writeln!(out, "value        {}", r.value).map_err(io)?;
    writeln!(out, "err_estimate {:e}", r.err_estimate).map_err(io)?;
    writeln!(out, "regime       {}", r.regime).map_err(io)?;
    if let Some(w) = r.warning {
        writeln!(out, "warning      {w:?}").map_err(io)?;
    }
    Ok(())
}

fn cmd_figures(cfg: &RunConfig, out: &mut dyn Write) -> Result<(), CliError> {
    let bundles = figures::build_all(cfg)?;
    let written = figures::write_bundles(&bundles, cfg)?;
    for p in written {
        let _ = writeln!(out, "wrote {}", p.display());
    }
    Ok(())
}

fn cmd_verify(cfg: &RunConfig, suite: Suite, n: usize, out: &mut dyn Write) -> Result<(), CliError> {
    let checks = verify::run_suite(cfg, suite, n)?;
    let mut failed = 0;
    for c in &checks {
        let _ = writeln!(out, "{c}");
        if !c.passed() {
            failed += 1;
        }
    }
    let _ = writeln!(out, "{} checks, {} failed", checks.len(), failed);
    if failed > 0 {
        Err(CliError::Verification)
    } else {
        Ok(())
    }
}

pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let cfg = RunConfig::resolve(cli.global.config.as_deref(), &cli.global.overrides())?;
    match &cli.command {
        Command::Eval { alpha, beta, z } => cmd_eval(*alpha, *beta, *z, &cfg, out),
        Command::Figures => cmd_figures(&cfg, out),
        Command::Verify { suite, n } => cmd_verify(&cfg, *suite, *n, out),
    }
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let stdout = std::io::stdout();
    match execute(&cli, &mut stdout.lock()) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
