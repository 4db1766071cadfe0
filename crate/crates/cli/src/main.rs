//! `hhv`: Euler-Maclaurin zeta brackets, weight-coefficient checks and
//! inequality verification from the command line.
//!
//! Exit codes: 0 all checks pass, 1 a mathematical check failed,
//! 2 invalid input.

mod commands;
mod report;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use report::Format;

pub const SLACK_ENV: &str = "HHV_DEFAULT_PRECISION_SLACK_ULPS";

#[derive(Parser, Debug)]
#[command(
    name = "hhv",
    version,
    about = "Hardy-Hilbert type inequality verification harness"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    /// Report format
    #[arg(long = "out", value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Write the report here instead of stdout
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct EmArgs {
    /// Euler-Maclaurin split point
    #[arg(long, default_value_t = 16)]
    pub m: u64,

    /// Euler-Maclaurin remainder order
    #[arg(long, default_value_t = 8)]
    pub l: u32,
}

#[derive(Args, Debug, Clone)]
pub struct GridArgs {
    /// Comma-separated p values (default 1.2,1.5,2,3,4)
    #[arg(long = "p", value_delimiter = ',', allow_negative_numbers = true)]
    pub p: Vec<f64>,

    /// Comma-separated lambda values (default: 0.1 steps from the admissible edge to 2)
    #[arg(long = "lambda", value_delimiter = ',', allow_negative_numbers = true)]
    pub lambda: Vec<f64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Bracket zeta(rho) by Euler-Maclaurin summation
    Zeta {
        /// Exponent (any real except the pole at 1)
        #[arg(long, allow_negative_numbers = true)]
        rho: f64,
        #[command(flatten)]
        em: EmArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Weight coefficients at one index against their bounds
    Weight {
        /// Hölder exponent p > 1 (q = p/(p-1))
        #[arg(long, default_value_t = 2.0)]
        p: f64,
        /// Kernel exponent lambda, 2 - min(p,q) < lambda <= 2
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        lambda: f64,
        /// Index of the weight coefficient
        #[arg(long, default_value_t = 1)]
        m: u64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Weight bounds and the negativity chain over a parameter grid
    CheckWeights {
        #[command(flatten)]
        grid: GridArgs,
        /// Largest weight index checked
        #[arg(long, default_value_t = 500)]
        m_max: u64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Verify one inequality on given sequences
    Verify {
        /// Inequality id: 3.1 ... 3.8, or 1.3 for the unimproved baseline
        #[arg(long)]
        ineq: String,
        /// First sequence: unit:N, powerlaw:t:N, random:seed:N or file:path
        #[arg(long, default_value = "unit:1")]
        a: String,
        /// Second sequence (defaults to the first)
        #[arg(long)]
        b: Option<String>,
        /// Hölder exponent p > 1
        #[arg(long, default_value_t = 2.0)]
        p: f64,
        /// Kernel exponent lambda
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        lambda: f64,
        /// Truncation point of the outer sum in row forms
        #[arg(long, default_value_t = 100_000)]
        nmax: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Verify every applicable inequality across a grid and sequence families
    Sweep {
        #[command(flatten)]
        grid: GridArgs,
        /// Sequences for a (repeatable)
        #[arg(long, default_values_t = vec!["random:1:64".to_string()])]
        a: Vec<String>,
        /// Sequences for b (repeatable)
        #[arg(long, default_values_t = vec!["random:2:64".to_string()])]
        b: Vec<String>,
        /// Truncation point of the outer sum in row forms
        #[arg(long, default_value_t = 10_000)]
        nmax: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Ratio of the bilinear form to its plain bound on a near-extremal family
    Probe {
        /// Hölder exponent p > 1
        #[arg(long, default_value_t = 2.0)]
        p: f64,
        /// Kernel exponent lambda
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        lambda: f64,
        /// Comma-separated eps values
        #[arg(long, value_delimiter = ',', default_values_t = vec![0.05])]
        eps: Vec<f64>,
        /// Number of terms of the probe sequence
        #[arg(long, default_value_t = 100_000)]
        n_terms: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
}

/// Failure modes mapped onto exit codes.
#[derive(Debug)]
pub enum CliError {
    Input(String),
    Io(io::Error),
}

impl From<hhv_core::Error> for CliError {
    fn from(e: hhv_core::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

fn slack_ulps() -> Result<u32, CliError> {
    match std::env::var(SLACK_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| {
            CliError::Input(format!("{SLACK_ENV}={v:?} is not a nonnegative integer"))
        }),
        Err(_) => Ok(hhv_core::interval::DEFAULT_SLACK_ULPS),
    }
}

fn emit(report: &report::Report, out: &OutputArgs) -> Result<(), CliError> {
    match &out.output {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            report.write(out.format, &mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            report.write(out.format, &mut lock)?;
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<bool, CliError> {
    let ulps = slack_ulps()?;
    let (report, ok, out) = match cli.command {
        Command::Zeta { rho, em, out } => {
            let (r, ok) = commands::zeta(rho, &em, ulps)?;
            (r, ok, out)
        }
        Command::Weight { p, lambda, m, out } => {
            let (r, ok) = commands::weight(p, lambda, m, ulps)?;
            (r, ok, out)
        }
        Command::CheckWeights { grid, m_max, out } => {
            let (r, ok) = commands::check_weights(&grid, m_max, ulps)?;
            (r, ok, out)
        }
        Command::Verify {
            ineq,
            a,
            b,
            p,
            lambda,
            nmax,
            out,
        } => {
            let (r, ok) = commands::verify(&ineq, &a, b.as_deref(), p, lambda, nmax)?;
            (r, ok, out)
        }
        Command::Sweep {
            grid,
            a,
            b,
            nmax,
            out,
        } => {
            let (r, ok) = commands::sweep(&grid, &a, &b, nmax)?;
            (r, ok, out)
        }
        Command::Probe {
            p,
            lambda,
            eps,
            n_terms,
            out,
        } => {
            let (r, ok) = commands::probe(p, lambda, &eps, n_terms)?;
            (r, ok, out)
        }
    };
    emit(&report, &out)?;
    Ok(ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
