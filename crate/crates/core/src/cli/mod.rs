//! Command-line front end: argument parsing, dispatch, and report output.
//!
//! Exit codes: 0 success, 1 search exhausted, 2 unknown flag or command,
//! 3 missing parameter, 4 invalid value, 5 I/O failure.

mod emit;
mod report;

pub use emit::{emit, render, CSV_HEADER};
pub use report::{run, ConfigEcho, Phase, Report, Results, RunInfo};

use std::ffi::OsString;
use std::fmt;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::arith::is_perfect_square;
use crate::cfrac::is_fundamental_discriminant;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NOT_FOUND: i32 = 1;
pub const EXIT_UNKNOWN: i32 = 2;
pub const EXIT_MISSING: i32 = 3;
pub const EXIT_INVALID: i32 = 4;
pub const EXIT_IO: i32 = 5;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Debug, PartialEq, Subcommand, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "lowercase")]
pub enum Command {
    /// Continued fraction of √N
    Cf {
        #[arg(long)]
        #[serde(with = "crate::decimal")]
        n: u128,
    },
    /// Minimal solutions of x² − N y² = ±1
    Pell {
        #[arg(long)]
        #[serde(with = "crate::decimal")]
        n: u128,
    },
    /// Fundamental unit for the fundamental discriminant D (given as --n)
    Unit {
        #[arg(long)]
        #[serde(with = "crate::decimal")]
        n: u128,
    },
    /// Class number and invariants of Q(√N)
    Classnum {
        #[arg(long)]
        #[serde(with = "crate::decimal")]
        n: u128,
    },
    /// Certificate for the (k, n) instance of the family
    Certify {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        n: u64,
    },
    /// Smallest n in range whose certificate has every class number above X
    Search {
        #[arg(long)]
        k: u32,
        #[arg(long = "X")]
        x: f64,
        #[arg(long = "n-min", default_value_t = 2)]
        n_min: u64,
        #[arg(long = "n-max")]
        n_max: u64,
    },
    /// Largest admissible k for a given n
    Kbound {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        eps: f64,
    },
    /// Squarefree values of f(n)/B' for n up to n-max
    Polyscan {
        #[arg(long)]
        k: u32,
        #[arg(long = "n-max")]
        n_max: u64,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Cf { .. } => "cf",
            Command::Pell { .. } => "pell",
            Command::Unit { .. } => "unit",
            Command::Classnum { .. } => "classnum",
            Command::Certify { .. } => "certify",
            Command::Search { .. } => "search",
            Command::Kbound { .. } => "kbound",
            Command::Polyscan { .. } => "polyscan",
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "realquad",
    version,
    about = "Consecutive real quadratic fields with large class numbers",
    after_help = "Environment: REALQUAD_WORKERS and REALQUAD_PRECISION set the defaults for \
                  --workers and --precision; flags take precedence."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format
    #[arg(long, value_enum, default_value_t = OutputFormat::Text, global = true)]
    format: OutputFormat,
    /// Write the report here instead of standard output
    #[arg(long = "out", global = true)]
    out: Option<PathBuf>,
    /// Worker threads
    #[arg(
        long,
        env = "REALQUAD_WORKERS",
        default_value_t = 1,
        value_parser = clap::value_parser!(u64).range(1..=1024),
        global = true
    )]
    workers: u64,
    /// Working precision in bits for L-value summation (≤ 53: plain f64,
    /// above: compensated)
    #[arg(
        long,
        env = "REALQUAD_PRECISION",
        default_value_t = 128,
        value_parser = clap::value_parser!(u32).range(1..),
        global = true
    )]
    precision: u32,
}

/// A validated invocation.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub format: OutputFormat,
    pub out: Option<PathBuf>,
    pub workers: usize,
    pub precision_bits: u32,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        Self {
            command,
            format: OutputFormat::Text,
            out: None,
            workers: 1,
            precision_bits: 128,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn new(code: i32, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }

    fn invalid(message: impl Into<String>) -> Self {
        Self::new(EXIT_INVALID, message)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

fn classify(kind: ErrorKind) -> i32 {
    match kind {
        ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
        ErrorKind::MissingRequiredArgument
        | ErrorKind::MissingSubcommand
        | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => EXIT_MISSING,
        ErrorKind::InvalidValue | ErrorKind::ValueValidation | ErrorKind::InvalidUtf8 => EXIT_INVALID,
        _ => EXIT_UNKNOWN,
    }
}

fn validate(cfg: &RunConfig) -> Result<(), CliError> {
    let non_square = |n: u128| {
        if n < 2 || is_perfect_square(n) {
            Err(CliError::invalid(format!("--n {n} must be a non-square integer ≥ 2")))
        } else {
            Ok(())
        }
    };
    match cfg.command {
        Command::Cf { n } | Command::Pell { n } | Command::Classnum { n } => non_square(n)?,
        Command::Unit { n } => {
            if !is_fundamental_discriminant(n) {
                return Err(CliError::invalid(format!(
                    "--n {n} is not a positive fundamental discriminant"
                )));
            }
        }
        Command::Certify { k, n } => {
            if n <= u64::from(k) {
                return Err(CliError::invalid(format!("--n {n} must exceed --k {k}")));
            }
            if k == 0 && n == 1 {
                return Err(CliError::invalid("d(0, 1) = 0 is not a radicand"));
            }
        }
        Command::Search { k, x, n_min, n_max } => {
            if !x.is_finite() {
                return Err(CliError::invalid("--X must be finite"));
            }
            if n_min.max(u64::from(k) + 1) > n_max {
                return Err(CliError::invalid(format!(
                    "empty range: --n-min {n_min}, --n-max {n_max}, --k {k}"
                )));
            }
        }
        Command::Kbound { n, eps } => {
            if n < 3 {
                return Err(CliError::invalid(format!("--n {n} must be at least 3")));
            }
            if !(eps > 0.0 && eps < 0.1) {
                return Err(CliError::invalid(format!("--eps {eps} must lie in (0, 0.1)")));
            }
        }
        Command::Polyscan { k, n_max } => {
            if n_max <= u64::from(k) {
                return Err(CliError::invalid(format!("--n-max {n_max} must exceed --k {k}")));
            }
        }
    }
    if cfg.format == OutputFormat::Csv
        && !matches!(cfg.command, Command::Certify { .. } | Command::Search { .. })
    {
        return Err(CliError::invalid(format!(
            "csv output is defined for certify and search, not {}",
            cfg.command.name()
        )));
    }
    Ok(())
}

/// Parses the arguments after the program name.
pub fn parse_args<I, T>(argv: I) -> Result<RunConfig, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = std::iter::once(OsString::from("realquad")).chain(argv.into_iter().map(Into::into));
    let cli = Cli::try_parse_from(args).map_err(|e| CliError::new(classify(e.kind()), e.render().to_string()))?;
    let cfg = RunConfig {
        command: cli.command,
        format: cli.format,
        out: cli.out,
        workers: cli.workers as usize,
        precision_bits: cli.precision,
    };
    validate(&cfg)?;
    Ok(cfg)
}

/// Parses, runs and emits; returns the process exit code.
pub fn main_with_args<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match parse_args(argv) {
        Ok(cfg) => cfg,
        Err(e) if e.code == EXIT_OK => {
            print!("{}", e.message);
            return EXIT_OK;
        }
        Err(e) => {
            eprint!("{}", e.message);
            if !e.message.ends_with('\n') {
                eprintln!();
            }
            return e.code;
        }
    };
    let report = match run(&cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return e.code;
        }
    };
    if let Err(e) = emit(&report, cfg.format, cfg.out.as_deref()) {
        eprintln!("error: {e}");
        return e.code;
    }
    report.exit_code()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn codes(args: &[&str]) -> i32 {
        match parse_args(args.iter().copied()) {
            Ok(_) => 0,
            Err(e) => e.code,
        }
    }

    #[test]
    fn parse_examples() {
        let c = parse_args(["certify", "--k", "1", "--n", "3", "--format", "json"]).unwrap();
        assert_eq!(c.command, Command::Certify { k: 1, n: 3 });
        assert_eq!(c.format, OutputFormat::Json);
        let c = parse_args(["search", "--k", "2", "--X", "1", "--n-max", "500"]).unwrap();
        assert_eq!(
            c.command,
            Command::Search {
                k: 2,
                x: 1.0,
                n_min: 2,
                n_max: 500
            }
        );
        assert_eq!(codes(&["certify", "--k", "5", "--n", "3"]), EXIT_INVALID);
    }

    #[test]
    fn exit_code_classes() {
        assert_eq!(codes(&["certify", "--k", "1", "--n", "3", "--bogus"]), EXIT_UNKNOWN);
        assert_eq!(codes(&["frobnicate"]), EXIT_UNKNOWN);
        assert_eq!(codes(&["certify", "--k", "1"]), EXIT_MISSING);
        assert_eq!(codes(&[]), EXIT_MISSING);
        assert_eq!(codes(&["certify", "--k", "one", "--n", "3"]), EXIT_INVALID);
        assert_eq!(codes(&["cf", "--n", "49"]), EXIT_INVALID);
        assert_eq!(codes(&["unit", "--n", "9"]), EXIT_INVALID);
        assert_eq!(codes(&["kbound", "--n", "100", "--eps", "0.2"]), EXIT_INVALID);
        assert_eq!(codes(&["cf", "--n", "33", "--workers", "0"]), EXIT_INVALID);
        assert_eq!(codes(&["cf", "--n", "33", "--format", "csv"]), EXIT_INVALID);
        assert_eq!(codes(&["search", "--k", "1", "--X", "1", "--n-min", "9", "--n-max", "3"]), EXIT_INVALID);
        assert_eq!(codes(&["--help"]), EXIT_OK);
    }

    #[test]
    fn global_flags_after_subcommand() {
        let c = parse_args(["cf", "--n", "33", "--workers", "8", "--precision", "53"]).unwrap();
        assert_eq!(c.workers, 8);
        assert_eq!(c.precision_bits, 53);
        let c = parse_args(["cf", "--n", "33"]).unwrap();
        assert_eq!(c.precision_bits, 128);
    }
}
