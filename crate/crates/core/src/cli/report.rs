use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::{CliError, Command, OutputFormat, RunConfig, EXIT_INVALID, EXIT_NOT_FOUND, EXIT_OK, VERSION};
use crate::cfrac::{cf_expand, fundamental_unit, pell_min, CfExpansion, FundUnit, PellSolution, QuadSurd};
use crate::classgroup::{class_number_with, FieldInvariants, Summation};
use crate::decimal;
use crate::family::{
    certify_with, conjecture_scan, remark1_k_bound, theorem1_search, FamilyCertificate, ScanSummary,
    SearchOutcome,
};

/// The parts of the configuration that determine the results.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub command: Command,
    pub format: OutputFormat,
    pub precision_bits: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Phase {
    pub name: String,
    pub seconds: f64,
}

/// Execution details that may differ between otherwise identical runs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunInfo {
    pub workers: usize,
    pub timing: Vec<Phase>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", content = "result", rename_all = "lowercase")]
pub enum Results {
    Cf {
        #[serde(rename = "N", with = "decimal")]
        radicand: u128,
        expansion: CfExpansion,
    },
    Pell {
        #[serde(rename = "N", with = "decimal")]
        radicand: u128,
        plus: PellSolution,
        minus: Option<PellSolution>,
    },
    Unit {
        unit: FundUnit,
        regulator: f64,
    },
    Classnum(FieldInvariants),
    Certify(FamilyCertificate),
    Search(SearchOutcome),
    Kbound {
        n: u64,
        eps: f64,
        k_bound: u64,
    },
    Polyscan(ScanSummary),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub version: String,
    pub config: ConfigEcho,
    pub results: Results,
    pub run: RunInfo,
}

impl Report {
    /// 1 for a search that found nothing, 0 otherwise.
    pub fn exit_code(&self) -> i32 {
        match &self.results {
            Results::Search(s) if !s.found => EXIT_NOT_FOUND,
            _ => EXIT_OK,
        }
    }

    /// The report with the execution block cleared, for determinism checks.
    pub fn without_run_info(&self) -> Report {
        Report {
            run: RunInfo {
                workers: 0,
                timing: Vec::new(),
            },
            ..self.clone()
        }
    }
}

fn failed(e: impl std::fmt::Display) -> CliError {
    CliError::new(EXIT_INVALID, e.to_string())
}

fn dispatch(command: &Command, mode: Summation) -> Result<Results, CliError> {
    Ok(match *command {
        Command::Cf { n } => Results::Cf {
            radicand: n,
            expansion: cf_expand(&QuadSurd::sqrt(n).map_err(failed)?).map_err(failed)?,
        },
        Command::Pell { n } => {
            let (plus, minus) = pell_min(n).map_err(failed)?;
            Results::Pell {
                radicand: n,
                plus,
                minus,
            }
        }
        Command::Unit { n } => {
            let unit = fundamental_unit(n).map_err(failed)?;
            let regulator = unit.ln();
            Results::Unit { unit, regulator }
        }
        Command::Classnum { n } => Results::Classnum(class_number_with(n, mode).map_err(failed)?),
        Command::Certify { k, n } => Results::Certify(certify_with(k, n, mode).map_err(failed)?),
        Command::Search { k, x, n_min, n_max } => {
            Results::Search(theorem1_search(k, x, n_min, n_max, mode).map_err(failed)?)
        }
        Command::Kbound { n, eps } => Results::Kbound {
            n,
            eps,
            k_bound: remark1_k_bound(n, eps).map_err(failed)?,
        },
        Command::Polyscan { k, n_max } => Results::Polyscan(conjecture_scan(k, n_max).map_err(failed)?),
    })
}

/// Runs the command on a pool of `config.workers` threads.
pub fn run(config: &RunConfig) -> Result<Report, CliError> {
    let start = Instant::now();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
        .map_err(|e| CliError::new(EXIT_INVALID, format!("cannot start {} workers: {e}", config.workers)))?;
    let mode = Summation::for_precision(config.precision_bits);
    let results = pool.install(|| dispatch(&config.command, mode))?;
    Ok(Report {
        version: VERSION.to_string(),
        config: ConfigEcho {
            command: config.command.clone(),
            format: config.format,
            precision_bits: config.precision_bits,
        },
        results,
        run: RunInfo {
            workers: config.workers,
            timing: vec![Phase {
                name: "compute".to_string(),
                seconds: start.elapsed().as_secs_f64(),
            }],
        },
    })
}
