//! Command-line front end.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use softfusion::scenario::linear_to_db;
use softfusion::{statistics, FusionStatistics64, Scenario64};

use crate::config::ExperimentConfig;
use crate::convergence::{run_convergence, ConvergenceTable};
use crate::csv_out::{emit_csv, emit_metadata, CsvTable};
use crate::error::{HarnessError, Result};
use crate::roc::{realization_scenario, run_roc, RocTable};
use crate::sweep::{run_param_sweep, SweepParameter, SweepTable};
use crate::validate::{run_validation, ValidationTable};

#[derive(Debug, Parser)]
#[command(
    name = "softfusion",
    version,
    about = "Soft-decision fusion experiments for cooperative spectrum sensing"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// JSON experiment configuration; defaults are used when omitted.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Master seed.
    #[arg(long, global = true, value_name = "U64")]
    pub seed: Option<u64>,
    /// Output directory.
    #[arg(long, global = true, value_name = "DIR")]
    pub out: Option<PathBuf>,
    /// Scenario realizations (`roc`) or repetitions per grid value (`sweep`).
    #[arg(long, global = true, value_name = "N")]
    pub realizations: Option<usize>,
    /// Optimize the BGA once per realization and reuse its weights across the Pf grid.
    #[arg(long, global = true)]
    pub fast: bool,
}

#[derive(Debug, Clone, Copy, Subcommand)]
pub enum Command {
    /// Print the first scenario realization and its statistics as JSON.
    Scenario,
    /// Ensemble ROC of every configured scheme (roc.csv).
    Roc,
    /// GA convergence trace on one scenario (converge.csv).
    Converge,
    /// One-factor-at-a-time GA parameter sweep (sweep.csv).
    Sweep,
    /// Monte Carlo check of the analytic Pf/Pd (validate.csv).
    Validate,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Scenario => "scenario",
            Command::Roc => "roc",
            Command::Converge => "converge",
            Command::Sweep => "sweep",
            Command::Validate => "validate",
        }
    }
}

/// Loads the config file and applies command-line overrides.
pub fn resolve_config(args: &GlobalArgs) -> Result<ExperimentConfig> {
    let mut cfg = match &args.config {
        Some(path) => ExperimentConfig::load(path)?,
        None => ExperimentConfig::default(),
    };
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }
    if let Some(out) = &args.out {
        cfg.out_dir = out.clone();
    }
    if let Some(n) = args.realizations {
        cfg.realizations = n;
        cfg.sweep.repetitions = n;
    }
    cfg.fast |= args.fast;
    cfg.validate()?;
    Ok(cfg)
}

#[derive(Serialize)]
struct ScenarioReport<'a> {
    seed: u64,
    snr_db: Vec<f64>,
    scenario: &'a Scenario64,
    statistics: &'a FusionStatistics64,
}

fn write_artifact(
    table: &impl CsvTable,
    cfg: &ExperimentConfig,
    file: &str,
    command: Command,
) -> Result<PathBuf> {
    let path = cfg.out_dir.join(file);
    emit_csv(table, &path)?;
    emit_metadata(&path, command.name(), cfg)?;
    Ok(path)
}

fn write_json(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| HarnessError::io(dir, e))?;
    }
    std::fs::write(path, text).map_err(|e| HarnessError::io(path, e))
}

/// Runs one subcommand. Status lines go to stderr; stdout carries only the
/// scenario JSON and the sweep summary.
pub fn run(cli: &Cli) -> Result<()> {
    let cfg = resolve_config(&cli.global)?;
    match cli.command {
        Command::Scenario => {
            let s = realization_scenario(&cfg, 0)?;
            let st = statistics(&s);
            let report = ScenarioReport {
                seed: cfg.seed,
                snr_db: s.snrs().into_iter().map(linear_to_db).collect(),
                scenario: &s,
                statistics: &st,
            };
            let mut text = serde_json::to_string_pretty(&report).expect("scenario serializes");
            text.push('\n');
            print!("{text}");
            if cli.global.out.is_some() {
                write_json(&cfg.out_dir.join("scenario.json"), &text)?;
            }
        }
        Command::Roc => {
            let curves = run_roc(&cfg)?;
            let path = write_artifact(&RocTable(&curves), &cfg, "roc.csv", cli.command)?;
            eprintln!("wrote {}", path.display());
        }
        Command::Converge => {
            let run = run_convergence(&cfg)?;
            let path = write_artifact(&ConvergenceTable(&run), &cfg, "converge.csv", cli.command)?;
            eprintln!(
                "best fitness {:.6} after {} generations",
                run.best_fitness, run.generations_run
            );
            eprintln!("wrote {}", path.display());
        }
        Command::Sweep => {
            let rows = run_param_sweep(&cfg)?;
            let path = write_artifact(&SweepTable(&rows), &cfg, "sweep.csv", cli.command)?;
            let reference = softfusion::GaConfig::default();
            println!("parameter,argmax,reference");
            for p in SweepParameter::ALL {
                if let Some(r) = rows.iter().find(|r| r.parameter == p && r.is_argmax) {
                    println!("{},{},{}", p.name(), r.value, p.current(&reference));
                }
            }
            eprintln!("wrote {}", path.display());
        }
        Command::Validate => {
            let rows = run_validation(&cfg)?;
            let path = write_artifact(&ValidationTable(&rows), &cfg, "validate.csv", cli.command)?;
            let worst = rows.iter().map(|r| r.max_error()).fold(0.0, f64::max);
            eprintln!("max |analytic - empirical| = {worst:.5}");
            eprintln!("wrote {}", path.display());
        }
    }
    Ok(())
}
