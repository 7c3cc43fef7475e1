//! Experiment configuration, read from a single JSON document.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use softfusion::{GaConfig, ScenarioSpec, Scheme};

use crate::error::{HarnessError, Result};

/// Substream tags below the master seed.
pub(crate) mod stream {
    pub const SCENARIO: u64 = 1;
    pub const ROC_BGA: u64 = 2;
    pub const CONVERGE_BGA: u64 = 3;
    pub const SWEEP_SCENARIO: u64 = 4;
    pub const SWEEP_BGA: u64 = 5;
    pub const VALIDATE_H0: u64 = 6;
    pub const VALIDATE_H1: u64 = 7;
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub scenario: ScenarioSpec,
    /// Number of scenario realizations averaged in the ROC experiment.
    pub realizations: usize,
    pub pf_grid: Vec<f64>,
    pub schemes: Vec<Scheme>,
    /// GA control parameters. `users`, `pf_target` and `seed` are overridden
    /// per run from the scenario, the grid point and the master seed.
    pub ga: GaConfig,
    pub seed: u64,
    /// Optimize the BGA once per realization at `reference_pf` and reuse the
    /// weights across the grid.
    pub fast: bool,
    pub reference_pf: f64,
    pub out_dir: PathBuf,
    pub sweep: SweepConfig,
    pub validate: ValidateConfig,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            scenario: ScenarioSpec::default(),
            realizations: 1000,
            pf_grid: vec![
                0.01, 0.05, 0.1, 0.2, 0.25, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9,
            ],
            schemes: Scheme::ALL.to_vec(),
            ga: GaConfig::default(),
            seed: 1,
            fast: false,
            reference_pf: 0.25,
            out_dir: PathBuf::from("out"),
            sweep: SweepConfig::default(),
            validate: ValidateConfig::default(),
        }
    }
}

/// One-factor-at-a-time grids around `ExperimentConfig::ga`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepConfig {
    pub repetitions: usize,
    pub nbits: Vec<usize>,
    pub pops: Vec<usize>,
    pub crossover_rate: Vec<f64>,
    pub mutation_rate: Vec<f64>,
    pub reproduction: Vec<f64>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            repetitions: 100,
            nbits: vec![2, 4, 6, 8, 10],
            pops: vec![10, 20, 30, 40, 50],
            crossover_rate: vec![0.50, 0.65, 0.75, 0.85, 0.95],
            mutation_rate: vec![0.01, 0.1, 0.15, 0.2, 0.3, 0.6, 0.9],
            reproduction: vec![0.5, 0.6, 0.7, 0.8, 0.9],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ValidateConfig {
    pub trials: usize,
    /// Thresholds are placed where the analytic false-alarm rate equals these.
    pub pf_points: Vec<f64>,
    pub scheme: Scheme,
}

impl Default for ValidateConfig {
    fn default() -> Self {
        Self {
            trials: 100_000,
            pf_points: vec![0.05, 0.1, 0.25, 0.5, 0.75],
            scheme: Scheme::Ndc,
        }
    }
}

fn check_grid(name: &str, grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(HarnessError::Config(format!("{name} is empty")));
    }
    if grid.iter().any(|&p| !(p > 0.0 && p < 1.0)) {
        return Err(HarnessError::Config(format!(
            "{name} entries must lie in (0, 1)"
        )));
    }
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(HarnessError::Config(format!(
            "{name} must be strictly increasing"
        )));
    }
    Ok(())
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
        serde_json::from_str(&text)
            .map_err(|e| HarnessError::Config(format!("{}: {e}", path.display())))
    }

    /// GA configuration for one run on this config's scenario.
    pub fn ga_for(&self, pf_target: f64, seed: u64) -> GaConfig {
        GaConfig {
            users: self.scenario.users,
            pf_target,
            seed,
            ..self.ga.clone()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let cfg_err = |e: softfusion::Error| HarnessError::Config(e.to_string());
        self.scenario.validate().map_err(cfg_err)?;
        if self.realizations == 0 {
            return Err(HarnessError::Config("realizations must be >= 1".into()));
        }
        check_grid("pf_grid", &self.pf_grid)?;
        if self.schemes.is_empty() {
            return Err(HarnessError::Config("no schemes selected".into()));
        }
        if !(self.reference_pf > 0.0 && self.reference_pf < 1.0) {
            return Err(HarnessError::Config(
                "reference_pf must lie in (0, 1)".into(),
            ));
        }
        self.ga_for(self.ga.pf_target, 0)
            .validate()
            .map_err(cfg_err)?;
        if self.sweep.repetitions == 0 {
            return Err(HarnessError::Config(
                "sweep.repetitions must be >= 1".into(),
            ));
        }
        if self.validate.trials == 0 {
            return Err(HarnessError::Config("validate.trials must be >= 1".into()));
        }
        check_grid("validate.pf_points", &self.validate.pf_points)?;
        if !self.validate.scheme.is_soft() || self.validate.scheme == Scheme::Bga {
            return Err(HarnessError::Config(
                "validate.scheme must be EGC, MRC, NDC or MDC".into(),
            ));
        }
        Ok(())
    }
}
