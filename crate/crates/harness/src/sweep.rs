//! One-factor-at-a-time sensitivity of the GA to its control parameters.

use rayon::prelude::*;
use softfusion::seeding::derive_seed;
use softfusion::{generate_scenario, run_bga, statistics, GaConfig};

use crate::config::{stream, ExperimentConfig};
use crate::csv_out::{format_real, CsvTable};
use crate::error::{HarnessError, Result};

/// GA parameter varied by the sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepParameter {
    Nbits,
    Pops,
    CrossoverRate,
    MutationRate,
    Reproduction,
}

impl SweepParameter {
    pub const ALL: [SweepParameter; 5] = [
        SweepParameter::Nbits,
        SweepParameter::Pops,
        SweepParameter::CrossoverRate,
        SweepParameter::MutationRate,
        SweepParameter::Reproduction,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SweepParameter::Nbits => "nbits",
            SweepParameter::Pops => "pops",
            SweepParameter::CrossoverRate => "crossover_rate",
            SweepParameter::MutationRate => "mutation_rate",
            SweepParameter::Reproduction => "reproduction",
        }
    }

    fn grid(self, cfg: &ExperimentConfig) -> Vec<f64> {
        let s = &cfg.sweep;
        match self {
            SweepParameter::Nbits => s.nbits.iter().map(|&v| v as f64).collect(),
            SweepParameter::Pops => s.pops.iter().map(|&v| v as f64).collect(),
            SweepParameter::CrossoverRate => s.crossover_rate.clone(),
            SweepParameter::MutationRate => s.mutation_rate.clone(),
            SweepParameter::Reproduction => s.reproduction.clone(),
        }
    }

    fn apply(self, ga: &mut GaConfig, value: f64) {
        match self {
            SweepParameter::Nbits => ga.nbits = value as usize,
            SweepParameter::Pops => ga.pops = value as usize,
            SweepParameter::CrossoverRate => ga.crossover_rate = value,
            SweepParameter::MutationRate => ga.mutation_rate = value,
            SweepParameter::Reproduction => ga.reproduction = value,
        }
    }

    /// Value of this parameter in `ga`.
    pub fn current(self, ga: &GaConfig) -> f64 {
        match self {
            SweepParameter::Nbits => ga.nbits as f64,
            SweepParameter::Pops => ga.pops as f64,
            SweepParameter::CrossoverRate => ga.crossover_rate,
            SweepParameter::MutationRate => ga.mutation_rate,
            SweepParameter::Reproduction => ga.reproduction,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub parameter: SweepParameter,
    pub value: f64,
    pub mean_fitness: f64,
    pub stderr: f64,
    pub is_argmax: bool,
}

fn mean_stderr(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// Sweeps `parameters` one at a time, holding the rest at `cfg.ga`.
///
/// Repetition `r` uses the same scenario and GA seed for every grid value.
pub fn run_sweep(cfg: &ExperimentConfig, parameters: &[SweepParameter]) -> Result<Vec<SweepRow>> {
    cfg.validate()?;
    let reps = cfg.sweep.repetitions;
    let stats = (0..reps)
        .into_par_iter()
        .map(|r| {
            generate_scenario::<f64>(
                &cfg.scenario,
                derive_seed(cfg.seed, &[stream::SWEEP_SCENARIO, r as u64]),
            )
            .map(|s| statistics(&s))
            .map_err(|source| HarnessError::Realization { index: r, source })
        })
        .collect::<Result<Vec<_>>>()?;

    let mut rows = Vec::new();
    for &p in parameters {
        let grid = p.grid(cfg);
        if grid.is_empty() {
            return Err(HarnessError::Config(format!("sweep.{} is empty", p.name())));
        }
        let start = rows.len();
        for value in grid {
            let mut ga = cfg.ga_for(cfg.ga.pf_target, 0);
            p.apply(&mut ga, value);
            ga.validate()
                .map_err(|e| HarnessError::Config(format!("sweep.{} = {value}: {e}", p.name())))?;
            let best = stats
                .par_iter()
                .enumerate()
                .map(|(r, st)| {
                    let ga = GaConfig {
                        seed: derive_seed(cfg.seed, &[stream::SWEEP_BGA, r as u64]),
                        ..ga.clone()
                    };
                    run_bga(st, &ga)
                        .map(|run| run.best_fitness)
                        .map_err(|source| HarnessError::Realization { index: r, source })
                })
                .collect::<Result<Vec<f64>>>()?;
            let (mean_fitness, stderr) = mean_stderr(&best);
            rows.push(SweepRow {
                parameter: p,
                value,
                mean_fitness,
                stderr,
                is_argmax: false,
            });
        }
        let block = &mut rows[start..];
        let best = block
            .iter()
            .map(|r| r.mean_fitness)
            .fold(f64::NEG_INFINITY, f64::max);
        // First maximum only, so exactly one row per parameter is flagged.
        if let Some(row) = block.iter_mut().find(|r| r.mean_fitness == best) {
            row.is_argmax = true;
        }
    }
    Ok(rows)
}

/// Sweeps all five parameters.
pub fn run_param_sweep(cfg: &ExperimentConfig) -> Result<Vec<SweepRow>> {
    run_sweep(cfg, &SweepParameter::ALL)
}

/// `sweep.csv`: `parameter,value,mean_fitness,stderr,is_argmax`.
pub struct SweepTable<'a>(pub &'a [SweepRow]);

impl CsvTable for SweepTable<'_> {
    fn header(&self) -> &'static [&'static str] {
        &["parameter", "value", "mean_fitness", "stderr", "is_argmax"]
    }

    fn rows(&self) -> Vec<Vec<String>> {
        self.0
            .iter()
            .map(|r| {
                vec![
                    r.parameter.name().to_string(),
                    format_real(r.value),
                    format_real(r.mean_fitness),
                    format_real(r.stderr),
                    r.is_argmax.to_string(),
                ]
            })
            .collect()
    }
}
