//! Single GA run with its per-generation trace.

use softfusion::seeding::derive_seed;
use softfusion::{run_bga, statistics, GaRun64};

use crate::config::{stream, ExperimentConfig};
use crate::csv_out::{format_real, CsvTable};
use crate::error::Result;
use crate::roc::realization_scenario;

/// Runs the GA once on the config's first scenario realization at
/// `cfg.ga.pf_target`.
pub fn run_convergence(cfg: &ExperimentConfig) -> Result<GaRun64> {
    cfg.validate()?;
    let s = realization_scenario(cfg, 0)?;
    let st = statistics(&s);
    let ga = cfg.ga_for(
        cfg.ga.pf_target,
        derive_seed(cfg.seed, &[stream::CONVERGE_BGA]),
    );
    Ok(run_bga(&st, &ga)?)
}

/// `converge.csv`: `generation,best_fitness,mean_fitness`.
pub struct ConvergenceTable<'a>(pub &'a GaRun64);

impl CsvTable for ConvergenceTable<'_> {
    fn header(&self) -> &'static [&'static str] {
        &["generation", "best_fitness", "mean_fitness"]
    }

    fn rows(&self) -> Vec<Vec<String>> {
        self.0
            .trace
            .iter()
            .map(|g| {
                vec![
                    g.generation.to_string(),
                    format_real(g.best),
                    format_real(g.mean),
                ]
            })
            .collect()
    }
}
