//! Ensemble ROC comparison of the fusion schemes.

use rayon::prelude::*;
use softfusion::seeding::derive_seed;
use softfusion::{
    generate_scenario, or_rule_hdf, pd_given_pf, run_bga, statistics, weights_egc, weights_mdc,
    weights_mrc, weights_ndc, FusionStatistics64, Scenario64, Scheme, WeightVector64,
};

use crate::config::{stream, ExperimentConfig};
use crate::csv_out::{format_real, CsvTable};
use crate::error::{HarnessError, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct RocPoint {
    pub pf: f64,
    pub pd_mean: f64,
    pub pd_stderr: f64,
}

/// Ensemble-mean ROC of one scheme.
#[derive(Debug, Clone, PartialEq)]
pub struct RocCurve {
    pub scheme: Scheme,
    pub points: Vec<RocPoint>,
    pub realizations: usize,
}

impl RocCurve {
    pub fn pd_at(&self, pf: f64) -> Option<f64> {
        self.points.iter().find(|p| p.pf == pf).map(|p| p.pd_mean)
    }
}

/// `Pd` of every configured scheme at every grid point, for one realization.
/// Indexed `[scheme][pf]` in config order.
#[derive(Debug, Clone, PartialEq)]
pub struct RealizationPd {
    pub index: usize,
    pub pd: Vec<Vec<f64>>,
}

/// The scenario used for realization `index`.
pub fn realization_scenario(
    cfg: &ExperimentConfig,
    index: usize,
) -> softfusion::Result<Scenario64> {
    generate_scenario(
        &cfg.scenario,
        derive_seed(cfg.seed, &[stream::SCENARIO, index as u64]),
    )
}

fn analytic_weights(
    scheme: Scheme,
    s: &Scenario64,
    st: &FusionStatistics64,
) -> softfusion::Result<WeightVector64> {
    match scheme {
        Scheme::Egc => weights_egc(s.users()),
        Scheme::Mrc => weights_mrc(s),
        Scheme::Ndc => weights_ndc(st),
        Scheme::Mdc => weights_mdc(st),
        Scheme::Bga | Scheme::OrRule => unreachable!("not an analytic weight scheme"),
    }
}

fn evaluate_realization(cfg: &ExperimentConfig, index: usize) -> softfusion::Result<RealizationPd> {
    let s = realization_scenario(cfg, index)?;
    let st = statistics(&s);
    let bga_seed =
        |slot: usize| derive_seed(cfg.seed, &[stream::ROC_BGA, index as u64, slot as u64]);
    let mut pd = Vec::with_capacity(cfg.schemes.len());
    for &scheme in &cfg.schemes {
        let row = match scheme {
            Scheme::OrRule => cfg
                .pf_grid
                .iter()
                .map(|&pf| or_rule_hdf(&st, pf).map(|(_, pd)| pd))
                .collect::<softfusion::Result<Vec<_>>>()?,
            Scheme::Bga if cfg.fast => {
                // Slot past the grid so fast and full runs use different streams.
                let run = run_bga(
                    &st,
                    &cfg.ga_for(cfg.reference_pf, bga_seed(cfg.pf_grid.len())),
                )?;
                cfg.pf_grid
                    .iter()
                    .map(|&pf| pd_given_pf(&run.best_weights, &st, pf))
                    .collect::<softfusion::Result<Vec<_>>>()?
            }
            Scheme::Bga => cfg
                .pf_grid
                .iter()
                .enumerate()
                .map(|(k, &pf)| {
                    run_bga(&st, &cfg.ga_for(pf, bga_seed(k))).map(|run| run.best_fitness)
                })
                .collect::<softfusion::Result<Vec<_>>>()?,
            _ => {
                let w = analytic_weights(scheme, &s, &st)?;
                cfg.pf_grid
                    .iter()
                    .map(|&pf| pd_given_pf(&w, &st, pf))
                    .collect::<softfusion::Result<Vec<_>>>()?
            }
        };
        pd.push(row);
    }
    Ok(RealizationPd { index, pd })
}

/// Evaluates every realization. Realizations run in parallel and are
/// returned in index order.
pub fn roc_realizations(cfg: &ExperimentConfig) -> Result<Vec<RealizationPd>> {
    cfg.validate()?;
    (0..cfg.realizations)
        .into_par_iter()
        .map(|i| {
            evaluate_realization(cfg, i)
                .map_err(|source| HarnessError::Realization { index: i, source })
        })
        .collect()
}

/// Mean and standard error per scheme and grid point, reduced in index order.
pub fn aggregate(cfg: &ExperimentConfig, runs: &[RealizationPd]) -> Vec<RocCurve> {
    let n = runs.len();
    cfg.schemes
        .iter()
        .enumerate()
        .map(|(si, &scheme)| {
            let points = cfg
                .pf_grid
                .iter()
                .enumerate()
                .map(|(pi, &pf)| {
                    let xs: Vec<f64> = runs.iter().map(|r| r.pd[si][pi]).collect();
                    let mean = xs.iter().sum::<f64>() / n as f64;
                    let pd_stderr = if n > 1 {
                        let var =
                            xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
                        (var / n as f64).sqrt()
                    } else {
                        0.0
                    };
                    RocPoint {
                        pf,
                        pd_mean: mean,
                        pd_stderr,
                    }
                })
                .collect();
            RocCurve {
                scheme,
                points,
                realizations: n,
            }
        })
        .collect()
}

/// ROC curves for every configured scheme, averaged over the ensemble.
pub fn run_roc(cfg: &ExperimentConfig) -> Result<Vec<RocCurve>> {
    let runs = roc_realizations(cfg)?;
    Ok(aggregate(cfg, &runs))
}

/// `roc.csv`: `scheme,pf,pd_mean,pd_stderr,realizations`.
pub struct RocTable<'a>(pub &'a [RocCurve]);

impl CsvTable for RocTable<'_> {
    fn header(&self) -> &'static [&'static str] {
        &["scheme", "pf", "pd_mean", "pd_stderr", "realizations"]
    }

    fn rows(&self) -> Vec<Vec<String>> {
        self.0
            .iter()
            .flat_map(|c| {
                c.points.iter().map(move |p| {
                    vec![
                        c.scheme.label().to_string(),
                        format_real(p.pf),
                        format_real(p.pd_mean),
                        format_real(p.pd_stderr),
                        c.realizations.to_string(),
                    ]
                })
            })
            .collect()
    }
}
