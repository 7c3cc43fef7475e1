//! Monte Carlo check of the closed-form global `Pf`/`Pd`.

use softfusion::seeding::derive_seed;
use softfusion::{
    detection_pair, simulate_energies, statistics, threshold_for_pf, weights_egc, weights_mdc,
    weights_mrc, weights_ndc, EnergySample64, Hypothesis, Scheme,
};

use crate::config::{stream, ExperimentConfig};
use crate::csv_out::{format_real, CsvTable};
use crate::error::Result;
use crate::roc::realization_scenario;

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationRow {
    pub pf_target: f64,
    pub threshold: f64,
    pub pf_analytic: f64,
    pub pf_empirical: f64,
    pub pd_analytic: f64,
    pub pd_empirical: f64,
    pub trials: usize,
}

impl ValidationRow {
    /// Largest absolute gap between analytic and empirical rates.
    pub fn max_error(&self) -> f64 {
        (self.pf_analytic - self.pf_empirical)
            .abs()
            .max((self.pd_analytic - self.pd_empirical).abs())
    }
}

fn exceedance(samples: &[EnergySample64], w: &[f64], beta: f64) -> f64 {
    samples.iter().filter(|s| s.fuse(w) > beta).count() as f64 / samples.len() as f64
}

/// Simulates the first scenario realization under both hypotheses and
/// compares empirical exceedance rates with the analytic pair at thresholds
/// placed on `validate.pf_points`.
pub fn run_validation(cfg: &ExperimentConfig) -> Result<Vec<ValidationRow>> {
    cfg.validate()?;
    let s = realization_scenario(cfg, 0)?;
    let st = statistics(&s);
    let w = match cfg.validate.scheme {
        Scheme::Egc => weights_egc(s.users())?,
        Scheme::Mrc => weights_mrc(&s)?,
        Scheme::Mdc => weights_mdc(&st)?,
        _ => weights_ndc(&st)?,
    };
    let trials = cfg.validate.trials;
    let h0 = simulate_energies(
        &s,
        Hypothesis::H0,
        trials,
        derive_seed(cfg.seed, &[stream::VALIDATE_H0]),
    )?;
    let h1 = simulate_energies(
        &s,
        Hypothesis::H1,
        trials,
        derive_seed(cfg.seed, &[stream::VALIDATE_H1]),
    )?;
    cfg.validate
        .pf_points
        .iter()
        .map(|&pf_target| {
            let beta = threshold_for_pf(&w, &st, pf_target)?;
            let (pf_analytic, pd_analytic) = detection_pair(&w, &st, beta)?;
            Ok(ValidationRow {
                pf_target,
                threshold: beta,
                pf_analytic,
                pf_empirical: exceedance(&h0, w.as_slice(), beta),
                pd_analytic,
                pd_empirical: exceedance(&h1, w.as_slice(), beta),
                trials,
            })
        })
        .collect()
}

/// `validate.csv`: `pf_target,threshold,pf_analytic,pf_empirical,pd_analytic,pd_empirical,trials`.
pub struct ValidationTable<'a>(pub &'a [ValidationRow]);

impl CsvTable for ValidationTable<'_> {
    fn header(&self) -> &'static [&'static str] {
        &[
            "pf_target",
            "threshold",
            "pf_analytic",
            "pf_empirical",
            "pd_analytic",
            "pd_empirical",
            "trials",
        ]
    }

    fn rows(&self) -> Vec<Vec<String>> {
        self.0
            .iter()
            .map(|r| {
                vec![
                    format_real(r.pf_target),
                    format_real(r.threshold),
                    format_real(r.pf_analytic),
                    format_real(r.pf_empirical),
                    format_real(r.pd_analytic),
                    format_real(r.pd_empirical),
                    r.trials.to_string(),
                ]
            })
            .collect()
    }
}
