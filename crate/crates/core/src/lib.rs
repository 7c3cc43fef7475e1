//! Cooperative spectrum sensing with linear soft-decision fusion.
//!
//! Secondary users (SUs) measure the energy of a primary-user band and relay
//! it through amplify-and-forward links to a fusion centre (FC), which
//! compares the weighted sum `ωᵀZ` against a threshold. The crate provides:
//!
//! * the scenario model and its Gaussian energy statistics
//!   ([`scenario`], [`statistics`]), with a signal-level Monte Carlo oracle
//!   ([`energy`]);
//! * the analytic weighting schemes EGC, MRC, NDC and MDC, the OR-rule
//!   hard-fusion baseline, and closed-form global `Pf`/`Pd` ([`weights`],
//!   [`detection`]);
//! * a binary genetic algorithm that searches the weight vector maximizing
//!   `Pd` at a fixed `Pf` ([`ga`]).
//!
//! The analytic code is generic over [`Real`] (`f32` or `f64`); the `*64`
//! aliases below are what most callers want.

pub mod detection;
pub mod energy;
pub mod error;
pub mod ga;
pub mod normal;
pub mod real;
pub mod scenario;
pub mod seeding;
pub mod statistics;
pub mod weights;

pub use detection::{
    deflection, detection_pair, or_rule_hdf, pd_given_pf, pd_given_pf_raw, pf_given_pd,
    threshold_for_pf, FusedMoments,
};
pub use energy::{simulate_energies, EnergySample, Hypothesis};
pub use error::{Error, Result};
pub use ga::{run_bga, Chromosome, GaConfig, GaRun, GenerationStats};
pub use normal::{q_tail, q_tail_inverse};
pub use real::Real;
pub use scenario::{generate_scenario, Scenario, ScenarioSpec};
pub use statistics::{statistics, FusionStatistics};
pub use weights::{
    normalize, weights_egc, weights_mdc, weights_mrc, weights_mrc_from_snr, weights_ndc, Scheme,
    SchemeResult, WeightVector,
};

pub type Scenario64 = Scenario<f64>;
pub type Scenario32 = Scenario<f32>;
pub type FusionStatistics64 = FusionStatistics<f64>;
pub type FusionStatistics32 = FusionStatistics<f32>;
pub type WeightVector64 = WeightVector<f64>;
pub type WeightVector32 = WeightVector<f32>;
pub type EnergySample64 = EnergySample<f64>;
pub type GaRun64 = GaRun<f64>;
pub type SchemeResult64 = SchemeResult<f64>;
