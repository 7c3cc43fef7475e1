//! Signal-level Monte Carlo of the energy detectors.
//!
//! This is the independent check on the Gaussian model in
//! [`crate::statistics`]: it draws the raw baseband samples of every link and
//! squares and sums them, without using any of the closed-form moments.

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::real::Real;
use crate::scenario::Scenario;
use crate::seeding::substream;

/// Trials per independently seeded chunk.
const CHUNK: usize = 512;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Hypothesis {
    /// PU absent.
    H0,
    /// PU present.
    H1,
}

/// Energies `Z_i` collected at the FC from all SUs in one sensing interval.
#[derive(Debug, Clone, PartialEq)]
pub struct EnergySample<T> {
    pub z: Vec<T>,
    pub hypothesis: Hypothesis,
}

impl<T: Real> EnergySample<T> {
    /// Linear fused statistic `ωᵀZ`.
    pub fn fuse(&self, w: &[T]) -> T {
        self.z.iter().zip(w).map(|(&z, &w)| z * w).sum()
    }
}

/// Simulates `trials` sensing intervals under `hypothesis`.
///
/// Per SU and per sample the FC receives
/// `√P h (g S + W) + N` (the `g S` term only under H1), with independent
/// `S ~ N(0, σ_S²)`, `W ~ N(0, σ_W²)`, `N ~ N(0, δ²)`. Trials are split into
/// fixed chunks, each drawing from its own substream of `seed`, so output is
/// identical regardless of thread count.
pub fn simulate_energies<T>(
    s: &Scenario<T>,
    hypothesis: Hypothesis,
    trials: usize,
    seed: u64,
) -> Result<Vec<EnergySample<T>>>
where
    T: Real,
    StandardNormal: Distribution<T>,
{
    if trials == 0 {
        return Err(Error::InvalidScenario("trials must be >= 1".into()));
    }
    let m = s.users();
    let k = s.samples();
    // Amplitudes of the noise, reporting-noise and PU-signal components.
    let coeffs: Vec<(T, T, T)> = (0..m)
        .map(|i| {
            let amp = s.relay_power()[i].sqrt() * s.reporting_gain()[i];
            let noise = amp * s.sensing_noise()[i].sqrt();
            let report = s.reporting_noise()[i].sqrt();
            let signal = match hypothesis {
                Hypothesis::H0 => T::zero(),
                Hypothesis::H1 => amp * s.sensing_gain()[i] * s.signal_power().sqrt(),
            };
            (noise, report, signal)
        })
        .collect();
    let tag = match hypothesis {
        Hypothesis::H0 => 0,
        Hypothesis::H1 => 1,
    };

    let chunks = trials.div_ceil(CHUNK);
    let out: Vec<Vec<EnergySample<T>>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = substream(seed, &[tag, c as u64]);
            let n = CHUNK.min(trials - c * CHUNK);
            (0..n)
                .map(|_| {
                    let z = coeffs
                        .iter()
                        .map(|&(a_w, a_n, a_s)| {
                            let mut acc = T::zero();
                            for _ in 0..k {
                                let w: T = rng.sample(StandardNormal);
                                let nn: T = rng.sample(StandardNormal);
                                let mut y = a_w * w + a_n * nn;
                                if tag == 1 {
                                    let sv: T = rng.sample(StandardNormal);
                                    y = y + a_s * sv;
                                }
                                acc = acc + y * y;
                            }
                            acc
                        })
                        .collect();
                    EnergySample { z, hypothesis }
                })
                .collect()
        })
        .collect();
    Ok(out.into_iter().flatten().collect())
}
