use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Guard against binary rounding in `pops · fraction` (e.g. `50 · 0.1`).
const ROUNDING_GUARD: f64 = 1e-9;

/// Control parameters of the binary GA. Defaults are the tuned set
/// `pops = 50, nbits = 10, P_c = 0.95, p_m = 0.01, Prep = 0.9` for 18 SUs,
/// 200 generations and `Pf = 0.25`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GaConfig {
    /// Population size.
    pub pops: usize,
    /// Bits per weight.
    pub nbits: usize,
    /// Number of SUs (weights per chromosome).
    pub users: usize,
    pub crossover_rate: f64,
    pub mutation_rate: f64,
    /// Fraction of the population reproduced each generation; the rest are elites.
    pub reproduction: f64,
    pub generations: usize,
    pub pf_target: f64,
    pub seed: u64,
}

impl Default for GaConfig {
    fn default() -> Self {
        Self {
            pops: 50,
            nbits: 10,
            users: 18,
            crossover_rate: 0.95,
            mutation_rate: 0.01,
            reproduction: 0.9,
            generations: 200,
            pf_target: 0.25,
            seed: 0,
        }
    }
}

impl GaConfig {
    /// `⌊pops · (1 − prep)⌋`.
    pub fn elite_count(&self) -> usize {
        (self.pops as f64 * (1.0 - self.reproduction) + ROUNDING_GUARD).floor() as usize
    }

    /// `⌈pops · prep⌉`.
    pub fn offspring_count(&self) -> usize {
        (self.pops as f64 * self.reproduction - ROUNDING_GUARD).ceil() as usize
    }

    pub fn chromosome_len(&self) -> usize {
        self.users * self.nbits
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        if self.pops < 2 || !self.pops.is_multiple_of(2) {
            return bad(format!(
                "pops must be an even number >= 2, got {}",
                self.pops
            ));
        }
        if self.nbits == 0 || self.nbits > 32 {
            return bad(format!("nbits must be in 1..=32, got {}", self.nbits));
        }
        if self.users == 0 {
            return bad("users must be >= 1".into());
        }
        if !(0.0..=1.0).contains(&self.crossover_rate) {
            return bad(format!(
                "crossover rate {} outside [0, 1]",
                self.crossover_rate
            ));
        }
        if !(0.0..=1.0).contains(&self.mutation_rate) {
            return bad(format!(
                "mutation rate {} outside [0, 1]",
                self.mutation_rate
            ));
        }
        if !(self.reproduction > 0.0 && self.reproduction <= 1.0) {
            return bad(format!(
                "reproduction fraction {} outside (0, 1]",
                self.reproduction
            ));
        }
        if self.generations == 0 {
            return bad("generations must be >= 1".into());
        }
        if !(self.pf_target > 0.0 && self.pf_target < 1.0) {
            return bad(format!("pf target {} outside (0, 1)", self.pf_target));
        }
        let (e, o) = (self.elite_count(), self.offspring_count());
        if e + o != self.pops {
            return bad(format!(
                "elites ({e}) + offspring ({o}) != pops ({})",
                self.pops
            ));
        }
        Ok(())
    }
}
