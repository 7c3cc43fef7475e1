use std::cmp::Ordering;

use rand::Rng;
use serde::Serialize;

use super::chromosome::{decode, Chromosome};
use super::config::GaConfig;
use super::operators::{crossover, mutate, pair_indices, roulette_select};
use crate::error::{Error, Result};
use crate::normal::{q_tail, q_tail_inverse};
use crate::real::Real;
use crate::seeding::rng_from_seed;
use crate::statistics::FusionStatistics;
use crate::weights::{normalize, WeightVector};

/// Chromosome fitness for fixed statistics and false-alarm target.
///
/// Decoding, normalization and the `Pd` formula are fused into one pass.
/// `Pd` is homogeneous of degree zero in the weights, so the decoded raw
/// weights are used without dividing by their norm.
#[derive(Debug, Clone)]
pub struct FitnessEvaluator<'a, T> {
    st: &'a FusionStatistics<T>,
    nbits: usize,
    scale: T,
    q_pf: T,
}

impl<'a, T: Real> FitnessEvaluator<'a, T> {
    pub fn new(st: &'a FusionStatistics<T>, cfg: &GaConfig) -> Result<Self> {
        if st.len() != cfg.users {
            return Err(Error::LengthMismatch {
                expected: cfg.users,
                found: st.len(),
            });
        }
        if cfg.nbits == 0 || cfg.nbits > 32 {
            return Err(Error::InvalidConfig(format!(
                "nbits must be in 1..=32, got {}",
                cfg.nbits
            )));
        }
        let q_pf = q_tail_inverse(T::lit(cfg.pf_target))?;
        let scale =
            T::one() / T::from_u64((1u64 << cfg.nbits) - 1).expect("code range representable");
        Ok(Self {
            st,
            nbits: cfg.nbits,
            scale,
            q_pf,
        })
    }

    /// `Pd(ω)` of the normalized decoded weights; 0 when every weight decodes to zero.
    pub fn evaluate(&self, c: &Chromosome) -> T {
        debug_assert_eq!(c.len(), self.st.len() * self.nbits);
        let (theta, var0, var1) = (self.st.theta(), self.st.var0(), self.st.var1());
        let mut shift = T::zero();
        let mut q0 = T::zero();
        let mut q1 = T::zero();
        let mut any = false;
        for (i, group) in c.bits.chunks_exact(self.nbits).enumerate() {
            let v = group.iter().fold(0u64, |acc, &b| (acc << 1) | b as u64);
            if v == 0 {
                continue;
            }
            any = true;
            let w = T::from_u64(v).expect("code representable") * self.scale;
            shift = shift + w * theta[i];
            q0 = q0 + w * w * var0[i];
            q1 = q1 + w * w * var1[i];
        }
        if !any {
            return T::zero();
        }
        q_tail((self.q_pf * q0.sqrt() - shift) / q1.sqrt())
    }
}

/// Fitness `f = Pd(normalize(decode(c)))` at `cfg.pf_target`.
///
/// A chromosome whose weights all decode to zero gets fitness 0.
pub fn fitness<T: Real>(c: &Chromosome, st: &FusionStatistics<T>, cfg: &GaConfig) -> Result<T> {
    if c.len() != cfg.chromosome_len() {
        return Err(Error::LengthMismatch {
            expected: cfg.chromosome_len(),
            found: c.len(),
        });
    }
    Ok(FitnessEvaluator::new(st, cfg)?.evaluate(c))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GenerationStats<T> {
    pub generation: usize,
    /// Best fitness in this generation's population.
    pub best: T,
    pub mean: T,
}

/// Result of one GA run.
#[derive(Debug, Clone, PartialEq)]
pub struct GaRun<T> {
    pub best_weights: WeightVector<T>,
    pub best_fitness: T,
    pub best_chromosome: Chromosome,
    /// One entry per generation `1..=generations`.
    pub trace: Vec<GenerationStats<T>>,
    pub generations_run: usize,
}

fn mean<T: Real>(xs: &[T]) -> T {
    xs.iter().copied().sum::<T>() / T::from_usize(xs.len()).expect("population size representable")
}

fn argmax<T: Real>(xs: &[T]) -> usize {
    // First maximum, so ties resolve deterministically.
    let mut best = 0;
    for (i, &x) in xs.iter().enumerate().skip(1) {
        if x > xs[best] {
            best = i;
        }
    }
    best
}

/// Runs the GA to maximize `Pd` at `cfg.pf_target`.
///
/// Generation 0 is a uniformly random population. Each following generation
/// keeps the `elite_count()` fittest chromosomes unchanged and fills the rest
/// with offspring: a roulette-selected mating pool is paired at random,
/// crossed over with probability `crossover_rate`, and then
/// `round(p_m · pops · M · nbits)` distinct non-elite bits are flipped.
pub fn run_bga<T: Real>(st: &FusionStatistics<T>, cfg: &GaConfig) -> Result<GaRun<T>> {
    cfg.validate()?;
    if !st.has_signal() {
        return Err(Error::NoSignal);
    }
    let eval = FitnessEvaluator::new(st, cfg)?;
    let mut rng = rng_from_seed(cfg.seed);
    let len = cfg.chromosome_len();
    let elites = cfg.elite_count();
    let offspring = cfg.offspring_count();

    let mut population: Vec<Chromosome> = (0..cfg.pops)
        .map(|_| Chromosome::new((0..len).map(|_| rng.random::<bool>()).collect()))
        .collect();
    let mut fit: Vec<T> = population.iter().map(|c| eval.evaluate(c)).collect();

    let mut best_idx = argmax(&fit);
    let mut best_fitness = fit[best_idx];
    let mut best_chromosome = population[best_idx].clone();
    let mut trace = Vec::with_capacity(cfg.generations);

    for generation in 1..=cfg.generations {
        let mut order: Vec<usize> = (0..cfg.pops).collect();
        order.sort_by(|&a, &b| {
            fit[b]
                .partial_cmp(&fit[a])
                .unwrap_or(Ordering::Equal)
                .then(a.cmp(&b))
        });

        let pool = roulette_select(&fit, offspring, &mut rng);
        let pairs = pair_indices(pool.len(), offspring.div_ceil(2), &mut rng);

        let mut next: Vec<Chromosome> = Vec::with_capacity(cfg.pops);
        let mut next_fit: Vec<T> = Vec::with_capacity(cfg.pops);
        for &i in &order[..elites] {
            next.push(population[i].clone());
            next_fit.push(fit[i]);
        }
        for (a, b) in pairs {
            let (c1, c2) = crossover(
                &population[pool[a]],
                &population[pool[b]],
                cfg.crossover_rate,
                &mut rng,
            );
            next.push(c1);
            next.push(c2);
        }
        next.truncate(cfg.pops);
        mutate(&mut next, elites, cfg.mutation_rate, &mut rng);
        next_fit.extend(next[elites..].iter().map(|c| eval.evaluate(c)));

        population = next;
        fit = next_fit;

        best_idx = argmax(&fit);
        if fit[best_idx] > best_fitness {
            best_fitness = fit[best_idx];
            best_chromosome = population[best_idx].clone();
        }
        trace.push(GenerationStats {
            generation,
            best: fit[best_idx],
            mean: mean(&fit),
        });
    }

    let raw = decode::<T>(&best_chromosome, cfg.users, cfg.nbits)?;
    let best_weights = normalize(&raw)?;
    Ok(GaRun {
        best_weights,
        best_fitness,
        best_chromosome,
        trace,
        generations_run: cfg.generations,
    })
}
