//! Binary genetic algorithm over fusion weight vectors.
//!
//! A chromosome holds `M · nbits` bits; each `nbits` group decodes to one raw
//! weight in `[0, 1]`. Fitness is the global detection probability of the
//! normalized weights at the configured false-alarm target. Each generation
//! keeps the best `⌊pops·(1−prep)⌋` chromosomes unchanged and breeds the rest
//! through roulette selection, double-point crossover and bit-flip mutation.

mod chromosome;
mod config;
mod operators;
mod run;

pub use chromosome::{decode, encode, Chromosome};
pub use config::GaConfig;
pub use operators::{
    crossover, crossover_at, mutate, mutation_count, pair_indices, roulette_select,
};
pub use run::{fitness, run_bga, FitnessEvaluator, GaRun, GenerationStats};
