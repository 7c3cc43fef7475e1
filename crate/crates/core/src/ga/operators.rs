use rand::seq::index;
use rand::Rng;

use super::chromosome::Chromosome;
use crate::real::Real;

/// Fitness-proportional (roulette wheel) selection of `count` indices, drawn
/// independently with replacement: index `j` has probability `f_j / Σ f`.
///
/// Zero-fitness entries are never picked. If every fitness is zero the
/// draw is uniform.
pub fn roulette_select<T: Real, R: Rng + ?Sized>(
    fitness: &[T],
    count: usize,
    rng: &mut R,
) -> Vec<usize> {
    assert!(!fitness.is_empty(), "roulette over an empty population");
    let mut cumulative = Vec::with_capacity(fitness.len());
    let mut total = 0.0_f64;
    for &f in fitness {
        let f = f.as_f64();
        assert!(f >= 0.0, "negative fitness {f}");
        total += f;
        cumulative.push(total);
    }
    if total <= 0.0 {
        return (0..count)
            .map(|_| rng.random_range(0..fitness.len()))
            .collect();
    }
    (0..count)
        .map(|_| {
            let r = rng.random::<f64>() * total;
            // First slot whose upper edge lies above r; zero-width slots are skipped.
            cumulative
                .partition_point(|&c| c <= r)
                .min(fitness.len() - 1)
        })
        .collect()
}

/// Mating pairs `(ma, pa)` drawn as `⌈n·U⌉` (zero-based here) with
/// replacement from a pool of `n`; self-mating is allowed.
pub fn pair_indices<R: Rng + ?Sized>(n: usize, pairs: usize, rng: &mut R) -> Vec<(usize, usize)> {
    assert!(n > 0, "empty mating pool");
    let mut draw = || {
        // U in (0, 1] so that ceil(n·U) is in 1..=n.
        let u = 1.0 - rng.random::<f64>();
        ((n as f64 * u).ceil() as usize).clamp(1, n) - 1
    };
    (0..pairs).map(|_| (draw(), draw())).collect()
}

/// Double-point crossover with fixed cut points: the segment `[p1, p2)` is
/// swapped between the parents.
pub fn crossover_at(
    ma: &Chromosome,
    pa: &Chromosome,
    p1: usize,
    p2: usize,
) -> (Chromosome, Chromosome) {
    assert_eq!(ma.len(), pa.len(), "parents differ in length");
    assert!(
        p1 <= p2 && p2 <= ma.len(),
        "cut points ({p1}, {p2}) out of range"
    );
    let mut c1 = ma.clone();
    let mut c2 = pa.clone();
    c1.bits[p1..p2].copy_from_slice(&pa.bits[p1..p2]);
    c2.bits[p1..p2].copy_from_slice(&ma.bits[p1..p2]);
    (c1, c2)
}

/// With probability `rate`, double-point crossover at two distinct cut points
/// drawn uniformly from `0..=len`; otherwise the children are clones.
pub fn crossover<R: Rng + ?Sized>(
    ma: &Chromosome,
    pa: &Chromosome,
    rate: f64,
    rng: &mut R,
) -> (Chromosome, Chromosome) {
    assert_eq!(ma.len(), pa.len(), "parents differ in length");
    if rng.random::<f64>() >= rate {
        return (ma.clone(), pa.clone());
    }
    let cuts = index::sample(rng, ma.len() + 1, 2);
    let (a, b) = (cuts.index(0), cuts.index(1));
    crossover_at(ma, pa, a.min(b), a.max(b))
}

/// Number of bits flipped per generation: `round(p_m · pops · M · nbits)`.
pub fn mutation_count(rate: f64, pops: usize, chromosome_len: usize) -> usize {
    (rate * pops as f64 * chromosome_len as f64).round() as usize
}

/// Flips `mutation_count(rate, population.len(), len)` distinct bits chosen
/// uniformly among the rows after the first `elites`. The count is capped at
/// the number of mutable positions. Returns the number of flips.
pub fn mutate<R: Rng + ?Sized>(
    population: &mut [Chromosome],
    elites: usize,
    rate: f64,
    rng: &mut R,
) -> usize {
    let Some(first) = population.first() else {
        return 0;
    };
    let len = first.len();
    let rows = population.len().saturating_sub(elites);
    let available = rows * len;
    let n = mutation_count(rate, population.len(), len).min(available);
    if n == 0 {
        return 0;
    }
    for pos in index::sample(rng, available, n) {
        let (row, col) = (elites + pos / len, pos % len);
        let bit = &mut population[row].bits[col];
        *bit = !*bit;
    }
    n
}
