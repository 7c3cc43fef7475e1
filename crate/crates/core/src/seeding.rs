//! Deterministic random substreams.
//!
//! Every randomized operation takes an explicit seed. Work that is split into
//! independent units (realizations, Monte Carlo chunks) derives one ChaCha
//! stream per unit from the master seed and the unit's coordinates, so results
//! do not depend on evaluation order or thread scheduling.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type SimRng = ChaCha8Rng;

const fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Generator seeded directly from `seed`.
pub fn rng_from_seed(seed: u64) -> SimRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Generator for the substream at `path` below `master`.
pub fn substream(master: u64, path: &[u64]) -> SimRng {
    let stream = path.iter().fold(0x005E_ED0F_5EED_u64, |acc, &p| {
        splitmix64(acc ^ splitmix64(p))
    });
    let mut rng = ChaCha8Rng::seed_from_u64(master);
    rng.set_stream(stream);
    rng
}

/// Derives a plain `u64` seed for a substream, for APIs that take a seed.
pub fn derive_seed(master: u64, path: &[u64]) -> u64 {
    use rand::RngCore;
    substream(master, path).next_u64()
}
