//! Deterministic seed fan-out for replication-parallel Monte Carlo.
//!
//! Replication `k` of a run seeded with `seed` draws from a ChaCha8 generator
//! seeded with `subseed(seed, k)`, a splitmix64-style mix of the pair. This
//! makes every replication independent of scheduling and worker count: the
//! same `(seed, k)` always produces the same stream.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(GOLDEN);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Counter-derived sub-seed for replication `k` of a run seeded with `seed`.
///
/// Two finalizer rounds over `seed ⊕ mix(k)` so that nearby `(seed, k)` pairs
/// land far apart in seed space.
pub fn subseed(seed: u64, k: u64) -> u64 {
    splitmix64(splitmix64(seed ^ splitmix64(k)))
}

/// The generator used for replication `k`.
pub fn replication_rng(seed: u64, k: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(subseed(seed, k))
}

/// Generator for a single-shot simulation seeded directly.
pub fn single_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
