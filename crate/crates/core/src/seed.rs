//! Seed handling.
//!
//! Every random draw in the crate comes from a [`ChaCha8Rng`] built from a
//! 64-bit seed. Monte Carlo trials derive their seeds from a master seed with
//! [`trial_seed`], so trial `i` can be replayed on its own.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The generator used throughout the crate.
pub type LabRng = ChaCha8Rng;

/// Builds the generator for a seed.
pub fn rng_from_seed(seed: u64) -> LabRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of trial `index` under `master`: `splitmix64(master ^ splitmix64(index))`.
pub fn trial_seed(master: u64, index: u64) -> u64 {
    splitmix64(master ^ splitmix64(index))
}
