//! Seeding for the shot sampler.
//!
//! Every sampler stream is a [`ChaCha8Rng`] (256-bit key, 64-bit stream id)
//! created with `seed_from_u64`, so counts are reproducible bit for bit on
//! every platform. Sub-streams (one per measured axis, one per sweep point)
//! get their seeds from [`derive_seed`].

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type ShotRng = ChaCha8Rng;

pub fn shot_rng(seed: u64) -> ShotRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Mixes `tag` into `seed` with the splitmix64 finalizer.
pub fn derive_seed(seed: u64, tag: u64) -> u64 {
    let mut z = seed ^ tag.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
