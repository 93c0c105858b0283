//! Seeded random number generation.
//!
//! Every stochastic routine takes its generator explicitly. Streams are
//! ChaCha8 keyed by a 64-bit seed; independent sub-streams (one per chain or
//! experiment cell) are obtained with [`substream`].

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type SbmdsRng = ChaCha8Rng;

pub fn from_seed(seed: u64) -> SbmdsRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A generator for sub-stream `stream` of `seed`. Distinct streams of the same
/// seed are statistically independent.
pub fn substream(seed: u64, stream: u64) -> SbmdsRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}
