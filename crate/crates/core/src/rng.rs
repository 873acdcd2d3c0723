//! Seed derivation. Every random stream in the crate is a ChaCha8 generator
//! keyed by a root seed and a short path of tags, so that independent
//! experiments, nodes and edges never share state.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Rng = ChaCha8Rng;

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(GOLDEN);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Mixes `tags` into `seed`, yielding a child seed.
pub fn derive(seed: u64, tags: &[u64]) -> u64 {
    tags.iter()
        .fold(splitmix(seed), |acc, &t| splitmix(acc ^ splitmix(t)))
}

pub fn stream(seed: u64, tags: &[u64]) -> Rng {
    Rng::seed_from_u64(derive(seed, tags))
}

/// Stream tags, kept distinct so sub-procedures never collide.
pub(crate) mod tag {
    pub const SAMPLE: u64 = 1;
    pub const LAYER: u64 = 2;
    pub const APPROX: u64 = 3;
    pub const TESTER: u64 = 4;
    pub const EPOCH: u64 = 5;
    pub const GUESS: u64 = 6;
    pub const PRESAMPLE: u64 = 7;
    pub const MATULA: u64 = 8;
    pub const TRIAL: u64 = 9;
    pub const NODE: u64 = 10;
}
