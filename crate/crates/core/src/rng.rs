//! Seed derivation.
//!
//! One user-supplied `u64` is expanded into independent child streams by
//! mixing `(seed, index)` through SplitMix64; each child seeds a ChaCha8
//! generator. Child streams do not depend on how work is partitioned.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The generator used everywhere in the crate.
pub type Rng = ChaCha8Rng;

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(GOLDEN);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// A splittable source of seeds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeedStream {
    seed: u64,
}

impl SeedStream {
    pub fn new(seed: u64) -> Self {
        Self { seed }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Seed of the `index`-th child, a pure function of `(seed, index)`.
    pub fn child_seed(&self, index: u64) -> u64 {
        splitmix64(splitmix64(self.seed) ^ splitmix64(index.wrapping_mul(GOLDEN).wrapping_add(1)))
    }

    pub fn child(&self, index: u64) -> SeedStream {
        SeedStream::new(self.child_seed(index))
    }

    /// Generator for the `index`-th child.
    pub fn rng(&self, index: u64) -> Rng {
        Rng::seed_from_u64(self.child_seed(index))
    }

    /// Generator for the stream itself.
    pub fn root_rng(&self) -> Rng {
        Rng::seed_from_u64(splitmix64(self.seed))
    }
}
