//! Seeded, splittable randomness.
//!
//! One root seed drives the whole run. Task-specific streams are derived by
//! hashing a label into the root seed, so results never depend on call order
//! across tasks and batch entries can run in parallel deterministically.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Default root seed when none is supplied.
pub const DEFAULT_SEED: u64 = 0;

/// FNV-1a, fixed forever so derived streams are stable across releases.
#[must_use]
fn fnv1a(seed: u64, label: &str) -> u64 {
    let mut hash = 0xcbf29ce484222325u64 ^ seed.rotate_left(17);
    for byte in label.as_bytes() {
        hash ^= u64::from(*byte);
        hash = hash.wrapping_mul(0x100000001b3);
    }
    hash
}

/// A deterministic random stream plus the root seed it came from.
#[derive(Clone, Debug)]
pub struct SeedState {
    root: u64,
    rng: ChaCha8Rng,
}

impl SeedState {
    #[must_use]
    pub fn from_seed(seed: u64) -> Self {
        SeedState {
            root: seed,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// The root seed this stream was derived from.
    #[must_use]
    pub fn root_seed(&self) -> u64 {
        self.root
    }

    /// A fresh stream for an independent task. Streams with different labels
    /// are independent; the same `(root, label)` always yields the same
    /// stream.
    #[must_use]
    pub fn derive(&self, label: &str) -> SeedState {
        SeedState {
            root: self.root,
            rng: ChaCha8Rng::seed_from_u64(fnv1a(self.root, label)),
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.rng.gen()
    }

    /// Uniform index in `0..n`. `n` must be positive.
    pub fn next_index(&mut self, n: usize) -> usize {
        assert!(n > 0);
        self.rng.gen_range(0..n)
    }
}
