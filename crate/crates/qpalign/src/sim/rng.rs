//! Deterministic random source for measurement sampling and search schedules.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

/// Seeded pseudo-random generator.
///
/// The algorithm is fixed (ChaCha with 8 rounds, seeded via the standard
/// `seed_from_u64` expansion) so identical seeds produce identical draw
/// sequences on every platform and backend.
#[derive(Debug, Clone)]
pub struct Prng(ChaCha8Rng);

impl Prng {
    pub fn from_seed(seed: u64) -> Prng {
        Prng(ChaCha8Rng::seed_from_u64(seed))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Uniform draw from `[0, 1)` using the top 53 bits of one `u64`.
    pub fn next_f64(&mut self) -> f64 {
        const SCALE: f64 = 1.0 / (1u64 << 53) as f64;
        (self.next_u64() >> 11) as f64 * SCALE
    }

    /// Uniform integer in `[0, bound)`. `bound` must be positive.
    pub fn below(&mut self, bound: u64) -> u64 {
        debug_assert!(bound > 0);
        let v = (self.next_f64() * bound as f64) as u64;
        v.min(bound - 1)
    }
}
