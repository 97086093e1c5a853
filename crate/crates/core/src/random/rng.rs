//! Seeding conventions.
//!
//! Every sampler draws from `ChaCha8Rng::seed_from_u64(seed)`. ChaCha is
//! specified independently of the host, and all draws go through `u64`,
//! `bool` or `f64` sampling (never `usize`), so a seed replays the same
//! sample on any platform.
//!
//! Per-trial seeds are derived from a master seed with [`split_seed`]:
//! `splitmix64(master ^ splitmix64(index + 0x9E3779B97F4A7C15))`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type SeededRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// The SplitMix64 output function.
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed for trial `index` under `master`.
pub fn split_seed(master: u64, index: u64) -> u64 {
    splitmix64(master ^ splitmix64(index.wrapping_add(0x9E37_79B9_7F4A_7C15)))
}

/// Uniform integer in `0..bound`. `bound` must be positive.
#[inline]
pub fn uniform_below<R: Rng + ?Sized>(rng: &mut R, bound: u64) -> u64 {
    rng.gen_range(0..bound)
}

/// Uniform `amount`-subset of `0..len`, sorted (Floyd's algorithm).
pub fn sample_indices<R: Rng + ?Sized>(rng: &mut R, len: u64, amount: u64) -> Vec<u64> {
    debug_assert!(amount <= len);
    let mut chosen: Vec<u64> = Vec::with_capacity(amount as usize);
    for j in len - amount..len {
        let t = rng.gen_range(0..=j);
        if chosen.contains(&t) {
            chosen.push(j);
        } else {
            chosen.push(t);
        }
    }
    chosen.sort_unstable();
    chosen
}
