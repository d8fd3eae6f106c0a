//! Seeded random streams.
//!
//! Every stream is a ChaCha8 generator keyed by a 64-bit seed and selected by
//! a 64-bit stream index, so replicate `r` of a test can be regenerated on its
//! own, on any thread, without touching the others. Stream 0 is used by the
//! data generators; permutation replicates use streams `1..=R`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Identifies one reproducible random stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RngSpec {
    pub seed: u64,
    pub stream_index: u64,
}

impl RngSpec {
    pub fn new(seed: u64, stream_index: u64) -> Self {
        Self { seed, stream_index }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream_index);
        rng
    }
}

/// Uniform on `[0, 1)`.
#[inline]
pub fn uniform<R: Rng>(rng: &mut R) -> f64 {
    rng.random::<f64>()
}

/// Uniform on `[lo, hi)`.
#[inline]
pub fn uniform_in<R: Rng>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * uniform(rng)
}

/// Fisher-Yates shuffle, walking from the last position down. Index draws use
/// `u64` ranges so the sequence does not depend on the platform word size.
pub fn fisher_yates<R: Rng, T>(items: &mut [T], rng: &mut R) {
    for i in (1..items.len()).rev() {
        let j = rng.random_range(0..=i as u64) as usize;
        items.swap(i, j);
    }
}

/// Uniformly random permutation of `0..n` drawn from `spec`'s stream.
pub fn permutation(spec: RngSpec, n: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    fisher_yates(&mut perm, &mut spec.rng());
    perm
}

/// 64-bit FNV-1a; stable across platforms and releases, unlike `std::hash`.
pub fn stable_hash(key: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in key.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

/// Combines a base seed with a key into a new seed (splitmix64 finalizer).
pub fn mix_seed(seed: u64, key: u64) -> u64 {
    let mut z = seed ^ key.rotate_left(32) ^ 0x9e37_79b9_7f4a_7c15;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}
