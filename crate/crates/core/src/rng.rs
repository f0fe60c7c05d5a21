//! Counter-based SplitMix64, the only source of randomness in the crate.
//!
//! The `k`-th output (0-based) for seed `s` is
//!
//! ```text
//! z = s + (k + 1) * 0x9E3779B97F4A7C15        (wrapping, mod 2^64)
//! z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//! z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//! out = z ^ (z >> 31)
//! ```
//!
//! A draw from `{0..n-1}` is the high word of the 128-bit product
//! `out * n`, so the `k`-th color of a random coloring with `r` colors is
//! `1 + ((out_k * r) >> 64)`. Both rules are trivial to reproduce in any
//! language with 64-bit unsigned arithmetic.

const GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// The SplitMix64 finaliser.
pub fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Output number `k` of the stream seeded by `seed`.
pub fn output_at(seed: u64, k: u64) -> u64 {
    mix(seed.wrapping_add(k.wrapping_add(1).wrapping_mul(GAMMA)))
}

/// Maps a 64-bit output to `{0..n-1}` by multiply-high.
pub fn bounded(out: u64, n: u64) -> u64 {
    ((out as u128 * n as u128) >> 64) as u64
}

/// Sequential view of the stream.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    seed: u64,
    counter: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { seed, counter: 0 }
    }

    pub fn next_u64(&mut self) -> u64 {
        let out = output_at(self.seed, self.counter);
        self.counter = self.counter.wrapping_add(1);
        out
    }

    /// Uniform draw from `{0..n-1}`; `n` is nonzero.
    pub fn below(&mut self, n: u64) -> u64 {
        bounded(self.next_u64(), n)
    }
}
