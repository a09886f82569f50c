//! Deterministic counter-based random number generation.
//!
//! All randomness in the toolkit flows through [`CounterRng`], a SplitMix64
//! generator addressed as `output = mix(key + counter * GAMMA)`. Because the
//! output is a pure function of `(key, counter)` there is no hidden state to
//! corrupt: substreams derived from distinct stream indices can be consumed
//! in any order, on any platform, and still reproduce bit-for-bit.

/// Weyl increment for the counter sequence (golden-ratio constant).
const GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 finalizer. Bijective on u64, excellent avalanche.
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// A counter-based pseudo-random stream keyed by `(seed, stream)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CounterRng {
    key: u64,
    counter: u64,
}

impl CounterRng {
    /// Stream 0 of the given seed.
    pub fn new(seed: u64) -> Self {
        Self::substream(seed, 0)
    }

    /// Derive the `stream`-th substream of `seed`.
    ///
    /// Distinct `(seed, stream)` pairs map to distinct keys with
    /// overwhelming probability; the streams never share a counter
    /// sequence, so work split across substreams is order-independent.
    pub fn substream(seed: u64, stream: u64) -> Self {
        let key = mix64(mix64(seed).wrapping_add(mix64(stream ^ 0x5851_F42D_4C95_7F2D)));
        CounterRng { key, counter: 0 }
    }

    /// Next raw 64-bit word.
    pub fn next_u64(&mut self) -> u64 {
        let v = mix64(self.key.wrapping_add(self.counter.wrapping_mul(GAMMA)));
        self.counter = self.counter.wrapping_add(1);
        v
    }

    /// Uniform draw from the open interval (0, 1).
    ///
    /// Uses the top 53 bits shifted to the midpoint of each cell, so 0.0 and
    /// 1.0 are never returned (safe under `ln`).
    pub fn next_unit(&mut self) -> f64 {
        ((self.next_u64() >> 11) as f64 + 0.5) * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform index in `0..n`. Panics if `n == 0`.
    ///
    /// Plain modulo; the bias for n far below 2^64 is negligible for the
    /// instance-generation workloads this is used for.
    pub fn next_index(&mut self, n: usize) -> usize {
        assert!(n > 0, "next_index requires n > 0");
        (self.next_u64() % n as u64) as usize
    }

    /// Uniform draw from the half-open interval `[lo, hi)`.
    pub fn next_range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_unit()
    }
}
