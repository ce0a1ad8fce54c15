//! SplitMix64, the seeded generator behind every pseudorandom map and
//! benchmark trial. The recurrence is fixed so that tables can be
//! reproduced bit for bit by other implementations:
//!
//! ```text
//! state += 0x9E3779B97F4A7C15
//! z = state
//! z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//! z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//! return z ^ (z >> 31)
//! ```
//!
//! `below(k)` draws uniformly from `[0, k)` by rejection: a draw `x` is
//! accepted when `x - (x % k) <= 2^64 - k`, and yields `x % k`.

#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform draw from `[0, k)`; `k` must be nonzero.
    pub fn below(&mut self, k: u64) -> u64 {
        assert!(k > 0, "empty range");
        loop {
            let x = self.next_u64();
            let r = x % k;
            if x - r <= u64::MAX - (k - 1) {
                return r;
            }
        }
    }
}
