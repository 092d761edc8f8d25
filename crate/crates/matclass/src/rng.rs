//! Seeded random source for dataset generation and splitting.
//!
//! The stream is ChaCha8 keyed by a SplitMix64 expansion of a 64-bit seed,
//! and every derived draw (indices, unit doubles, normals) is implemented
//! here on top of the raw 64-bit output. Both algorithms are fixed, so a
//! given seed produces the same sequence on every platform and release and
//! generated fixtures stay stable.

use rand_chacha::ChaCha8Rng;
use rand_core::{Rng, SeedableRng};

const INV_2_53: f64 = 1.0 / (1u64 << 53) as f64;

pub struct SeededRng {
    inner: ChaCha8Rng,
}

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        Self {
            inner: ChaCha8Rng::from_seed(expand_seed(seed)),
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Uniform index in `0..n` (128-bit multiply-shift of one draw).
    pub fn index(&mut self, n: usize) -> usize {
        debug_assert!(n > 0);
        ((self.next_u64() as u128 * n as u128) >> 64) as usize
    }

    /// Uniform draw from `[0, 1)` using the high 53 bits of one draw.
    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * INV_2_53
    }

    /// Normal draw via Box-Muller (cosine branch; two draws per sample).
    pub fn normal(&mut self, mu: f64, sigma: f64) -> f64 {
        // u1 lies in (0, 1] so the logarithm stays finite.
        let u1 = ((self.next_u64() >> 11) + 1) as f64 * INV_2_53;
        let u2 = self.unit();
        mu + sigma * (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
    }

    /// In-place Fisher-Yates shuffle.
    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.index(i + 1);
            items.swap(i, j);
        }
    }
}

fn expand_seed(seed: u64) -> [u8; 32] {
    let mut state = seed;
    let mut out = [0u8; 32];
    for chunk in out.chunks_exact_mut(8) {
        state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        chunk.copy_from_slice(&(z ^ (z >> 31)).to_le_bytes());
    }
    out
}
