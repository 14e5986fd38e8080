//! Seeded RNG stream derivation.
//!
//! Every stochastic component draws from its own ChaCha8 stream derived from
//! `(seed, label, counter)`, so planning step k of trial s reproduces exactly
//! regardless of what other components consumed beforehand.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// splitmix64; used only to expand a seed tuple into key material.
fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e3779b97f4a7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

/// Derive an independent RNG stream for `(seed, label, counter)`.
pub fn stream(seed: u64, label: &str, counter: u64) -> ChaCha8Rng {
    let mut state = seed ^ 0xd6e8feb86659fd93;
    for b in label.as_bytes() {
        state = splitmix64(&mut state) ^ u64::from(*b);
    }
    state = splitmix64(&mut state) ^ counter;
    let mut key = [0u8; 32];
    for chunk in key.chunks_exact_mut(8) {
        chunk.copy_from_slice(&splitmix64(&mut state).to_le_bytes());
    }
    ChaCha8Rng::from_seed(key)
}
