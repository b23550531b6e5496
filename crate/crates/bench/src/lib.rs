//! Shared fixtures for the criterion benchmarks.

use cubefree_core::{Ambient, DenseSet};

/// A pseudo-random subset of `Z_N` with roughly `density` of the elements,
/// fixed by `seed`.
pub fn scattered_set(n: u64, density: f64, seed: u64) -> DenseSet {
    let ambient = Ambient::cyclic(n).expect("valid order");
    let mut state = seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) | 1;
    let threshold = (density.clamp(0.0, 1.0) * u32::MAX as f64) as u64;
    let mut set = DenseSet::empty(ambient);
    for x in ambient.elements() {
        // xorshift64
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        if (state >> 32) <= threshold {
            set.insert(x);
        }
    }
    set
}
