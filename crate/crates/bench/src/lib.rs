//! Shared fixtures for the pipeline benchmarks.

use maskuq_core::BinaryMask;

/// Deterministic speckle mask (xorshift-filled) for image-op benchmarks.
pub fn speckle_mask(side: usize, seed: u64) -> BinaryMask {
    let mut state = seed | 1;
    BinaryMask::from_fn(side, side, |_, _| {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state & 3 == 0
    })
    .unwrap()
}
