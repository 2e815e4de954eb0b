//! Deterministic inputs shared by the benchmarks.

use fibcomp_core::{Digit, Word};

/// A ternary word of length `len` drawn from a fixed linear congruential sequence.
pub fn ternary_word(len: usize, seed: u64) -> Word {
    let mut state = seed
        .wrapping_mul(6364136223846793005)
        .wrapping_add(1442695040888963407);
    (0..len)
        .map(|_| {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            Digit::from_value(((state >> 33) % 3) as u8).unwrap()
        })
        .collect()
}
