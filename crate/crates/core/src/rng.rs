//! Seeded sampling of "general" coefficients.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Independent streams drawn from one user seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stream {
    /// The linear form of a multiplication map.
    MapForm = 0,
    /// The two extra linear forms whose powers join the pure powers.
    ExtraForm1 = 1,
    ExtraForm2 = 2,
    /// The `a_i` of the kernel witness.
    Witness = 3,
}

pub fn rng_for(seed: u64, stream: Stream) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream as u64);
    rng
}

pub const LINEAR_COEFF_MAX: i64 = 1_000_000;
pub const WITNESS_COEFF_MAX: i64 = 1_000;

/// `n` integers uniform in `[1, 10^6]`.
pub fn linear_coeffs(n: usize, seed: u64, stream: Stream) -> Vec<BigInt> {
    let mut rng = rng_for(seed, stream);
    (0..n).map(|_| BigInt::from(rng.gen_range(1..=LINEAR_COEFF_MAX))).collect()
}

/// `n` integers uniform in `[1, 10^3]`.
pub fn witness_values(n: usize, seed: u64) -> Vec<BigInt> {
    let mut rng = rng_for(seed, Stream::Witness);
    (0..n).map(|_| BigInt::from(rng.gen_range(1..=WITNESS_COEFF_MAX))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_stream_separated() {
        assert_eq!(linear_coeffs(5, 9, Stream::MapForm), linear_coeffs(5, 9, Stream::MapForm));
        assert_ne!(linear_coeffs(5, 9, Stream::MapForm), linear_coeffs(5, 9, Stream::ExtraForm1));
        assert_ne!(linear_coeffs(5, 9, Stream::MapForm), linear_coeffs(5, 10, Stream::MapForm));
        assert!(witness_values(50, 1).iter().all(|v| *v >= BigInt::from(1) && *v <= BigInt::from(1000)));
    }
}
