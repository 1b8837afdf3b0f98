//! Fixtures shared by the benchmarks.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use taut_core::exact::IntMatrix;
use taut_core::exterior::{random_class, ExtClass};

pub fn class_pairs(genus: usize, count: usize, seed: u64) -> Vec<(ExtClass, ExtClass)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| (random_class(genus, &mut rng, 4), random_class(genus, &mut rng, 4)))
        .collect()
}

pub fn random_matrix(rows: usize, cols: usize, bound: i64, seed: u64) -> IntMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    IntMatrix::from_fn(rows, cols, |_, _| BigInt::from(rng.gen_range(-bound..=bound)))
}
