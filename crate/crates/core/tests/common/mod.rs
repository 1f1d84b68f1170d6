#![allow(dead_code)]

use exact01_core::{Dataset, Label};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Uniform points in `[-5, 5]^d` with fair coin labels.
pub fn random_instance(rng: &mut ChaCha8Rng, n: usize, d: usize) -> Dataset {
    let coords: Vec<f64> = (0..n * d).map(|_| rng.random_range(-5.0..5.0)).collect();
    let labels = (0..n)
        .map(|_| if rng.random_bool(0.5) { Label::Positive } else { Label::Negative })
        .collect();
    Dataset::from_flat(coords, labels, d).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
