//! Fixed inputs shared by the criterion benchmarks.

use exact01_core::data::{gen_gaussian, SyntheticSpec};
use exact01_core::Dataset;

/// Seeded two-class Gaussian data with a 10% Bayes error.
pub fn fixture(n: usize, d: usize) -> Dataset {
    gen_gaussian(&SyntheticSpec {
        n,
        d,
        bayes_error: 0.1,
        seed: 42,
    })
    .expect("valid synthetic spec")
}
