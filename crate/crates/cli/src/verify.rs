//! Self-check suites run by `verify`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use exact01_core::geometry::{dual_map, dual_unmap, DualHyperplane};
use exact01_core::oracle::{arrangement_counts, brute_force_solve, enumerate_dichotomies};
use exact01_core::{solve, Dataset, Error, Label};

use crate::error::CliResult;

/// Incidence and order tolerance for the duality suite.
pub const DUALITY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteOutcome {
    pub passed: usize,
    pub trials: usize,
}

impl SuiteOutcome {
    pub fn all_passed(&self) -> bool {
        self.passed == self.trials
    }
}

impl std::fmt::Display for SuiteOutcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{} match", self.passed, self.trials)
    }
}

/// Uniform points in `[-5, 5]^d` with fair-coin labels.
pub fn random_instance(rng: &mut ChaCha8Rng, n: usize, d: usize) -> Dataset {
    let coords = (0..n * d).map(|_| rng.random_range(-5.0..5.0)).collect();
    let labels = (0..n)
        .map(|_| if rng.random_bool(0.5) { Label::Positive } else { Label::Negative })
        .collect();
    Dataset::from_flat(coords, labels, d).expect("well-formed instance")
}

/// Engine optimum against the brute-force optimum; `n` in `[5, nmax]`,
/// `d` in `[1, dmax]`.
pub fn oracle_suite(trials: usize, seed: u64, nmax: usize, dmax: usize) -> CliResult<SuiteOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nmin = 5.min(nmax);
    let mut passed = 0;
    for _ in 0..trials {
        let n = rng.random_range(nmin..=nmax);
        let d = rng.random_range(1..=dmax.min(n));
        let ds = random_instance(&mut rng, n, d);
        let exact = solve(&ds, n)?.optimal_loss;
        if exact == brute_force_solve(&ds)?.optimal_loss {
            passed += 1;
        }
    }
    Ok(SuiteOutcome { passed, trials })
}

/// Enumerated dichotomy count against the closed form; `n` in
/// `[d + 1, nmax]`, `d` in `[1, dmax]`. Degenerate draws are redrawn.
pub fn cover_suite(trials: usize, seed: u64, nmax: usize, dmax: usize) -> CliResult<SuiteOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut passed = 0;
    for _ in 0..trials {
        let d = rng.random_range(1..=dmax.max(1));
        let n = rng.random_range((d + 1).min(nmax)..=nmax.max(d));
        let found = loop {
            match enumerate_dichotomies(&random_instance(&mut rng, n, d)) {
                Err(Error::DegenerateData(_)) => continue,
                other => break other?.len() as u128,
            }
        };
        if found == arrangement_counts(n, d).cover {
            passed += 1;
        }
    }
    Ok(SuiteOutcome { passed, trials })
}

/// Random point/hyperplane pairs: the vertical offset of `p` from `h` equals
/// the offset of `h*` from `p*`, so incidence and above/below carry over.
pub fn duality_suite(trials: usize, seed: u64, dmax: usize) -> SuiteOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut passed = 0;
    for _ in 0..trials {
        let d = rng.random_range(1..=dmax.max(1));
        let p: Vec<f64> = (0..d).map(|_| rng.random_range(-10.0..10.0)).collect();
        let coeffs: Vec<f64> = (0..d).map(|_| rng.random_range(-10.0..10.0)).collect();
        let h = DualHyperplane::new(coeffs).expect("finite coefficients");
        let primal = h.side_of(&p);
        let dual = dual_map(&p).side_of(&dual_unmap(&h));
        let order = (primal - dual).abs() <= DUALITY_TOL
            && (primal.abs() <= DUALITY_TOL || (primal > 0.0) == (dual > 0.0));
        // drop p onto h and check both incidences
        let mut on = p.clone();
        on[d - 1] -= primal;
        let incidence = h.contains(&on, DUALITY_TOL)
            && dual_map(&on).contains(&dual_unmap(&h), DUALITY_TOL);
        if order && incidence {
            passed += 1;
        }
    }
    SuiteOutcome { passed, trials }
}
