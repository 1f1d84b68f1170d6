//! Independent checks on the enumeration engine.
//!
//! [`brute_force_solve`] walks every `D`-subset directly and recomputes each
//! loss from scratch, sharing nothing with the incremental engine beyond the
//! hyperplane fit. [`enumerate_dichotomies`] expands every boundary into the
//! `2^D` labelings of its defining points; for points in general position the
//! distinct sign vectors are exactly the linearly separable labelings, whose
//! number is fixed by [`arrangement_counts`].

use std::collections::HashSet;

use itertools::Itertools;

use crate::data::{check_general_position, default_position_tolerance};
use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::geometry::{fit_hyperplane, Hyperplane, Sense};
use crate::loss::sign_with_tolerance;

/// Enumeration guard for [`enumerate_dichotomies`].
pub const MAX_DICHOTOMY_WORK: u128 = 1_000_000;

/// A vector of signs in `{-1, 0, +1}`, one per data point.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignVector(pub Vec<i8>);

impl SignVector {
    pub fn negated(&self) -> SignVector {
        SignVector(self.0.iter().map(|v| -v).collect())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BruteForceResult {
    pub optimal_loss: usize,
    pub hyperplane: Hyperplane,
    pub combination: Vec<usize>,
}

/// Minimum 0-1 loss over all boundaries through `D` points, both
/// orientations, recomputed from scratch for every combination. Defining
/// points take their training labels.
pub fn brute_force_solve(dataset: &Dataset) -> Result<BruteForceResult> {
    let (n, d) = (dataset.n(), dataset.d());
    if d > n {
        return Err(Error::DimensionExceedsCount { d, n });
    }
    let eps = dataset.default_eps();
    let mut best: Option<BruteForceResult> = None;
    for combo in (0..n).combinations(d) {
        let points: Vec<&[f64]> = combo.iter().map(|&i| dataset.point(i)).collect();
        let Ok(h) = fit_hyperplane(&points, Sense::Positive) else {
            continue;
        };
        // errors of the positive orientation, errors of the negative one
        let (mut pos, mut neg) = (0, 0);
        for (i, item) in dataset.items().enumerate() {
            if combo.contains(&i) {
                continue;
            }
            match sign_with_tolerance(h.evaluate(item.point), eps) * item.label.value() {
                -1 => pos += 1,
                1 => neg += 1,
                _ => {}
            }
        }
        for (loss, plane) in [(pos, &h), (neg, &h.flipped())] {
            if best.as_ref().is_none_or(|b| loss < b.optimal_loss) {
                best = Some(BruteForceResult {
                    optimal_loss: loss,
                    hyperplane: plane.clone(),
                    combination: combo.clone(),
                });
            }
        }
    }
    best.ok_or(Error::NoViableModel { ub: n })
}

fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Cell counts of a simple arrangement of `n` hyperplanes in `d` dimensions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ArrangementCounts {
    /// `sum_{k=0..d} C(n, k)`
    pub cells: u128,
    /// `C(n - 1, d)`
    pub bounded: u128,
    /// Linearly separable labelings of `n` points in general position,
    /// `2 * sum_{k=0..d} C(n - 1, k)`.
    pub cover: u128,
}

pub fn arrangement_counts(n: usize, d: usize) -> ArrangementCounts {
    let (n, d) = (n as u64, d as u64);
    let cells = (0..=d).map(|k| binomial(n, k)).sum();
    let bounded = if n == 0 { 0 } else { binomial(n - 1, d) };
    let cover = if n == 0 {
        0
    } else {
        2 * (0..=d).map(|k| binomial(n - 1, k)).sum::<u128>()
    };
    ArrangementCounts {
        cells,
        bounded,
        cover,
    }
}

/// All distinct sign vectors realized by boundaries through `D` points, both
/// orientations, with every `+/-` completion of the defining points.
pub fn enumerate_dichotomies(dataset: &Dataset) -> Result<HashSet<SignVector>> {
    let (n, d) = (dataset.n(), dataset.d());
    if d > n {
        return Err(Error::DimensionExceedsCount { d, n });
    }
    let work = binomial(n as u64, d as u64) << d;
    if work > MAX_DICHOTOMY_WORK {
        return Err(Error::TooLarge(format!(
            "C({n},{d}) * 2^{d} = {work} exceeds {MAX_DICHOTOMY_WORK}"
        )));
    }
    let report = check_general_position(dataset, default_position_tolerance(dataset));
    if !report.is_clean() {
        return Err(Error::DegenerateData(report.summary()));
    }
    let eps = dataset.default_eps();
    let mut out = HashSet::new();
    for combo in (0..n).combinations(d) {
        let points: Vec<&[f64]> = combo.iter().map(|&i| dataset.point(i)).collect();
        let h = fit_hyperplane(&points, Sense::Positive).map_err(|_| {
            Error::DegenerateData(format!("no boundary through points {combo:?}"))
        })?;
        let mut signs: Vec<i8> = dataset
            .points()
            .map(|p| sign_with_tolerance(h.evaluate(p), eps))
            .collect();
        for (i, s) in signs.iter().enumerate() {
            if *s == 0 && !combo.contains(&i) {
                return Err(Error::DegenerateData(format!(
                    "point {i} lies on the boundary through {combo:?}"
                )));
            }
        }
        for mask in 0u32..(1 << d) {
            for (bit, &i) in combo.iter().enumerate() {
                signs[i] = if mask >> bit & 1 == 1 { 1 } else { -1 };
            }
            let v = SignVector(signs.clone());
            out.insert(v.negated());
            out.insert(v);
        }
    }
    Ok(out)
}

/// Whether the number of enumerated dichotomies equals the closed-form count.
pub fn verify_cover(dataset: &Dataset) -> Result<bool> {
    let found = enumerate_dichotomies(dataset)?.len() as u128;
    Ok(found == arrangement_counts(dataset.n(), dataset.d()).cover)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::Label::{self, Negative as N, Positive as P};

    fn line(xs: &[f64], labels: &[Label]) -> Dataset {
        let pts: Vec<[f64; 1]> = xs.iter().map(|&x| [x]).collect();
        Dataset::new(&pts, labels.to_vec()).unwrap()
    }

    #[test]
    fn brute_force_lines() {
        assert_eq!(
            brute_force_solve(&line(&[1.0, 2.0, 3.0], &[N, N, P])).unwrap().optimal_loss,
            0
        );
        assert_eq!(
            brute_force_solve(&line(&[1.0, 2.0, 3.0], &[P, N, P])).unwrap().optimal_loss,
            1
        );
    }

    #[test]
    fn brute_force_all_boundary() {
        let ds = Dataset::new(&[[1.0, 0.3], [0.2, 1.5]], vec![P, N]).unwrap();
        let r = brute_force_solve(&ds).unwrap();
        assert_eq!(r.optimal_loss, 0);
        assert_eq!(r.combination, vec![0, 1]);
    }

    #[test]
    fn brute_force_all_singular() {
        let ds = Dataset::new(&[[1.0, 1.0], [2.0, 2.0], [3.0, 3.0]], vec![P, N, P]).unwrap();
        assert!(matches!(brute_force_solve(&ds), Err(Error::NoViableModel { .. })));
    }

    #[test]
    fn counts_closed_form() {
        let c = arrangement_counts(4, 2);
        assert_eq!((c.cells, c.bounded, c.cover), (11, 3, 14));
        let c = arrangement_counts(3, 1);
        assert_eq!((c.cells, c.bounded, c.cover), (4, 2, 6));
        let c = arrangement_counts(1, 1);
        assert_eq!((c.cells, c.bounded, c.cover), (2, 0, 2));
        assert_eq!(arrangement_counts(6, 2).cover, 32);
        for n in 1..15 {
            for d in 1..5 {
                let c = arrangement_counts(n, d);
                assert_eq!(c.cells + c.bounded, c.cover);
            }
        }
    }

    #[test]
    fn shattering_small_sets() {
        let two = line(&[0.7, 2.1], &[P, N]);
        assert_eq!(enumerate_dichotomies(&two).unwrap().len(), 4);
        let three = Dataset::new(&[[0.3, 0.1], [1.9, 0.4], [0.8, 1.7]], vec![P, N, P]).unwrap();
        assert_eq!(enumerate_dichotomies(&three).unwrap().len(), 8);
        assert!(verify_cover(&three).unwrap());
    }

    #[test]
    fn four_points_in_plane() {
        let ds = Dataset::new(
            &[[0.3, 0.1], [1.9, 0.4], [0.8, 1.7], [2.2, 2.6]],
            vec![P, N, P, N],
        )
        .unwrap();
        assert_eq!(enumerate_dichotomies(&ds).unwrap().len(), 14);
    }

    #[test]
    fn collinear_rejected() {
        let ds = Dataset::new(&[[0.5, 1.0], [1.0, 2.0], [1.5, 3.0]], vec![P, N, P]).unwrap();
        assert!(matches!(verify_cover(&ds), Err(Error::DegenerateData(_))));
    }

    #[test]
    fn guard_rejects_large_instances() {
        let xs: Vec<f64> = (0..200).map(|i| i as f64 + 0.5).collect();
        let ds = line(&xs, &vec![P; 200]);
        assert!(enumerate_dichotomies(&ds).is_ok());
        let pts: Vec<[f64; 3]> = (0..200)
            .map(|i| {
                let t = i as f64;
                [t.sin() + 2.0, (1.3 * t).cos() + 2.0, (0.7 * t).sin() * 3.0 + 5.0]
            })
            .collect();
        let big = Dataset::new(&pts, vec![P; 200]).unwrap();
        assert!(matches!(enumerate_dichotomies(&big), Err(Error::TooLarge(_))));
    }
}
