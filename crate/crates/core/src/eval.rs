//! Train/test evaluation and k-fold cross-validation.
//!
//! The exact solver only determines an equivalence class of boundaries (all
//! hyperplanes inducing the optimal labeling). Out-of-sample predictions use
//! a maximum-margin member of that class, found by Gilbert's nearest-point
//! iteration between the convex hulls of the correctly classified positive
//! and negative training points.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bounds::{compute_upper_bound, BoundConfig, UpperBound};
use crate::dataset::{Dataset, Label};
use crate::engine::{solve_with, SolveOptions};
use crate::error::{Error, Result};
use crate::geometry::{dot, Hyperplane};
use crate::loss::Assignment;

/// Iteration cap for the margin search.
pub const MARGIN_MAX_ITERATIONS: usize = 2000;
/// Stop once the relative duality gap of the margin search drops below this.
pub const MARGIN_REL_TOL: f64 = 1e-4;

/// Seeded permutation of `0..n` cut into `k` folds whose sizes differ by at
/// most one (larger folds first).
pub fn kfold_split(n: usize, k: usize, seed: u64) -> Result<Vec<Vec<usize>>> {
    if k < 2 || k > n {
        return Err(Error::BadFoldCount { k, n });
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let (base, extra) = (n / k, n % k);
    let mut folds = Vec::with_capacity(k);
    let mut start = 0;
    for f in 0..k {
        let len = base + usize::from(f < extra);
        folds.push(perm[start..start + len].to_vec());
        start += len;
    }
    Ok(folds)
}

/// Out-of-sample labels: points on the boundary (`|h| <= eps`) predict +1.
pub fn predict_labels<'a, I>(h: &Hyperplane, points: I, eps: f64) -> Vec<Label>
where
    I: IntoIterator<Item = &'a [f64]>,
{
    points
        .into_iter()
        .map(|x| {
            let v = h.evaluate(x);
            if v < 0.0 && v.abs() > eps {
                Label::Negative
            } else {
                Label::Positive
            }
        })
        .collect()
}

fn axpy(acc: &mut [f64], t: f64, target: &[f64]) {
    for (a, b) in acc.iter_mut().zip(target) {
        *a += t * (b - *a);
    }
}

fn centroid(points: &[&[f64]]) -> Vec<f64> {
    let mut c = vec![0.0; points[0].len()];
    for p in points {
        for (ci, pi) in c.iter_mut().zip(*p) {
            *ci += pi;
        }
    }
    let n = points.len() as f64;
    c.iter_mut().for_each(|v| *v /= n);
    c
}

/// Maximum-margin hyperplane separating the training points whose label
/// agrees with `assignment` (the others are dropped).
pub fn max_margin_representative(train: &Dataset, assignment: &Assignment) -> Result<Hyperplane> {
    if assignment.len() != train.n() {
        return Err(Error::LengthMismatch {
            expected: train.n(),
            actual: assignment.len(),
        });
    }
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    for (item, &z) in train.items().zip(assignment.values()) {
        if z == item.label.value() {
            match item.label {
                Label::Positive => pos.push(item.point),
                Label::Negative => neg.push(item.point),
            }
        }
    }
    match (pos.is_empty(), neg.is_empty()) {
        (true, true) => return Err(Error::NotSeparable),
        (false, true) => return Ok(one_class(&pos, 1.0)),
        (true, false) => return Ok(one_class(&neg, -1.0)),
        _ => {}
    }

    let mut p_bar = centroid(&pos);
    let mut n_bar = centroid(&neg);
    let mut best: Option<(f64, Vec<f64>)> = None;
    for _ in 0..MARGIN_MAX_ITERATIONS {
        let z: Vec<f64> = p_bar.iter().zip(&n_bar).map(|(a, b)| a - b).collect();
        let zz = dot(&z, &z);
        if zz <= f64::MIN_POSITIVE {
            break;
        }
        let (ip, min_p) = extreme(&pos, &z, true);
        let (in_, max_n) = extreme(&neg, &z, false);
        let gap = min_p - max_n;
        let width = gap / zz.sqrt();
        if best.as_ref().is_none_or(|(w, _)| width > *w) {
            best = Some((width, z.clone()));
        }
        if gap > 0.0 && zz - gap <= MARGIN_REL_TOL * zz {
            break;
        }
        // line search from z towards the support point s = p_ip - n_in
        let s: Vec<f64> = pos[ip].iter().zip(neg[in_]).map(|(a, b)| a - b).collect();
        let dir: Vec<f64> = s.iter().zip(&z).map(|(a, b)| a - b).collect();
        let dd = dot(&dir, &dir);
        if dd <= f64::MIN_POSITIVE {
            break;
        }
        let t = (-dot(&z, &dir) / dd).clamp(0.0, 1.0);
        if t == 0.0 {
            break;
        }
        axpy(&mut p_bar, t, pos[ip]);
        axpy(&mut n_bar, t, neg[in_]);
    }
    let (width, normal) = best.ok_or(Error::NotSeparable)?;
    if !(width > 0.0) {
        return Err(Error::NotSeparable);
    }
    let min_p = extreme(&pos, &normal, true).1;
    let max_n = extreme(&neg, &normal, false).1;
    let mut coeffs = normal;
    coeffs.push(-(min_p + max_n) / 2.0);
    Hyperplane::from_homogeneous(&coeffs)
}

/// Index and value of the smallest (`min = true`) or largest `z . p`.
fn extreme(points: &[&[f64]], z: &[f64], min: bool) -> (usize, f64) {
    let mut best = (0, dot(z, points[0]));
    for (i, p) in points.iter().enumerate().skip(1) {
        let v = dot(z, p);
        if (min && v < best.1) || (!min && v > best.1) {
            best = (i, v);
        }
    }
    best
}

/// Boundary orthogonal to the first axis, one unit beyond the points.
fn one_class(points: &[&[f64]], side: f64) -> Hyperplane {
    let d = points[0].len();
    let mut coeffs = vec![0.0; d + 1];
    coeffs[0] = side;
    let edge = points.iter().map(|p| side * p[0]).fold(f64::INFINITY, f64::min);
    coeffs[d] = -(edge - 1.0);
    Hyperplane::from_homogeneous(&coeffs).expect("nonzero normal")
}

/// Cross-validation settings.
#[derive(Debug, Clone)]
pub struct CvConfig {
    pub folds: usize,
    pub seed: u64,
    pub upper_bound: UpperBound,
    pub solve: SolveOptions,
    /// Provider whose witness is reported next to the exact train error.
    pub baseline: BoundConfig,
}

impl Default for CvConfig {
    fn default() -> Self {
        CvConfig {
            folds: 10,
            seed: 0,
            upper_bound: UpperBound::Auto(BoundConfig::default()),
            solve: SolveOptions::default(),
            baseline: BoundConfig {
                trivial: false,
                pocket: Some((50, 0)),
                hinge: None,
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FoldResult {
    pub fold: usize,
    pub train_size: usize,
    pub test_size: usize,
    pub train_errors: usize,
    pub test_errors: usize,
    pub train_rate: f64,
    pub test_rate: f64,
    /// Training errors of the baseline bounder's witness.
    pub baseline_train_errors: usize,
    /// True when no positive-margin representative was found and the exact
    /// boundary itself was used for prediction.
    pub used_exact_boundary: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CvReport {
    pub folds: Vec<FoldResult>,
    /// Test indices of each fold.
    pub assignments: Vec<Vec<usize>>,
    pub mean_train_rate: f64,
    pub std_train_rate: f64,
    pub mean_test_rate: f64,
    pub std_test_rate: f64,
}

fn mean_std(values: impl Iterator<Item = f64> + Clone) -> (f64, f64) {
    let n = values.clone().count() as f64;
    let mean = values.clone().sum::<f64>() / n;
    if n < 2.0 {
        return (mean, 0.0);
    }
    let var = values.map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

pub fn cross_validate(dataset: &Dataset, config: &CvConfig) -> Result<CvReport> {
    let folds = kfold_split(dataset.n(), config.folds, config.seed)?;
    let mut results = Vec::with_capacity(folds.len());
    for (f, test_idx) in folds.iter().enumerate() {
        let mut in_test = vec![false; dataset.n()];
        test_idx.iter().for_each(|&i| in_test[i] = true);
        let train_idx: Vec<usize> = (0..dataset.n()).filter(|&i| !in_test[i]).collect();
        let train = dataset.subset(&train_idx)?;
        let test = dataset.subset(test_idx)?;

        let (ub, _) = config.upper_bound.resolve(&train);
        let report = solve_with(&train, ub, &config.solve)?;
        let baseline = compute_upper_bound(&train, &config.baseline);

        let (rep, used_exact_boundary) = match max_margin_representative(&train, &report.assignment) {
            Ok(h) => (h, false),
            Err(Error::NotSeparable) => (report.hyperplane.clone(), true),
            Err(e) => return Err(e),
        };
        let predicted = predict_labels(&rep, test.points(), report.eps);
        let test_errors = predicted
            .iter()
            .zip(test.labels())
            .filter(|(p, l)| p != l)
            .count();
        results.push(FoldResult {
            fold: f,
            train_size: train.n(),
            test_size: test.n(),
            train_errors: report.optimal_loss,
            test_errors,
            train_rate: report.optimal_loss as f64 / train.n() as f64,
            test_rate: test_errors as f64 / test.n() as f64,
            baseline_train_errors: baseline.value,
            used_exact_boundary,
        });
    }
    let (mean_train_rate, std_train_rate) = mean_std(results.iter().map(|r| r.train_rate));
    let (mean_test_rate, std_test_rate) = mean_std(results.iter().map(|r| r.test_rate));
    Ok(CvReport {
        folds: results,
        assignments: folds,
        mean_train_rate,
        std_train_rate,
        mean_test_rate,
        std_test_rate,
    })
}
