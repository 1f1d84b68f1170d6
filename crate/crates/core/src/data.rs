//! CSV ingestion, synthetic data and general-position diagnostics.

use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use itertools::Itertools;
use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use statrs::distribution::{ContinuousCDF, Normal};

use crate::dataset::{encode_labels, Dataset, Label};
use crate::error::{Error, Result};
use crate::geometry::{determinant, rank, SquareMatrix};

/// CSV layout options. The label is always the last column.
#[derive(Debug, Clone, Copy, Default)]
pub struct CsvOptions {
    pub has_header: bool,
}

pub fn load_csv(path: impl AsRef<Path>, options: CsvOptions) -> Result<Dataset> {
    read_csv(File::open(path)?, options)
}

/// Parses comma-separated rows of decimal features followed by a label in
/// `{0, 1}` or `{-1, +1}`. Rows and columns in errors are 1-based.
pub fn read_csv<R: Read>(reader: R, options: CsvOptions) -> Result<Dataset> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(options.has_header)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let mut coords = Vec::new();
    let mut raw_labels = Vec::new();
    let mut width = None;
    for record in rdr.records() {
        let record = record?;
        let row = record.position().map_or(0, |p| p.line() as usize);
        if record.iter().all(str::is_empty) {
            continue;
        }
        let expected = *width.get_or_insert(record.len());
        if record.len() != expected {
            return Err(Error::RaggedRows {
                row,
                expected,
                found: record.len(),
            });
        }
        if expected < 2 {
            return Err(Error::ParseError {
                row,
                column: 1,
                message: "need at least one feature and a label".into(),
            });
        }
        for (c, field) in record.iter().enumerate() {
            let value: f64 = field.parse().map_err(|_| Error::ParseError {
                row,
                column: c + 1,
                message: format!("not a number: {field:?}"),
            })?;
            if !value.is_finite() {
                return Err(Error::ParseError {
                    row,
                    column: c + 1,
                    message: format!("non-finite value: {field:?}"),
                });
            }
            if c + 1 == expected {
                if value.fract() != 0.0 {
                    return Err(Error::BadLabelAlphabet(format!(
                        "row {row}: non-integer label {field:?}"
                    )));
                }
                raw_labels.push(value as i64);
            } else {
                coords.push(value);
            }
        }
    }
    let d = width.ok_or(Error::EmptyDataset)? - 1;
    Dataset::from_flat(coords, encode_labels(&raw_labels)?, d)
}

/// Reads feature rows of width `d`, or `d + 1` with a trailing label column
/// that is ignored.
pub fn read_points<R: Read>(reader: R, options: CsvOptions, d: usize) -> Result<Vec<Vec<f64>>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(options.has_header)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let mut points = Vec::new();
    for record in rdr.records() {
        let record = record?;
        let row = record.position().map_or(0, |p| p.line() as usize);
        if record.iter().all(str::is_empty) {
            continue;
        }
        if record.len() != d && record.len() != d + 1 {
            return Err(Error::RaggedRows {
                row,
                expected: d,
                found: record.len(),
            });
        }
        let mut point = Vec::with_capacity(d);
        for (c, field) in record.iter().take(d).enumerate() {
            match field.parse::<f64>() {
                Ok(v) if v.is_finite() => point.push(v),
                _ => {
                    return Err(Error::ParseError {
                        row,
                        column: c + 1,
                        message: format!("not a finite number: {field:?}"),
                    })
                }
            }
        }
        points.push(point);
    }
    if points.is_empty() {
        return Err(Error::EmptyDataset);
    }
    Ok(points)
}

/// Writes `x_1,..,x_D,label` rows with labels as `-1`/`1`. Floats use the
/// shortest representation that parses back to the same value.
pub fn write_csv<W: Write>(dataset: &Dataset, mut out: W) -> Result<()> {
    for item in dataset.items() {
        let fields = item.point.iter().map(|v| v.to_string()).join(",");
        writeln!(out, "{fields},{}", item.label.value())?;
    }
    out.flush()?;
    Ok(())
}

pub fn save_csv(dataset: &Dataset, path: impl AsRef<Path>) -> Result<()> {
    write_csv(dataset, std::io::BufWriter::new(File::create(path)?))
}

/// Two isotropic unit-variance Gaussian classes with means `+/- mu e_1`,
/// `mu` chosen so the Bayes error equals `bayes_error`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SyntheticSpec {
    pub n: usize,
    pub d: usize,
    pub bayes_error: f64,
    pub seed: u64,
}

impl SyntheticSpec {
    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::InvalidParameter("n must be at least 2".into()));
        }
        if self.d < 1 {
            return Err(Error::InvalidParameter("d must be at least 1".into()));
        }
        if !(self.bayes_error > 0.0 && self.bayes_error < 0.5) {
            return Err(Error::InvalidParameter(
                "bayes error must lie in (0, 0.5)".into(),
            ));
        }
        Ok(())
    }

    /// Class mean offset, `Phi^{-1}(1 - bayes_error)`.
    pub fn mean_offset(&self) -> f64 {
        Normal::standard().inverse_cdf(1.0 - self.bayes_error)
    }
}

pub fn gen_gaussian(spec: &SyntheticSpec) -> Result<Dataset> {
    spec.validate()?;
    let mu = spec.mean_offset();
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut labels: Vec<Label> = (0..spec.n)
        .map(|i| if i % 2 == 0 { Label::Negative } else { Label::Positive })
        .collect();
    labels.shuffle(&mut rng);
    let mut coords = Vec::with_capacity(spec.n * spec.d);
    for &label in &labels {
        for j in 0..spec.d {
            let noise: f64 = rng.sample(StandardNormal);
            let mean = if j == 0 { label.value() as f64 * mu } else { 0.0 };
            coords.push(mean + noise);
        }
    }
    Dataset::from_flat(coords, labels, spec.d)
}

/// Exhaustive subset checks stop being attempted beyond this many subsets.
const EXHAUSTIVE_LIMIT: u128 = 2_000_000;
const SAMPLED_SUBSETS: usize = 200_000;
const MAX_REPORTED: usize = 100;

/// Findings of [`check_general_position`].
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PositionReport {
    /// `(D+1)`-subsets (or the whole set when `N <= D`) spanning less than
    /// a full-dimensional simplex; capped at 100 entries.
    pub degenerate: Vec<Vec<usize>>,
    /// Pairs of identical points; capped at 100 entries.
    pub duplicates: Vec<(usize, usize)>,
    /// False when subsets were sampled rather than enumerated.
    pub exhaustive: bool,
    pub subsets_checked: u64,
}

impl PositionReport {
    pub fn is_clean(&self) -> bool {
        self.degenerate.is_empty() && self.duplicates.is_empty()
    }

    pub fn summary(&self) -> String {
        if self.is_clean() {
            return format!(
                "general position ({} subsets checked{})",
                self.subsets_checked,
                if self.exhaustive { "" } else { ", sampled" }
            );
        }
        let mut parts = Vec::new();
        if let Some(first) = self.degenerate.first() {
            parts.push(format!(
                "{} degenerate subset(s), first {first:?}",
                self.degenerate.len()
            ));
        }
        if let Some((a, b)) = self.duplicates.first() {
            parts.push(format!(
                "{} duplicate pair(s), first ({a}, {b})",
                self.duplicates.len()
            ));
        }
        parts.join("; ")
    }
}

/// Volume tolerance scaled to the data: `1e-12 * (1 + scale)^D`.
pub fn default_position_tolerance(dataset: &Dataset) -> f64 {
    1e-12 * (1.0 + dataset.scale()).powi(dataset.d() as i32)
}

fn simplex_volume(dataset: &Dataset, subset: &[usize]) -> f64 {
    let base = dataset.point(subset[0]);
    let d = dataset.d();
    let mut entries = Vec::with_capacity(d * d);
    for &i in &subset[1..] {
        entries.extend(dataset.point(i).iter().zip(base).map(|(a, b)| a - b));
    }
    SquareMatrix::new(d, entries).map_or(0.0, |m| determinant(&m))
}

/// Reports duplicate points and `(D+1)`-subsets whose simplex volume
/// determinant is below `tol`. Enumerates subsets exhaustively for `D <= 3`
/// when there are at most two million of them, otherwise samples (seeded).
pub fn check_general_position(dataset: &Dataset, tol: f64) -> PositionReport {
    let (n, d) = (dataset.n(), dataset.d());
    let mut report = PositionReport {
        exhaustive: true,
        ..Default::default()
    };

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        dataset
            .point(a)
            .iter()
            .zip(dataset.point(b))
            .map(|(x, y)| x.total_cmp(y))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    for w in order.windows(2) {
        if dataset.point(w[0]) == dataset.point(w[1]) && report.duplicates.len() < MAX_REPORTED {
            report.duplicates.push((w[0].min(w[1]), w[0].max(w[1])));
        }
    }

    if n <= d {
        let base = dataset.point(0);
        let diffs: Vec<Vec<f64>> = (1..n)
            .map(|i| dataset.point(i).iter().zip(base).map(|(a, b)| a - b).collect())
            .collect();
        report.subsets_checked = 1;
        if n > 1 && rank(&diffs, tol.max(f64::MIN_POSITIVE)) < n - 1 {
            report.degenerate.push((0..n).collect());
        }
        return report;
    }

    let total = binomial(n, d + 1);
    let flag = |subset: &[usize], report: &mut PositionReport| {
        report.subsets_checked += 1;
        if simplex_volume(dataset, subset).abs() < tol && report.degenerate.len() < MAX_REPORTED {
            report.degenerate.push(subset.to_vec());
        }
    };
    if d <= 3 && total <= EXHAUSTIVE_LIMIT {
        for subset in (0..n).combinations(d + 1) {
            flag(&subset, &mut report);
        }
    } else {
        report.exhaustive = false;
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let indices: Vec<usize> = (0..n).collect();
        for _ in 0..SAMPLED_SUBSETS {
            let mut subset: Vec<usize> = indices.choose_multiple(&mut rng, d + 1).copied().collect();
            subset.sort_unstable();
            flag(&subset, &mut report);
        }
    }
    report
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Adds seeded uniform noise of magnitude `1e-9 * scale` to every
/// coordinate (scale 1 for an all-zero dataset).
pub fn jitter(dataset: &Dataset, seed: u64) -> Dataset {
    let scale = dataset.scale();
    let magnitude = 1e-9 * if scale > 0.0 { scale } else { 1.0 };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coords = dataset
        .coords()
        .iter()
        .map(|v| v + magnitude * rng.random_range(-1.0..=1.0))
        .collect();
    Dataset::from_flat(coords, dataset.labels().to_vec(), dataset.d())
        .expect("jitter preserves shape")
}

#[cfg(test)]
mod tests {
    use super::*;
    use Label::{Negative as N, Positive as P};

    #[test]
    fn parse_basic() {
        let ds = read_csv("1.0,2.0,1\n3.0,4.0,0\n".as_bytes(), CsvOptions::default()).unwrap();
        assert_eq!((ds.n(), ds.d()), (2, 2));
        assert_eq!(ds.labels(), &[P, N]);
        assert_eq!(ds.point(1), &[3.0, 4.0]);
    }

    #[test]
    fn parse_header_and_signed_labels() {
        let text = "a,b,label\n1,2,-1\n3,4,1\n";
        let ds = read_csv(text.as_bytes(), CsvOptions { has_header: true }).unwrap();
        assert_eq!(ds.n(), 2);
        assert_eq!(ds.labels(), &[N, P]);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            read_csv("1,2,1\n3,0\n".as_bytes(), CsvOptions::default()),
            Err(Error::RaggedRows { row: 2, expected: 3, found: 2 })
        ));
        assert!(matches!(
            read_csv("1,x,1\n".as_bytes(), CsvOptions::default()),
            Err(Error::ParseError { row: 1, column: 2, .. })
        ));
        assert!(matches!(
            read_csv("1,2,3\n".as_bytes(), CsvOptions::default()),
            Err(Error::BadLabelAlphabet(_))
        ));
        assert!(matches!(
            read_csv("1,0\n1,-1\n".as_bytes(), CsvOptions::default()),
            Err(Error::BadLabelAlphabet(_))
        ));
        assert!(matches!(
            read_csv("".as_bytes(), CsvOptions::default()),
            Err(Error::EmptyDataset)
        ));
    }

    #[test]
    fn mean_offset_matches_quantile() {
        let spec = SyntheticSpec {
            n: 10,
            d: 2,
            bayes_error: 0.1,
            seed: 0,
        };
        // frozen from a bisection on a Simpson-rule normal CDF (see tests/data.rs)
        assert!((spec.mean_offset() - 1.2815515655446004).abs() < 1e-9);
    }

    #[test]
    fn generator_is_deterministic_and_balanced() {
        let spec = SyntheticSpec {
            n: 101,
            d: 3,
            bayes_error: 0.2,
            seed: 42,
        };
        let a = gen_gaussian(&spec).unwrap();
        let b = gen_gaussian(&spec).unwrap();
        assert_eq!(a, b);
        assert_eq!((a.n(), a.d()), (101, 3));
        assert!(a.count(P).abs_diff(a.count(N)) <= 1);
        assert!(gen_gaussian(&SyntheticSpec { bayes_error: 0.5, ..spec }).is_err());
        assert!(gen_gaussian(&SyntheticSpec { n: 1, ..spec }).is_err());
    }

    #[test]
    fn position_examples() {
        let clean = Dataset::new(&[[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]], vec![P, N, P]).unwrap();
        assert!(check_general_position(&clean, 1e-12).is_clean());

        let collinear = Dataset::new(&[[0.0, 0.0], [1.0, 1.0], [2.0, 2.0]], vec![P, N, P]).unwrap();
        let r = check_general_position(&collinear, 1e-12);
        assert_eq!(r.degenerate, vec![vec![0, 1, 2]]);

        let dup = Dataset::new(&[[0.5, 0.1], [0.5, 0.1]], vec![P, N]).unwrap();
        let r = check_general_position(&dup, 1e-12);
        assert_eq!(r.duplicates, vec![(0, 1)]);
        assert!(!r.is_clean());
    }
}
