//! Labelled point sets.

use crate::error::{Error, Result};

/// Binary class label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Negative,
    Positive,
}

impl Label {
    #[inline]
    pub fn value(self) -> i8 {
        match self {
            Label::Negative => -1,
            Label::Positive => 1,
        }
    }

    pub fn from_sign(v: i8) -> Option<Label> {
        match v {
            -1 => Some(Label::Negative),
            1 => Some(Label::Positive),
            _ => None,
        }
    }
}

/// Maps raw labels to `{-1, +1}`. Accepts `{0, 1}` (0 becomes -1) or
/// `{-1, +1}`; mixing the two alphabets is rejected.
pub fn encode_labels(raw: &[i64]) -> Result<Vec<Label>> {
    let mut saw_zero = false;
    let mut saw_minus = false;
    for &v in raw {
        match v {
            0 => saw_zero = true,
            -1 => saw_minus = true,
            1 => {}
            other => return Err(Error::BadLabelAlphabet(format!("unexpected label {other}"))),
        }
    }
    if saw_zero && saw_minus {
        return Err(Error::BadLabelAlphabet("mixed {0,1} and {-1,+1} labels".into()));
    }
    Ok(raw
        .iter()
        .map(|&v| if v == 1 { Label::Positive } else { Label::Negative })
        .collect())
}

/// A borrowed data item.
#[derive(Debug, Clone, Copy)]
pub struct Item<'a> {
    pub point: &'a [f64],
    pub label: Label,
}

/// `N` points of dimension `D` with labels, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    coords: Vec<f64>,
    labels: Vec<Label>,
    d: usize,
}

impl Dataset {
    pub fn new<P: AsRef<[f64]>>(points: &[P], labels: Vec<Label>) -> Result<Self> {
        let d = points.first().map(|p| p.as_ref().len()).ok_or(Error::EmptyDataset)?;
        let mut coords = Vec::with_capacity(points.len() * d);
        for (row, p) in points.iter().enumerate() {
            let p = p.as_ref();
            if p.len() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    actual: p.len(),
                });
            }
            if let Some(column) = p.iter().position(|v| !v.is_finite()) {
                return Err(Error::NonFinite { row, column });
            }
            coords.extend_from_slice(p);
        }
        Dataset::from_flat(coords, labels, d)
    }

    pub fn from_flat(coords: Vec<f64>, labels: Vec<Label>, d: usize) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::EmptyDataset);
        }
        if d == 0 {
            return Err(Error::InvalidParameter("dimension must be at least 1".into()));
        }
        if coords.len() != labels.len() * d {
            return Err(Error::LengthMismatch {
                expected: labels.len() * d,
                actual: coords.len(),
            });
        }
        if let Some(i) = coords.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                row: i / d,
                column: i % d,
            });
        }
        Ok(Dataset { coords, labels, d })
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn d(&self) -> usize {
        self.d
    }

    #[inline]
    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.d..(i + 1) * self.d]
    }

    #[inline]
    pub fn label(&self, i: usize) -> Label {
        self.labels[i]
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn item(&self, i: usize) -> Item<'_> {
        Item {
            point: self.point(i),
            label: self.labels[i],
        }
    }

    pub fn points(&self) -> impl ExactSizeIterator<Item = &[f64]> + '_ {
        self.coords.chunks_exact(self.d)
    }

    pub fn items(&self) -> impl ExactSizeIterator<Item = Item<'_>> + '_ {
        self.points()
            .zip(&self.labels)
            .map(|(point, &label)| Item { point, label })
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    /// Largest absolute coordinate.
    pub fn scale(&self) -> f64 {
        self.coords.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Default boundary tolerance, `1e-8 * (1 + scale)`.
    pub fn default_eps(&self) -> f64 {
        1e-8 * (1.0 + self.scale())
    }

    /// The sub-dataset made of the given rows, in the given order.
    pub fn subset(&self, rows: &[usize]) -> Result<Dataset> {
        let mut coords = Vec::with_capacity(rows.len() * self.d);
        let mut labels = Vec::with_capacity(rows.len());
        for &r in rows {
            coords.extend_from_slice(self.point(r));
            labels.push(self.labels[r]);
        }
        Dataset::from_flat(coords, labels, self.d)
    }

    pub fn with_labels(&self, labels: Vec<Label>) -> Result<Dataset> {
        Dataset::from_flat(self.coords.clone(), labels, self.d)
    }

    pub fn count(&self, label: Label) -> usize {
        self.labels.iter().filter(|&&l| l == label).count()
    }
}
