//! Trinary assignments and the 0-1 loss.

use crate::dataset::Label;
use crate::error::{Error, Result};
use crate::geometry::Hyperplane;

/// Per-point prediction in `{-1, 0, +1}`; 0 marks points on the boundary.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Assignment(Vec<i8>);

impl Assignment {
    pub fn new(values: Vec<i8>) -> Result<Self> {
        if let Some(v) = values.iter().find(|v| !(-1..=1).contains(*v)) {
            return Err(Error::InvalidParameter(format!("assignment entry {v} outside {{-1,0,1}}")));
        }
        Ok(Assignment(values))
    }

    pub fn from_labels(labels: &[Label]) -> Self {
        Assignment(labels.iter().map(|l| l.value()).collect())
    }

    pub fn values(&self) -> &[i8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Replaces boundary entries with the corresponding training labels.
    pub fn resolve_boundary(&self, labels: &[Label]) -> Assignment {
        Assignment(
            self.0
                .iter()
                .zip(labels)
                .map(|(&z, l)| if z == 0 { l.value() } else { z })
                .collect(),
        )
    }

    pub fn into_inner(self) -> Vec<i8> {
        self.0
    }
}

/// Sign of `v` with `|v| <= eps` mapped to 0.
#[inline]
pub fn sign_with_tolerance(v: f64, eps: f64) -> i8 {
    if v.abs() <= eps {
        0
    } else if v > 0.0 {
        1
    } else {
        -1
    }
}

#[inline]
pub fn assign_point(h: &Hyperplane, x: &[f64], eps: f64) -> i8 {
    sign_with_tolerance(h.evaluate(x), eps)
}

/// Predicts `{-1, 0, +1}` for each point; `|h(x)| <= eps` counts as on the
/// boundary.
pub fn assign<'a, I>(h: &Hyperplane, points: I, eps: f64) -> Assignment
where
    I: IntoIterator<Item = &'a [f64]>,
{
    Assignment(points.into_iter().map(|x| assign_point(h, x, eps)).collect())
}

/// 0-1 loss term. Boundary predictions take the training label and cost
/// nothing.
#[inline]
pub fn loss_pair(label: Label, z: i8) -> usize {
    (z != 0 && z != label.value()) as usize
}

pub fn loss_total(labels: &[Label], preds: &Assignment) -> Result<usize> {
    if labels.len() != preds.len() {
        return Err(Error::LengthMismatch {
            expected: labels.len(),
            actual: preds.len(),
        });
    }
    Ok(labels
        .iter()
        .zip(preds.values())
        .map(|(&l, &z)| loss_pair(l, z))
        .sum())
}
