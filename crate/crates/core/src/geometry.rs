//! Small dense linear algebra, oriented hyperplanes through `D` points and the
//! point/hyperplane duality used to cross-check enumeration results.

use crate::error::{Error, Result};

/// Pivots smaller than this fraction of their row's largest entry are
/// treated as zero.
pub const PIVOT_TOLERANCE: f64 = 1e-12;

/// Orientation of a fitted boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sense {
    Positive,
    Negative,
}

impl Sense {
    pub const BOTH: [Sense; 2] = [Sense::Positive, Sense::Negative];

    pub fn value(self) -> f64 {
        match self {
            Sense::Positive => 1.0,
            Sense::Negative => -1.0,
        }
    }

    pub fn flip(self) -> Sense {
        match self {
            Sense::Positive => Sense::Negative,
            Sense::Negative => Sense::Positive,
        }
    }
}

/// A `D x D` matrix stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SquareMatrix {
    order: usize,
    entries: Vec<f64>,
}

impl SquareMatrix {
    pub fn new(order: usize, entries: Vec<f64>) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidParameter("matrix order must be positive".into()));
        }
        if entries.len() != order * order {
            return Err(Error::LengthMismatch {
                expected: order * order,
                actual: entries.len(),
            });
        }
        if entries.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter("matrix entries must be finite".into()));
        }
        Ok(SquareMatrix { order, entries })
    }

    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let order = rows.len();
        let mut entries = Vec::with_capacity(order * order);
        for row in rows {
            let row = row.as_ref();
            if row.len() != order {
                return Err(Error::DimensionMismatch {
                    expected: order,
                    actual: row.len(),
                });
            }
            entries.extend_from_slice(row);
        }
        SquareMatrix::new(order, entries)
    }

    pub fn identity(order: usize) -> Self {
        let mut entries = vec![0.0; order * order];
        for i in 0..order {
            entries[i * order + i] = 1.0;
        }
        SquareMatrix { order, entries }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.entries[row * self.order + col]
    }

    pub fn row(&self, row: usize) -> &[f64] {
        &self.entries[row * self.order..(row + 1) * self.order]
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        (0..self.order).map(|r| dot(self.row(r), x)).collect()
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Forward elimination with partial pivoting, in place. Returns the row
/// permutation sign, or `SingularSystem` when a pivot falls below
/// `PIVOT_TOLERANCE` relative to the original scale of its row.
fn eliminate(order: usize, m: &mut [f64], rhs: Option<&mut [f64]>) -> Result<f64> {
    let mut scale: Vec<f64> = (0..order)
        .map(|r| m[r * order..(r + 1) * order].iter().fold(0.0, |a: f64, v| a.max(v.abs())))
        .collect();
    let mut rhs = rhs;
    let mut sign = 1.0;
    for col in 0..order {
        let pivot_row = (col..order)
            .max_by(|&a, &b| m[a * order + col].abs().total_cmp(&m[b * order + col].abs()))
            .expect("non-empty pivot range");
        if pivot_row != col {
            for j in 0..order {
                m.swap(col * order + j, pivot_row * order + j);
            }
            scale.swap(col, pivot_row);
            if let Some(b) = rhs.as_deref_mut() {
                b.swap(col, pivot_row);
            }
            sign = -sign;
        }
        let pivot = m[col * order + col];
        if pivot == 0.0 || pivot.abs() < PIVOT_TOLERANCE * scale[col] {
            return Err(Error::SingularSystem);
        }
        for r in col + 1..order {
            let factor = m[r * order + col] / pivot;
            if factor == 0.0 {
                continue;
            }
            m[r * order + col] = 0.0;
            for j in col + 1..order {
                m[r * order + j] -= factor * m[col * order + j];
            }
            if let Some(b) = rhs.as_deref_mut() {
                b[r] -= factor * b[col];
            }
        }
    }
    Ok(sign)
}

/// Solves `a x = b` by Gaussian elimination with partial pivoting.
pub fn solve_linear(a: &SquareMatrix, b: &[f64]) -> Result<Vec<f64>> {
    let n = a.order;
    if b.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            actual: b.len(),
        });
    }
    let mut m = a.entries.clone();
    let mut x = b.to_vec();
    eliminate(n, &mut m, Some(&mut x))?;
    for r in (0..n).rev() {
        let tail: f64 = (r + 1..n).map(|j| m[r * n + j] * x[j]).sum();
        x[r] = (x[r] - tail) / m[r * n + r];
    }
    Ok(x)
}

/// Determinant via the same pivoted elimination; singular matrices give 0.
pub fn determinant(a: &SquareMatrix) -> f64 {
    let n = a.order;
    let mut m = a.entries.clone();
    match eliminate(n, &mut m, None) {
        Ok(sign) => (0..n).fold(sign, |acc, i| acc * m[i * n + i]),
        Err(_) => 0.0,
    }
}

/// Numerical rank of a set of row vectors (rows may outnumber columns).
pub fn rank<R: AsRef<[f64]>>(rows: &[R], tol: f64) -> usize {
    let mut rows: Vec<Vec<f64>> = rows.iter().map(|r| r.as_ref().to_vec()).collect();
    let cols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows.len() {
            break;
        }
        let best = (rank..rows.len())
            .max_by(|&a, &b| rows[a][col].abs().total_cmp(&rows[b][col].abs()))
            .unwrap();
        if rows[best][col].abs() <= tol {
            continue;
        }
        rows.swap(rank, best);
        for r in rank + 1..rows.len() {
            let factor = rows[r][col] / rows[rank][col];
            for j in col..cols {
                rows[r][j] -= factor * rows[rank][j];
            }
        }
        rank += 1;
    }
    rank
}

/// Oriented affine hyperplane `h(x) = normal . x + offset`.
///
/// Boundaries fitted through `D` points are stored as
/// `h(x) = sense * (w . x - 1)`, i.e. `normal = sense * w` and
/// `offset = -sense`.
#[derive(Debug, Clone, PartialEq)]
pub struct Hyperplane {
    normal: Vec<f64>,
    offset: f64,
    sense: Sense,
}

impl Hyperplane {
    /// Builds a hyperplane from homogeneous coefficients `[a_1, .., a_D, a_0]`.
    pub fn from_homogeneous(coefficients: &[f64]) -> Result<Self> {
        if coefficients.len() < 2 {
            return Err(Error::InvalidParameter(
                "homogeneous vector needs at least two entries".into(),
            ));
        }
        if coefficients.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidParameter("non-finite hyperplane coefficient".into()));
        }
        if coefficients.iter().all(|&c| c == 0.0) {
            return Err(Error::InvalidParameter("zero hyperplane".into()));
        }
        let (normal, offset) = coefficients.split_at(coefficients.len() - 1);
        Ok(Hyperplane {
            normal: normal.to_vec(),
            offset: offset[0],
            sense: Sense::Positive,
        })
    }

    /// Overrides the recorded orientation label; coefficients are unchanged.
    pub fn with_sense(mut self, sense: Sense) -> Self {
        self.sense = sense;
        self
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    pub fn normal(&self) -> &[f64] {
        &self.normal
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    pub fn sense(&self) -> Sense {
        self.sense
    }

    /// `[normal, offset]`, length `D + 1`.
    pub fn homogeneous(&self) -> Vec<f64> {
        let mut v = self.normal.clone();
        v.push(self.offset);
        v
    }

    #[inline]
    pub fn evaluate(&self, x: &[f64]) -> f64 {
        dot(&self.normal, x) + self.offset
    }

    /// Same boundary, opposite orientation.
    pub fn flipped(&self) -> Hyperplane {
        Hyperplane {
            normal: self.normal.iter().map(|v| -v).collect(),
            offset: -self.offset,
            sense: self.sense.flip(),
        }
    }
}

/// Fits the hyperplane through exactly `D` points of dimension `D` by solving
/// `X w = 1`.
///
/// Affinely degenerate combinations and combinations whose spanning
/// hyperplane passes through the origin yield `SingularSystem`.
pub fn fit_hyperplane<P: AsRef<[f64]>>(points: &[P], sense: Sense) -> Result<Hyperplane> {
    let d = points.len();
    if d == 0 {
        return Err(Error::InvalidParameter("need at least one point".into()));
    }
    let matrix = SquareMatrix::from_rows(points)?;
    let w = solve_linear(&matrix, &vec![1.0; d])?;
    if w.iter().any(|v| !v.is_finite()) {
        return Err(Error::SingularSystem);
    }
    let s = sense.value();
    Ok(Hyperplane {
        normal: w.iter().map(|v| s * v).collect(),
        offset: -s,
        sense,
    })
}

/// `h(x)` for every point, in order.
pub fn signed_values<'a, I>(h: &Hyperplane, points: I) -> Vec<f64>
where
    I: IntoIterator<Item = &'a [f64]>,
{
    points.into_iter().map(|p| h.evaluate(p)).collect()
}

/// Non-vertical hyperplane `x_D = c_1 x_1 + .. + c_{D-1} x_{D-1} - c_D`.
#[derive(Debug, Clone, PartialEq)]
pub struct DualHyperplane {
    coefficients: Vec<f64>,
}

impl DualHyperplane {
    pub fn new(coefficients: Vec<f64>) -> Result<Self> {
        if coefficients.is_empty() || coefficients.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidParameter(
                "dual hyperplane coefficients must be finite and non-empty".into(),
            ));
        }
        Ok(DualHyperplane { coefficients })
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    /// `x_D - (c_1 x_1 + .. + c_{D-1} x_{D-1} - c_D)`: positive above,
    /// negative below, zero on the hyperplane.
    pub fn side_of(&self, x: &[f64]) -> f64 {
        let d = self.coefficients.len();
        let (slopes, intercept) = self.coefficients.split_at(d - 1);
        x[d - 1] - (dot(slopes, &x[..d - 1]) - intercept[0])
    }

    pub fn contains(&self, x: &[f64], tol: f64) -> bool {
        self.side_of(x).abs() <= tol
    }
}

/// Maps a point to its dual hyperplane.
pub fn dual_map(p: &[f64]) -> DualHyperplane {
    DualHyperplane {
        coefficients: p.to_vec(),
    }
}

/// Maps a non-vertical hyperplane back to its dual point.
pub fn dual_unmap(h: &DualHyperplane) -> Vec<f64> {
    h.coefficients.clone()
}
