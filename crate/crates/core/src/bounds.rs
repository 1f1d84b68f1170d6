//! Certified upper bounds on the optimal 0-1 loss.
//!
//! Every provider except the trivial one reports the realized 0-1 loss of a
//! concrete hyperplane, which can never be below the optimum. Points that
//! land on a witness boundary are counted as errors here, so the bound stays
//! valid without any general-position assumption.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::dataset::Dataset;
use crate::geometry::Hyperplane;
use crate::loss::sign_with_tolerance;

/// An upper bound on the optimal loss and the hyperplane realizing it.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundEstimate {
    pub value: usize,
    pub witness: Option<Hyperplane>,
    pub provider: &'static str,
}

/// `floor(N / 2)`: one of the two orientations of any boundary misclassifies
/// at most half of the points.
pub fn trivial_bound(dataset: &Dataset) -> BoundEstimate {
    BoundEstimate {
        value: dataset.n() / 2,
        witness: None,
        provider: "trivial",
    }
}

/// Loss with boundary points counted as misclassified.
fn strict_loss(dataset: &Dataset, h: &Hyperplane, eps: f64) -> usize {
    dataset
        .items()
        .filter(|it| sign_with_tolerance(h.evaluate(it.point), eps) != it.label.value())
        .count()
}

/// Keeps the better orientation of `coeffs` if it beats `best`.
fn offer(best: &mut Option<(usize, Hyperplane)>, dataset: &Dataset, coeffs: &[f64], eps: f64) {
    let Ok(h) = Hyperplane::from_homogeneous(coeffs) else {
        return;
    };
    for cand in [h.flipped(), h] {
        let loss = strict_loss(dataset, &cand, eps);
        if best.as_ref().is_none_or(|(b, _)| loss <= *b) {
            *best = Some((loss, cand));
        }
    }
}

fn finish(best: Option<(usize, Hyperplane)>, dataset: &Dataset, provider: &'static str) -> BoundEstimate {
    match best {
        Some((value, h)) => BoundEstimate {
            value,
            witness: Some(h),
            provider,
        },
        None => BoundEstimate {
            value: dataset.n(),
            witness: None,
            provider,
        },
    }
}

#[inline]
fn homogeneous_dot(w: &[f64], x: &[f64]) -> f64 {
    let (normal, bias) = w.split_at(x.len());
    normal.iter().zip(x).map(|(a, b)| a * b).sum::<f64>() + bias[0]
}

/// Perceptron on homogeneous coordinates with a pocket holding the best
/// weights seen at the end of any epoch. Visiting order is reshuffled every
/// epoch from `seed`.
pub fn pocket_perceptron(dataset: &Dataset, epochs: usize, seed: u64) -> BoundEstimate {
    let eps = dataset.default_eps();
    let d = dataset.d();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..dataset.n()).collect();
    let mut w = vec![0.0; d + 1];
    let mut best = None;
    for _ in 0..epochs.max(1) {
        order.shuffle(&mut rng);
        let mut updates = 0;
        for &i in &order {
            let it = dataset.item(i);
            let l = it.label.value() as f64;
            if l * homogeneous_dot(&w, it.point) <= 0.0 {
                for (wj, xj) in w.iter_mut().zip(it.point) {
                    *wj += l * xj;
                }
                w[d] += l;
                updates += 1;
            }
        }
        offer(&mut best, dataset, &w, eps);
        if updates == 0 || matches!(best, Some((0, _))) {
            break;
        }
    }
    finish(best, dataset, "pocket")
}

/// Full-batch subgradient descent on the mean hinge loss with step
/// `0.1 / sqrt(t)`. The bound is the best realized 0-1 loss over all
/// iterates, never the hinge value.
pub fn hinge_subgradient(dataset: &Dataset, iterations: usize) -> BoundEstimate {
    let eps = dataset.default_eps();
    let d = dataset.d();
    let n = dataset.n() as f64;
    let mut w = vec![0.0; d + 1];
    let mut grad = vec![0.0; d + 1];
    let mut best = None;
    for t in 1..=iterations.max(1) {
        grad.iter_mut().for_each(|g| *g = 0.0);
        for it in dataset.items() {
            let l = it.label.value() as f64;
            if l * homogeneous_dot(&w, it.point) < 1.0 {
                for (g, x) in grad.iter_mut().zip(it.point) {
                    *g -= l * x / n;
                }
                grad[d] -= l / n;
            }
        }
        let step = 0.1 / (t as f64).sqrt();
        for (wj, g) in w.iter_mut().zip(&grad) {
            *wj -= step * g;
        }
        offer(&mut best, dataset, &w, eps);
        if matches!(best, Some((0, _))) {
            break;
        }
    }
    finish(best, dataset, "hinge")
}

/// Which providers [`compute_upper_bound`] consults.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundConfig {
    pub trivial: bool,
    /// `(epochs, seed)`
    pub pocket: Option<(usize, u64)>,
    /// iterations
    pub hinge: Option<usize>,
}

impl Default for BoundConfig {
    fn default() -> Self {
        BoundConfig {
            trivial: true,
            pocket: Some((50, 0)),
            hinge: None,
        }
    }
}

impl BoundConfig {
    pub fn trivial_only() -> Self {
        BoundConfig {
            trivial: true,
            pocket: None,
            hinge: None,
        }
    }
}

/// Smallest estimate; on ties, one with a witness wins.
pub fn tightest(estimates: impl IntoIterator<Item = BoundEstimate>) -> Option<BoundEstimate> {
    estimates
        .into_iter()
        .min_by_key(|e| (e.value, e.witness.is_none()))
}

pub fn compute_upper_bound(dataset: &Dataset, config: &BoundConfig) -> BoundEstimate {
    let mut estimates = Vec::new();
    if let Some((epochs, seed)) = config.pocket {
        estimates.push(pocket_perceptron(dataset, epochs, seed));
    }
    if let Some(iterations) = config.hinge {
        estimates.push(hinge_subgradient(dataset, iterations));
    }
    if config.trivial || estimates.is_empty() {
        estimates.push(trivial_bound(dataset));
    }
    tightest(estimates).expect("at least one provider")
}

/// How a solve obtains its upper bound.
#[derive(Debug, Clone, PartialEq)]
pub enum UpperBound {
    /// `ub = N`: no pruning.
    Disabled,
    Auto(BoundConfig),
    /// Caller-asserted bound; too small a value makes the solve fail.
    Fixed(usize),
}

impl UpperBound {
    pub fn name(&self) -> String {
        match self {
            UpperBound::Disabled => "none".into(),
            UpperBound::Auto(_) => "auto".into(),
            UpperBound::Fixed(k) => k.to_string(),
        }
    }

    /// The bound value, plus the estimate it came from in `Auto` mode.
    pub fn resolve(&self, dataset: &Dataset) -> (usize, Option<BoundEstimate>) {
        match self {
            UpperBound::Disabled => (dataset.n(), None),
            UpperBound::Auto(config) => {
                let e = compute_upper_bound(dataset, config);
                (e.value, Some(e))
            }
            UpperBound::Fixed(k) => (*k, None),
        }
    }
}
