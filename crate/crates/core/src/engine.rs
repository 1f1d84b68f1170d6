//! Incremental cell enumeration.
//!
//! The solver scans the dataset once. After `i` items it holds every
//! combination of at most `D` item indices drawn from the first `i` items.
//! A combination of size `D` carries the hyperplane through its points
//! together with the 0-1 loss of that hyperplane on the scanned prefix.
//! Each new item produces two children per configuration: the configuration
//! with the item scanned (loss updated in O(D)), and, while the combination
//! is short, the configuration with the item added to its combination.
//!
//! Because the accumulated loss never decreases as more items are scanned,
//! any configuration whose loss exceeds the upper bound can be dropped with
//! all of its descendants without losing an optimum.
//!
//! Configurations never store their scanned sequence: it is always the
//! dataset prefix of length `scanned`.

use std::cmp::Ordering;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::dataset::{Dataset, Item};
use crate::error::{Error, Result};
use crate::geometry::{fit_hyperplane, Hyperplane, Sense};
use crate::loss::{assign, assign_point, loss_pair, Assignment};

/// Frontier slices below this length are not worth splitting across threads.
const PAR_MIN_LEN: usize = 4096;

/// A fitted boundary and its 0-1 loss over the scanned prefix.
#[derive(Debug, Clone, PartialEq)]
pub struct Model {
    pub hyperplane: Hyperplane,
    pub accumulated_loss: usize,
}

/// Partial solution: a combination of item indices, the length of the
/// scanned prefix and, once the combination has `D` members, its model.
#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    pub combination: Vec<usize>,
    pub scanned: usize,
    pub model: Option<Model>,
}

impl Config {
    /// Empty combination, nothing scanned, no model.
    pub fn init() -> Config {
        Config {
            combination: Vec::new(),
            scanned: 0,
            model: None,
        }
    }

    pub fn loss(&self) -> Option<usize> {
        self.model.as_ref().map(|m| m.accumulated_loss)
    }

    #[inline]
    fn advance(&mut self, item: Item<'_>, eps: f64) {
        self.scanned += 1;
        if let Some(m) = &mut self.model {
            m.accumulated_loss += loss_pair(item.label, assign_point(&m.hyperplane, item.point, eps));
        }
    }
}

/// Scans `item` without adding it to the combination.
pub fn extend_sequence(c: &Config, item: Item<'_>, eps: f64) -> Config {
    let mut next = c.clone();
    next.advance(item, eps);
    next
}

/// Adds item `index` (which must be the next unscanned item) to the
/// combination. When the combination reaches size `D` the hyperplane is
/// fitted and its loss computed over the whole scanned prefix, with the
/// defining points counted as lying on the boundary.
///
/// Returns `Ok(None)` when the fit is singular.
pub fn extend_combination(
    c: &Config,
    dataset: &Dataset,
    index: usize,
    sense: Sense,
    eps: f64,
) -> Result<Option<Config>> {
    let d = dataset.d();
    if c.combination.len() >= d || c.model.is_some() {
        return Err(Error::InvalidParameter(
            "combination is already complete".into(),
        ));
    }
    if index != c.scanned || index >= dataset.n() {
        return Err(Error::InvalidParameter(format!(
            "item {index} is not the next unscanned item ({})",
            c.scanned
        )));
    }
    let mut combination = Vec::with_capacity(c.combination.len() + 1);
    combination.extend_from_slice(&c.combination);
    combination.push(index);

    let model = if combination.len() == d {
        let points: Vec<&[f64]> = combination.iter().map(|&j| dataset.point(j)).collect();
        let hyperplane = match fit_hyperplane(&points, sense) {
            Ok(h) => h,
            Err(Error::SingularSystem) => return Ok(None),
            Err(e) => return Err(e),
        };
        let accumulated_loss = prefix_loss(dataset, &hyperplane, &combination, index + 1, eps);
        Some(Model {
            hyperplane,
            accumulated_loss,
        })
    } else {
        None
    };
    Ok(Some(Config {
        combination,
        scanned: c.scanned + 1,
        model,
    }))
}

fn prefix_loss(
    dataset: &Dataset,
    h: &Hyperplane,
    defining: &[usize],
    len: usize,
    eps: f64,
) -> usize {
    // `defining` is sorted ascending
    let mut next = 0;
    let mut loss = 0;
    for j in 0..len {
        if next < defining.len() && defining[next] == j {
            next += 1;
            continue;
        }
        loss += loss_pair(dataset.label(j), assign_point(h, dataset.point(j), eps));
    }
    loss
}

/// Prefix-closed filter: combination no larger than `d`, and loss (if any)
/// at most `ub`.
pub fn retain(c: &Config, d: usize, ub: usize) -> bool {
    c.combination.len() <= d && c.model.as_ref().is_none_or(|m| m.accumulated_loss <= ub)
}

/// Work counters for one or more enumeration runs.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct SearchStats {
    /// Child configurations created.
    pub configs_expanded: u64,
    /// Children discarded by the upper-bound filter.
    pub configs_pruned: u64,
    /// Combinations skipped because their fit was singular.
    pub singular_skipped: u64,
    pub wall_time: Duration,
}

impl SearchStats {
    fn merge(&mut self, other: &SearchStats) {
        self.configs_expanded += other.configs_expanded;
        self.configs_pruned += other.configs_pruned;
        self.singular_skipped += other.singular_skipped;
        self.wall_time += other.wall_time;
    }
}

/// The level-by-level state of one enumeration run.
pub struct Frontier<'a> {
    dataset: &'a Dataset,
    sense: Sense,
    ub: usize,
    eps: f64,
    parallel: bool,
    /// Combinations shorter than `D` (no model).
    partial: Vec<Config>,
    /// Combinations of size `D` with a model, in creation order.
    complete: Vec<Config>,
    scanned: usize,
    stats: SearchStats,
}

impl<'a> Frontier<'a> {
    pub fn new(dataset: &'a Dataset, sense: Sense, ub: usize, eps: f64) -> Result<Self> {
        check_sizes(dataset)?;
        if !(eps > 0.0) {
            return Err(Error::InvalidParameter("eps must be positive".into()));
        }
        Ok(Frontier {
            dataset,
            sense,
            ub,
            eps,
            parallel: false,
            partial: vec![Config::init()],
            complete: Vec::new(),
            scanned: 0,
            stats: SearchStats::default(),
        })
    }

    /// Spreads each step over the current rayon pool.
    pub fn parallel(mut self, yes: bool) -> Self {
        self.parallel = yes;
        self
    }

    pub fn scanned(&self) -> usize {
        self.scanned
    }

    pub fn is_done(&self) -> bool {
        self.scanned == self.dataset.n()
    }

    pub fn stats(&self) -> &SearchStats {
        &self.stats
    }

    /// All live configurations: short combinations first, then complete
    /// ones in creation order.
    pub fn configs(&self) -> impl Iterator<Item = &Config> {
        self.partial.iter().chain(&self.complete)
    }

    /// Consumes the next dataset item.
    pub fn step(&mut self) -> Result<()> {
        if self.is_done() {
            return Ok(());
        }
        let start = Instant::now();
        let index = self.scanned;
        let item = self.dataset.item(index);
        let (dataset, sense, ub, eps) = (self.dataset, self.sense, self.ub, self.eps);
        let d = dataset.d();
        let parents = self.partial.len() + self.complete.len();

        let born: Vec<Option<Config>> = if self.parallel && self.partial.len() >= PAR_MIN_LEN {
            self.partial
                .par_iter()
                .map(|c| extend_combination(c, dataset, index, sense, eps))
                .collect::<Result<_>>()?
        } else {
            self.partial
                .iter()
                .map(|c| extend_combination(c, dataset, index, sense, eps))
                .collect::<Result<_>>()?
        };

        if self.parallel && self.complete.len() >= PAR_MIN_LEN {
            self.complete
                .par_iter_mut()
                .with_min_len(PAR_MIN_LEN)
                .for_each(|c| c.advance(item, eps));
        } else {
            self.complete.iter_mut().for_each(|c| c.advance(item, eps));
        }
        self.partial.iter_mut().for_each(|c| c.advance(item, eps));

        let live = self.complete.len();
        let created = (parents + born.len()) as u64;
        self.complete.retain(|c| retain(c, d, ub));
        let mut pruned = live - self.complete.len();
        let mut singular = 0;
        for child in born {
            match child {
                None => singular += 1,
                Some(c) if c.model.is_none() => self.partial.push(c),
                Some(c) if retain(&c, d, ub) => self.complete.push(c),
                Some(_) => pruned += 1,
            }
        }

        self.stats.configs_expanded += created;
        self.stats.configs_pruned += pruned as u64;
        self.stats.singular_skipped += singular;
        self.stats.wall_time += start.elapsed();
        self.scanned += 1;
        Ok(())
    }

    /// Runs to the end and returns the final configurations; complete
    /// combinations are ordered lexicographically.
    pub fn finish(mut self) -> Result<(Vec<Config>, SearchStats)> {
        while !self.is_done() {
            self.step()?;
        }
        let start = Instant::now();
        self.complete
            .sort_unstable_by(|a, b| a.combination.cmp(&b.combination));
        self.stats.wall_time += start.elapsed();
        let mut out = self.partial;
        out.append(&mut self.complete);
        Ok((out, self.stats))
    }
}

fn check_sizes(dataset: &Dataset) -> Result<()> {
    if dataset.n() == 0 {
        return Err(Error::EmptyDataset);
    }
    if dataset.d() > dataset.n() {
        return Err(Error::DimensionExceedsCount {
            d: dataset.d(),
            n: dataset.n(),
        });
    }
    Ok(())
}

/// Enumerates every retained configuration for one orientation.
pub fn generate(dataset: &Dataset, sense: Sense, ub: usize, eps: f64) -> Result<Vec<Config>> {
    Ok(Frontier::new(dataset, sense, ub, eps)?.finish()?.0)
}

/// First configuration (in the given order) with a model of minimum loss.
pub fn select_best(configs: &[Config]) -> Option<&Config> {
    configs
        .iter()
        .filter(|c| c.model.is_some())
        .fold(None, |best: Option<&Config>, c| match best {
            Some(b) if b.loss() <= c.loss() => Some(b),
            _ => Some(c),
        })
}

/// Result of an exact solve.
#[derive(Debug, Clone)]
pub struct SolveReport {
    pub hyperplane: Hyperplane,
    pub optimal_loss: usize,
    pub combination: Vec<usize>,
    /// Predictions on the training set with boundary points taking their
    /// training labels.
    pub assignment: Assignment,
    pub ub: usize,
    pub eps: f64,
    pub stats: SearchStats,
}

impl SolveReport {
    pub fn sense(&self) -> Sense {
        self.hyperplane.sense()
    }
}

/// Solver options.
#[derive(Debug, Clone, Copy, Default)]
pub struct SolveOptions {
    /// Boundary tolerance; `None` uses [`Dataset::default_eps`].
    pub eps: Option<f64>,
    /// Worker threads; 0 or 1 runs on the calling thread.
    pub threads: usize,
}

/// Exact minimum 0-1 loss hyperplane with the default options.
pub fn solve(dataset: &Dataset, ub: usize) -> Result<SolveReport> {
    solve_with(dataset, ub, &SolveOptions::default())
}

/// Enumerates both orientations and returns the best boundary. Ties are
/// broken by the lexicographically smallest combination, then positive
/// orientation first, so the result does not depend on `threads`.
pub fn solve_with(dataset: &Dataset, ub: usize, options: &SolveOptions) -> Result<SolveReport> {
    check_sizes(dataset)?;
    let eps = options.eps.unwrap_or_else(|| dataset.default_eps());
    if options.threads > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(options.threads)
            .build()
            .map_err(|e| Error::InvalidParameter(e.to_string()))?;
        pool.install(|| solve_inner(dataset, ub, eps, true))
    } else {
        solve_inner(dataset, ub, eps, false)
    }
}

fn solve_inner(dataset: &Dataset, ub: usize, eps: f64, parallel: bool) -> Result<SolveReport> {
    let mut stats = SearchStats::default();
    let mut best: Option<Config> = None;
    for sense in Sense::BOTH {
        let (configs, run) = Frontier::new(dataset, sense, ub, eps)?
            .parallel(parallel)
            .finish()?;
        stats.merge(&run);
        if let Some(candidate) = select_best(&configs) {
            let better = match &best {
                None => true,
                Some(b) => compare(candidate, b) == Ordering::Less,
            };
            if better {
                best = Some(candidate.clone());
            }
        }
    }
    let best = best.ok_or(Error::NoViableModel { ub })?;
    let model = best.model.expect("selected configs carry a model");
    let mut raw = assign(&model.hyperplane, dataset.points(), eps).into_inner();
    for &j in &best.combination {
        raw[j] = 0;
    }
    let assignment = Assignment::new(raw)?.resolve_boundary(dataset.labels());
    Ok(SolveReport {
        hyperplane: model.hyperplane,
        optimal_loss: model.accumulated_loss,
        combination: best.combination,
        assignment,
        ub,
        eps,
        stats,
    })
}

fn compare(a: &Config, b: &Config) -> Ordering {
    let sense = |c: &Config| c.model.as_ref().map(|m| m.hyperplane.sense());
    a.loss()
        .cmp(&b.loss())
        .then_with(|| a.combination.cmp(&b.combination))
        .then_with(|| sense(a).cmp(&sense(b)))
}
