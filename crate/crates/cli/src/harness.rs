//! Run-time scaling measurements on synthetic data.

use std::io::Write;
use std::time::Instant;

use exact01_core::bounds::UpperBound;
use exact01_core::data::{gen_gaussian, SyntheticSpec};
use exact01_core::solve;

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone)]
pub struct BenchPlan {
    pub dims: Vec<usize>,
    /// One ascending size grid per entry of `dims`.
    pub sizes: Vec<Vec<usize>>,
    pub upper_bound: UpperBound,
    pub repeats: usize,
    pub seed: u64,
    pub bayes_error: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRecord {
    pub d: usize,
    pub n: usize,
    pub ub_mode: String,
    pub repeats: usize,
    pub median_seconds: f64,
    pub configs_expanded: u64,
    pub configs_pruned: u64,
}

pub const BENCH_COLUMNS: &str = "d,n,ub_mode,repeats,median_seconds,configs_expanded,configs_pruned";

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    let m = xs.len() / 2;
    if xs.len() % 2 == 1 {
        xs[m]
    } else {
        0.5 * (xs[m - 1] + xs[m])
    }
}

impl BenchPlan {
    pub fn validate(&self) -> CliResult<()> {
        if self.dims.len() != self.sizes.len() {
            return Err(CliError::Usage(format!(
                "{} dimensions but {} size grids",
                self.dims.len(),
                self.sizes.len()
            )));
        }
        if self.repeats < 3 {
            return Err(CliError::Usage(format!("repeats must be at least 3, got {}", self.repeats)));
        }
        for grid in &self.sizes {
            if grid.is_empty() || grid.windows(2).any(|w| w[0] >= w[1]) {
                return Err(CliError::Usage(format!("sizes must be strictly ascending: {grid:?}")));
            }
        }
        Ok(())
    }
}

/// Measures one record per `(d, n)`. Each cell gets its own generator seed
/// derived from the plan seed, and the work counters must agree across
/// repeats.
pub fn run_bench(plan: &BenchPlan, mut progress: impl FnMut(&BenchRecord)) -> CliResult<Vec<BenchRecord>> {
    plan.validate()?;
    let mut out = Vec::new();
    for (&d, grid) in plan.dims.iter().zip(&plan.sizes) {
        for &n in grid {
            let spec = SyntheticSpec {
                n,
                d,
                bayes_error: plan.bayes_error,
                seed: plan.seed ^ ((d as u64) << 32) ^ n as u64,
            };
            let ds = gen_gaussian(&spec)?;
            let mut times = Vec::with_capacity(plan.repeats);
            let mut counters = None;
            for _ in 0..plan.repeats {
                let start = Instant::now();
                let (ub, _) = plan.upper_bound.resolve(&ds);
                let report = solve(&ds, ub)?;
                times.push(start.elapsed().as_secs_f64().max(1e-9));
                let c = (report.stats.configs_expanded, report.stats.configs_pruned);
                if counters.is_some_and(|prev| prev != c) {
                    return Err(CliError::Verification(format!(
                        "work counters changed between repeats at d={d}, n={n}"
                    )));
                }
                counters = Some(c);
            }
            let (configs_expanded, configs_pruned) = counters.expect("repeats >= 3");
            let record = BenchRecord {
                d,
                n,
                ub_mode: plan.upper_bound.name(),
                repeats: plan.repeats,
                median_seconds: median(times),
                configs_expanded,
                configs_pruned,
            };
            progress(&record);
            out.push(record);
        }
    }
    Ok(out)
}

pub fn write_records<W: Write>(records: &[BenchRecord], mut out: W) -> std::io::Result<()> {
    writeln!(out, "{BENCH_COLUMNS}")?;
    for r in records {
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.d, r.n, r.ub_mode, r.repeats, r.median_seconds, r.configs_expanded, r.configs_pruned
        )?;
    }
    Ok(())
}

/// Least-squares slope of `ln(seconds)` against `ln(n)`.
pub fn fit_loglog_slope(records: &[BenchRecord]) -> CliResult<f64> {
    let mut sizes: Vec<usize> = records.iter().map(|r| r.n).collect();
    sizes.sort_unstable();
    sizes.dedup();
    if records.len() < 4 || sizes.len() != records.len() {
        return Err(CliError::InsufficientPoints {
            needed: 4,
            found: sizes.len(),
        });
    }
    if let Some(r) = records.iter().find(|r| !(r.median_seconds > 0.0)) {
        return Err(CliError::Usage(format!("non-positive time at n = {}", r.n)));
    }
    let xs: Vec<f64> = records.iter().map(|r| (r.n as f64).ln()).collect();
    let ys: Vec<f64> = records.iter().map(|r| r.median_seconds.ln()).collect();
    let k = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    Ok(sxy / sxx)
}
