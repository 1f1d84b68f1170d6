//! Command-line front end for the exact 0-1 loss solver.
//!
//! [`run`] parses arguments, dispatches a subcommand and maps failures to
//! exit statuses: 0 success, 1 usage, 2 data, 3 verification.

pub mod error;
pub mod harness;
pub mod model;
pub mod verify;

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use exact01_core::bounds::{BoundConfig, UpperBound};
use exact01_core::data::{gen_gaussian, load_csv, read_points, save_csv, CsvOptions, SyntheticSpec};
use exact01_core::eval::{cross_validate, predict_labels, CvConfig, CvReport};
use exact01_core::{solve_with, SolveOptions};

pub use error::{CliError, CliResult};
use harness::{fit_loglog_slope, run_bench, write_records, BenchPlan};
use model::ModelFile;

/// `--ub` value: `auto`, `none` or a nonnegative integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UbArg {
    Auto,
    None,
    Fixed(usize),
}

impl FromStr for UbArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "auto" => Ok(UbArg::Auto),
            "none" => Ok(UbArg::None),
            _ => s
                .parse()
                .map(UbArg::Fixed)
                .map_err(|_| format!("expected auto, none or a nonnegative integer, got {s:?}")),
        }
    }
}

impl UbArg {
    pub fn to_upper_bound(self) -> UpperBound {
        match self {
            UbArg::Auto => UpperBound::Auto(BoundConfig::default()),
            UbArg::None => UpperBound::Disabled,
            UbArg::Fixed(k) => UpperBound::Fixed(k),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "exact01", version, about = "Exact minimum 0-1 loss linear classifier")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Fit the exact classifier and write a model file.
    Fit {
        #[arg(long)]
        data: PathBuf,
        #[arg(long, default_value = "auto")]
        ub: UbArg,
        /// Boundary tolerance; defaults to 1e-8 * (1 + max |coordinate|).
        #[arg(long)]
        eps: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        /// Skip the first line of the CSV.
        #[arg(long)]
        header: bool,
    },
    /// Print one +1/-1 prediction per row.
    Predict {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        data: PathBuf,
        #[arg(long)]
        header: bool,
    },
    /// k-fold cross-validation of the exact classifier.
    Crossval {
        #[arg(long)]
        data: PathBuf,
        #[arg(long, default_value_t = 10)]
        folds: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "auto")]
        ub: UbArg,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        /// Write the report as JSON.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        header: bool,
    },
    /// Write a two-class Gaussian dataset.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        bayes_error: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run a self-check suite.
    Verify {
        suite: Suite,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        nmax: Option<usize>,
        #[arg(long, default_value_t = 3)]
        dmax: usize,
    },
    /// Time the solver over a grid of sizes.
    Bench {
        /// Comma-separated dimensions, e.g. `1,2`.
        #[arg(long)]
        dims: String,
        /// One comma-separated grid per dimension, separated by `;`.
        #[arg(long)]
        sizes: String,
        #[arg(long, default_value = "none")]
        ub: UbArg,
        #[arg(long, default_value_t = 3)]
        repeats: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.1)]
        bayes_error: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Suite {
    Oracle,
    Cover,
    Duality,
}

fn parse_list(s: &str, what: &str) -> CliResult<Vec<usize>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("bad {what} entry {t:?} in {s:?}")))
        })
        .collect()
}

fn check_positive(value: usize, what: &str) -> CliResult<()> {
    if value == 0 {
        return Err(CliError::Usage(format!("{what} must be positive")));
    }
    Ok(())
}

/// Parses `argv` (program name first), runs the command and returns the
/// exit status.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> CliResult<()> {
    match command {
        Command::Fit { data, ub, eps, out: path, threads, header } => {
            if let Some(e) = eps {
                if !(e.is_finite() && e >= 0.0) {
                    return Err(CliError::Usage(format!("--eps must be finite and nonnegative, got {e}")));
                }
            }
            let ds = load_csv(&data, CsvOptions { has_header: header })?;
            let bound = ub.to_upper_bound();
            let (ub_value, estimate) = bound.resolve(&ds);
            let report = solve_with(&ds, ub_value, &SolveOptions { eps, threads })?;
            let bounder = estimate.map_or(bound.name(), |e| e.provider.to_string());
            let model = ModelFile::from_report(&ds, &report, &bound.name(), &bounder);
            writeln!(
                out,
                "loss {} of {} ({:.4}), ub {} [{}], expanded {}, pruned {}, {:.3}s",
                report.optimal_loss,
                ds.n(),
                report.optimal_loss as f64 / ds.n() as f64,
                report.ub,
                bounder,
                report.stats.configs_expanded,
                report.stats.configs_pruned,
                report.stats.wall_time.as_secs_f64()
            )?;
            match path {
                Some(p) => model.save(p)?,
                None => writeln!(out, "{}", model.to_json())?,
            }
        }
        Command::Predict { model, data, header } => {
            let model = ModelFile::load(model)?;
            let h = model.hyperplane()?;
            let points = read_points(File::open(data)?, CsvOptions { has_header: header }, model.d)?;
            for label in predict_labels(&h, points.iter().map(Vec::as_slice), model.eps) {
                writeln!(out, "{}", label.value())?;
            }
        }
        Command::Crossval { data, folds, seed, ub, threads, out: path, header } => {
            let ds = load_csv(&data, CsvOptions { has_header: header })?;
            let config = CvConfig {
                folds,
                seed,
                upper_bound: ub.to_upper_bound(),
                solve: SolveOptions { eps: None, threads },
                ..CvConfig::default()
            };
            let report = cross_validate(&ds, &config)?;
            print_cv(&report, out)?;
            if let Some(p) = path {
                let json = serde_json::to_string_pretty(&CvJson::from(&report))?;
                std::fs::write(p, json + "\n")?;
            }
        }
        Command::Gen { n, d, bayes_error, seed, out: path } => {
            let ds = gen_gaussian(&SyntheticSpec { n, d, bayes_error, seed })?;
            save_csv(&ds, &path)?;
            writeln!(out, "wrote {n} points in {d} dimensions to {}", path.display())?;
        }
        Command::Verify { suite, trials, seed, nmax, dmax } => {
            check_positive(trials, "--trials")?;
            check_positive(dmax, "--dmax")?;
            let outcome = match suite {
                Suite::Oracle => verify::oracle_suite(trials, seed, nmax.unwrap_or(14), dmax)?,
                Suite::Cover => verify::cover_suite(trials, seed, nmax.unwrap_or(10), dmax)?,
                Suite::Duality => verify::duality_suite(trials, seed, dmax),
            };
            writeln!(out, "{outcome}")?;
            if !outcome.all_passed() {
                return Err(CliError::Verification(format!("{suite:?} suite: {outcome}")));
            }
        }
        Command::Bench { dims, sizes, ub, repeats, seed, bayes_error, out: path } => {
            let plan = BenchPlan {
                dims: parse_list(&dims, "dimension")?,
                sizes: sizes
                    .split(';')
                    .map(|g| parse_list(g, "size"))
                    .collect::<CliResult<_>>()?,
                upper_bound: ub.to_upper_bound(),
                repeats,
                seed,
                bayes_error,
            };
            writeln!(out, "{}", harness::BENCH_COLUMNS)?;
            let records = run_bench(&plan, |r| {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{},{}",
                    r.d, r.n, r.ub_mode, r.repeats, r.median_seconds, r.configs_expanded, r.configs_pruned
                );
            })?;
            for &d in &plan.dims {
                let per_dim: Vec<_> = records.iter().filter(|r| r.d == d).cloned().collect();
                if let Ok(slope) = fit_loglog_slope(&per_dim) {
                    writeln!(out, "# d={d} log-log slope {slope:.3}")?;
                }
            }
            if let Some(p) = path {
                write_records(&records, BufWriter::new(File::create(p)?))?;
            }
        }
    }
    Ok(())
}

fn print_cv(report: &CvReport, out: &mut dyn Write) -> CliResult<()> {
    writeln!(out, "fold  train  test  train_err  test_err  train_rate  test_rate  baseline_err")?;
    for f in &report.folds {
        writeln!(
            out,
            "{:>4}  {:>5}  {:>4}  {:>9}  {:>8}  {:>10.4}  {:>9.4}  {:>12}{}",
            f.fold,
            f.train_size,
            f.test_size,
            f.train_errors,
            f.test_errors,
            f.train_rate,
            f.test_rate,
            f.baseline_train_errors,
            if f.used_exact_boundary { "  *" } else { "" }
        )?;
    }
    writeln!(
        out,
        "train {:.4} +/- {:.4}, test {:.4} +/- {:.4}",
        report.mean_train_rate, report.std_train_rate, report.mean_test_rate, report.std_test_rate
    )?;
    Ok(())
}

#[derive(Serialize)]
struct FoldJson {
    fold: usize,
    train_size: usize,
    test_size: usize,
    train_errors: usize,
    test_errors: usize,
    train_rate: f64,
    test_rate: f64,
    baseline_train_errors: usize,
    used_exact_boundary: bool,
    test_indices: Vec<usize>,
}

#[derive(Serialize)]
struct CvJson {
    folds: Vec<FoldJson>,
    mean_train_rate: f64,
    std_train_rate: f64,
    mean_test_rate: f64,
    std_test_rate: f64,
}

impl From<&CvReport> for CvJson {
    fn from(r: &CvReport) -> Self {
        CvJson {
            folds: r
                .folds
                .iter()
                .zip(&r.assignments)
                .map(|(f, idx)| FoldJson {
                    fold: f.fold,
                    train_size: f.train_size,
                    test_size: f.test_size,
                    train_errors: f.train_errors,
                    test_errors: f.test_errors,
                    train_rate: f.train_rate,
                    test_rate: f.test_rate,
                    baseline_train_errors: f.baseline_train_errors,
                    used_exact_boundary: f.used_exact_boundary,
                    test_indices: idx.clone(),
                })
                .collect(),
            mean_train_rate: r.mean_train_rate,
            std_train_rate: r.std_train_rate,
            mean_test_rate: r.mean_test_rate,
            std_test_rate: r.std_test_rate,
        }
    }
}
