use exact01_cli::harness::{fit_loglog_slope, BenchRecord};
use exact01_cli::CliError;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn records(ns: &[usize], time: impl Fn(f64) -> f64) -> Vec<BenchRecord> {
    ns.iter()
        .map(|&n| BenchRecord {
            d: 1,
            n,
            ub_mode: "none".into(),
            repeats: 3,
            median_seconds: time(n as f64),
            configs_expanded: 0,
            configs_pruned: 0,
        })
        .collect()
}

const SIZES: [usize; 6] = [100, 200, 400, 800, 1600, 3200];

#[test]
fn exact_cubic() {
    let slope = fit_loglog_slope(&records(&SIZES, |n| 3e-9 * n.powi(3))).unwrap();
    assert!((slope - 3.0).abs() <= 1e-9, "{slope}");
}

#[test]
fn noisy_quadratic() {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for _ in 0..50 {
        let noise: Vec<f64> = SIZES.iter().map(|_| 1.0 + rng.random_range(-0.01..0.01)).collect();
        let recs = records(&SIZES, |n| {
            let i = SIZES.iter().position(|&s| s as f64 == n).unwrap();
            2e-8 * n * n * noise[i]
        });
        let slope = fit_loglog_slope(&recs).unwrap();
        assert!((slope - 2.0).abs() <= 0.1, "{slope}");
    }
}

#[test]
fn constant_times() {
    let slope = fit_loglog_slope(&records(&SIZES, |_| 0.25)).unwrap();
    assert!(slope.abs() < 1e-12);
}

#[test]
fn needs_four_distinct_sizes() {
    let few = records(&[10, 20, 40], |n| n);
    assert!(matches!(fit_loglog_slope(&few), Err(CliError::InsufficientPoints { .. })));
    let repeated = records(&[10, 20, 20, 40], |n| n);
    assert!(matches!(fit_loglog_slope(&repeated), Err(CliError::InsufficientPoints { .. })));
}
