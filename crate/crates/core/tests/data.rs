mod common;

use common::{random_instance, rng};
use exact01_core::bounds::{compute_upper_bound, BoundConfig};
use exact01_core::data::{
    check_general_position, default_position_tolerance, gen_gaussian, jitter, load_csv, read_csv, read_points,
    save_csv, write_csv, CsvOptions, SyntheticSpec,
};
use exact01_core::{solve, Dataset, Label};
use proptest::prelude::*;

fn normal_cdf_simpson(x: f64) -> f64 {
    // 0.5 + integral_0^x of the standard normal density, composite Simpson
    let steps = 20_000;
    let h = x / steps as f64;
    let pdf = |t: f64| (-0.5 * t * t).exp() / (2.0 * std::f64::consts::PI).sqrt();
    let mut acc = pdf(0.0) + pdf(x);
    for i in 1..steps {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * pdf(i as f64 * h);
    }
    0.5 + acc * h / 3.0
}

fn quantile_bisection(p: f64) -> f64 {
    let (mut lo, mut hi) = (0.0, 10.0);
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if normal_cdf_simpson(mid) < p { lo = mid } else { hi = mid }
    }
    0.5 * (lo + hi)
}

#[test]
fn mean_offset_matches_independent_quantile() {
    for p in [0.05, 0.1, 0.2, 0.3] {
        let spec = SyntheticSpec { n: 2, d: 1, bayes_error: p, seed: 0 };
        assert!((spec.mean_offset() - quantile_bisection(1.0 - p)).abs() < 1e-9);
    }
    assert!((quantile_bisection(0.9) - 1.2815515655446004).abs() < 1e-9);
}

#[test]
fn generated_error_rate_tracks_bayes_error() {
    let ds = gen_gaussian(&SyntheticSpec { n: 1000, d: 2, bayes_error: 0.2, seed: 0 }).unwrap();
    let ub = compute_upper_bound(&ds, &BoundConfig::default()).value;
    let rate = solve(&ds, ub).unwrap().optimal_loss as f64 / 1000.0;
    assert!((0.12..=0.28).contains(&rate), "rate {rate}");
}

#[test]
fn file_round_trip() {
    let mut r = rng(3);
    let ds = random_instance(&mut r, 25, 3);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("x.csv");
    save_csv(&ds, &path).unwrap();
    assert_eq!(load_csv(&path, CsvOptions::default()).unwrap(), ds);
}

#[test]
fn header_does_not_count_as_row() {
    let with = read_csv("x,y,l\n1,2,1\n3,4,0\n".as_bytes(), CsvOptions { has_header: true }).unwrap();
    let without = read_csv("1,2,1\n3,4,0\n".as_bytes(), CsvOptions::default()).unwrap();
    assert_eq!(with, without);
}

#[test]
fn feature_rows_with_or_without_labels() {
    let a = read_points("1,2\n3,4\n".as_bytes(), CsvOptions::default(), 2).unwrap();
    let b = read_points("1,2,0\n3,4,1\n".as_bytes(), CsvOptions::default(), 2).unwrap();
    assert_eq!(a, b);
    assert!(read_points("1,2,3,4\n".as_bytes(), CsvOptions::default(), 2).is_err());
    assert!(read_points("1,x\n".as_bytes(), CsvOptions::default(), 2).is_err());
}

#[test]
fn jitter_resolves_degeneracies() {
    let fixtures: Vec<Dataset> = vec![
        Dataset::new(&[[0.0, 0.0], [1.0, 1.0], [2.0, 2.0], [3.0, 0.5]], vec![Label::Positive; 4]).unwrap(),
        Dataset::new(&[[1.0, 2.0], [1.0, 2.0], [0.0, 5.0]], vec![Label::Negative; 3]).unwrap(),
        Dataset::new(
            &[[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [1.0, 1.0, 0.0], [0.3, 0.2, 1.0]],
            vec![Label::Positive; 5],
        )
        .unwrap(),
    ];
    for (i, ds) in fixtures.iter().enumerate() {
        assert!(!check_general_position(ds, default_position_tolerance(ds)).is_clean());
        let j = jitter(ds, i as u64);
        assert!(check_general_position(&j, default_position_tolerance(&j)).is_clean(), "fixture {i}");
        let moved = ds.coords().iter().zip(j.coords()).fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
        assert!(moved <= 1e-9 * ds.scale().max(1.0));
    }
}

proptest! {
    #[test]
    fn csv_round_trip(coords in proptest::collection::vec(-1e6f64..1e6, 2..60), seed in any::<u64>()) {
        let d = 2;
        let n = coords.len() / d;
        let labels = (0..n).map(|i| if (seed >> (i % 64)) & 1 == 1 { Label::Positive } else { Label::Negative }).collect();
        let ds = Dataset::from_flat(coords[..n * d].to_vec(), labels, d).unwrap();
        let mut buf = Vec::new();
        write_csv(&ds, &mut buf).unwrap();
        prop_assert_eq!(read_csv(&buf[..], CsvOptions::default()).unwrap(), ds);
    }

    #[test]
    fn generator_balance(n in 2usize..300, d in 1usize..5, seed in any::<u64>()) {
        let ds = gen_gaussian(&SyntheticSpec { n, d, bayes_error: 0.15, seed }).unwrap();
        prop_assert!(ds.count(Label::Positive).abs_diff(ds.count(Label::Negative)) <= 1);
    }
}
