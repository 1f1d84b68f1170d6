mod common;

use common::{random_instance, rng};
use exact01_core::bounds::{compute_upper_bound, hinge_subgradient, pocket_perceptron, BoundConfig};
use exact01_core::engine::{solve_with, SolveOptions};
use exact01_core::oracle::brute_force_solve;
use exact01_core::{assign, fit_hyperplane, loss_total, solve, Error, Sense};
use rand::seq::index::sample;
use rand::Rng;

#[test]
fn optimum_is_invariant_to_valid_bounds() {
    let mut r = rng(21);
    for _ in 0..30 {
        let n = r.random_range(5..=12);
        let d = r.random_range(1..=2);
        let ds = random_instance(&mut r, n, d);
        let opt = solve(&ds, n).unwrap().optimal_loss;
        let mut last_expanded = 0;
        for ub in opt..=n {
            let rep = solve(&ds, ub).unwrap();
            assert_eq!(rep.optimal_loss, opt);
            assert!(rep.stats.configs_expanded >= last_expanded);
            last_expanded = rep.stats.configs_expanded;
        }
        if opt > 0 {
            assert!(matches!(solve(&ds, opt - 1), Err(Error::NoViableModel { .. })));
        }
    }
}

#[test]
fn optimum_never_exceeds_complement_bound() {
    let mut r = rng(4);
    for _ in 0..100 {
        let n = r.random_range(3..=14);
        let d = r.random_range(1..=3).min(n);
        let ds = random_instance(&mut r, n, d);
        assert!(solve(&ds, n).unwrap().optimal_loss <= (n - d) / 2);
    }
}

#[test]
fn orientations_split_the_off_boundary_points() {
    let mut r = rng(6);
    for _ in 0..300 {
        let n = r.random_range(4..=30);
        let d = r.random_range(1..=4).min(n);
        let ds = random_instance(&mut r, n, d);
        let combo = sample(&mut r, n, d).into_vec();
        let pts: Vec<&[f64]> = combo.iter().map(|&i| ds.point(i)).collect();
        let h = fit_hyperplane(&pts, Sense::Positive).unwrap();
        let eps = ds.default_eps();
        let loss = |h| {
            let mut z = assign(h, ds.points(), eps).into_inner();
            combo.iter().for_each(|&i| z[i] = 0);
            loss_total(ds.labels(), &exact01_core::Assignment::new(z).unwrap()).unwrap()
        };
        assert_eq!(loss(&h) + loss(&h.flipped()), n - d);
    }
}

#[test]
fn bounds_are_sound() {
    let mut r = rng(13);
    for _ in 0..200 {
        let n = r.random_range(4..=12);
        let d = r.random_range(1..=3);
        let ds = random_instance(&mut r, n, d);
        let opt = brute_force_solve(&ds).unwrap().optimal_loss;
        let seed = r.random();
        for b in [
            pocket_perceptron(&ds, 50, seed),
            hinge_subgradient(&ds, 500),
            compute_upper_bound(&ds, &BoundConfig::default()),
        ] {
            assert!(b.value >= opt, "{} gave {} < {opt}", b.provider, b.value);
            assert!(b.value <= n);
            if let Some(w) = &b.witness {
                let preds = assign(w, ds.points(), ds.default_eps());
                assert_eq!(loss_total(ds.labels(), &preds).unwrap(), b.value);
            }
        }
    }
}

#[test]
fn threads_do_not_change_results() {
    let ds = exact01_core::data::gen_gaussian(&exact01_core::data::SyntheticSpec {
        n: 160,
        d: 2,
        bayes_error: 0.2,
        seed: 3,
    })
    .unwrap();
    let one = solve_with(&ds, 160, &SolveOptions { eps: None, threads: 1 }).unwrap();
    let four = solve_with(&ds, 160, &SolveOptions { eps: None, threads: 4 }).unwrap();
    assert_eq!(one.optimal_loss, four.optimal_loss);
    assert_eq!(one.combination, four.combination);
    assert_eq!(one.hyperplane, four.hyperplane);
    assert_eq!(one.stats.configs_expanded, four.stats.configs_expanded);
    assert_eq!(one.stats.configs_pruned, four.stats.configs_pruned);
}

#[test]
fn separable_data_has_zero_loss() {
    let mut r = rng(1);
    for _ in 0..30 {
        let n = r.random_range(5..=40);
        let d = r.random_range(1..=3);
        let mut ds = random_instance(&mut r, n, d);
        // relabel by a random hyperplane
        let w: Vec<f64> = (0..=d).map(|_| r.random_range(-1.0..1.0)).collect();
        let labels = ds
            .points()
            .map(|p| {
                let v: f64 = p.iter().zip(&w).map(|(a, b)| a * b).sum::<f64>() + w[d];
                if v >= 0.0 { exact01_core::Label::Positive } else { exact01_core::Label::Negative }
            })
            .collect();
        ds = ds.with_labels(labels).unwrap();
        let ub = compute_upper_bound(&ds, &BoundConfig::default()).value;
        assert_eq!(solve(&ds, ub).unwrap().optimal_loss, 0);
    }
}
