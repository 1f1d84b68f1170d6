mod common;

use common::{random_instance, rng};
use exact01_core::oracle::{arrangement_counts, brute_force_solve, enumerate_dichotomies, verify_cover};
use exact01_core::{loss_total, solve, Assignment};
use rand::Rng;

#[test]
fn engine_matches_brute_force() {
    let mut r = rng(11);
    for trial in 0..200 {
        let n = r.random_range(5..=14);
        let d = r.random_range(1..=3);
        let ds = random_instance(&mut r, n, d);
        let exact = solve(&ds, n).unwrap();
        let brute = brute_force_solve(&ds).unwrap();
        assert_eq!(exact.optimal_loss, brute.optimal_loss, "trial {trial} n={n} d={d}");
        assert_eq!(exact.combination, brute.combination, "tie-break order, trial {trial}");
        assert_eq!(exact.sense(), brute.hyperplane.sense());
        assert_eq!(loss_total(ds.labels(), &exact.assignment).unwrap(), exact.optimal_loss);
    }
}

#[test]
fn cover_identity_holds() {
    let mut r = rng(5);
    for _ in 0..60 {
        let n = r.random_range(2..=10);
        let d = r.random_range(1..=3).min(n);
        let ds = random_instance(&mut r, n, d);
        assert!(verify_cover(&ds).unwrap(), "n={n} d={d}");
    }
}

#[test]
fn best_dichotomy_is_the_optimum() {
    let mut r = rng(8);
    for _ in 0..40 {
        let n = r.random_range(4..=9);
        let d = r.random_range(1..=2);
        let ds = random_instance(&mut r, n, d);
        let best = enumerate_dichotomies(&ds)
            .unwrap()
            .into_iter()
            .map(|v| loss_total(ds.labels(), &Assignment::new(v.0).unwrap()).unwrap())
            .min()
            .unwrap();
        assert_eq!(best, brute_force_solve(&ds).unwrap().optimal_loss);
    }
}

#[test]
fn closed_form_counts_agree_with_enumeration_sizes() {
    let mut r = rng(2);
    let ds = random_instance(&mut r, 6, 2);
    assert_eq!(enumerate_dichotomies(&ds).unwrap().len() as u128, arrangement_counts(6, 2).cover);
    assert_eq!(arrangement_counts(6, 2).cover, 32);
}
