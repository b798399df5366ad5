mod common;

use std::f64::consts::PI;

use common::{dense_eigenvalues, rectangle_oracle, segment};
use revspec::bounds::suite::{random_band_meridian, random_spanning_meridian, run_suite, trial_rng, Lemma};
use revspec::bounds::{check_annulus_comparison, check_confinement, length_bound, rectangle_counting_check};
use revspec::geometry::length;
use revspec::spectrum::assemble_sl;

/// Merged spectrum from dense per-mode solves, modes `k` and `-k` both
/// counted. Stops once a whole mode lies above the current `j`-th value.
fn dense_merged(m: &revspec::geometry::Meridian, j: usize, mesh: usize) -> Vec<f64> {
    let mut all: Vec<f64> = Vec::new();
    for k in 0u32.. {
        let ev = dense_eigenvalues(&assemble_sl(m, k, mesh).unwrap().pencil());
        if all.len() >= j && ev[0] > all[j - 1] {
            break;
        }
        let copies = if k == 0 { 1 } else { 2 };
        for &v in ev.iter().take(j) {
            all.extend(std::iter::repeat(v).take(copies));
        }
        all.sort_by(f64::total_cmp);
        all.truncate(j);
    }
    all
}

#[test]
fn annulus_comparison_matches_dense_oracle() {
    let mesh = 400;
    let m = random_band_meridian(&mut trial_rng(7, 0), 1.0, 2.0, mesh).unwrap();
    let flat = segment((m.min_x(), 0.0), (m.max_x(), 0.0), mesh);
    let reports = check_annulus_comparison(&m, 5, 5, mesh).unwrap();
    assert_eq!(reports.len(), 30);
    for k in 0..=5u32 {
        let curve = dense_eigenvalues(&assemble_sl(&m, k, mesh).unwrap().pencil());
        let annulus = dense_eigenvalues(&assemble_sl(&flat, k, mesh).unwrap().pencil());
        for n in 0..5 {
            let r = &reports[k as usize * 5 + n];
            assert!((r.lhs - curve[n]).abs() <= 1e-8 * curve[n], "{r:?} vs {}", curve[n]);
            assert!((r.rhs - annulus[n]).abs() <= 1e-8 * annulus[n], "{r:?} vs {}", annulus[n]);
            assert!(curve[n] <= annulus[n] * (1.0 + 1e-6), "k={k} n={n}");
            assert!(r.satisfied);
        }
    }
}

#[test]
fn annulus_suite_small_run() {
    let reports = run_suite(Lemma::AnnulusComparison, 1, 6, 800).unwrap();
    assert_eq!(reports.len(), 6 * 30);
    assert!(reports.iter().all(|t| t.report.satisfied));
}

#[test]
fn confinement_values_against_direct_spectra() {
    let mesh = 300;
    let chord = segment((1.0, 0.0), (1.5, 0.7), mesh);
    let (inner, outer) = check_confinement(&chord, 3, 0.5, 3.0, mesh).unwrap();
    // F stays inside (a, b), so both reports compare radii rather than eigenvalues.
    assert_eq!((inner.lhs, inner.rhs), (0.5, 1.0));
    assert_eq!((outer.lhs, outer.rhs), (1.5, 3.0));

    let m = random_spanning_meridian(&mut trial_rng(3, 1), (1.0, 1.2, 0.6), 0.2, mesh).unwrap();
    let a = 0.999 * m.min_x().max(0.25);
    let b = 1.001 * m.max_x().min(1.5);
    if let Ok((inner, outer)) = check_confinement(&m, 4, a, b, mesh) {
        let lam = dense_merged(&m, 4, mesh)[3];
        for r in [&inner, &outer] {
            if r.lhs > 2.0 * b {
                assert!((r.lhs - lam).abs() <= 1e-8 * lam, "{r:?} vs {lam}");
            }
            assert!(r.satisfied, "{r:?}");
        }
    }
}

#[test]
fn confinement_randomized_search_finds_nothing() {
    let reports = run_suite(Lemma::Confinement, 5, 500, 300).unwrap();
    let violations: Vec<_> = reports.iter().filter(|t| !t.report.satisfied).collect();
    assert!(violations.is_empty(), "{violations:?}");
}

#[test]
fn length_bound_random_curve_against_dense_oracle() {
    let mesh = 400;
    let m = random_spanning_meridian(&mut trial_rng(9, 4), (1.0, 2.0, 1.0), 0.3, mesh).unwrap();
    let r = length_bound(&m, 7, mesh).unwrap();
    let lam = dense_merged(&m, 7, mesh)[6];
    assert!((r.lhs - lam).abs() <= 1e-8 * lam, "{} vs {lam}", r.lhs);
    let l = length(&m);
    let rhs = 49.0 * PI * PI * m.max_x() / (l * l * m.min_x());
    assert!((r.rhs - rhs).abs() <= 1e-12 * rhs);
    assert!(lam <= rhs && r.satisfied);
}

#[test]
fn length_bound_suite_small_run() {
    let reports = run_suite(Lemma::LengthBound, 2, 20, 1000).unwrap();
    assert!(reports.iter().all(|t| t.report.satisfied));
}

#[test]
fn rectangle_counting_against_lattice_oracle() {
    for (parts, j) in [
        (vec![(1.0, 1.0)], 10usize),
        (vec![(1.0, 1.0)], 1),
        (vec![(1.0, 2.0), (1.0, 2.0)], 5),
        (vec![(0.5, 2.5), (1.3, 0.7), (2.0, 2.0)], 37),
    ] {
        let mut lattice: Vec<f64> = parts
            .iter()
            .flat_map(|&(w, h)| rectangle_oracle(w, h, j))
            .collect();
        lattice.sort_by(f64::total_cmp);
        let lam = lattice[j - 1];
        let area: f64 = parts.iter().map(|(w, h)| w * h).sum();
        let perim: f64 = parts.iter().map(|(w, h)| 2.0 * (w + h)).sum();
        let r = rectangle_counting_check(&parts, j).unwrap();
        assert!((r.rhs - 4.0 * PI * j as f64 / (lam - 1.0)).abs() < 1e-12);
        assert!((r.lhs - (area - 2.0 * perim / (lam - 1.0).sqrt())).abs() < 1e-12);
        assert!(r.satisfied, "{r:?}");
    }
}

#[test]
fn rectangle_suite_has_no_violations() {
    let reports = run_suite(Lemma::RectangleCounting, 0, 500, 4).unwrap();
    assert_eq!(reports.len(), 500);
    assert!(reports.iter().all(|t| t.report.satisfied));
}

#[test]
fn weyl_suite_slopes() {
    let reports = run_suite(Lemma::Weyl, 4, 10, 4).unwrap();
    assert!(reports.iter().all(|t| t.report.satisfied && t.report.lhs < 0.05));
}
