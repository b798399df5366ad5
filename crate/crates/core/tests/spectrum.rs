mod common;

use std::f64::consts::PI;

use common::{
    bessel_zeros_oracle, dense_eigenvalues, rectangle_oracle, richardson, segment,
};
use proptest::prelude::*;
use revspec::bounds::weyl_slope;
use revspec::geometry::{reparametrize_constant_speed, Meridian, Point};
use revspec::spectrum::{
    assemble_sl, bessel_zero, counting_function, cylinder_spectrum, disc_spectrum,
    merged_spectrum, rectangle_spectrum, solve_sl, union_spectrum,
};

fn annulus(mesh: usize) -> Meridian {
    segment((1.0, 0.0), (2.0, 0.0), mesh)
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

#[test]
fn bisection_matches_dense_solver_on_the_same_pencil() {
    let m = annulus(600);
    for k in [0, 3] {
        let prob = assemble_sl(&m, k, 600).unwrap();
        let dense = dense_eigenvalues(&prob.pencil());
        let ours = solve_sl(&prob, 12).unwrap();
        // The dense solver is accurate to about eps times the largest
        // eigenvalue, which is ~1e7 here.
        for (a, b) in ours.iter().zip(&dense) {
            assert!(rel(*a, *b) < 1e-9, "k={k}: {a} vs {b}");
        }
    }
}

#[test]
fn annulus_ground_state_extrapolates_consistently() {
    // Richardson limits from the bisection solver at fine meshes and from the
    // dense solver at coarse meshes estimate the same continuum value.
    let lam = |mesh: usize| solve_sl(&assemble_sl(&annulus(mesh), 0, mesh).unwrap(), 1).unwrap()[0];
    let dense = |mesh: usize| dense_eigenvalues(&assemble_sl(&annulus(mesh), 0, mesh).unwrap().pencil())[0];
    let (l1, l2, l4) = (lam(1000), lam(2000), lam(4000));
    let fine = richardson(l2, l4);
    assert!(rel(richardson(l1, l2), fine) < 1e-8);
    let coarse = richardson(dense(500), dense(1000));
    assert!(rel(fine, coarse) < 1e-7, "{fine} vs {coarse}");
}

#[test]
fn merged_annulus_matches_dense_merge() {
    let mesh = 400;
    let m = annulus(mesh);
    let ours = merged_spectrum(&m, 50, mesh).unwrap().values();
    let mut all = Vec::new();
    for k in 0..40u32 {
        let ev = dense_eigenvalues(&assemble_sl(&m, k, mesh).unwrap().pencil());
        for v in ev.into_iter().take(50) {
            all.push(v);
            if k > 0 {
                all.push(v);
            }
        }
    }
    all.sort_by(f64::total_cmp);
    assert_eq!(ours.len(), 50);
    for (a, b) in ours.iter().zip(&all) {
        assert!(rel(*a, *b) < 1e-10, "{a} vs {b}");
    }
}

#[test]
fn cylinder_merged_against_closed_form() {
    let mesh = 4000;
    let m = segment((1.0, 0.0), (1.0, 1.0), mesh);
    let ours = merged_spectrum(&m, 40, mesh).unwrap();
    let exact = cylinder_spectrum(1.0, 1.0, 40).unwrap();
    for (a, b) in ours.values().iter().zip(exact.values()) {
        assert!(rel(*a, b) < 1e-4);
    }
    let first: Vec<_> = ours.rows().iter().take(4).map(|r| (r.k, r.n, r.multiplicity)).collect();
    assert_eq!(first, vec![(0, 1, 1), (1, 1, 2), (1, 1, 2), (2, 1, 2)]);
    assert!(rel(ours.value(4).unwrap(), PI * PI + 4.0) < 1e-5);
}

#[test]
fn closed_form_cylinder_examples() {
    let s = cylinder_spectrum(1.0, 1.0, 3).unwrap();
    assert_eq!(s.values(), vec![PI * PI, PI * PI + 1.0, PI * PI + 1.0]);
    let s = cylinder_spectrum(2.0, 3.0, 1).unwrap();
    assert!((s.value(1).unwrap() - 1.096_622_711_232_151).abs() < 1e-12);
}

#[test]
fn rectangles_against_lattice_enumeration() {
    for (w, h) in [(1.0, 1.0), (1.0, 2.0), (0.3, 2.7), (2.2, 0.9)] {
        let ours = rectangle_spectrum(w, h, 200).unwrap().values();
        let oracle = rectangle_oracle(w, h, 200);
        for (a, b) in ours.iter().zip(&oracle) {
            assert!(rel(*a, *b) < 1e-14);
        }
    }
    let sq = rectangle_spectrum(1.0, 1.0, 10).unwrap();
    assert!(rel(sq.value(1).unwrap(), 2.0 * PI * PI) < 1e-15);
    assert!(rel(sq.value(10).unwrap(), 17.0 * PI * PI) < 1e-15);
    let two = union_spectrum(&[sq.clone(), sq], 2);
    assert_eq!(two.values(), vec![2.0 * PI * PI, 2.0 * PI * PI]);
}

#[test]
fn counting_function_values() {
    let cyl = cylinder_spectrum(1.0, 1.0, 20).unwrap();
    assert_eq!(counting_function(&cyl, PI * PI), 1);
    assert_eq!(counting_function(&cyl, PI * PI + 1.0), 3);
    let sq = rectangle_spectrum(1.0, 1.0, 30).unwrap();
    let lattice = rectangle_oracle(1.0, 1.0, 30).iter().filter(|v| **v <= 100.0).count();
    assert_eq!(lattice, 6);
    assert_eq!(counting_function(&sq, 100.0), lattice);
}

#[test]
fn bessel_zeros_against_series_scan() {
    for k in 0..4 {
        let oracle = bessel_zeros_oracle(k, 3);
        for (n, z) in oracle.iter().enumerate() {
            assert!((bessel_zero(k, n as u32 + 1) - z).abs() < 1e-10, "j_{k},{}", n + 1);
        }
    }
    assert!((bessel_zero(0, 1) - 2.404_825_557_695_773).abs() < 1e-10);
    assert!((bessel_zero(1, 1) - 3.831_705_970_207_512).abs() < 1e-10);
}

#[test]
fn disc_spectrum_values() {
    let j01 = bessel_zeros_oracle(0, 1)[0];
    let j11 = bessel_zeros_oracle(1, 1)[0];
    let unit = disc_spectrum(1.0, 3).unwrap();
    assert!(rel(unit.value(1).unwrap(), j01 * j01) < 1e-12);
    assert!(rel(unit.value(2).unwrap(), j11 * j11) < 1e-12);
    assert_eq!(unit.value(2), unit.value(3));
    let big = disc_spectrum(2.0, 1).unwrap();
    assert!(rel(big.value(1).unwrap(), 0.25 * j01 * j01) < 1e-12);
}

#[test]
fn weyl_slopes_of_closed_form_spectra() {
    let cyl = weyl_slope(&cylinder_spectrum(1.0, 1.0, 2000).unwrap(), 500..=2000).unwrap();
    assert!((cyl.target - 2.0).abs() < 1e-12 && cyl.rel_error < 0.05);
    let sq = weyl_slope(&rectangle_spectrum(1.0, 1.0, 2000).unwrap(), 500..=2000).unwrap();
    assert!((sq.target - 4.0 * PI).abs() < 1e-12 && sq.rel_error < 0.05);
    let disc = weyl_slope(&disc_spectrum(1.0, 800).unwrap(), 200..=800).unwrap();
    assert!((disc.target - 4.0).abs() < 1e-12 && disc.rel_error < 0.05);
}

fn wavy_meridian() -> impl Strategy<Value = Meridian> {
    (0.6f64..1.5, 0.6f64..1.5, 0.3f64..1.2, -0.15f64..0.15, -0.1f64..0.1).prop_map(
        |(r1, r2, h, a, b)| {
            let raw: Vec<Point> = (0..=100)
                .map(|i| {
                    let t = i as f64 / 100.0;
                    let bump = a * (PI * t).sin() + b * (2.0 * PI * t).sin();
                    Point::new(r1 + t * (r2 - r1) + bump, t * h)
                })
                .collect();
            reparametrize_constant_speed(&raw, 400).unwrap()
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn rigid_motions_preserve_the_spectrum(m in wavy_meridian(), dy in -2.0f64..2.0) {
        let base = merged_spectrum(&m, 8, 400).unwrap().values();
        let shifted = merged_spectrum(&m.translated(dy), 8, 400).unwrap().values();
        let h = m.end().y;
        let flipped = merged_spectrum(&m.reflected(h), 8, 400).unwrap().values();
        for ((a, b), c) in base.iter().zip(&shifted).zip(&flipped) {
            prop_assert!(rel(*b, *a) < 1e-10);
            prop_assert!(rel(*c, *a) < 1e-10);
        }
    }

    #[test]
    fn ground_state_is_axisymmetric(m in wavy_meridian()) {
        let s = merged_spectrum(&m, 1, 400).unwrap();
        prop_assert_eq!(s.rows()[0].k, 0);
        let first_nonzero = (1..6u32)
            .map(|k| solve_sl(&assemble_sl(&m, k, 400).unwrap(), 1).unwrap()[0])
            .fold(f64::INFINITY, f64::min);
        prop_assert!(s.value(1).unwrap() <= first_nonzero);
    }

    #[test]
    fn shorter_pieces_have_larger_eigenvalues(m in wavy_meridian(), t0 in 0.0f64..0.3, t1 in 0.7f64..1.0) {
        let piece = m.restricted(t0, t1, 400).unwrap();
        let full = merged_spectrum(&m, 6, 400).unwrap().values();
        let part = merged_spectrum(&piece, 6, 400).unwrap().values();
        for (a, b) in full.iter().zip(&part) {
            prop_assert!(b >= a);
        }
    }

    #[test]
    fn truncated_modes_stay_above_the_list(m in wavy_meridian(), j in 1usize..30) {
        // Modes the merge skipped cannot contribute below its last value.
        let s = merged_spectrum(&m, j, 300).unwrap();
        let last = s.last_value().unwrap();
        let top_k = s.rows().iter().map(|r| r.k).max().unwrap();
        for k in top_k + 1..top_k + 4 {
            let v = solve_sl(&assemble_sl(&m, k, 300).unwrap(), 1).unwrap()[0];
            prop_assert!(v >= last * (1.0 - 1e-12));
        }
    }
}
