//! Independent reference computations shared by the integration tests.
#![allow(dead_code)]

use std::f64::consts::PI;

use nalgebra::{DMatrix, SymmetricEigen};
use revspec::geometry::{reparametrize_constant_speed, Meridian, Point};
use revspec::spectrum::Pencil;

/// All eigenvalues of `K x = λ M x` by Cholesky reduction and a dense
/// symmetric eigensolver, ascending.
pub fn dense_eigenvalues(p: &Pencil) -> Vec<f64> {
    let n = p.len();
    let mut k = DMatrix::<f64>::zeros(n, n);
    let mut m = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        k[(i, i)] = p.k_diag[i];
        m[(i, i)] = p.m_diag[i];
        if i + 1 < n {
            k[(i, i + 1)] = p.k_off[i];
            k[(i + 1, i)] = p.k_off[i];
            m[(i, i + 1)] = p.m_off[i];
            m[(i + 1, i)] = p.m_off[i];
        }
    }
    let l = m.cholesky().expect("mass matrix is positive definite").l();
    let x = l.solve_lower_triangular(&k).unwrap();
    let c = l.solve_lower_triangular(&x.transpose()).unwrap();
    let c = (&c + c.transpose()) * 0.5;
    let mut ev: Vec<f64> = SymmetricEigen::new(c).eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// Richardson extrapolation for an error of order `M^-2`.
pub fn richardson(coarse: f64, fine: f64) -> f64 {
    (4.0 * fine - coarse) / 3.0
}

/// Straight meridian from `a` to `b` with `m` chords.
pub fn segment(a: (f64, f64), b: (f64, f64), m: usize) -> Meridian {
    reparametrize_constant_speed(&[Point::new(a.0, a.1), Point::new(b.0, b.1)], m).unwrap()
}

/// Adaptive Simpson quadrature.
pub fn simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn rec(f: &dyn Fn(f64) -> f64, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        if depth == 0 || (left + right - whole).abs() <= 15.0 * tol {
            return left + right + (left + right - whole) / 15.0;
        }
        rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
            + rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
    }
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    rec(f, a, b, fa, fm, fb, (b - a) / 6.0 * (fa + 4.0 * fm + fb), tol, 50)
}

/// Root of `f` in `[lo, hi]` by bisection; `f(lo)` and `f(hi)` must differ
/// in sign.
pub fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let flo = f(lo);
    assert!(flo * f(hi) <= 0.0, "root not bracketed in [{lo}, {hi}]");
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if (f(mid) < 0.0) == (flo < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Maximizer of a unimodal `f` on `[lo, hi]` by golden-section search.
pub fn golden_max(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> (f64, f64) {
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut a = hi - g * (hi - lo);
    let mut b = lo + g * (hi - lo);
    let (mut fa, mut fb) = (f(a), f(b));
    for _ in 0..200 {
        if fa < fb {
            lo = a;
            a = b;
            fa = fb;
            b = lo + g * (hi - lo);
            fb = f(b);
        } else {
            hi = b;
            b = a;
            fb = fa;
            a = hi - g * (hi - lo);
            fa = f(a);
        }
        if hi - lo < 1e-14 {
            break;
        }
    }
    let x = 0.5 * (lo + hi);
    (x, f(x))
}

/// `J_k` from its power series, summed until the terms vanish.
pub fn bessel_series(k: u32, x: f64) -> f64 {
    let half = 0.5 * x;
    let mut term = (1..=k).fold(1.0, |t, i| t * half / i as f64);
    let mut sum = term;
    for m in 1..200 {
        term *= -half * half / (m as f64 * (m + k) as f64);
        sum += term;
        if term.abs() < 1e-18 * sum.abs() {
            break;
        }
    }
    sum
}

/// First `count` positive zeros of `J_k` by a fine sign-change scan of the
/// power series followed by bisection. Accurate for moderate arguments.
pub fn bessel_zeros_oracle(k: u32, count: usize) -> Vec<f64> {
    let mut zeros = Vec::new();
    let step = 1e-3;
    let mut x = step;
    let mut fx = bessel_series(k, x);
    while zeros.len() < count {
        let nx = x + step;
        let fnx = bessel_series(k, nx);
        if fx != 0.0 && (fnx < 0.0) != (fx < 0.0) {
            zeros.push(bisect(|t| bessel_series(k, t), x, nx));
        }
        x = nx;
        fx = fnx;
    }
    zeros
}

/// The `j_max` smallest Dirichlet eigenvalues of a `w x h` rectangle by
/// lattice enumeration.
pub fn rectangle_oracle(w: f64, h: f64, j_max: usize) -> Vec<f64> {
    let n = j_max + 2;
    let mut v: Vec<f64> = (1..=n)
        .flat_map(|a| (1..=n).map(move |b| (a as f64 / w).powi(2) + (b as f64 / h).powi(2)))
        .map(|s| PI.powi(2) * s)
        .collect();
    v.sort_by(f64::total_cmp);
    v.truncate(j_max);
    v
}

/// Dense sampling of a polyline: `per_segment` points per chord.
pub fn densify(points: &[Point], per_segment: usize) -> Vec<Point> {
    let mut out = Vec::new();
    for w in points.windows(2) {
        for i in 0..per_segment {
            let t = i as f64 / per_segment as f64;
            out.push(Point::new(w[0].x + t * (w[1].x - w[0].x), w[0].y + t * (w[1].y - w[0].y)));
        }
    }
    out.push(*points.last().unwrap());
    out
}

/// Brute-force Hausdorff distance between two point clouds.
pub fn hausdorff_samples(a: &[Point], b: &[Point]) -> f64 {
    let directed = |a: &[Point], b: &[Point]| {
        a.iter()
            .map(|p| b.iter().map(|q| p.dist(*q)).fold(f64::INFINITY, f64::min))
            .fold(0.0, f64::max)
    };
    directed(a, b).max(directed(b, a))
}

/// Root of `u tanh u = 1`: `c cosh(h / 2c)` is smallest at `h / 2c = U`.
pub const U: f64 = 1.199_678_640_257_734;

/// Largest separation spanned by `x = c cosh((y - y0) / c)` with the neck
/// between the circles: `max_c c (acosh(r1 / c) + acosh(r2 / c))`.
pub fn critical_oracle(r1: f64, r2: f64) -> f64 {
    let span = |c: f64| c * ((r1 / c).acosh() + (r2 / c).acosh());
    golden_max(span, 1e-9, r1.min(r2)).1
}

/// Outer root of `c cosh(h / 2c) = 1` and the closed-form catenoid area.
pub fn symmetric_outer_area(h: f64) -> f64 {
    let c = bisect(|c| c * (h / (2.0 * c)).cosh() - 1.0, h / (2.0 * U), 1.0);
    PI * c * (h + c * (h / c).sinh())
}
