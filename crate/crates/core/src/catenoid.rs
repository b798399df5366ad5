//! Catenoids spanning two coaxial circles and the area-minimizer trichotomy.
//!
//! A catenoid through the circles is generated by `x = c cosh((y - y0) / c)`
//! with `r1 = c cosh(y0 / c)` and `r2 = c cosh((h - y0) / c)`. For each trial
//! scale `c` the first equation gives `y0 = +/- c acosh(r1 / c)`, which leaves a
//! scalar residual in `c` for the second equation.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::geometry::BoundaryCircles;

/// Default relative tolerance for declaring a tie between catenoid and discs.
pub const TIE_TOL: f64 = 1e-9;

const GRID_POINTS: usize = 400;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    /// Larger `c`; the stable catenoid.
    Outer,
    Inner,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CatenoidSolution {
    pub c: f64,
    pub y0: f64,
    pub area: f64,
    pub branch: Branch,
}

impl CatenoidSolution {
    pub fn radius_at(&self, y: f64) -> f64 {
        self.c * ((y - self.y0) / self.c).cosh()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MinimizerKind {
    CoplanarAnnulus,
    CatenoidUnique,
    DiscsUnique,
    Tie,
}

impl std::fmt::Display for MinimizerKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            MinimizerKind::CoplanarAnnulus => "CoplanarAnnulus",
            MinimizerKind::CatenoidUnique => "CatenoidUnique",
            MinimizerKind::DiscsUnique => "DiscsUnique",
            MinimizerKind::Tie => "Tie",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MinimizerClass {
    pub kind: MinimizerKind,
    /// Least-area catenoid, when one exists.
    pub catenoid: Option<CatenoidSolution>,
    pub discs_area: f64,
}

/// Area of `x = c cosh((y - y0) / c)` over `0 <= y <= h`:
/// `pi c^2 [u + sinh(u) cosh(u)]` between `u0 = -y0 / c` and `u1 = (h - y0) / c`.
pub fn catenoid_area(c: f64, y0: f64, h: f64) -> f64 {
    let u0 = -y0 / c;
    let u1 = (h - y0) / c;
    PI * c * (h + 0.5 * c * ((2.0 * u1).sinh() - (2.0 * u0).sinh()))
}

fn waist(circles: &BoundaryCircles, c: f64, sign: f64) -> f64 {
    let ratio = (circles.r1 / c).max(1.0);
    sign * c * ratio.acosh()
}

fn residual(circles: &BoundaryCircles, c: f64, sign: f64) -> f64 {
    let y0 = waist(circles, c, sign);
    c * ((circles.h - y0) / c).cosh() - circles.r2
}

fn bisect_root(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let mut flo = f(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm < 0.0) == (flo < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    if f(hi).abs() < flo.abs() {
        hi
    } else {
        lo
    }
}

fn golden_min(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> (f64, f64) {
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = b - g * (b - a);
    let mut x2 = a + g * (b - a);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..200 {
        if (b - a) <= 1e-15 * b.abs().max(1e-300) {
            break;
        }
        if f1 < f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - g * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + g * (b - a);
            f2 = f(x2);
        }
    }
    if f1 < f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Roots `c` of the reduced residual along one branch of `y0`.
fn branch_roots(circles: &BoundaryCircles, sign: f64) -> Vec<f64> {
    let c_lo = circles.default_x_min();
    let c_hi = circles.r1;
    let f = |c: f64| residual(circles, c, sign);
    let ratio = c_hi / c_lo;
    let grid: Vec<f64> = (0..GRID_POINTS)
        .map(|i| {
            if i + 1 == GRID_POINTS {
                c_hi
            } else {
                c_lo * ratio.powf(i as f64 / (GRID_POINTS - 1) as f64)
            }
        })
        .collect();
    let vals: Vec<f64> = grid.iter().map(|&c| f(c)).collect();
    let mut roots = Vec::new();
    for i in 0..GRID_POINTS {
        if vals[i] == 0.0 {
            roots.push(grid[i]);
            continue;
        }
        if i + 1 < GRID_POINTS && vals[i + 1] != 0.0 && (vals[i] < 0.0) != (vals[i + 1] < 0.0) {
            roots.push(bisect_root(f, grid[i], grid[i + 1]));
        }
        // A positive local minimum on the grid may hide a pair of close roots.
        let left_higher = i == 0 || vals[i - 1] >= vals[i];
        let right_higher = i + 1 == GRID_POINTS || vals[i + 1] >= vals[i];
        if vals[i] > 0.0 && left_higher && right_higher && i > 0 {
            let a = grid[i - 1];
            let b = grid[(i + 1).min(GRID_POINTS - 1)];
            let (cm, fm) = golden_min(f, a, b);
            if fm <= 0.0 {
                if fm == 0.0 {
                    roots.push(cm);
                } else {
                    if f(a) > 0.0 {
                        roots.push(bisect_root(f, a, cm));
                    }
                    if f(b) > 0.0 {
                        roots.push(bisect_root(f, cm, b));
                    }
                }
            }
        }
    }
    roots
}

/// All catenoids spanning the circles, sorted by area (smallest first).
pub fn solve_catenoids(circles: &BoundaryCircles) -> Result<Vec<CatenoidSolution>> {
    if !(circles.h > 0.0) {
        return Err(Error::UseCoplanar { h: circles.h });
    }
    let mut found: Vec<(f64, f64)> = Vec::new();
    for sign in [1.0, -1.0] {
        for c in branch_roots(circles, sign) {
            let y0 = waist(circles, c, sign);
            let dup = found.iter().any(|&(c2, y2)| {
                (c2 - c).abs() <= 1e-10 * c.max(c2) && (y2 - y0).abs() <= 1e-8 * circles.r1.max(circles.h)
            });
            if !dup {
                found.push((c, y0));
            }
        }
    }
    found.sort_by(|a, b| b.0.total_cmp(&a.0));
    let mut out: Vec<CatenoidSolution> = found
        .iter()
        .enumerate()
        .map(|(i, &(c, y0))| CatenoidSolution {
            c,
            y0,
            area: catenoid_area(c, y0, circles.h),
            branch: if i == 0 { Branch::Outer } else { Branch::Inner },
        })
        .collect();
    out.sort_by(|a, b| a.area.total_cmp(&b.area));
    Ok(out)
}

/// The outer-branch catenoid, if any.
pub fn outer_catenoid(circles: &BoundaryCircles) -> Result<Option<CatenoidSolution>> {
    Ok(solve_catenoids(circles)?
        .into_iter()
        .find(|s| s.branch == Branch::Outer))
}

fn exists(r1: f64, r2: f64, h: f64) -> bool {
    BoundaryCircles::new(r1, r2, h)
        .and_then(|c| solve_catenoids(&c))
        .map(|s| !s.is_empty())
        .unwrap_or(false)
}

/// Largest separation for which a spanning catenoid exists.
pub fn critical_separation(r1: f64, r2: f64) -> Result<f64> {
    if !(r1 > 0.0 && r2 > 0.0) {
        return Err(Error::Precondition(format!(
            "radii must be positive (r1 = {r1}, r2 = {r2})"
        )));
    }
    let scale = r1.max(r2);
    let mut lo = 0.0;
    let mut hi = scale;
    while exists(r1, r2, hi) {
        lo = hi;
        hi *= 2.0;
        if hi > 1e6 * scale {
            return Err(Error::Numerical("no upper bound on catenoid existence".into()));
        }
    }
    while hi - lo > 1e-12 * scale {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if mid > 0.0 && exists(r1, r2, mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Separation at which the least-area catenoid and the two discs have equal area.
pub fn goldschmidt_separation(r1: f64, r2: f64) -> Result<f64> {
    let h_star = critical_separation(r1, r2)?;
    let diff = |h: f64| -> Result<f64> {
        let c = BoundaryCircles::new(r1, r2, h)?;
        let sols = solve_catenoids(&c)?;
        let best = sols.first().ok_or_else(|| {
            Error::Numerical(format!("no catenoid below the critical separation (h = {h})"))
        })?;
        Ok(best.area - c.discs_area())
    };
    let mut lo = 1e-6 * h_star;
    let mut hi = h_star * (1.0 - 1e-9);
    if diff(hi)? < 0.0 {
        return Err(Error::NotApplicable(
            "catenoid area stays below the discs up to the critical separation".into(),
        ));
    }
    while hi - lo > 1e-13 * h_star {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if diff(mid)? < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

pub fn classify_minimizer(circles: &BoundaryCircles, tol: f64) -> Result<MinimizerClass> {
    let discs_area = circles.discs_area();
    if circles.is_coplanar() {
        return Ok(MinimizerClass {
            kind: MinimizerKind::CoplanarAnnulus,
            catenoid: None,
            discs_area,
        });
    }
    let best = solve_catenoids(circles)?.into_iter().next();
    let kind = match &best {
        None => MinimizerKind::DiscsUnique,
        Some(s) if (s.area - discs_area).abs() <= tol * discs_area => MinimizerKind::Tie,
        Some(s) if s.area < discs_area => MinimizerKind::CatenoidUnique,
        Some(_) => MinimizerKind::DiscsUnique,
    };
    Ok(MinimizerClass {
        kind,
        catenoid: best,
        discs_area,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circles(r1: f64, r2: f64, h: f64) -> BoundaryCircles {
        BoundaryCircles::new(r1, r2, h).unwrap()
    }

    /// Roots of `c cosh(h / (2c)) = 1` by scanning and bisection.
    fn symmetric_roots_oracle(h: f64) -> Vec<f64> {
        let g = |c: f64| c * (h / (2.0 * c)).cosh() - 1.0;
        let n = 100_000;
        let mut roots = Vec::new();
        for i in 1..n {
            let (a, b) = (i as f64 / n as f64, (i + 1) as f64 / n as f64);
            if (g(a) < 0.0) != (g(b) < 0.0) {
                let (mut lo, mut hi) = (a, b);
                for _ in 0..100 {
                    let m = 0.5 * (lo + hi);
                    if (g(m) < 0.0) == (g(lo) < 0.0) {
                        lo = m
                    } else {
                        hi = m
                    }
                }
                roots.push(0.5 * (lo + hi));
            }
        }
        roots
    }

    #[test]
    fn unit_rings_at_unit_separation() {
        let oracle = symmetric_roots_oracle(1.0);
        assert_eq!(oracle.len(), 2);
        let sols = solve_catenoids(&circles(1.0, 1.0, 1.0)).unwrap();
        assert_eq!(sols.len(), 2);
        let outer = sols.iter().find(|s| s.branch == Branch::Outer).unwrap();
        let inner = sols.iter().find(|s| s.branch == Branch::Inner).unwrap();
        assert!((outer.c - oracle[1]).abs() < 1e-10);
        assert!((inner.c - oracle[0]).abs() < 1e-10);
        assert!((outer.c - 0.8483).abs() < 1e-4);
        assert!((inner.c - 0.2350).abs() < 1e-4);
        assert!(outer.area < inner.area);
        assert_eq!(sols[0].branch, Branch::Outer);
        for s in &sols {
            assert!((s.y0 - 0.5).abs() < 1e-10);
            assert!((s.radius_at(0.0) - 1.0).abs() < 1e-10);
            assert!((s.radius_at(1.0) - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn no_catenoid_beyond_critical_separation() {
        let h: f64 = 1.40;
        let min = (1..100_000)
            .map(|i| {
                let c = i as f64 / 100_000.0;
                c * (h / (2.0 * c)).cosh()
            })
            .fold(f64::INFINITY, f64::min);
        assert!(min > 1.0);
        assert!(solve_catenoids(&circles(1.0, 1.0, h)).unwrap().is_empty());
    }

    #[test]
    fn thin_neck_limit() {
        let sols = solve_catenoids(&circles(1.0, 1.0, 1e-3)).unwrap();
        let outer = sols.iter().find(|s| s.branch == Branch::Outer).unwrap();
        assert!(outer.c < 1.0 && outer.c > 0.999);
        assert!(outer.area > 0.0 && outer.area < 0.01);
    }

    #[test]
    fn coplanar_is_rejected() {
        assert!(matches!(
            solve_catenoids(&circles(1.0, 1.0, 0.0)),
            Err(Error::UseCoplanar { .. })
        ));
    }

    #[test]
    fn unequal_rings_satisfy_both_boundary_equations() {
        for &(r1, r2, h) in &[(1.0, 2.0, 0.3), (2.0, 1.0, 0.5), (1.0, 3.0, 0.2), (0.5, 0.7, 0.4)] {
            let c = circles(r1, r2, h);
            let sols = solve_catenoids(&c).unwrap();
            assert!(!sols.is_empty(), "{r1} {r2} {h}");
            for s in sols {
                assert!((s.radius_at(0.0) - r1).abs() <= 1e-10 * r1);
                assert!((s.radius_at(h) - r2).abs() <= 1e-10 * r2);
                assert!(s.area > 0.0);
            }
        }
    }

    #[test]
    fn classification_cases() {
        let k = |h| classify_minimizer(&circles(1.0, 1.0, h), TIE_TOL).unwrap().kind;
        assert_eq!(k(0.0), MinimizerKind::CoplanarAnnulus);
        assert_eq!(k(0.5), MinimizerKind::CatenoidUnique);
        assert_eq!(k(1.3), MinimizerKind::DiscsUnique);
        assert_eq!(k(1.4), MinimizerKind::DiscsUnique);
        let cls = classify_minimizer(&circles(1.0, 1.0, 0.5), TIE_TOL).unwrap();
        let cat = cls.catenoid.unwrap();
        let closed = PI * cat.c * (0.5 + cat.c * (0.5 / cat.c).sinh());
        assert!((cat.area - closed).abs() < 1e-12);
        assert!(cat.area < 2.0 * PI);
    }

    #[test]
    fn scale_covariance() {
        for &(r1, r2, h) in &[(1.0, 1.0, 0.5), (1.0, 2.0, 0.4), (1.0, 1.0, 1.2)] {
            let base = classify_minimizer(&circles(r1, r2, h), TIE_TOL).unwrap();
            for s in [0.3, 2.5] {
                let scaled = classify_minimizer(&circles(r1, r2, h).scaled(s), TIE_TOL).unwrap();
                assert_eq!(scaled.kind, base.kind);
                if let (Some(a), Some(b)) = (base.catenoid, scaled.catenoid) {
                    assert!((b.area - s * s * a.area).abs() < 1e-9 * b.area);
                }
            }
        }
    }

    #[test]
    fn critical_separation_scales() {
        let h1 = critical_separation(1.0, 1.0).unwrap();
        let h3 = critical_separation(3.0, 3.0).unwrap();
        assert!((h3 - 3.0 * h1).abs() < 1e-8);
    }

    #[test]
    fn existence_is_monotone() {
        let hs = critical_separation(1.0, 2.0).unwrap();
        for i in 1..40 {
            let h = hs * i as f64 / 40.0;
            assert!(!solve_catenoids(&circles(1.0, 2.0, h)).unwrap().is_empty(), "h = {h}");
        }
        assert!(solve_catenoids(&circles(1.0, 2.0, hs * 1.001)).unwrap().is_empty());
    }
}
