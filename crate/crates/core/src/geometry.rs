//! Meridian curves of surfaces of revolution.
//!
//! A surface in the admissible class is generated by rotating a curve in the
//! open half-plane `{(x, y) : x > 0}` about the `y` axis. Each curve starts on
//! the lower circle at `p = (r1, 0)` and ends on the upper circle at
//! `q = (r2, h)`. Curves are stored as polylines whose chords all have the same
//! length, which is the discrete form of a constant-speed parametrization.
//!
//! Because the surfaces are coaxial and rotation invariant, the Hausdorff
//! distance between two of them in space equals the planar Hausdorff distance
//! between their meridians: for any point on one surface the nearest point of
//! the other can be rotated into the same half-plane without changing its
//! distance, so every sup-inf in space reduces to one in the half-plane.

use std::fmt::Write as _;
use std::path::Path;

use serde::Deserialize;

use crate::catenoid::CatenoidSolution;
use crate::error::{Error, Result};
use crate::fmt17;

/// Relative tolerance on chord equality.
pub const CHORD_REL_TOL: f64 = 1e-12;

/// Exclusion radius relative to the smaller circle radius.
pub const X_MIN_FACTOR: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn dist(self, other: Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    fn lerp(self, other: Point, t: f64) -> Point {
        Point::new(
            self.x + t * (other.x - self.x),
            self.y + t * (other.y - self.y),
        )
    }
}

/// Two coaxial circles: radius `r1` in the plane `y = 0` and radius `r2` in
/// the plane `y = h`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryCircles {
    pub r1: f64,
    pub r2: f64,
    pub h: f64,
}

impl BoundaryCircles {
    pub fn new(r1: f64, r2: f64, h: f64) -> Result<Self> {
        if !(r1 > 0.0 && r1.is_finite() && r2 > 0.0 && r2.is_finite()) {
            return Err(Error::Precondition(format!(
                "circle radii must be positive and finite (r1 = {r1}, r2 = {r2})"
            )));
        }
        if !(h >= 0.0 && h.is_finite()) {
            return Err(Error::Precondition(format!(
                "separation must be non-negative and finite (h = {h})"
            )));
        }
        Ok(BoundaryCircles { r1, r2, h })
    }

    pub fn p(&self) -> Point {
        Point::new(self.r1, 0.0)
    }

    pub fn q(&self) -> Point {
        Point::new(self.r2, self.h)
    }

    pub fn is_coplanar(&self) -> bool {
        self.h == 0.0
    }

    pub fn default_x_min(&self) -> f64 {
        X_MIN_FACTOR * self.r1.min(self.r2)
    }

    /// Total area of the two flat discs bounded by the circles.
    pub fn discs_area(&self) -> f64 {
        std::f64::consts::PI * (self.r1 * self.r1 + self.r2 * self.r2)
    }

    pub fn scaled(&self, s: f64) -> Self {
        BoundaryCircles {
            r1: self.r1 * s,
            r2: self.r2 * s,
            h: self.h * s,
        }
    }
}

/// Constant-speed polyline in the half-plane `x >= x_min > 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct Meridian {
    points: Vec<Point>,
    x_min: f64,
}

impl Meridian {
    /// Wraps points that already have equal chords, checking every invariant.
    pub fn from_points(points: Vec<Point>, x_min: f64) -> Result<Self> {
        if points.len() < 3 {
            return Err(Error::MalformedInput(format!(
                "a meridian needs at least 3 points, got {}",
                points.len()
            )));
        }
        if !(x_min > 0.0) {
            return Err(Error::DomainViolation(format!(
                "x_min must be positive, got {x_min}"
            )));
        }
        if let Some((i, pt)) = points
            .iter()
            .enumerate()
            .find(|(_, pt)| !(pt.x >= x_min) || !pt.y.is_finite() || !pt.x.is_finite())
        {
            return Err(Error::DomainViolation(format!(
                "point {i} = ({}, {}) is below x_min = {x_min}",
                pt.x, pt.y
            )));
        }
        let chords: Vec<f64> = points.windows(2).map(|w| w[0].dist(w[1])).collect();
        let mean = chords.iter().sum::<f64>() / chords.len() as f64;
        if !(mean > 0.0) {
            return Err(Error::MalformedInput("meridian has zero length".into()));
        }
        let tol = chord_tolerance(&points, mean);
        if let Some((i, c)) = chords
            .iter()
            .enumerate()
            .find(|(_, c)| (**c - mean).abs() > tol)
        {
            return Err(Error::MalformedInput(format!(
                "chord {i} has length {c}, expected {mean} (not constant speed)"
            )));
        }
        Ok(Meridian { points, x_min })
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    /// Number of chords `M` (the meridian has `M + 1` points).
    pub fn segments(&self) -> usize {
        self.points.len() - 1
    }

    pub fn start(&self) -> Point {
        self.points[0]
    }

    pub fn end(&self) -> Point {
        *self.points.last().unwrap()
    }

    pub fn chord(&self) -> f64 {
        length(self) / self.segments() as f64
    }

    pub fn min_x(&self) -> f64 {
        self.points.iter().map(|p| p.x).fold(f64::INFINITY, f64::min)
    }

    pub fn max_x(&self) -> f64 {
        self.points.iter().map(|p| p.x).fold(f64::NEG_INFINITY, f64::max)
    }

    /// `F(t)` for the uniform parameter `t` in `[0, 1]`.
    pub fn radius_at(&self, t: f64) -> f64 {
        let m = self.segments();
        let s = (t.clamp(0.0, 1.0) * m as f64).min(m as f64);
        let i = (s.floor() as usize).min(m - 1);
        let frac = s - i as f64;
        self.points[i].lerp(self.points[i + 1], frac).x
    }

    /// `true` when some point lies within `rel` of the exclusion radius.
    pub fn touches_x_min(&self, rel: f64) -> bool {
        self.min_x() <= self.x_min * (1.0 + rel)
    }

    /// Translates the curve by `dy` along the axis.
    pub fn translated(&self, dy: f64) -> Meridian {
        Meridian {
            points: self
                .points
                .iter()
                .map(|p| Point::new(p.x, p.y + dy))
                .collect(),
            x_min: self.x_min,
        }
    }

    /// Reverses the traversal and reflects `y -> h - y`.
    pub fn reflected(&self, h: f64) -> Meridian {
        Meridian {
            points: self
                .points
                .iter()
                .rev()
                .map(|p| Point::new(p.x, h - p.y))
                .collect(),
            x_min: self.x_min,
        }
    }

    /// Restricts the curve to the parameter interval `[t0, t1]` and
    /// reparametrizes the piece with `m` chords.
    pub fn restricted(&self, t0: f64, t1: f64, m: usize) -> Result<Meridian> {
        if !(0.0 <= t0 && t0 < t1 && t1 <= 1.0) {
            return Err(Error::Precondition(format!(
                "invalid parameter interval [{t0}, {t1}]"
            )));
        }
        let n = self.segments() as f64;
        let locate = |t: f64| {
            let s = t * n;
            let i = (s.floor() as usize).min(self.segments() - 1);
            (i, self.points[i].lerp(self.points[i + 1], s - i as f64))
        };
        let (i0, a) = locate(t0);
        let (i1, b) = locate(t1);
        let mut raw = vec![a];
        raw.extend_from_slice(&self.points[i0 + 1..=i1]);
        raw.push(b);
        raw.dedup_by(|u, v| u.dist(*v) == 0.0);
        reparametrize_with_x_min(&raw, m, self.x_min)
    }

    /// Number of pairs of non-adjacent chords that cross.
    pub fn self_crossings(&self) -> usize {
        let pts = &self.points;
        let n = pts.len() - 1;
        let mut count = 0;
        for i in 0..n {
            let (a0, a1) = (pts[i], pts[i + 1]);
            let (ax0, ax1) = (a0.x.min(a1.x), a0.x.max(a1.x));
            let (ay0, ay1) = (a0.y.min(a1.y), a0.y.max(a1.y));
            for j in i + 2..n {
                let (b0, b1) = (pts[j], pts[j + 1]);
                if b0.x.max(b1.x) < ax0
                    || b0.x.min(b1.x) > ax1
                    || b0.y.max(b1.y) < ay0
                    || b0.y.min(b1.y) > ay1
                {
                    continue;
                }
                if segments_cross(a0, a1, b0, b1) {
                    count += 1;
                }
            }
        }
        count
    }

    /// Serializes in the curve file format with 17 significant digits.
    pub fn to_curve_json(&self) -> String {
        let mut out = String::from("{\n  \"points\": [\n");
        for (i, p) in self.points.iter().enumerate() {
            let sep = if i + 1 == self.points.len() { "" } else { "," };
            let _ = writeln!(out, "    [{}, {}]{}", fmt17(p.x), fmt17(p.y), sep);
        }
        let _ = write!(out, "  ],\n  \"x_min\": {}\n}}\n", fmt17(self.x_min));
        out
    }

    pub fn write_curve(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_curve_json()).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })
    }
}

fn chord_tolerance(points: &[Point], chord: f64) -> f64 {
    // Chords of O(1) coordinates carry absolute rounding of a few ulps, which
    // dominates the relative bound once the chords get short.
    let scale = points
        .iter()
        .map(|p| p.x.abs().max(p.y.abs()))
        .fold(0.0, f64::max);
    CHORD_REL_TOL * chord + 16.0 * f64::EPSILON * scale
}

fn cross(o: Point, a: Point, b: Point) -> f64 {
    (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)
}

fn segments_cross(a0: Point, a1: Point, b0: Point, b1: Point) -> bool {
    let d1 = cross(b0, b1, a0);
    let d2 = cross(b0, b1, a1);
    let d3 = cross(a0, a1, b0);
    let d4 = cross(a0, a1, b1);
    ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
}

/// Curve file contents: `{"points": [[x, y], ...], "x_min": ...}`.
#[derive(Debug, Clone, Deserialize)]
pub struct CurveFile {
    pub points: Vec<[f64; 2]>,
    #[serde(default)]
    pub x_min: Option<f64>,
}

impl CurveFile {
    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text).map_err(|e| match e {
            Error::MalformedInput(message) => Error::Parse {
                path: path.display().to_string(),
                message,
            },
            other => other,
        })
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::MalformedInput(e.to_string()))
    }

    pub fn raw_points(&self) -> Vec<Point> {
        self.points.iter().map(|&[x, y]| Point::new(x, y)).collect()
    }
}

/// Polyline with cumulative arc length, used as the trace for equal-chord walks.
struct Trace<'a> {
    pts: &'a [Point],
    seg_len: Vec<f64>,
    total: f64,
}

/// Outcome of walking `m` equal chords along a trace.
enum Walk {
    /// All steps taken; the last point sits at this arc length.
    Done { points: Vec<Point>, arc: f64 },
    /// The trace ended after this many steps.
    RanOut,
}

impl<'a> Trace<'a> {
    fn new(pts: &'a [Point]) -> Self {
        let seg_len: Vec<f64> = pts.windows(2).map(|w| w[0].dist(w[1])).collect();
        let total = seg_len.iter().sum();
        Trace {
            pts,
            seg_len,
            total,
        }
    }

    /// Steps from the start, each time moving to the first later point of the
    /// trace whose distance from the current point equals `d`.
    fn walk(&self, d: f64, m: usize) -> Walk {
        let mut out = Vec::with_capacity(m + 1);
        let mut cur = self.pts[0];
        out.push(cur);
        let (mut seg, mut t) = (0usize, 0.0f64);
        let mut carry = 0.0f64;
        let mut arc_before = 0.0;
        let nseg = self.seg_len.len();
        for _ in 0..m {
            let mut found = false;
            let along = self.seg_len[seg] * (1.0 - t);
            if along >= d && self.seg_len[seg] > 0.0 {
                // Compensated sum: on long straight runs the plain sum drifts
                // by `m` ulps, more than the chord tolerance allows.
                let inc = d / self.seg_len[seg] - carry;
                let next = t + inc;
                carry = (next - t) - inc;
                t = next;
                cur = self.pts[seg].lerp(self.pts[seg + 1], t);
                found = true;
            } else {
                arc_before += self.seg_len[seg];
                seg += 1;
                while seg < nseg {
                    let a = self.pts[seg];
                    let b = self.pts[seg + 1];
                    let (ux, uy) = (b.x - a.x, b.y - a.y);
                    let (wx, wy) = (a.x - cur.x, a.y - cur.y);
                    let qa = ux * ux + uy * uy;
                    let qb = wx * ux + wy * uy;
                    let qc = wx * wx + wy * wy - d * d;
                    if qa > 0.0 {
                        let disc = (qb * qb - qa * qc).max(0.0);
                        // qc < 0 here, so the larger root is the forward crossing.
                        let s = if qb > 0.0 {
                            -qc / (qb + disc.sqrt())
                        } else {
                            (-qb + disc.sqrt()) / qa
                        };
                        if s <= 1.0 {
                            t = s.max(0.0);
                            carry = 0.0;
                            cur = a.lerp(b, t);
                            found = true;
                            break;
                        }
                    }
                    arc_before += self.seg_len[seg];
                    seg += 1;
                }
            }
            if !found {
                return Walk::RanOut;
            }
            out.push(cur);
        }
        let arc = arc_before + t * self.seg_len[seg];
        Walk::Done { points: out, arc }
    }
}

/// Resamples a polyline with `m` equal chords on the same trace, keeping the
/// endpoints. Uses the default exclusion radius `1e-6 * min(x_start, x_end)`.
pub fn reparametrize_constant_speed(raw: &[Point], m: usize) -> Result<Meridian> {
    let x_min = match (raw.first(), raw.last()) {
        (Some(a), Some(b)) => X_MIN_FACTOR * a.x.min(b.x),
        _ => 0.0,
    };
    reparametrize_with_x_min(raw, m, x_min)
}

pub fn reparametrize_with_x_min(raw: &[Point], m: usize, x_min: f64) -> Result<Meridian> {
    if raw.len() < 2 {
        return Err(Error::MalformedInput(format!(
            "need at least 2 points, got {}",
            raw.len()
        )));
    }
    if m < 2 {
        return Err(Error::MalformedInput(format!("need m >= 2, got {m}")));
    }
    if let Some(p) = raw.iter().find(|p| !(p.x > 0.0) || !p.y.is_finite()) {
        return Err(Error::DomainViolation(format!(
            "point ({}, {}) is not in the open half-plane x > 0",
            p.x, p.y
        )));
    }
    let trace = Trace::new(raw);
    if !(trace.total > 0.0) {
        return Err(Error::MalformedInput("polyline has zero length".into()));
    }
    let end = *raw.last().unwrap();

    // Chords never exceed arc length, so `d = L / m` always reaches the end.
    let mut hi = trace.total / m as f64;
    let mut lo = 0.0;
    let mut best: Option<Vec<Point>> = None;
    if let Walk::Done { points, arc } = trace.walk(hi, m) {
        if arc >= trace.total * (1.0 - 1e-15) {
            best = Some(points);
        }
    }
    if best.is_none() {
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            match trace.walk(mid, m) {
                Walk::Done { points, arc } if arc < trace.total => {
                    lo = mid;
                    best = Some(points);
                }
                _ => hi = mid,
            }
        }
    }
    let mut points = best.ok_or_else(|| {
        Error::Numerical("equal-chord walk failed to bracket the end of the curve".into())
    })?;
    *points.last_mut().unwrap() = end;
    if !chords_equal(&points) {
        return Err(Error::Numerical(
            "no equal-chord sampling of this trace lands on its end; \
             sharp reversals (turns above 90 degrees) can cause this"
                .into(),
        ));
    }
    Meridian::from_points(points, x_min)
}

fn chords_equal(points: &[Point]) -> bool {
    let chords: Vec<f64> = points.windows(2).map(|w| w[0].dist(w[1])).collect();
    let mean = chords.iter().sum::<f64>() / chords.len() as f64;
    let tol = chord_tolerance(points, mean);
    chords.iter().all(|c| (c - mean).abs() <= tol)
}

pub fn length(m: &Meridian) -> f64 {
    m.points.windows(2).map(|w| w[0].dist(w[1])).sum()
}

/// Midpoint-rule evaluation of `2 pi * integral of F |alpha'|`.
pub fn area(m: &Meridian) -> f64 {
    let s: f64 = m
        .points
        .windows(2)
        .map(|w| w[0].dist(w[1]) * 0.5 * (w[0].x + w[1].x))
        .sum();
    2.0 * std::f64::consts::PI * s
}

fn point_segment_dist(p: Point, a: Point, b: Point) -> f64 {
    let (ux, uy) = (b.x - a.x, b.y - a.y);
    let len2 = ux * ux + uy * uy;
    if len2 == 0.0 {
        return p.dist(a);
    }
    let t = (((p.x - a.x) * ux + (p.y - a.y) * uy) / len2).clamp(0.0, 1.0);
    p.dist(a.lerp(b, t))
}

fn point_polyline_dist(p: Point, poly: &[Point]) -> f64 {
    if poly.len() == 1 {
        return p.dist(poly[0]);
    }
    poly.windows(2)
        .map(|w| point_segment_dist(p, w[0], w[1]))
        .fold(f64::INFINITY, f64::min)
}

/// Upper bound on the distance to `b` over the piece `[u, v]`: the distance to
/// one chord of `b` is convex along `[u, v]`, so it peaks at an end.
fn piece_bound(u: Point, v: Point, b: &[Point]) -> f64 {
    if b.len() == 1 {
        return u.dist(b[0]).max(v.dist(b[0]));
    }
    b.windows(2)
        .map(|w| point_segment_dist(u, w[0], w[1]).max(point_segment_dist(v, w[0], w[1])))
        .fold(f64::INFINITY, f64::min)
}

/// `sup over a in A of dist(a, B)` over the full polylines, not just vertices.
///
/// Each chord of `A` is bisected until the upper bound on its pieces, the
/// smaller of the 1-Lipschitz bound `(d0 + d1 + l) / 2` and [`piece_bound`],
/// is within `tol` of the best distance found.
pub fn directed_hausdorff(a: &[Point], b: &[Point], tol: f64) -> f64 {
    let dist: Vec<f64> = a.iter().map(|&p| point_polyline_dist(p, b)).collect();
    let mut best = dist.iter().copied().fold(0.0, f64::max);
    let mut stack = Vec::new();
    for i in 0..a.len().saturating_sub(1) {
        let seg = a[i].dist(a[i + 1]);
        stack.push((0.0, 1.0, dist[i], dist[i + 1]));
        while let Some((t0, t1, d0, d1)) = stack.pop() {
            let l = (t1 - t0) * seg;
            if 0.5 * (d0 + d1 + l) <= best + tol {
                continue;
            }
            let (u, v) = (a[i].lerp(a[i + 1], t0), a[i].lerp(a[i + 1], t1));
            if piece_bound(u, v, b) <= best + tol {
                continue;
            }
            let tm = 0.5 * (t0 + t1);
            let dm = point_polyline_dist(a[i].lerp(a[i + 1], tm), b);
            best = best.max(dm);
            stack.push((t0, tm, d0, dm));
            stack.push((tm, t1, dm, d1));
        }
    }
    best
}

/// Symmetric Hausdorff distance between two meridian traces.
pub fn hausdorff_distance(m1: &Meridian, m2: &Meridian) -> f64 {
    hausdorff_polylines(&m1.points, &m2.points)
}

pub fn hausdorff_polylines(a: &[Point], b: &[Point]) -> f64 {
    let scale = a
        .iter()
        .chain(b.iter())
        .map(|p| p.x.abs().max(p.y.abs()))
        .fold(1e-300, f64::max);
    let tol = 1e-12 * scale;
    directed_hausdorff(a, b, tol).max(directed_hausdorff(b, a, tol))
}

/// Constant-speed chord from `p` to `q`.
pub fn make_segment(c: &BoundaryCircles, m: usize) -> Result<Meridian> {
    if m < 2 {
        return Err(Error::MalformedInput(format!("need m >= 2, got {m}")));
    }
    let (p, q) = (c.p(), c.q());
    let points = (0..=m)
        .map(|i| {
            if i == m {
                q
            } else {
                p.lerp(q, i as f64 / m as f64)
            }
        })
        .collect();
    Meridian::from_points(points, c.default_x_min())
}

/// Oversampling of the analytic catenary before the equal-chord walk.
const CATENARY_OVERSAMPLE: usize = 8;

/// Catenary `x = c cosh((y - y0) / c)` for `0 <= y <= h`, at constant speed.
pub fn make_catenary(sol: &CatenoidSolution, circles: &BoundaryCircles, m: usize) -> Result<Meridian> {
    if m < 2 {
        return Err(Error::MalformedInput(format!("need m >= 2, got {m}")));
    }
    let (c, y0, h) = (sol.c, sol.y0, circles.h);
    let x_at = |y: f64| c * ((y - y0) / c).cosh();
    let mismatch = (x_at(0.0) - circles.r1)
        .abs()
        .max((x_at(h) - circles.r2).abs());
    if !(mismatch <= 1e-8 * circles.r1.max(circles.r2)) {
        return Err(Error::Inconsistency(format!(
            "catenary (c = {c}, y0 = {y0}) misses the circles by {mismatch}"
        )));
    }
    // Equal arc-length samples: s(u) = c (sinh u - sinh u0).
    let u0 = -y0 / c;
    let u1 = (h - y0) / c;
    let (s0, s1) = (u0.sinh(), u1.sinh());
    let n = CATENARY_OVERSAMPLE * m;
    let mut raw: Vec<Point> = (0..=n)
        .map(|i| {
            let u = (s0 + (s1 - s0) * i as f64 / n as f64).asinh();
            let y = y0 + c * u;
            Point::new(c * u.cosh(), y)
        })
        .collect();
    raw[0] = circles.p();
    raw[n] = circles.q();
    reparametrize_with_x_min(&raw, m, circles.default_x_min())
}
