//! Finite-element Sturm–Liouville pencil for one angular mode.
//!
//! For mode `k` the Rayleigh quotient on `[0, 1]` is
//!
//! ```text
//!   ∫ (F / L) w'^2 + (k^2 L / F) w^2 dt
//!   -----------------------------------
//!             ∫ F L w^2 dt
//! ```
//!
//! with `w(0) = w(1) = 0`. Continuous piecewise-linear hat functions on a
//! uniform grid with coefficients frozen at element midpoints give a
//! symmetric tridiagonal stiffness matrix `K` and consistent mass matrix `M`.
//! Eigenvalues are isolated by bisection on the inertia of `K - λ M`.

use crate::error::{Error, Result};
use crate::geometry::{length, Meridian};

/// Relative width at which a bisection interval is considered converged.
pub const BISECTION_REL_TOL: f64 = 1e-13;

#[derive(Debug, Clone, PartialEq)]
pub struct SlProblem {
    pub k: u32,
    /// Grid nodes including both Dirichlet endpoints (`M + 1`).
    pub nodes: usize,
    /// Stiffness weight `F / |α'|` per element.
    pub p: Vec<f64>,
    /// Potential weight `k^2 |α'| / F` per element.
    pub q: Vec<f64>,
    /// Mass weight `F |α'|` per element.
    pub w: Vec<f64>,
    /// Parameter step `1 / M`.
    pub step: f64,
}

/// Tridiagonal pencil on the interior nodes; `off[i]` couples `i` and `i + 1`.
#[derive(Debug, Clone)]
pub struct Pencil {
    pub k_diag: Vec<f64>,
    pub k_off: Vec<f64>,
    pub m_diag: Vec<f64>,
    pub m_off: Vec<f64>,
}

impl SlProblem {
    /// Builds the problem directly from per-element weights.
    pub fn from_weights(k: u32, p: Vec<f64>, q: Vec<f64>, w: Vec<f64>) -> Result<Self> {
        let elements = p.len();
        if elements < 2 || q.len() != elements || w.len() != elements {
            return Err(Error::MalformedInput(format!(
                "weight arrays must share a length >= 2 (p: {}, q: {}, w: {})",
                p.len(),
                q.len(),
                w.len()
            )));
        }
        let bad = |v: &[f64], allow_zero: bool| {
            v.iter()
                .any(|x| !x.is_finite() || *x < 0.0 || (!allow_zero && *x == 0.0))
        };
        if bad(&p, false) || bad(&w, false) || bad(&q, k == 0) {
            return Err(Error::DomainViolation(
                "coefficients must be positive and finite".into(),
            ));
        }
        Ok(SlProblem {
            k,
            nodes: elements + 1,
            p,
            q,
            w,
            step: 1.0 / elements as f64,
        })
    }

    pub fn elements(&self) -> usize {
        self.nodes - 1
    }

    /// Number of interior unknowns after eliminating the Dirichlet nodes.
    pub fn unknowns(&self) -> usize {
        self.nodes - 2
    }

    pub fn pencil(&self) -> Pencil {
        let h = self.step;
        let n = self.unknowns();
        let mut k_diag = Vec::with_capacity(n);
        let mut m_diag = Vec::with_capacity(n);
        let mut k_off = Vec::with_capacity(n.saturating_sub(1));
        let mut m_off = Vec::with_capacity(n.saturating_sub(1));
        // Interior node i (1..=n) touches elements i - 1 and i.
        for i in 1..=n {
            let (l, r) = (i - 1, i);
            k_diag.push((self.p[l] + self.p[r]) / h + (self.q[l] + self.q[r]) * h / 3.0);
            m_diag.push((self.w[l] + self.w[r]) * h / 3.0);
            if i < n {
                k_off.push(-self.p[r] / h + self.q[r] * h / 6.0);
                m_off.push(self.w[r] * h / 6.0);
            }
        }
        Pencil {
            k_diag,
            k_off,
            m_diag,
            m_off,
        }
    }
}

impl Pencil {
    pub fn len(&self) -> usize {
        self.k_diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.k_diag.is_empty()
    }

    /// Number of eigenvalues strictly below `lambda` (negative pivots of the
    /// `LDLᵀ` factorization of `K - λ M`).
    pub fn count_below(&self, lambda: f64) -> usize {
        let n = self.len();
        let tiny = f64::MIN_POSITIVE.sqrt();
        let mut count = 0;
        let mut d = self.k_diag[0] - lambda * self.m_diag[0];
        if d.abs() < tiny {
            d = -tiny;
        }
        if d < 0.0 {
            count += 1;
        }
        for i in 1..n {
            let b = self.k_off[i - 1] - lambda * self.m_off[i - 1];
            d = self.k_diag[i] - lambda * self.m_diag[i] - b * b / d;
            if d.abs() < tiny {
                d = -tiny;
            }
            if d < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// Upper bound on every eigenvalue: take the row where the eigenvector is
    /// largest; `|λ| (M_ii - Σ|M_ij|) <= Σ|K_ij|`.
    pub fn upper_bound(&self) -> f64 {
        let n = self.len();
        let mut bound: f64 = 0.0;
        for i in 0..n {
            let mut k_row = self.k_diag[i].abs();
            let mut m_row = self.m_diag[i];
            if i > 0 {
                k_row += self.k_off[i - 1].abs();
                m_row -= self.m_off[i - 1].abs();
            }
            if i + 1 < n {
                k_row += self.k_off[i].abs();
                m_row -= self.m_off[i].abs();
            }
            bound = bound.max(k_row / m_row);
        }
        bound * (1.0 + 1e-12)
    }

    /// Eigenvalues with 0-based indices in `first..last`, ascending.
    ///
    /// Every eigenvalue is located on the dyadic subdivision of the same
    /// interval `[0, upper_bound]`, so a value does not depend on which other
    /// indices were requested alongside it.
    pub fn eigenvalues(&self, first: usize, last: usize) -> Result<Vec<f64>> {
        let n = self.len();
        if last > n {
            return Err(Error::InsufficientMesh {
                requested: last,
                unknowns: n,
            });
        }
        let mut out = vec![f64::NAN; last.saturating_sub(first)];
        if first >= last {
            return Ok(out);
        }
        let hi = self.upper_bound();
        let c_hi = self.count_below(hi);
        if c_hi != n {
            return Err(Error::Numerical(format!(
                "inertia at the upper bound is {c_hi}, expected {n}"
            )));
        }
        // Negative eigenvalues are impossible for a positive definite K.
        let c_lo = self.count_below(0.0);
        if c_lo != 0 {
            return Err(Error::Numerical(format!(
                "stiffness matrix has {c_lo} negative pivots"
            )));
        }
        let mut stack = vec![(0.0, hi, 0usize, n)];
        while let Some((lo, hi, c_lo, c_hi)) = stack.pop() {
            let (a, b) = (c_lo.max(first), c_hi.min(last));
            if a >= b {
                continue;
            }
            let mid = 0.5 * (lo + hi);
            if hi - lo <= BISECTION_REL_TOL * hi || mid <= lo || mid >= hi {
                for idx in a..b {
                    out[idx - first] = mid;
                }
                continue;
            }
            let c_mid = self.count_below(mid);
            if c_mid < c_lo || c_mid > c_hi {
                return Err(Error::Numerical(format!(
                    "non-monotone inertia at λ = {mid}: {c_mid} outside [{c_lo}, {c_hi}]"
                )));
            }
            stack.push((mid, hi, c_mid, c_hi));
            stack.push((lo, mid, c_lo, c_mid));
        }
        Ok(out)
    }
}

/// Discretizes mode `k` of the meridian on a uniform grid of `mesh` elements.
pub fn assemble_sl(m: &Meridian, k: u32, mesh: usize) -> Result<SlProblem> {
    if mesh < 2 {
        return Err(Error::MalformedInput(format!("mesh must be >= 2, got {mesh}")));
    }
    let speed = length(m);
    let kk = (k as f64) * (k as f64);
    let mut p = Vec::with_capacity(mesh);
    let mut q = Vec::with_capacity(mesh);
    let mut w = Vec::with_capacity(mesh);
    for e in 0..mesh {
        let f = m.radius_at((e as f64 + 0.5) / mesh as f64);
        if !(f >= m.x_min()) {
            return Err(Error::DomainViolation(format!(
                "F = {f} below x_min = {} in element {e}",
                m.x_min()
            )));
        }
        p.push(f / speed);
        q.push(kk * speed / f);
        w.push(f * speed);
    }
    SlProblem::from_weights(k, p, q, w)
}

/// The `n_max` smallest eigenvalues of the discrete problem.
pub fn solve_sl(prob: &SlProblem, n_max: usize) -> Result<Vec<f64>> {
    if n_max == 0 {
        return Err(Error::MalformedInput("n_max must be >= 1".into()));
    }
    if n_max >= prob.nodes - 1 {
        return Err(Error::InsufficientMesh {
            requested: n_max,
            unknowns: prob.unknowns(),
        });
    }
    prob.pencil().eigenvalues(0, n_max)
}
