//! Dirichlet spectra of surfaces of revolution and closed-form reference
//! spectra (cylinders, rectangles, discs and disjoint unions).
//!
//! Separation of variables turns the Laplace–Beltrami problem into one
//! Sturm–Liouville problem per angular mode `k`; its eigenvalues
//! `λ_{k,n}` enter the surface spectrum once for `k = 0` and twice otherwise.

pub mod bessel;
pub mod sl;

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{area, Meridian};

pub use bessel::{bessel_j, bessel_zero, bessel_zeros};
pub use sl::{assemble_sl, solve_sl, Pencil, SlProblem};

/// Modes solved together per parallel batch. Fixed so that the set of
/// computed values does not depend on the thread count.
const MODE_BATCH: u32 = 8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumEntry {
    pub value: f64,
    /// Angular mode, or the first lattice index for rectangles.
    pub k: u32,
    /// Radial index, or the second lattice index for rectangles.
    pub n: u32,
    pub multiplicity: u8,
}

/// Sorted eigenvalues with labels; exposes the first `len()` values counted
/// with multiplicity.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    entries: Vec<SpectrumEntry>,
    len: usize,
    area: f64,
}

/// One row of the expanded spectrum: `λ_j` with its labels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumRow {
    pub j: usize,
    pub value: f64,
    pub k: u32,
    pub n: u32,
    pub multiplicity: u8,
}

fn entry_order(a: &SpectrumEntry, b: &SpectrumEntry) -> std::cmp::Ordering {
    a.value
        .total_cmp(&b.value)
        .then(a.k.cmp(&b.k))
        .then(a.n.cmp(&b.n))
}

impl Spectrum {
    /// Sorts the entries and keeps the shortest prefix covering `j_max`
    /// eigenvalues.
    pub fn from_entries(mut entries: Vec<SpectrumEntry>, j_max: usize, area: f64) -> Self {
        entries.sort_by(entry_order);
        let mut total = 0usize;
        let mut keep = 0usize;
        for e in &entries {
            if total >= j_max {
                break;
            }
            total += e.multiplicity as usize;
            keep += 1;
        }
        entries.truncate(keep);
        Spectrum {
            entries,
            len: total.min(j_max),
            area,
        }
    }

    pub fn entries(&self) -> &[SpectrumEntry] {
        &self.entries
    }

    /// Number of eigenvalues counted with multiplicity.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn area(&self) -> f64 {
        self.area
    }

    pub fn rows(&self) -> Vec<SpectrumRow> {
        let mut rows = Vec::with_capacity(self.len);
        for e in &self.entries {
            for _ in 0..e.multiplicity {
                if rows.len() == self.len {
                    return rows;
                }
                rows.push(SpectrumRow {
                    j: rows.len() + 1,
                    value: e.value,
                    k: e.k,
                    n: e.n,
                    multiplicity: e.multiplicity,
                });
            }
        }
        rows
    }

    /// `λ_1, ..., λ_len` with repetition.
    pub fn values(&self) -> Vec<f64> {
        self.rows().into_iter().map(|r| r.value).collect()
    }

    /// `λ_j` for `1 <= j <= len()`.
    pub fn value(&self, j: usize) -> Option<f64> {
        if j == 0 || j > self.len {
            return None;
        }
        let mut seen = 0;
        for e in &self.entries {
            seen += e.multiplicity as usize;
            if seen >= j {
                return Some(e.value);
            }
        }
        None
    }

    pub fn last_value(&self) -> Option<f64> {
        self.value(self.len)
    }
}

/// Number of eigenvalues `<= lam`, with multiplicity.
pub fn counting_function(s: &Spectrum, lam: f64) -> usize {
    s.values().iter().filter(|&&v| v <= lam).count()
}

/// First `j_max` eigenvalues of the surface generated by the meridian.
///
/// Modes stop at the first `k` with `k^2 / (max F)^2` above the running
/// `j_max`-th value: that quantity bounds every `λ_{k,n}` from below.
pub fn merged_spectrum(m: &Meridian, j_max: usize, mesh: usize) -> Result<Spectrum> {
    if j_max == 0 {
        return Err(Error::MalformedInput("j_max must be >= 1".into()));
    }
    let max_f = m.max_x();
    let axisymmetric = assemble_sl(m, 0, mesh)?;
    let zero_mode = solve_sl(&axisymmetric, j_max)?;
    let mut entries: Vec<SpectrumEntry> = zero_mode
        .iter()
        .enumerate()
        .map(|(i, &value)| SpectrumEntry {
            value,
            k: 0,
            n: i as u32 + 1,
            multiplicity: 1,
        })
        .collect();
    let mut threshold = zero_mode[j_max - 1];
    let pair_cap = j_max.div_ceil(2);
    let mut k0 = 1u32;
    loop {
        let lower = |k: u32| (k as f64 / max_f).powi(2);
        if lower(k0) > threshold {
            break;
        }
        let batch: Vec<u32> = (k0..k0 + MODE_BATCH)
            .filter(|&k| lower(k) <= threshold)
            .collect();
        let t = threshold;
        let solved: Vec<Result<Vec<f64>>> = batch
            .par_iter()
            .map(|&k| {
                let pencil = assemble_sl(m, k, mesh)?.pencil();
                let below = pencil.count_below(t).min(pair_cap);
                if below == 0 {
                    return Ok(Vec::new());
                }
                pencil.eigenvalues(0, below)
            })
            .collect();
        for (&k, vals) in batch.iter().zip(solved) {
            for (i, value) in vals?.into_iter().enumerate() {
                entries.push(SpectrumEntry {
                    value,
                    k,
                    n: i as u32 + 1,
                    multiplicity: 2,
                });
            }
        }
        entries.sort_by(entry_order);
        threshold = nth_counted(&entries, j_max).unwrap_or(threshold);
        k0 += MODE_BATCH;
    }
    Ok(Spectrum::from_entries(entries, j_max, area(m)))
}

fn nth_counted(entries: &[SpectrumEntry], j: usize) -> Option<f64> {
    let mut seen = 0;
    for e in entries {
        seen += e.multiplicity as usize;
        if seen >= j {
            return Some(e.value);
        }
    }
    None
}

/// Grows a trial threshold until `count(threshold) >= j_max`.
fn grow_threshold(mut t: f64, j_max: usize, count: impl Fn(f64) -> usize) -> f64 {
    while count(t) < j_max {
        t *= 1.5;
    }
    t
}

/// Closed-form spectrum of the cylinder of radius `a` and height `len`:
/// `(nπ/len)^2 + (k/a)^2`.
pub fn cylinder_spectrum(a: f64, len: f64, j_max: usize) -> Result<Spectrum> {
    if !(a > 0.0 && len > 0.0) {
        return Err(Error::Precondition(format!(
            "cylinder needs positive radius and height (a = {a}, len = {len})"
        )));
    }
    let count = |t: f64| -> usize {
        let mut total = 0usize;
        let mut k = 0u32;
        while (k as f64 / a).powi(2) < t {
            let rest = t - (k as f64 / a).powi(2);
            let n = (len * rest.sqrt() / PI).floor() as usize;
            total += if k == 0 { n } else { 2 * n };
            k += 1;
        }
        total
    };
    let area = 2.0 * PI * a * len;
    let t = grow_threshold(4.0 * PI * j_max as f64 / area + (PI / len).powi(2), j_max, count);
    let mut entries = Vec::new();
    let mut k = 0u32;
    while (k as f64 / a).powi(2) < t {
        let kk = (k as f64 / a).powi(2);
        let mut n = 1u32;
        loop {
            let value = (n as f64 * PI / len).powi(2) + kk;
            if value > t {
                break;
            }
            entries.push(SpectrumEntry {
                value,
                k,
                n,
                multiplicity: if k == 0 { 1 } else { 2 },
            });
            n += 1;
        }
        k += 1;
    }
    Ok(Spectrum::from_entries(entries, j_max, area))
}

/// Closed-form Dirichlet spectrum of a `w` by `h` rectangle,
/// `π^2 (m^2/w^2 + n^2/h^2)`.
pub fn rectangle_spectrum(w: f64, h: f64, j_max: usize) -> Result<Spectrum> {
    if !(w > 0.0 && h > 0.0) {
        return Err(Error::Precondition(format!(
            "rectangle needs positive sides (w = {w}, h = {h})"
        )));
    }
    let count = |t: f64| -> usize {
        let mut total = 0;
        let mut m = 1u32;
        loop {
            let rest = t / (PI * PI) - (m as f64 / w).powi(2);
            if rest <= 0.0 {
                break;
            }
            total += (h * rest.sqrt()).floor() as usize;
            m += 1;
        }
        total
    };
    let area = w * h;
    let t = grow_threshold(
        4.0 * PI * j_max as f64 / area + PI * PI * (1.0 / (w * w) + 1.0 / (h * h)),
        j_max,
        count,
    );
    let mut entries = Vec::new();
    let mut m = 1u32;
    while PI * PI * (m as f64 / w).powi(2) < t {
        let mut n = 1u32;
        loop {
            let value = PI * PI * ((m as f64 / w).powi(2) + (n as f64 / h).powi(2));
            if value > t {
                break;
            }
            entries.push(SpectrumEntry {
                value,
                k: m,
                n,
                multiplicity: 1,
            });
            n += 1;
        }
        m += 1;
    }
    Ok(Spectrum::from_entries(entries, j_max, area))
}

/// Spectrum of a disjoint union: multiset merge of the parts.
pub fn union_spectrum(parts: &[Spectrum], j_max: usize) -> Spectrum {
    let entries = parts.iter().flat_map(|s| s.entries().iter().copied()).collect();
    let area = parts.iter().map(|s| s.area()).sum();
    Spectrum::from_entries(entries, j_max, area)
}

/// Dirichlet spectrum of the disc of radius `r`: `(j_{k,n} / r)^2`.
pub fn disc_spectrum(r: f64, j_max: usize) -> Result<Spectrum> {
    if !(r > 0.0) {
        return Err(Error::Precondition(format!("disc radius must be positive, got {r}")));
    }
    let zeros_below = |t: f64| -> Vec<(u32, Vec<f64>)> {
        let limit = r * t.sqrt();
        let mut out = Vec::new();
        let mut k = 0u32;
        while (k as f64) < limit {
            let z = bessel_zeros(k, usize::MAX, limit);
            if z.is_empty() {
                break;
            }
            out.push((k, z));
            k += 1;
        }
        out
    };
    let count = |t: f64| -> usize {
        zeros_below(t)
            .iter()
            .map(|(k, z)| if *k == 0 { z.len() } else { 2 * z.len() })
            .sum()
    };
    let t = grow_threshold(
        4.0 * j_max as f64 / (r * r) + (bessel_zero(0, 1) / r).powi(2),
        j_max,
        count,
    );
    let mut entries = Vec::new();
    for (k, zeros) in zeros_below(t) {
        for (i, z) in zeros.into_iter().enumerate() {
            entries.push(SpectrumEntry {
                value: (z / r).powi(2),
                k,
                n: i as u32 + 1,
                multiplicity: if k == 0 { 1 } else { 2 },
            });
        }
    }
    Ok(Spectrum::from_entries(entries, j_max, PI * r * r))
}
