//! Seeded randomized trials for the comparison inequalities.
//!
//! Trial `i` of a run with seed `s` draws from its own ChaCha stream
//! `(s, i)`, so results do not depend on how trials are scheduled.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{
    check_annulus_comparison, check_confinement, length_bound, rectangle_counting_check,
    weyl_slope, BoundReport,
};
use crate::error::{Error, Result};
use crate::geometry::{reparametrize_constant_speed, Meridian, Point};
use crate::spectrum::cylinder_spectrum;

/// Largest mode and radial index compared in the annulus trials.
pub const ANNULUS_K_MAX: u32 = 5;
pub const ANNULUS_N_MAX: usize = 5;

/// Number of rectangle-union eigenvalue indices cycled through.
pub const RECT_J_MAX: usize = 50;

/// Sine modes and sample count of the random smooth curves.
const WAVE_MODES: usize = 4;
const WAVE_SAMPLES: usize = 400;
const MAX_SLOPE: f64 = 0.9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Lemma {
    AnnulusComparison,
    Confinement,
    LengthBound,
    RectangleCounting,
    Weyl,
}

impl Lemma {
    pub fn name(self) -> &'static str {
        match self {
            Lemma::AnnulusComparison => "lemma31",
            Lemma::Confinement => "lemma32",
            Lemma::LengthBound => "lemma33",
            Lemma::RectangleCounting => "lemma43",
            Lemma::Weyl => "weyl",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "lemma31" => Lemma::AnnulusComparison,
            "lemma32" => Lemma::Confinement,
            "lemma33" => Lemma::LengthBound,
            "lemma43" => Lemma::RectangleCounting,
            "weyl" => Lemma::Weyl,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialReport {
    pub trial: u64,
    pub report: BoundReport,
}

/// Generator for trial `trial` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Samples of a random smooth profile `sum a_k sin(k pi t)` on `[0, 1]`.
fn random_wave(rng: &mut impl Rng, amplitude: f64, samples: usize) -> Vec<f64> {
    let coef: Vec<f64> = (1..=WAVE_MODES)
        .map(|k| rng.gen_range(-amplitude..=amplitude) / k as f64)
        .collect();
    (0..=samples)
        .map(|i| {
            let t = i as f64 / samples as f64;
            coef.iter()
                .enumerate()
                .map(|(k, a)| a * ((k + 1) as f64 * PI * t).sin())
                .sum()
        })
        .collect()
}

fn max_slope(v: &[f64], du: f64) -> f64 {
    v.windows(2).fold(0.0, |acc, w| acc.max((w[1] - w[0]).abs() / du))
}

/// Random smooth graph `x(y)` whose radius spans exactly `[x_lo, x_hi]`,
/// resampled at constant speed. The slope stays below `MAX_SLOPE`, so the
/// distance from any point of the curve grows along it.
pub fn random_band_meridian(rng: &mut impl Rng, x_lo: f64, x_hi: f64, mesh: usize) -> Result<Meridian> {
    let phase = rng.gen_range(0.0..1.0);
    let wave: Vec<f64> = random_wave(rng, 1.0, WAVE_SAMPLES)
        .iter()
        .enumerate()
        .map(|(i, w)| w + (2.0 * PI * (i as f64 / WAVE_SAMPLES as f64 + phase)).sin())
        .collect();
    let (lo, hi) = wave
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &w| (a.min(w), b.max(w)));
    let x: Vec<f64> = wave
        .iter()
        .map(|w| x_lo + (x_hi - x_lo) * (w - lo) / (hi - lo))
        .collect();
    let steepest = max_slope(&x, 1.0 / WAVE_SAMPLES as f64);
    let rise = rng.gen_range(1.0..2.0) * steepest / MAX_SLOPE;
    let raw: Vec<Point> = x
        .iter()
        .enumerate()
        .map(|(i, &x)| Point::new(x, rise * i as f64 / WAVE_SAMPLES as f64))
        .collect();
    reparametrize_constant_speed(&raw, mesh)
}

/// Random smooth curve from `(r1, 0)` to `(r2, h)`: a graph over the chord
/// with slope below `MAX_SLOPE`, shrunk if needed to keep `x >= x_floor`.
pub fn random_spanning_meridian(
    rng: &mut impl Rng,
    (r1, r2, h): (f64, f64, f64),
    x_floor: f64,
    mesh: usize,
) -> Result<Meridian> {
    let (p, q) = (Point::new(r1, 0.0), Point::new(r2, h));
    let chord = p.dist(q);
    let (ex, ey) = ((q.x - p.x) / chord, (q.y - p.y) / chord);
    let mut v = random_wave(rng, 1.0, WAVE_SAMPLES);
    let steepest = max_slope(&v, chord / WAVE_SAMPLES as f64);
    let mut scale = if steepest > 0.0 {
        rng.gen_range(0.2..1.0) * MAX_SLOPE / steepest
    } else {
        0.0
    };
    let lowest = v
        .iter()
        .enumerate()
        .map(|(i, w)| {
            let t = i as f64 / WAVE_SAMPLES as f64;
            (p.x + t * (q.x - p.x), -ey * w)
        })
        .filter(|(_, dx)| *dx < 0.0)
        .map(|(base, dx)| (base - x_floor) / -dx)
        .fold(f64::INFINITY, f64::min);
    scale = scale.min(0.99 * lowest);
    for w in v.iter_mut() {
        *w *= scale;
    }
    let raw: Vec<Point> = v
        .iter()
        .enumerate()
        .map(|(i, w)| {
            let t = i as f64 / WAVE_SAMPLES as f64;
            Point::new(p.x + t * (q.x - p.x) - ey * w, p.y + t * (q.y - p.y) + ex * w)
        })
        .collect();
    reparametrize_constant_speed(&raw, mesh)
}

fn random_rectangles(rng: &mut impl Rng) -> Vec<(f64, f64)> {
    let parts = rng.gen_range(1..=5);
    (0..parts)
        .map(|_| (rng.gen_range(0.2..3.0), rng.gen_range(0.2..3.0)))
        .collect()
}

/// Reports produced by a single trial.
pub fn run_trial(lemma: Lemma, seed: u64, trial: u64, mesh: usize) -> Result<Vec<BoundReport>> {
    let mut rng = trial_rng(seed, trial);
    match lemma {
        Lemma::AnnulusComparison => {
            let m = random_band_meridian(&mut rng, 1.0, 2.0, mesh)?;
            check_annulus_comparison(&m, ANNULUS_K_MAX, ANNULUS_N_MAX, mesh)
        }
        Lemma::Confinement => {
            let r1 = rng.gen_range(1.0..2.0);
            let r2 = rng.gen_range(1.0..2.0);
            let h = rng.gen_range(0.2..1.5);
            let a = rng.gen_range(0.3..0.9) * f64::min(r1, r2);
            let b = rng.gen_range(1.1..2.5) * f64::max(r1, r2);
            let j = rng.gen_range(1..=8);
            let m = random_spanning_meridian(&mut rng, (r1, r2, h), 0.5 * a, mesh)?;
            let (inner, outer) = check_confinement(&m, j, a, b, mesh)?;
            Ok(vec![inner, outer])
        }
        Lemma::LengthBound => {
            let r1 = rng.gen_range(0.5..2.5);
            let r2 = rng.gen_range(0.5..2.5);
            let h = rng.gen_range(0.1..1.5);
            let j = rng.gen_range(1..=10);
            let m = random_spanning_meridian(&mut rng, (r1, r2, h), 0.3, mesh)?;
            Ok(vec![length_bound(&m, j, mesh)?])
        }
        Lemma::RectangleCounting => {
            let parts = random_rectangles(&mut rng);
            let j = (trial as usize % RECT_J_MAX) + 1;
            Ok(vec![rectangle_counting_check(&parts, j)?])
        }
        Lemma::Weyl => {
            let a = rng.gen_range(0.5..2.0);
            let len = rng.gen_range(0.5..2.0);
            let fit = weyl_slope(&cylinder_spectrum(a, len, 2000)?, 500..=2000)?;
            Ok(vec![BoundReport::new(
                "weyl",
                fit.rel_error,
                0.05,
                format!("a={a} len={len} slope={} target={}", fit.slope, fit.target),
            )])
        }
    }
}

/// Runs trials `0..trials` in parallel and returns reports in trial order.
pub fn run_suite(lemma: Lemma, seed: u64, trials: u64, mesh: usize) -> Result<Vec<TrialReport>> {
    if mesh < 4 {
        return Err(Error::Precondition(format!("mesh must be >= 4, got {mesh}")));
    }
    let per_trial: Vec<Result<Vec<BoundReport>>> = (0..trials)
        .into_par_iter()
        .map(|t| run_trial(lemma, seed, t, mesh))
        .collect();
    let mut out = Vec::new();
    for (trial, reports) in per_trial.into_iter().enumerate() {
        for report in reports? {
            out.push(TrialReport {
                trial: trial as u64,
                report,
            });
        }
    }
    Ok(out)
}

/// Every rectangle-union trial checked at all `j` in `1..=j_max`.
pub fn rectangle_sweep(seed: u64, trials: u64, j_max: usize) -> Result<Vec<TrialReport>> {
    let per_trial: Vec<Result<Vec<BoundReport>>> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let parts = random_rectangles(&mut trial_rng(seed, t));
            (1..=j_max)
                .map(|j| rectangle_counting_check(&parts, j))
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    for (trial, reports) in per_trial.into_iter().enumerate() {
        for report in reports? {
            out.push(TrialReport {
                trial: trial as u64,
                report,
            });
        }
    }
    Ok(out)
}
