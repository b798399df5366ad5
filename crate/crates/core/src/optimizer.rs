//! Derivative-free maximization of `λ_j` over meridians with fixed endpoints.
//!
//! Decision variables are the interior vertices of a control polygon from `p`
//! to `q`. A candidate is projected onto `x >= x_min`, resampled at constant
//! speed and scored by `λ_j` of its merged spectrum. The search polls every
//! coordinate move `±step` from the current point, evaluates the polls in
//! parallel, and then decides in a fixed order, so the trajectory is the same
//! for every thread count.

use rand::Rng;
use rayon::prelude::*;

use crate::bounds::{length_bound, suite::trial_rng, BoundReport};
use crate::catenoid::{classify_minimizer, outer_catenoid, CatenoidSolution, MinimizerKind, TIE_TOL};
use crate::error::{Error, Result};
use crate::geometry::{
    area, hausdorff_distance, length, make_catenary, reparametrize_with_x_min, BoundaryCircles,
    Meridian, Point,
};
use crate::spectrum::{disc_spectrum, merged_spectrum, union_spectrum};

/// Relative change between inner and final mesh above which a result is
/// flagged `mesh_suspect`.
pub const MESH_CONSISTENCY_TOL: f64 = 1e-3;

/// Sine modes and relative amplitude of the random starting curves.
const PERTURBATION_MODES: usize = 3;
const PERTURBATION_SCALE: f64 = 0.15;

/// Step multiplier after an accepted move.
const STEP_GROWTH: f64 = 1.5;

/// Mesh used when sampling a catenary into control points.
const SEED_SAMPLE_NODES: usize = 2000;

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizerConfig {
    pub control_points: usize,
    pub restarts: usize,
    pub max_iters: usize,
    pub mesh_inner: usize,
    pub mesh_final: usize,
    pub step_init: f64,
    pub step_min: f64,
    pub seed: u64,
    /// Exclusion radius; `None` uses `1e-6 * min(r1, r2)`.
    pub x_min: Option<f64>,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        OptimizerConfig {
            control_points: 12,
            restarts: 4,
            max_iters: 300,
            mesh_inner: 1000,
            mesh_final: 8000,
            step_init: 0.1,
            step_min: 1e-4,
            seed: 0,
            x_min: None,
        }
    }
}

impl OptimizerConfig {
    pub fn validate(&self) -> Result<()> {
        let fail = |m: String| Err(Error::Precondition(m));
        if self.control_points < 1 {
            return fail("control_points must be >= 1".into());
        }
        if self.restarts < 1 {
            return fail("restarts must be >= 1".into());
        }
        if !(self.step_min > 0.0 && self.step_min < self.step_init) {
            return fail(format!(
                "need 0 < step_min < step_init (got {} and {})",
                self.step_min, self.step_init
            ));
        }
        if self.mesh_inner < 4 || self.mesh_final < self.mesh_inner {
            return fail(format!(
                "need 4 <= mesh_inner <= mesh_final (got {} and {})",
                self.mesh_inner, self.mesh_final
            ));
        }
        if let Some(x) = self.x_min {
            if !(x > 0.0) {
                return fail(format!("x_min must be positive, got {x}"));
            }
        }
        Ok(())
    }
}

/// Score of one control polygon.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluation {
    pub value: f64,
    pub length: f64,
}

impl Evaluation {
    const INFEASIBLE: Evaluation = Evaluation {
        value: f64::NEG_INFINITY,
        length: f64::INFINITY,
    };

    /// Larger `λ_j` wins; equal values prefer the shorter curve.
    pub fn beats(&self, other: &Evaluation) -> bool {
        self.value > other.value || (self.value == other.value && self.length < other.length)
    }
}

/// `λ_j` of the meridian through a control polygon.
#[derive(Debug, Clone)]
pub struct Objective {
    pub circles: BoundaryCircles,
    pub j: usize,
    pub mesh: usize,
    pub x_min: f64,
}

impl Objective {
    pub fn new(circles: BoundaryCircles, j: usize, mesh: usize, x_min: f64) -> Self {
        Objective {
            circles,
            j,
            mesh,
            x_min,
        }
    }

    /// Control polygon `p, (x_i, y_i)..., q` with `x` clamped to `x_min`.
    pub fn polygon(&self, z: &[f64]) -> Vec<Point> {
        let mut raw = Vec::with_capacity(z.len() / 2 + 2);
        raw.push(self.circles.p());
        for c in z.chunks_exact(2) {
            raw.push(Point::new(c[0].max(self.x_min), c[1]));
        }
        raw.push(self.circles.q());
        raw
    }

    pub fn meridian(&self, z: &[f64], nodes: usize) -> Result<Meridian> {
        reparametrize_with_x_min(&self.polygon(z), nodes, self.x_min)
    }

    pub fn try_evaluate(&self, z: &[f64]) -> Result<Evaluation> {
        let m = self.meridian(z, self.mesh)?;
        let value = merged_spectrum(&m, self.j, self.mesh)?
            .value(self.j)
            .ok_or_else(|| Error::Numerical("spectrum shorter than j".into()))?;
        Ok(Evaluation {
            value,
            length: length(&m),
        })
    }

    /// Infeasible or failed candidates score `-inf`.
    pub fn evaluate(&self, z: &[f64]) -> Evaluation {
        self.try_evaluate(z).unwrap_or(Evaluation::INFEASIBLE)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RestartOutcome {
    pub control: Vec<f64>,
    pub initial: Evaluation,
    pub best: Evaluation,
    pub iterations: usize,
    pub trace: Vec<(usize, f64)>,
}

#[derive(Debug, Clone)]
pub struct OptimizerResult {
    pub meridian: Meridian,
    /// `λ_j` of `meridian` at the final mesh.
    pub lambda_j: f64,
    /// `λ_j` of the same control polygon at the inner mesh.
    pub lambda_inner: f64,
    pub j: usize,
    pub iterations: usize,
    /// Best value after each iteration of the winning restart.
    pub trace: Vec<(usize, f64)>,
    /// Best inner-mesh value of every restart.
    pub restart_values: Vec<f64>,
    /// Inner-mesh value of every starting curve.
    pub initial_values: Vec<f64>,
    pub control: Vec<f64>,
    pub mesh_suspect: bool,
    /// `λ_j` of the two flat discs bounded by the circles.
    pub discs_lambda: f64,
    pub beats_discs: bool,
    pub length_check: BoundReport,
    pub self_crossings: usize,
}

/// Control points evenly spaced along the chord `p -> q`.
pub fn chord_control(circles: &BoundaryCircles, n: usize) -> Vec<f64> {
    let (p, q) = (circles.p(), circles.q());
    (1..=n)
        .flat_map(|i| {
            let t = i as f64 / (n + 1) as f64;
            [p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)]
        })
        .collect()
}

/// Control points at equal arc length along the catenary.
pub fn catenary_control(
    sol: &CatenoidSolution,
    circles: &BoundaryCircles,
    n: usize,
) -> Result<Vec<f64>> {
    let m = make_catenary(sol, circles, SEED_SAMPLE_NODES.max(4 * (n + 1)))?;
    let pts = m.points();
    let segs = m.segments();
    Ok((1..=n)
        .flat_map(|i| {
            let s = i as f64 / (n + 1) as f64 * segs as f64;
            let k = (s.floor() as usize).min(segs - 1);
            let f = s - k as f64;
            let (a, b) = (pts[k], pts[k + 1]);
            [a.x + f * (b.x - a.x), a.y + f * (b.y - a.y)]
        })
        .collect())
}

fn project(z: &mut [f64], x_min: f64) {
    for c in z.chunks_exact_mut(2) {
        c[0] = c[0].max(x_min);
    }
}

/// Pattern search from one starting polygon.
/// Poll directions: each coordinate on its own, then smooth sine-shaped
/// deformations of all x or all y coordinates at once. The coordinate moves
/// alone stall when neighbouring control points bunch up into a corner that
/// only a joint move can flatten.
pub fn poll_directions(control_points: usize) -> Vec<Vec<f64>> {
    let dim = 2 * control_points;
    let mut dirs = Vec::with_capacity(2 * dim);
    for i in 0..dim {
        let mut d = vec![0.0; dim];
        d[i] = 1.0;
        dirs.push(d);
    }
    for axis in 0..2 {
        for k in 1..=control_points {
            let mut d = vec![0.0; dim];
            for i in 0..control_points {
                let t = (i + 1) as f64 / (control_points + 1) as f64;
                d[2 * i + axis] = (k as f64 * std::f64::consts::PI * t).sin();
            }
            dirs.push(d);
        }
    }
    dirs
}

pub fn pattern_search(obj: &Objective, start: Vec<f64>, cfg: &OptimizerConfig) -> RestartOutcome {
    let mut z = start;
    project(&mut z, obj.x_min);
    let initial = obj.evaluate(&z);
    let mut best = initial;
    let dirs = poll_directions(z.len() / 2);
    // One step per direction: x and y of a control point often need very
    // different resolutions, and a shared step stalls the finer one.
    let mut steps = vec![cfg.step_init; dirs.len()];
    let mut trace = vec![(0, best.value)];
    let mut iterations = 0;
    while iterations < cfg.max_iters && steps.iter().any(|&s| s >= cfg.step_min) {
        iterations += 1;
        let polls: Vec<(usize, f64)> = (0..dirs.len())
            .filter(|&i| steps[i] >= cfg.step_min)
            .flat_map(|i| [(i, steps[i]), (i, -steps[i])])
            .collect();
        let moved = |base: &[f64], i: usize, delta: f64| -> Vec<f64> {
            let mut c: Vec<f64> = base.iter().zip(&dirs[i]).map(|(b, d)| b + delta * d).collect();
            project(&mut c, obj.x_min);
            c
        };
        let evals: Vec<Option<(Vec<f64>, Evaluation)>> = polls
            .par_iter()
            .map(|&(i, delta)| {
                let c = moved(&z, i, delta);
                if c == z {
                    return None;
                }
                let e = obj.evaluate(&c);
                Some((c, e))
            })
            .collect();

        // Best single move, first in poll order among equals.
        let mut choice: Option<(Vec<f64>, Evaluation)> = None;
        for (c, e) in evals.iter().flatten() {
            let current = choice.as_ref().map(|(_, ce)| ce).unwrap_or(&best);
            if e.beats(current) {
                choice = Some((c.clone(), *e));
            }
        }
        // Combined move: the better improving sign of every coordinate
        // direction, summed.
        let mut combined = z.clone();
        let mut improved = vec![false; dirs.len()];
        let mut coordinate_moves = 0;
        for (pair, results) in polls.chunks_exact(2).zip(evals.chunks_exact(2)) {
            let (i, delta) = pair[0];
            let plus = results[0].as_ref().filter(|(_, e)| e.beats(&best));
            let minus = results[1].as_ref().filter(|(_, e)| e.beats(&best));
            let pick = match (plus, minus) {
                (Some(a), Some(b)) if b.1.beats(&a.1) => Some(-delta),
                (Some(_), _) => Some(delta),
                (None, Some(_)) => Some(-delta),
                (None, None) => None,
            };
            if let Some(d) = pick {
                improved[i] = true;
                if i < z.len() {
                    combined[i] += d;
                    coordinate_moves += 1;
                }
            }
        }
        if coordinate_moves > 1 {
            project(&mut combined, obj.x_min);
            let e = obj.evaluate(&combined);
            let current = choice.as_ref().map(|(_, ce)| ce).unwrap_or(&best);
            if e.beats(current) {
                choice = Some((combined, e));
            }
        }
        if let Some((c, e)) = choice {
            z = c;
            best = e;
        }
        for (s, up) in steps.iter_mut().zip(&improved) {
            *s = if *up {
                (*s * STEP_GROWTH).min(cfg.step_init)
            } else {
                *s * 0.5
            };
        }
        trace.push((iterations, best.value));
    }
    RestartOutcome {
        control: z,
        initial,
        best,
        iterations,
        trace,
    }
}

/// Starting polygon for restart `r`: the chord, then the outer catenary when
/// one exists, then seeded perturbations of the chord.
pub fn initial_control(
    circles: &BoundaryCircles,
    cfg: &OptimizerConfig,
    catenoid: Option<&CatenoidSolution>,
    r: usize,
) -> Result<Vec<f64>> {
    let chord = chord_control(circles, cfg.control_points);
    if r == 0 {
        return Ok(chord);
    }
    if r == 1 {
        if let Some(sol) = catenoid {
            return catenary_control(sol, circles, cfg.control_points);
        }
    }
    // Smooth bump along the chord normal, a few sine modes with random
    // amplitudes, so the start stays a gentle graph over the chord.
    let mut rng = trial_rng(cfg.seed, r as u64);
    let (p, q) = (circles.p(), circles.q());
    let span = p.dist(q).max(1e-3 * circles.r1.max(circles.r2));
    let (nx, ny) = (-(q.y - p.y) / span, (q.x - p.x) / span);
    let amp: Vec<f64> = (1..=PERTURBATION_MODES)
        .map(|k| rng.gen_range(-1.0..=1.0) * PERTURBATION_SCALE * span / k as f64)
        .collect();
    let n = cfg.control_points;
    Ok(chord
        .chunks_exact(2)
        .enumerate()
        .flat_map(|(i, c)| {
            let t = (i + 1) as f64 / (n + 1) as f64;
            let v: f64 = amp
                .iter()
                .enumerate()
                .map(|(k, a)| a * ((k + 1) as f64 * std::f64::consts::PI * t).sin())
                .sum();
            [c[0] + v * nx, c[1] + v * ny]
        })
        .collect())
}

pub fn maximize_eigenvalue(
    circles: &BoundaryCircles,
    j: usize,
    cfg: &OptimizerConfig,
) -> Result<OptimizerResult> {
    if j == 0 {
        return Err(Error::Precondition("j must be >= 1".into()));
    }
    cfg.validate()?;
    let x_min = cfg.x_min.unwrap_or_else(|| circles.default_x_min());
    let catenoid = if circles.is_coplanar() {
        None
    } else {
        outer_catenoid(circles)?
    };
    let obj = Objective::new(*circles, j, cfg.mesh_inner, x_min);
    let mut outcomes = Vec::with_capacity(cfg.restarts);
    for r in 0..cfg.restarts {
        let start = initial_control(circles, cfg, catenoid.as_ref(), r)?;
        outcomes.push(pattern_search(&obj, start, cfg));
    }
    let winner = outcomes
        .iter()
        .enumerate()
        .fold(0, |w, (i, o)| if o.best.beats(&outcomes[w].best) { i } else { w });
    let best = &outcomes[winner];
    if !best.best.value.is_finite() {
        return Err(Error::Numerical("no restart produced a feasible curve".into()));
    }

    let final_obj = Objective::new(*circles, j, cfg.mesh_final, x_min);
    let meridian = final_obj.meridian(&best.control, cfg.mesh_final)?;
    let lambda_j = merged_spectrum(&meridian, j, cfg.mesh_final)?
        .value(j)
        .ok_or_else(|| Error::Numerical("final spectrum shorter than j".into()))?;
    let lambda_inner = best.best.value;
    let discs = union_spectrum(
        &[disc_spectrum(circles.r1, j)?, disc_spectrum(circles.r2, j)?],
        j,
    );
    let discs_lambda = discs
        .value(j)
        .ok_or_else(|| Error::Numerical("disc spectrum shorter than j".into()))?;
    let length_check = length_bound(&meridian, j, cfg.mesh_final)?;
    Ok(OptimizerResult {
        lambda_j,
        lambda_inner,
        j,
        iterations: best.iterations,
        trace: best.trace.clone(),
        restart_values: outcomes.iter().map(|o| o.best.value).collect(),
        initial_values: outcomes.iter().map(|o| o.initial.value).collect(),
        control: best.control.clone(),
        mesh_suspect: (lambda_inner - lambda_j).abs() / lambda_j > MESH_CONSISTENCY_TOL,
        discs_lambda,
        beats_discs: lambda_j > discs_lambda,
        length_check,
        self_crossings: meridian.self_crossings(),
        meridian,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceRow {
    pub j: usize,
    pub lambda_j: f64,
    pub lambda_over_j: f64,
    pub area: f64,
    pub length: f64,
    pub hausdorff_to_catenoid: f64,
    pub mesh_suspect: bool,
    pub beats_discs: bool,
}

#[derive(Debug, Clone)]
pub struct ConvergenceTable {
    pub catenoid: CatenoidSolution,
    pub rows: Vec<ConvergenceRow>,
}

/// Maximizes `λ_j` for each `j` and compares the maximizers with the outer
/// catenoid. Requires the catenoid to be the unique area minimizer.
pub fn convergence_experiment(
    circles: &BoundaryCircles,
    j_list: &[usize],
    cfg: &OptimizerConfig,
) -> Result<ConvergenceTable> {
    let class = classify_minimizer(circles, TIE_TOL)?;
    if class.kind != MinimizerKind::CatenoidUnique {
        return Err(Error::HypothesisNotMet(format!(
            "the area minimizer is {}, not a unique catenoid",
            class.kind
        )));
    }
    let catenoid = class
        .catenoid
        .ok_or_else(|| Error::Numerical("classified catenoid is missing".into()))?;
    let reference = make_catenary(&catenoid, circles, cfg.mesh_final)?;
    let mut rows = Vec::with_capacity(j_list.len());
    for &j in j_list {
        let res = maximize_eigenvalue(circles, j, cfg)?;
        rows.push(ConvergenceRow {
            j,
            lambda_j: res.lambda_j,
            lambda_over_j: res.lambda_j / j as f64,
            area: area(&res.meridian),
            length: length(&res.meridian),
            hausdorff_to_catenoid: hausdorff_distance(&res.meridian, &reference),
            mesh_suspect: res.mesh_suspect,
            beats_discs: res.beats_discs,
        });
    }
    Ok(ConvergenceTable { catenoid, rows })
}
