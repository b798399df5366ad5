//! Command-line front end.
//!
//! Every subcommand writes a `#` comment line with its resolved settings
//! before any CSV rows. The `--threads` flag is left out of that line so the
//! files do not depend on it.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bounds::suite::{run_suite, Lemma};
use crate::catenoid::{classify_minimizer, solve_catenoids, Branch, TIE_TOL};
use crate::error::{Error, Result};
use crate::fmt17;
use crate::geometry::{
    area, length, make_catenary, reparametrize_with_x_min, BoundaryCircles, CurveFile, Meridian,
    X_MIN_FACTOR,
};
use crate::optimizer::{convergence_experiment, maximize_eigenvalue, OptimizerConfig};
use crate::spectrum::merged_spectrum;

#[derive(Debug, Parser)]
#[command(name = "revspec", version, about = "Laplacian spectra of surfaces of revolution")]
struct Cli {
    /// Worker threads (default: all cores). Results do not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Merged spectrum of a meridian read from a curve file.
    Spectrum(SpectrumArgs),
    /// Catenoids spanning two coaxial circles and the area minimizer.
    Catenoid(CatenoidArgs),
    /// Maximize the j-th eigenvalue over meridians between two circles.
    Maximize(MaximizeArgs),
    /// Maximize for several j and compare with the catenoid.
    Converge(ConvergeArgs),
    /// Run seeded randomized checks of one inequality.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
struct SpectrumArgs {
    #[arg(long)]
    curve: PathBuf,
    #[arg(long)]
    j: usize,
    #[arg(long, default_value_t = 4000)]
    mesh: usize,
    /// Resample the curve at constant speed with this many chords first.
    #[arg(long)]
    resample: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct CirclesArgs {
    #[arg(long, allow_negative_numbers = true)]
    r1: f64,
    #[arg(long, allow_negative_numbers = true)]
    r2: f64,
    #[arg(long, allow_negative_numbers = true)]
    h: f64,
}

impl CirclesArgs {
    fn circles(&self) -> Result<BoundaryCircles> {
        BoundaryCircles::new(self.r1, self.r2, self.h)
    }

    fn header(&self) -> String {
        format!("r1={} r2={} h={}", fmt17(self.r1), fmt17(self.r2), fmt17(self.h))
    }
}

#[derive(Debug, Args)]
struct CatenoidArgs {
    #[command(flatten)]
    circles: CirclesArgs,
    /// Write the outer catenary meridian to this curve file.
    #[arg(long)]
    emit_meridian: Option<PathBuf>,
    #[arg(long, default_value_t = 1000)]
    nodes: usize,
}

#[derive(Debug, Args)]
struct OptimizerArgs {
    #[arg(long, default_value_t = 12)]
    control_points: usize,
    #[arg(long, default_value_t = 4)]
    restarts: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 300)]
    max_iters: usize,
    #[arg(long, default_value_t = 1000)]
    mesh_inner: usize,
    #[arg(long, default_value_t = 8000)]
    mesh_final: usize,
    #[arg(long, default_value_t = 0.1)]
    step_init: f64,
    #[arg(long, default_value_t = 1e-4)]
    step_min: f64,
}

impl OptimizerArgs {
    fn config(&self) -> OptimizerConfig {
        OptimizerConfig {
            control_points: self.control_points,
            restarts: self.restarts,
            max_iters: self.max_iters,
            mesh_inner: self.mesh_inner,
            mesh_final: self.mesh_final,
            step_init: self.step_init,
            step_min: self.step_min,
            seed: self.seed,
            x_min: None,
        }
    }

    fn header(&self) -> String {
        format!(
            "control_points={} restarts={} seed={} max_iters={} mesh_inner={} mesh_final={} step_init={} step_min={}",
            self.control_points,
            self.restarts,
            self.seed,
            self.max_iters,
            self.mesh_inner,
            self.mesh_final,
            fmt17(self.step_init),
            fmt17(self.step_min)
        )
    }
}

#[derive(Debug, Args)]
struct MaximizeArgs {
    #[command(flatten)]
    circles: CirclesArgs,
    #[arg(long)]
    j: usize,
    #[command(flatten)]
    opt: OptimizerArgs,
    /// Output directory for meridian.json, spectrum.csv and trace.csv.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct ConvergeArgs {
    #[command(flatten)]
    circles: CirclesArgs,
    #[arg(long, value_delimiter = ',', required = true)]
    j_list: Vec<usize>,
    #[command(flatten)]
    opt: OptimizerArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum LemmaArg {
    Lemma31,
    Lemma32,
    Lemma33,
    Lemma43,
    Weyl,
}

impl From<LemmaArg> for Lemma {
    fn from(l: LemmaArg) -> Self {
        match l {
            LemmaArg::Lemma31 => Lemma::AnnulusComparison,
            LemmaArg::Lemma32 => Lemma::Confinement,
            LemmaArg::Lemma33 => Lemma::LengthBound,
            LemmaArg::Lemma43 => Lemma::RectangleCounting,
            LemmaArg::Weyl => Lemma::Weyl,
        }
    }
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(value_enum)]
    lemma: LemmaArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 100)]
    trials: u64,
    #[arg(long, default_value_t = 1000)]
    mesh: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Parses `argv` (including the program name), runs the subcommand and
/// returns the process exit code: 0 on success, 1 for invalid input, 2 for a
/// numerical failure.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    let outcome = match cli.threads {
        Some(0) => Err(Error::Precondition("--threads must be >= 1".into())),
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| dispatch(&cli.command)),
            Err(e) => Err(Error::Precondition(format!("cannot start {n} threads: {e}"))),
        },
        None => dispatch(&cli.command),
    };
    match outcome {
        Ok(()) => 0,
        Err(e) if e.is_user_error() => {
            eprintln!("error: {}", describe(&e));
            1
        }
        Err(e) => {
            eprintln!("error: {e}");
            eprintln!("while running: {:#?}", cli.command);
            2
        }
    }
}

fn describe(e: &Error) -> String {
    match e {
        Error::Io { path, source } if source.kind() == std::io::ErrorKind::NotFound => {
            format!("file not found: {path}")
        }
        other => other.to_string(),
    }
}

fn dispatch(cmd: &Command) -> Result<()> {
    match cmd {
        Command::Spectrum(a) => spectrum(a),
        Command::Catenoid(a) => catenoid(a),
        Command::Maximize(a) => maximize(a),
        Command::Converge(a) => converge(a),
        Command::Verify(a) => verify(a),
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => write_file(path, text),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|source| Error::Io {
                    path: "<stdout>".into(),
                    source,
                })
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

fn load_meridian(path: &Path, resample: Option<usize>) -> Result<Meridian> {
    let file = CurveFile::read(path)?;
    let raw = file.raw_points();
    let x_min = file.x_min.unwrap_or_else(|| match (raw.first(), raw.last()) {
        (Some(a), Some(b)) => X_MIN_FACTOR * a.x.min(b.x),
        _ => 0.0,
    });
    match resample {
        Some(m) => reparametrize_with_x_min(&raw, m, x_min),
        None => Meridian::from_points(raw, x_min),
    }
}

fn spectrum(a: &SpectrumArgs) -> Result<()> {
    if a.j == 0 {
        return Err(Error::Precondition("--j must be >= 1".into()));
    }
    let m = load_meridian(&a.curve, a.resample)?;
    let s = merged_spectrum(&m, a.j, a.mesh)?;
    let mut csv = format!(
        "# spectrum curve={} j={} mesh={} resample={}\nj,lambda,k,n,multiplicity\n",
        a.curve.display(),
        a.j,
        a.mesh,
        a.resample.map_or("none".to_string(), |r| r.to_string())
    );
    for r in s.rows() {
        let _ = writeln!(csv, "{},{},{},{},{}", r.j, fmt17(r.value), r.k, r.n, r.multiplicity);
    }
    emit(a.out.as_deref(), &csv)
}

fn catenoid(a: &CatenoidArgs) -> Result<()> {
    let circles = a.circles.circles()?;
    let class = classify_minimizer(&circles, TIE_TOL)?;
    let mut text = format!("# catenoid {}\n", a.circles.header());
    let _ = writeln!(text, "classification: {}", class.kind);
    let _ = writeln!(text, "discs_area: {}", fmt17(class.discs_area));
    let solutions = if circles.is_coplanar() {
        Vec::new()
    } else {
        solve_catenoids(&circles)?
    };
    let _ = writeln!(text, "solutions: {}", solutions.len());
    for s in &solutions {
        let branch = match s.branch {
            Branch::Outer => "outer",
            Branch::Inner => "inner",
        };
        let _ = writeln!(
            text,
            "- branch: {branch}\n  c: {}\n  y0: {}\n  area: {}",
            fmt17(s.c),
            fmt17(s.y0),
            fmt17(s.area)
        );
    }
    if let Some(path) = &a.emit_meridian {
        let outer = solutions
            .iter()
            .find(|s| s.branch == Branch::Outer)
            .ok_or_else(|| Error::NotApplicable("no catenoid spans these circles".into()))?;
        make_catenary(outer, &circles, a.nodes)?.write_curve(path)?;
        let _ = writeln!(text, "meridian: {}", path.display());
    }
    emit(None, &text)
}

fn maximize(a: &MaximizeArgs) -> Result<()> {
    let circles = a.circles.circles()?;
    let cfg = a.opt.config();
    cfg.validate()?;
    let res = maximize_eigenvalue(&circles, a.j, &cfg)?;
    std::fs::create_dir_all(&a.out).map_err(|source| Error::Io {
        path: a.out.display().to_string(),
        source,
    })?;
    let header = format!("# maximize {} j={} {}\n", a.circles.header(), a.j, a.opt.header());

    res.meridian.write_curve(&a.out.join("meridian.json"))?;

    let s = merged_spectrum(&res.meridian, a.j, cfg.mesh_final)?;
    let mut csv = header.clone();
    csv.push_str("j,lambda,k,n,multiplicity\n");
    for r in s.rows() {
        let _ = writeln!(csv, "{},{},{},{},{}", r.j, fmt17(r.value), r.k, r.n, r.multiplicity);
    }
    write_file(&a.out.join("spectrum.csv"), &csv)?;

    let mut csv = header;
    csv.push_str("iteration,best_value\n");
    for (it, v) in &res.trace {
        let _ = writeln!(csv, "{it},{}", fmt17(*v));
    }
    write_file(&a.out.join("trace.csv"), &csv)?;

    let mut text = String::new();
    let _ = writeln!(text, "lambda_j: {}", fmt17(res.lambda_j));
    let _ = writeln!(text, "lambda_j_inner_mesh: {}", fmt17(res.lambda_inner));
    let _ = writeln!(text, "area: {}", fmt17(area(&res.meridian)));
    let _ = writeln!(text, "length: {}", fmt17(length(&res.meridian)));
    let _ = writeln!(text, "iterations: {}", res.iterations);
    let restarts: Vec<String> = res.restart_values.iter().map(|v| fmt17(*v)).collect();
    let _ = writeln!(text, "restart_values: [{}]", restarts.join(", "));
    let _ = writeln!(text, "discs_lambda_j: {}", fmt17(res.discs_lambda));
    let _ = writeln!(text, "beats_discs: {}", res.beats_discs);
    let _ = writeln!(text, "mesh_suspect: {}", res.mesh_suspect);
    let _ = writeln!(text, "length_bound_satisfied: {}", res.length_check.satisfied);
    let _ = writeln!(text, "self_crossings: {}", res.self_crossings);
    emit(None, &text)
}

fn converge(a: &ConvergeArgs) -> Result<()> {
    let circles = a.circles.circles()?;
    let cfg = a.opt.config();
    cfg.validate()?;
    let table = convergence_experiment(&circles, &a.j_list, &cfg)?;
    let list: Vec<String> = a.j_list.iter().map(|j| j.to_string()).collect();
    let mut csv = format!(
        "# converge {} j_list={} {}\n",
        a.circles.header(),
        list.join(","),
        a.opt.header()
    );
    csv.push_str("j,lambda_j,lambda_j/j,area,length,hausdorff_to_catenoid\n");
    for r in &table.rows {
        let _ = writeln!(
            csv,
            "{},{},{},{},{},{}",
            r.j,
            fmt17(r.lambda_j),
            fmt17(r.lambda_over_j),
            fmt17(r.area),
            fmt17(r.length),
            fmt17(r.hausdorff_to_catenoid)
        );
        if r.mesh_suspect {
            eprintln!("warning: j={} changed by more than 0.1% between meshes", r.j);
        }
        if !r.beats_discs {
            eprintln!("warning: j={} did not exceed the eigenvalue of the two discs", r.j);
        }
    }
    emit(a.out.as_deref(), &csv)
}

fn verify(a: &VerifyArgs) -> Result<()> {
    let lemma: Lemma = a.lemma.into();
    let reports = run_suite(lemma, a.seed, a.trials, a.mesh)?;
    let mut csv = format!(
        "# verify {} seed={} trials={} mesh={}\nname,lhs,rhs,satisfied,seed,trial\n",
        lemma.name(),
        a.seed,
        a.trials,
        a.mesh
    );
    let mut violated = 0;
    for t in &reports {
        let r = &t.report;
        violated += usize::from(!r.satisfied);
        let _ = writeln!(
            csv,
            "{},{},{},{},{},{}",
            r.name,
            fmt17(r.lhs),
            fmt17(r.rhs),
            r.satisfied,
            a.seed,
            t.trial
        );
    }
    emit(a.out.as_deref(), &csv)?;
    eprintln!("{}: {} reports, {} violated", lemma.name(), reports.len(), violated);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_flag_is_a_usage_error() {
        assert_eq!(run(["revspec", "catenoid", "--r1", "1", "--bogus"]), 1);
        assert_eq!(run(["revspec"]), 1);
    }

    #[test]
    fn invalid_circles_exit_one() {
        assert_eq!(run(["revspec", "catenoid", "--r1", "-1", "--r2", "1", "--h", "1"]), 1);
    }

    #[test]
    fn missing_curve_exits_one() {
        let code = run([
            "revspec", "spectrum", "--curve", "/nonexistent/missing.json", "--j", "3",
        ]);
        assert_eq!(code, 1);
    }

    #[test]
    fn lemma_arguments_map_to_names() {
        for (arg, name) in [
            (LemmaArg::Lemma31, "lemma31"),
            (LemmaArg::Lemma32, "lemma32"),
            (LemmaArg::Lemma33, "lemma33"),
            (LemmaArg::Lemma43, "lemma43"),
            (LemmaArg::Weyl, "weyl"),
        ] {
            assert_eq!(Lemma::from(arg).name(), name);
        }
    }
}
