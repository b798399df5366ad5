//! Eigenvalue comparison inequalities
//!
//! Runs each randomized inequality suite for a handful of seeded trials and
//! prints the tightest report of each, then checks one curve by hand.
//!
//! ```bash
//! cargo run --release --example bounds
//! ```

use revspec::bounds::suite::{random_spanning_meridian, run_suite, trial_rng, Lemma};
use revspec::bounds::{check_confinement, length_bound};

fn main() -> revspec::Result<()> {
    let seed = 42;
    for (lemma, trials, mesh) in [
        (Lemma::AnnulusComparison, 5, 2000),
        (Lemma::Confinement, 20, 2000),
        (Lemma::LengthBound, 20, 2000),
        (Lemma::RectangleCounting, 200, 4),
        (Lemma::Weyl, 5, 4),
    ] {
        let reports = run_suite(lemma, seed, trials, mesh)?;
        let violated = reports.iter().filter(|t| !t.report.satisfied).count();
        let tightest = reports
            .iter()
            .max_by(|a, b| {
                let gap = |t: &&revspec::bounds::suite::TrialReport| t.report.excess() / t.report.rhs.abs();
                gap(a).total_cmp(&gap(b))
            })
            .expect("at least one report");
        println!(
            "{:<8} {:>5} reports  {violated} violated  tightest: {} <= {} (trial {})",
            lemma.name(),
            reports.len(),
            tightest.report.lhs,
            tightest.report.rhs,
            tightest.trial
        );
    }

    let m = random_spanning_meridian(&mut trial_rng(seed, 0), (1.0, 1.4, 0.8), 0.4, 2000)?;
    println!("\nOne curve: F ranges over [{:.4}, {:.4}]", m.min_x(), m.max_x());
    for j in [1, 4, 9] {
        let r = length_bound(&m, j, 2000)?;
        println!("  length bound j={j}: {:.6} <= {:.6}", r.lhs, r.rhs);
    }
    let (inner, outer) = check_confinement(&m, 3, 0.9 * m.min_x().min(1.0), 1.1 * m.max_x().max(1.4), 2000)?;
    println!("  confinement: inner {} outer {}", inner.satisfied, outer.satisfied);
    Ok(())
}
