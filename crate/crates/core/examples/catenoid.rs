//! Catenoids between two coaxial rings
//!
//! Sweeps the separation of two unit rings and prints both catenoid
//! branches, the Goldschmidt pair of discs, and which surface has least area.
//!
//! ```bash
//! cargo run --release --example catenoid
//! ```

use revspec::catenoid::{
    classify_minimizer, critical_separation, goldschmidt_separation, solve_catenoids, Branch,
    TIE_TOL,
};
use revspec::geometry::BoundaryCircles;

fn main() -> revspec::Result<()> {
    let h_star = critical_separation(1.0, 1.0)?;
    let h_gold = goldschmidt_separation(1.0, 1.0)?;
    println!("critical separation h* = {h_star:.10}");
    println!("Goldschmidt transition = {h_gold:.10}\n");

    println!("h      outer c     outer area   inner area   discs area   minimizer");
    for i in 1..=14 {
        let h = 0.1 * i as f64;
        let circles = BoundaryCircles::new(1.0, 1.0, h)?;
        let sols = solve_catenoids(&circles)?;
        let pick = |b: Branch| sols.iter().find(|s| s.branch == b);
        let class = classify_minimizer(&circles, TIE_TOL)?;
        let fmt = |v: Option<f64>| v.map_or_else(|| "-".to_string(), |v| format!("{v:.8}"));
        println!(
            "{h:<6.2} {:<11} {:<12} {:<12} {:<12.8} {}",
            fmt(pick(Branch::Outer).map(|s| s.c)),
            fmt(pick(Branch::Outer).map(|s| s.area)),
            fmt(pick(Branch::Inner).map(|s| s.area)),
            class.discs_area,
            class.kind
        );
    }

    // Unequal rings: the neck need not sit halfway.
    println!("\nr1=1 r2=2 h=0.8");
    let circles = BoundaryCircles::new(1.0, 2.0, 0.8)?;
    for s in solve_catenoids(&circles)? {
        println!("  {:?}: c={:.8} y0={:.8} area={:.8}", s.branch, s.c, s.y0, s.area);
    }
    Ok(())
}
