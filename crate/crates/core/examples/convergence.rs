//! Maximizers against the catenoid
//!
//! Maximizes several eigenvalues between two unit rings half a unit apart
//! and tabulates area, length, and distance to the outer catenary. Uses a
//! lighter configuration than the CLI defaults so it finishes in a few
//! minutes.
//!
//! ```bash
//! cargo run --release --example convergence
//! ```

use std::f64::consts::PI;

use revspec::geometry::BoundaryCircles;
use revspec::optimizer::{convergence_experiment, OptimizerConfig};

fn main() -> revspec::Result<()> {
    let circles = BoundaryCircles::new(1.0, 1.0, 0.5)?;
    let cfg = OptimizerConfig {
        control_points: 8,
        restarts: 3,
        max_iters: 100,
        mesh_inner: 400,
        mesh_final: 2000,
        ..OptimizerConfig::default()
    };
    let table = convergence_experiment(&circles, &[2, 5, 10], &cfg)?;
    let cat = table.catenoid.area;
    println!("catenoid area {cat:.8}, 4pi/area {:.6}\n", 4.0 * PI / cat);
    println!(" j   lambda_j       lambda_j/j   area         length       hausdorff");
    for r in &table.rows {
        println!(
            "{:>2}   {:<14.8} {:<12.6} {:<12.8} {:<12.8} {:.6}{}",
            r.j,
            r.lambda_j,
            r.lambda_over_j,
            r.area,
            r.length,
            r.hausdorff_to_catenoid,
            if r.mesh_suspect { "  (mesh suspect)" } else { "" }
        );
    }
    Ok(())
}
