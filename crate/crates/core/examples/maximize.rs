//! Maximizing an eigenvalue over meridians
//!
//! Pattern search over control polygons between two coaxial circles. For
//! coplanar circles the flat annulus is the maximizer, so the search should
//! end on the radial segment.
//!
//! ```bash
//! cargo run --release --example maximize
//! ```

use revspec::geometry::{hausdorff_distance, length, make_segment, BoundaryCircles};
use revspec::optimizer::{maximize_eigenvalue, OptimizerConfig};
use revspec::spectrum::merged_spectrum;

fn main() -> revspec::Result<()> {
    let cfg = OptimizerConfig {
        control_points: 6,
        restarts: 3,
        mesh_inner: 400,
        mesh_final: 2000,
        ..OptimizerConfig::default()
    };

    let flat = BoundaryCircles::new(1.0, 2.0, 0.0)?;
    let res = maximize_eigenvalue(&flat, 1, &cfg)?;
    let segment = make_segment(&flat, cfg.mesh_final)?;
    let annulus = merged_spectrum(&segment, 1, cfg.mesh_final)?.value(1).unwrap_or(f64::NAN);
    println!("coplanar r1=1 r2=2, j=1");
    println!("  best lambda_1        {:.8}", res.lambda_j);
    println!("  flat annulus         {annulus:.8}");
    println!("  restart values       {:?}", res.restart_values);
    println!("  distance to segment  {:.2e}", hausdorff_distance(&res.meridian, &segment));

    let lifted = BoundaryCircles::new(1.0, 1.2, 0.6)?;
    println!("\nr1=1 r2=1.2 h=0.6");
    for j in [1, 2, 3] {
        let res = maximize_eigenvalue(&lifted, j, &cfg)?;
        println!(
            "  j={j}: lambda={:.6} start values {:?} length {:.4} beats discs {} iterations {}",
            res.lambda_j,
            res.initial_values,
            length(&res.meridian),
            res.beats_discs,
            res.iterations
        );
    }
    Ok(())
}
