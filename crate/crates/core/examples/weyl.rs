//! Weyl's law
//!
//! Least-squares slope of `λ_j` against `j` for closed-form and computed
//! spectra, compared with `4π / Area`.
//!
//! ```bash
//! cargo run --release --example weyl
//! ```

use revspec::bounds::weyl_slope;
use revspec::geometry::{make_segment, BoundaryCircles};
use revspec::spectrum::{cylinder_spectrum, disc_spectrum, merged_spectrum, rectangle_spectrum};

fn main() -> revspec::Result<()> {
    println!("surface                 window        slope      4pi/area   rel error");
    let report = |name: &str, s: &revspec::spectrum::Spectrum, lo: usize, hi: usize| -> revspec::Result<()> {
        let fit = weyl_slope(s, lo..=hi)?;
        println!(
            "{name:<23} [{lo}, {hi}]{:pad$}{:<10.6} {:<10.6} {:.3}%",
            "",
            fit.slope,
            fit.target,
            100.0 * fit.rel_error,
            pad = 13usize.saturating_sub(format!("[{lo}, {hi}]").len())
        );
        Ok(())
    };

    report("unit cylinder", &cylinder_spectrum(1.0, 1.0, 2000)?, 500, 2000)?;
    report("unit square", &rectangle_spectrum(1.0, 1.0, 2000)?, 500, 2000)?;
    report("unit disc", &disc_spectrum(1.0, 1000)?, 200, 1000)?;

    let mesh = 4000;
    let annulus = make_segment(&BoundaryCircles::new(1.0, 2.0, 0.0)?, mesh)?;
    report("annulus [1, 2], FEM", &merged_spectrum(&annulus, 600, mesh)?, 150, 600)?;
    let cone = make_segment(&BoundaryCircles::new(1.0, 2.0, 1.0)?, mesh)?;
    report("cone frustum, FEM", &merged_spectrum(&cone, 600, mesh)?, 150, 600)?;
    Ok(())
}
