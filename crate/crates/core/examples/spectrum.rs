//! Dirichlet spectrum of a surface of revolution
//!
//! Computes the merged spectrum of the unit cylinder against `(nπ)^2 + k^2`,
//! then sets a flat annulus with a small hole beside the unit disc.
//!
//! ```bash
//! cargo run --release --example spectrum
//! ```

use revspec::geometry::{make_segment, BoundaryCircles};
use revspec::spectrum::{counting_function, cylinder_spectrum, disc_spectrum, merged_spectrum};

fn main() -> revspec::Result<()> {
    let mesh = 4000;

    println!("Unit cylinder, mesh {mesh}");
    println!(" j   k  n  mult  computed          exact             rel error");
    let cyl = make_segment(&BoundaryCircles::new(1.0, 1.0, 1.0)?, mesh)?;
    let ours = merged_spectrum(&cyl, 12, mesh)?;
    let exact = cylinder_spectrum(1.0, 1.0, 12)?;
    for (row, want) in ours.rows().iter().zip(exact.values()) {
        println!(
            "{:>2}  {:>2} {:>2}  {:>4}  {:<17.10} {:<17.10} {:.2e}",
            row.j,
            row.k,
            row.n,
            row.multiplicity,
            row.value,
            want,
            (row.value - want).abs() / want
        );
    }

    // A small hole barely moves the k >= 1 modes; the k = 0 modes only
    // converge logarithmically in the hole radius.
    println!("\nAnnulus [0.01, 1] against the unit disc");
    let annulus = make_segment(&BoundaryCircles::new(0.01, 1.0, 0.0)?, mesh)?;
    let ann = merged_spectrum(&annulus, 8, mesh)?.values();
    let disc = disc_spectrum(1.0, 8)?.values();
    for (j, (a, d)) in ann.iter().zip(&disc).enumerate() {
        println!("{:>2}  {a:<14.8} {d:<14.8}", j + 1);
    }

    let s = merged_spectrum(&cyl, 40, mesh)?;
    println!("\nN(100) on the unit cylinder: {}", counting_function(&s, 100.0));
    Ok(())
}
