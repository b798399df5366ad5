//! Dirichlet Laplace–Beltrami spectra of surfaces of revolution spanning two
//! coaxial circles.
//!
//! The crate computes the spectrum of a surface from its meridian curve,
//! maximizes a chosen eigenvalue over meridians with fixed endpoints, solves
//! for the spanning catenoids, and checks the comparison inequalities that
//! control maximizing sequences.
//!
//! Modules:
//!
//! - [`geometry`]: constant-speed meridians, length, area, Hausdorff distance.
//! - [`catenoid`]: catenoids through the circles and the area minimizer.
//! - [`spectrum`]: finite-element Sturm–Liouville spectra and closed forms.
//! - [`bounds`]: executable eigenvalue comparison inequalities and Weyl slopes.
//! - [`optimizer`]: pattern-search maximization of `λ_j` and the convergence
//!   experiment toward the catenoid.
//! - [`cli`]: the `revspec` command-line front end.

pub mod bounds;
pub mod catenoid;
pub mod cli;

pub mod error;
pub mod geometry;
pub mod optimizer;
pub mod spectrum;

pub use error::{Error, Result};

/// Formats with 17 significant digits, enough to round-trip any `f64`.
pub fn fmt17(v: f64) -> String {
    format!("{v:.16e}")
}
