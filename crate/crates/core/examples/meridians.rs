//! Meridian curves
//!
//! Resamples a hand-drawn profile at constant speed, reports its length and
//! the area of the surface it sweeps, and measures how far it sits from a
//! straight segment between the same circles.
//!
//! ```bash
//! cargo run --release --example meridians
//! ```

use revspec::geometry::{
    area, hausdorff_distance, length, make_segment, reparametrize_constant_speed, BoundaryCircles,
    CurveFile, Point,
};

fn main() -> revspec::Result<()> {
    let circles = BoundaryCircles::new(1.0, 1.5, 1.0)?;
    let sketch = [
        Point::new(1.0, 0.0),
        Point::new(0.8, 0.3),
        Point::new(0.9, 0.7),
        Point::new(1.5, 1.0),
    ];

    println!("nodes    length        area          hausdorff to chord");
    for nodes in [10, 100, 1000, 10000] {
        let m = reparametrize_constant_speed(&sketch, nodes)?;
        let chord = make_segment(&circles, nodes)?;
        println!(
            "{nodes:<8} {:<13.8} {:<13.8} {:.8}",
            length(&m),
            area(&m),
            hausdorff_distance(&m, &chord)
        );
    }

    // Curve files are plain JSON, written with full precision.
    let m = reparametrize_constant_speed(&sketch, 8)?;
    let text = m.to_curve_json();
    println!("\n{text}");
    let back = CurveFile::parse(&text)?;
    assert_eq!(back.raw_points(), m.points());
    Ok(())
}
