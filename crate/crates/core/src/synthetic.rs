//! Deterministic generators for synthetic polygons, used by test fixtures
//! and the benchmark harness.

use rand::Rng;

use crate::geom::{Point, SimplePolygon};
use crate::scalar::Scalar;

/// Star polygon: vertices at sorted random angles with random radii in
/// `[r_min, r_max]` around `center`. Radially monotone, hence always simple;
/// jagged for larger radius spreads.
pub fn star_polygon<T: Scalar>(
    rng: &mut impl Rng,
    n_vertices: usize,
    r_min: f64,
    r_max: f64,
    center: Point<T>,
) -> SimplePolygon<T> {
    assert!(n_vertices >= 3 && r_min > 0.0 && r_max >= r_min);
    let mut angles: Vec<f64> = (0..n_vertices)
        .map(|i| {
            let base = 2.0 * std::f64::consts::PI * (i as f64) / (n_vertices as f64);
            base + rng.gen::<f64>() * 0.8 * 2.0 * std::f64::consts::PI / (n_vertices as f64)
        })
        .collect();
    angles.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let vertices = angles
        .into_iter()
        .map(|theta| {
            let r = r_min + rng.gen::<f64>() * (r_max - r_min);
            Point::new(
                center.x + T::cast(r * theta.cos()),
                center.y + T::cast(r * theta.sin()),
            )
        })
        .collect();
    SimplePolygon::new(vertices).expect("star polygon is simple by construction")
}

/// Digitized smooth blob: a circle of the given radius modulated by a few
/// low-frequency harmonics and sampled at `n_vertices` evenly spaced
/// angles, mimicking scanned or arc-approximated outlines.
pub fn digitized_blob<T: Scalar>(
    rng: &mut impl Rng,
    n_vertices: usize,
    radius: f64,
    center: Point<T>,
) -> SimplePolygon<T> {
    assert!(n_vertices >= 8 && radius > 0.0);
    let harmonics: Vec<(f64, f64, f64)> = (2..=5)
        .map(|m| (m as f64, 0.02 + rng.gen::<f64>() * 0.05, rng.gen::<f64>() * 2.0 * std::f64::consts::PI))
        .collect();
    let vertices = (0..n_vertices)
        .map(|i| {
            let theta = 2.0 * std::f64::consts::PI * (i as f64) / (n_vertices as f64);
            let mut r = 1.0;
            for &(m, amp, phase) in &harmonics {
                r += amp * (m * theta + phase).sin();
            }
            let r = r * radius;
            Point::new(
                center.x + T::cast(r * theta.cos()),
                center.y + T::cast(r * theta.sin()),
            )
        })
        .collect();
    SimplePolygon::new(vertices).expect("blob polygon is simple by construction")
}
