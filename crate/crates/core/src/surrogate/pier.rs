//! Pier selection.
//!
//! Candidate chords are generated through the centroids of uncovered
//! interior sample clusters at evenly spaced angles, clipped to the polygon
//! interior and trimmed where they run through poles. Greedy selection picks
//! the chord with the largest residual-metric reduction; selection stops
//! when no candidate cuts the residual by more than [`MIN_RELATIVE_GAIN`].

use crate::geom::predicates::point_segment_distance;
use crate::geom::{Circle, Edge, Point, SimplePolygon};
use crate::scalar::Scalar;

use super::{interior_samples, SurrogateConfig};

/// Minimum relative residual reduction a pier must deliver to be kept.
const MIN_RELATIVE_GAIN: f64 = 0.01;
/// Number of evenly spaced chord directions per cluster.
const N_ANGLES: usize = 8;
/// Uncovered samples are clustered on this many grid cells per axis.
const CLUSTER_GRID: usize = 4;

/// Distance from `p` to the nearest surrogate element; `fallback` (the
/// polygon diameter, an upper bound on any interior distance) applies when
/// there are no elements at all.
pub(super) fn element_distance<T: Scalar>(
    p: Point<T>,
    poles: &[Circle<T>],
    piers: &[Edge<T>],
    fallback: T,
) -> T {
    let mut d = fallback;
    for c in poles {
        d = d.min((p.distance(c.center) - c.radius).max(T::zero()));
    }
    for e in piers {
        d = d.min(point_segment_distance(p, e));
    }
    d
}

pub(super) fn generate<T: Scalar>(
    s: &SimplePolygon<T>,
    poles: &[Circle<T>],
    cfg: &SurrogateConfig,
) -> Vec<Edge<T>> {
    if cfg.n_piers == 0 {
        return Vec::new();
    }
    let samples = interior_samples(s, cfg.interior_samples);
    if samples.is_empty() {
        return Vec::new();
    }
    let fallback = s.diameter();
    let mut dists: Vec<T> =
        samples.iter().map(|&p| element_distance(p, poles, &[], fallback)).collect();

    let mut piers: Vec<Edge<T>> = Vec::new();
    for _ in 0..cfg.n_piers {
        let residual = mean(&dists);
        if residual <= T::EPS {
            break;
        }
        let candidates = candidate_chords(s, poles, &samples, &dists);
        let mut best: Option<(Edge<T>, T)> = None;
        for cand in candidates {
            let new_sum = samples.iter().zip(&dists).fold(T::zero(), |acc, (&p, &d)| {
                acc + d.min(point_segment_distance(p, &cand))
            });
            let new_residual = new_sum / T::cast(samples.len() as f64);
            let gain = residual - new_residual;
            if best.as_ref().is_none_or(|(_, g)| gain > *g) {
                best = Some((cand, gain));
            }
        }
        match best {
            Some((pier, gain)) if gain > T::cast(MIN_RELATIVE_GAIN) * residual => {
                for (d, &p) in dists.iter_mut().zip(&samples) {
                    *d = d.min(point_segment_distance(p, &pier));
                }
                piers.push(pier);
            }
            _ => break,
        }
    }
    piers
}

fn mean<T: Scalar>(values: &[T]) -> T {
    values.iter().fold(T::zero(), |a, &b| a + b) / T::cast(values.len() as f64)
}

/// Chords through the centroid of each uncovered sample cluster, at
/// [`N_ANGLES`] evenly spaced directions.
fn candidate_chords<T: Scalar>(
    s: &SimplePolygon<T>,
    poles: &[Circle<T>],
    samples: &[Point<T>],
    dists: &[T],
) -> Vec<Edge<T>> {
    let bb = s.aabb();
    let grid = T::cast(CLUSTER_GRID as f64);
    let mut sums = vec![(T::zero(), T::zero(), 0usize); CLUSTER_GRID * CLUSTER_GRID];
    let mut uncovered: Vec<Point<T>> = Vec::new();
    for (&p, &d) in samples.iter().zip(dists) {
        if d <= T::EPS {
            continue;
        }
        uncovered.push(p);
        let cx = (((p.x - bb.x_min) / bb.width() * grid).floor().to_usize().unwrap_or(0))
            .min(CLUSTER_GRID - 1);
        let cy = (((p.y - bb.y_min) / bb.height() * grid).floor().to_usize().unwrap_or(0))
            .min(CLUSTER_GRID - 1);
        let cell = &mut sums[cy * CLUSTER_GRID + cx];
        cell.0 = cell.0 + p.x;
        cell.1 = cell.1 + p.y;
        cell.2 += 1;
    }
    if uncovered.is_empty() {
        return Vec::new();
    }

    let mut chords = Vec::new();
    for (sx, sy, count) in sums {
        if count == 0 {
            continue;
        }
        let n = T::cast(count as f64);
        let centroid = Point::new(sx / n, sy / n);
        // cluster centroids of non-convex regions can fall outside;
        // anchor on the nearest uncovered sample instead
        let anchor = if s.contains_point(centroid) {
            centroid
        } else {
            *uncovered
                .iter()
                .min_by(|a, b| {
                    a.sq_distance(centroid).partial_cmp(&b.sq_distance(centroid)).unwrap()
                })
                .unwrap()
        };
        for k in 0..N_ANGLES {
            let theta = T::PI() * T::cast(k as f64) / T::cast(N_ANGLES as f64);
            let dir = Point::new(theta.cos(), theta.sin());
            if let Some(chord) = clip_chord(s, poles, anchor, dir) {
                chords.push(chord);
            }
        }
    }
    chords
}

/// Maximal segment through `anchor` along `dir` inside the polygon: both
/// ends stop at the nearest boundary crossing, are pulled in by a small
/// margin and trimmed out of any pole they fall into.
fn clip_chord<T: Scalar>(
    s: &SimplePolygon<T>,
    poles: &[Circle<T>],
    anchor: Point<T>,
    dir: Point<T>,
) -> Option<Edge<T>> {
    let margin = T::cast(1e-7) * s.diameter();
    let mut t_fwd = nearest_ray_hit(anchor, dir, s)? - margin;
    let mut t_back = -(nearest_ray_hit(anchor, Point::new(-dir.x, -dir.y), s)? - margin);

    // ends inside a pole are redundant; retract them to the pole boundary
    for _ in 0..2 {
        for c in poles {
            let to_anchor = anchor - c.center;
            let b = dir.dot(to_anchor);
            let disc = b * b - (to_anchor.dot(to_anchor) - c.radius * c.radius);
            if disc <= T::zero() {
                continue;
            }
            let sq = disc.sqrt();
            let (t1, t2) = (-b - sq, -b + sq);
            if t_fwd > t1 && t_fwd < t2 {
                t_fwd = t1.max(t_back);
            }
            if t_back > t1 && t_back < t2 {
                t_back = t2.min(t_fwd);
            }
        }
    }

    if t_fwd - t_back <= T::cast(1e-6) * s.diameter() {
        return None;
    }
    Some(Edge::new(anchor + dir * t_back, anchor + dir * t_fwd))
}

/// Smallest positive ray parameter at which `anchor + t·dir` crosses the
/// polygon boundary.
fn nearest_ray_hit<T: Scalar>(anchor: Point<T>, dir: Point<T>, s: &SimplePolygon<T>) -> Option<T> {
    let mut nearest: Option<T> = None;
    for e in s.edges() {
        let seg = e.direction();
        let denom = dir.cross(seg);
        if denom.abs() <= T::EPS {
            continue;
        }
        let rel = e.start - anchor;
        let t = rel.cross(seg) / denom;
        let u = rel.cross(dir) / denom;
        if t > T::EPS && u >= -T::EPS && u <= T::one() + T::EPS {
            nearest = Some(nearest.map_or(t, |n: T| n.min(t)));
        }
    }
    nearest
}
