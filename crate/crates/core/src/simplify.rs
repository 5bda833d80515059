//! Conservative polygon simplification.
//!
//! Greedy edge-count reduction in which every change to the shape is
//! strictly outward (`Inflate`, for interior hazards) or strictly inward
//! (`Deflate`, for exterior hazards), with the cumulative area change
//! bounded by a fraction of the original area.
//!
//! Three elementary operations are available, each removing one edge:
//! dropping a vertex whose corner points against the mode (concave for
//! inflation, convex for deflation), dropping a collinear vertex for free,
//! and replacing two consecutive mode-aligned vertices by the intersection
//! of their outer edges' supporting lines.

use serde::{Deserialize, Serialize};

use crate::geom::predicates::{edges_intersect, point_segment_distance};
use crate::geom::{Edge, Point, SimplePolygon};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SimplifyMode {
    /// Result is a superset of the input.
    Inflate,
    /// Result is a subset of the input.
    Deflate,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SimplifyConfig {
    /// Maximum cumulative area change as a fraction of the original area.
    pub alpha: f64,
    /// Safeguard on the number of applied operations.
    pub max_iterations: usize,
}

impl Default for SimplifyConfig {
    fn default() -> Self {
        Self { alpha: 0.001, max_iterations: 10_000 }
    }
}

/// One elementary simplification, addressed by vertex index.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SimplifyOp<T> {
    /// Drop the collinear vertex `idx`; free.
    DropCollinear { idx: usize },
    /// Drop vertex `idx` (concave under `Inflate`, convex under `Deflate`).
    DropVertex { idx: usize },
    /// Replace vertices `idx` and `idx + 1` with `replacement`, the
    /// intersection of the two neighboring edges' supporting lines.
    MergePair { idx: usize, replacement: Point<T> },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Candidate<T> {
    pub op: SimplifyOp<T>,
    /// Absolute area change caused by applying the operation.
    pub area_delta: T,
}

#[derive(Clone, Copy, PartialEq)]
enum Corner {
    Convex,
    Reflex,
    Collinear,
}

/// Twice the signed triangle area at vertex `i` of the ring.
fn corner_cross<T: Scalar>(ring: &[Point<T>], i: usize) -> T {
    let n = ring.len();
    let h = ring[(i + n - 1) % n];
    let v = ring[i];
    let j = ring[(i + 1) % n];
    (v - h).cross(j - v)
}

fn classify_corner<T: Scalar>(cross: T) -> Corner {
    if cross.abs() <= T::EPS {
        Corner::Collinear
    } else if cross > T::zero() {
        Corner::Convex
    } else {
        Corner::Reflex
    }
}

/// All valid elementary simplifications of the polygon under the given
/// mode, in vertex-index order, with their exact area deltas.
pub fn enumerate_candidates<T: Scalar>(
    s: &SimplePolygon<T>,
    mode: SimplifyMode,
) -> Vec<Candidate<T>> {
    candidates_on_ring(s.vertices(), mode)
}

/// Greedy simplification: repeatedly applies the valid operation with the
/// smallest area change until no operation fits within the remaining
/// budget. A polygon admitting no valid simplification is returned
/// unchanged.
pub fn simplify_polygon<T: Scalar>(
    s: &SimplePolygon<T>,
    mode: SimplifyMode,
    cfg: &SimplifyConfig,
) -> SimplePolygon<T> {
    let budget = T::cast(cfg.alpha) * s.area();
    let mut ring = s.vertices().to_vec();
    let mut used = T::zero();

    for _ in 0..cfg.max_iterations {
        if ring.len() <= 3 {
            break;
        }
        let best = candidates_on_ring(&ring, mode)
            .into_iter()
            .filter(|c| used + c.area_delta <= budget)
            .fold(None::<Candidate<T>>, |acc, c| match acc {
                Some(b) if b.area_delta <= c.area_delta => Some(b),
                _ => Some(c),
            });
        match best {
            Some(c) => {
                apply_on_ring(&mut ring, &c.op);
                used = used + c.area_delta;
            }
            None => break,
        }
    }

    if ring.len() == s.vertex_count() {
        return s.clone();
    }
    SimplePolygon::new(ring).unwrap_or_else(|_| s.clone())
}

fn candidates_on_ring<T: Scalar>(ring: &[Point<T>], mode: SimplifyMode) -> Vec<Candidate<T>> {
    let n = ring.len();
    let corners: Vec<Corner> =
        (0..n).map(|i| classify_corner(corner_cross(ring, i))).collect();
    let droppable = match mode {
        SimplifyMode::Inflate => Corner::Reflex,
        SimplifyMode::Deflate => Corner::Convex,
    };

    let mut out = Vec::new();
    for i in 0..n {
        let h = ring[(i + n - 1) % n];
        let j = ring[(i + 1) % n];
        if corners[i] == Corner::Collinear || corners[i] == droppable {
            let new_edge = Edge::new(h, j);
            if drop_is_valid(ring, i, &new_edge) {
                let delta = match corners[i] {
                    Corner::Collinear => T::zero(),
                    _ => corner_cross(ring, i).abs() * T::half(),
                };
                let op = match corners[i] {
                    Corner::Collinear => SimplifyOp::DropCollinear { idx: i },
                    _ => SimplifyOp::DropVertex { idx: i },
                };
                out.push(Candidate { op, area_delta: delta });
            }
        }
        // pair merge at (i, i+1)
        let i2 = (i + 1) % n;
        if corners[i] == droppable_pair_corner(mode) && corners[i2] == corners[i] {
            if let Some((e, delta)) = merge_point(ring, i) {
                if merge_is_valid(ring, i, e) {
                    out.push(Candidate {
                        op: SimplifyOp::MergePair { idx: i, replacement: e },
                        area_delta: delta,
                    });
                }
            }
        }
    }
    out
}

fn droppable_pair_corner(mode: SimplifyMode) -> Corner {
    match mode {
        SimplifyMode::Inflate => Corner::Convex,
        SimplifyMode::Deflate => Corner::Reflex,
    }
}

/// Intersection `e` of the supporting lines of edges `(i-1 → i)` and
/// `(i+2 → i+1)`, required to lie beyond both inner vertices, plus the area
/// of the triangle swept between the old and the new boundary path.
fn merge_point<T: Scalar>(ring: &[Point<T>], i: usize) -> Option<(Point<T>, T)> {
    let n = ring.len();
    if n < 4 {
        return None;
    }
    let a = ring[(i + n - 1) % n];
    let b = ring[i];
    let c = ring[(i + 1) % n];
    let d = ring[(i + 2) % n];

    let d1 = b - a;
    let d2 = c - d;
    let denom = d1.cross(d2);
    if denom.abs() <= T::EPS {
        return None; // near-parallel supporting lines
    }
    let rel = d - a;
    let t = rel.cross(d2) / denom;
    let u = rel.cross(d1) / denom;
    let beyond = T::one() + T::cast(1e-9);
    if t < beyond || u < beyond {
        return None; // replacement point on the wrong side
    }
    let e = a + d1 * t;
    let delta = (e - b).cross(c - b).abs() * T::half();
    Some((e, delta))
}

/// The new edge `(i-1 → i+1)` must not intersect any surviving edge and
/// must not degenerate into a collinear overlap with its new neighbors.
fn drop_is_valid<T: Scalar>(ring: &[Point<T>], i: usize, new_edge: &Edge<T>) -> bool {
    let n = ring.len();
    if n <= 3 {
        return false;
    }
    let h = (i + n - 1) % n;
    let j = (i + 1) % n;
    // edges (h-1→h) and (j→j+1) share an endpoint with the new edge
    let skip = [(h + n - 1) % n, h, i, j];
    if ring_edge_conflicts(ring, new_edge, &skip) {
        return false;
    }
    let before = ring[(h + n - 1) % n];
    let after = ring[(j + 1) % n];
    point_segment_distance(before, new_edge) > T::EPS
        && point_segment_distance(after, new_edge) > T::EPS
}

fn merge_is_valid<T: Scalar>(ring: &[Point<T>], i: usize, e: Point<T>) -> bool {
    let n = ring.len();
    if n < 4 {
        return false;
    }
    let h = (i + n - 1) % n;
    let j = (i + 1) % n;
    let k = (i + 2) % n;
    let edge_a = Edge::new(ring[h], e);
    let edge_b = Edge::new(e, ring[k]);
    let skip_a = [(h + n - 1) % n, h, i, j];
    let skip_b = [h, i, j, k];
    if ring_edge_conflicts(ring, &edge_a, &skip_a) || ring_edge_conflicts(ring, &edge_b, &skip_b) {
        return false;
    }
    let before = ring[(h + n - 1) % n];
    let after = ring[(k + 1) % n];
    point_segment_distance(before, &edge_a) > T::EPS
        && point_segment_distance(after, &edge_b) > T::EPS
}

/// Does `edge` intersect any ring edge other than the skipped indices?
fn ring_edge_conflicts<T: Scalar>(ring: &[Point<T>], edge: &Edge<T>, skip: &[usize]) -> bool {
    let n = ring.len();
    for idx in 0..n {
        if skip.contains(&idx) {
            continue;
        }
        let other = Edge::new(ring[idx], ring[(idx + 1) % n]);
        if edges_intersect(edge, &other) {
            return true;
        }
    }
    false
}

fn apply_on_ring<T: Scalar>(ring: &mut Vec<Point<T>>, op: &SimplifyOp<T>) {
    match *op {
        SimplifyOp::DropCollinear { idx } | SimplifyOp::DropVertex { idx } => {
            ring.remove(idx);
        }
        SimplifyOp::MergePair { idx, replacement } => {
            let n = ring.len();
            ring[idx] = replacement;
            ring.remove((idx + 1) % n);
        }
    }
}
