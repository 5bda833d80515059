//! Geometric predicates.
//!
//! Boundary contact counts as intersection everywhere: the engine must never
//! report "no collision" for shapes that touch. The `EPS` tolerance only
//! widens the band of configurations treated as degenerate (and therefore
//! resolved conservatively); it never pushes a verdict towards "no collision".

use crate::geom::{Aabb, Circle, Edge, Point, SimplePolygon};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    Ccw,
    Cw,
    Collinear,
}

/// Orientation of the triple `(a, b, c)`; cross products with magnitude
/// at most `EPS` are classified as collinear.
#[inline]
pub fn orientation<T: Scalar>(a: Point<T>, b: Point<T>, c: Point<T>) -> Orientation {
    let cross = (b - a).cross(c - a);
    if cross.abs() <= T::EPS {
        Orientation::Collinear
    } else if cross > T::zero() {
        Orientation::Ccw
    } else {
        Orientation::Cw
    }
}

/// `p` is assumed collinear with `e`; checks whether it lies on the segment
/// (inclusive, with `EPS` slack towards "on").
#[inline]
fn on_segment<T: Scalar>(e: &Edge<T>, p: Point<T>) -> bool {
    p.x >= e.start.x.min(e.end.x) - T::EPS
        && p.x <= e.start.x.max(e.end.x) + T::EPS
        && p.y >= e.start.y.min(e.end.y) - T::EPS
        && p.y <= e.start.y.max(e.end.y) + T::EPS
}

/// Closed-segment intersection test: touching endpoints and collinear
/// overlaps count as intersections.
pub fn edges_intersect<T: Scalar>(e1: &Edge<T>, e2: &Edge<T>) -> bool {
    let o1 = orientation(e1.start, e1.end, e2.start);
    let o2 = orientation(e1.start, e1.end, e2.end);
    let o3 = orientation(e2.start, e2.end, e1.start);
    let o4 = orientation(e2.start, e2.end, e1.end);

    use Orientation::Collinear;
    if o1 != Collinear && o2 != Collinear && o3 != Collinear && o4 != Collinear {
        return o1 != o2 && o3 != o4;
    }

    (o1 == Collinear && on_segment(e1, e2.start))
        || (o2 == Collinear && on_segment(e1, e2.end))
        || (o3 == Collinear && on_segment(e2, e1.start))
        || (o4 == Collinear && on_segment(e2, e1.end))
}

/// Ray-cast point-in-polygon on a closed edge loop.
///
/// Casts a `+x` horizontal ray and applies the half-open vertex rule: an
/// edge counts iff one endpoint's y is strictly below `p.y` and the other's
/// is at or above it. Callers are expected to pass interior-safe points
/// (poles of inaccessibility); behaviour for points on the boundary is not
/// specified.
pub fn point_in_ring<T: Scalar>(p: Point<T>, edges: &[Edge<T>]) -> bool {
    let mut inside = false;
    for e in edges {
        let (a, b) = (e.start, e.end);
        if (a.y < p.y) != (b.y < p.y) {
            let x_cross = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if x_cross > p.x {
                inside = !inside;
            }
        }
    }
    inside
}

/// See [`point_in_ring`].
pub fn point_in_polygon<T: Scalar>(p: Point<T>, s: &SimplePolygon<T>) -> bool {
    point_in_ring(p, s.edges())
}

pub fn point_segment_sq_distance<T: Scalar>(p: Point<T>, e: &Edge<T>) -> T {
    let d = e.direction();
    let len_sq = d.dot(d);
    let t = ((p - e.start).dot(d) / len_sq).max(T::zero()).min(T::one());
    p.sq_distance(e.at(t))
}

pub fn point_segment_distance<T: Scalar>(p: Point<T>, e: &Edge<T>) -> T {
    point_segment_sq_distance(p, e).sqrt()
}

/// Signed clearance between a circle and a segment: distance from the
/// center to the segment minus the radius. Negative or zero means the
/// closed disc and the segment share a point.
pub fn circle_edge_distance<T: Scalar>(c: &Circle<T>, e: &Edge<T>) -> T {
    point_segment_distance(c.center, e) - c.radius
}

/// Closed intersection test between a segment and a box.
pub fn edge_intersects_aabb<T: Scalar>(e: &Edge<T>, bb: &Aabb<T>) -> bool {
    // cheap reject on the segment's own bounding box
    if e.start.x.max(e.end.x) < bb.x_min
        || e.start.x.min(e.end.x) > bb.x_max
        || e.start.y.max(e.end.y) < bb.y_min
        || e.start.y.min(e.end.y) > bb.y_max
    {
        return false;
    }
    if bb.contains_point(e.start) || bb.contains_point(e.end) {
        return true;
    }
    let c = bb.corners();
    for i in 0..4 {
        let side = Edge::new(c[i], c[(i + 1) % 4]);
        if edges_intersect(e, &side) {
            return true;
        }
    }
    false
}

/// Closed intersection test between a disc and a box.
pub fn circle_intersects_aabb<T: Scalar>(c: &Circle<T>, bb: &Aabb<T>) -> bool {
    let nearest = Point::new(
        c.center.x.max(bb.x_min).min(bb.x_max),
        c.center.y.max(bb.y_min).min(bb.y_max),
    );
    c.center.sq_distance(nearest) <= c.radius * c.radius
}
