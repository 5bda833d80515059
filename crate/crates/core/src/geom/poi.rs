//! Cell-subdivision search for the point of maximal clearance inside a
//! polygon, optionally treating a set of discs as holes.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::geom::predicates::{point_in_ring, point_segment_distance};
use crate::geom::{Aabb, Circle, Edge, Point};
use crate::scalar::Scalar;

/// Signed clearance of `p`: distance to the boundary loop, positive inside
/// and negative outside, further reduced by the clearance to each obstacle
/// disc. 1-Lipschitz in `p`, which is what the cell bound relies on.
pub(crate) fn clearance<T: Scalar>(
    p: Point<T>,
    edges: &[Edge<T>],
    obstacles: &[Circle<T>],
) -> T {
    let mut boundary = T::infinity();
    for e in edges {
        boundary = boundary.min(point_segment_distance(p, e));
    }
    let mut d = if point_in_ring(p, edges) { boundary } else { -boundary };
    for c in obstacles {
        d = d.min(p.distance(c.center) - c.radius);
    }
    d
}

struct Cell<T> {
    center: Point<T>,
    half: T,
    dist: T,
    /// Upper bound on the clearance anywhere in the cell.
    potential: T,
}

impl<T: Scalar> Cell<T> {
    fn new(center: Point<T>, half: T, edges: &[Edge<T>], obstacles: &[Circle<T>]) -> Self {
        let dist = clearance(center, edges, obstacles);
        Self { center, half, dist, potential: dist + half * T::SQRT_2() }
    }
}

impl<T: Scalar> PartialEq for Cell<T> {
    fn eq(&self, other: &Self) -> bool {
        self.potential == other.potential
    }
}
impl<T: Scalar> Eq for Cell<T> {}
impl<T: Scalar> PartialOrd for Cell<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<T: Scalar> Ord for Cell<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        // potentials are finite by construction
        self.potential.partial_cmp(&other.potential).expect("non-finite cell potential")
    }
}

/// Best-first cell subdivision: returns the center maximizing [`clearance`]
/// together with its clearance, within `precision × aabb.diameter()` of the
/// true maximum.
pub(crate) fn pole_search<T: Scalar>(
    edges: &[Edge<T>],
    aabb: &Aabb<T>,
    obstacles: &[Circle<T>],
    precision: f64,
) -> (Point<T>, T) {
    let tol = T::cast(precision) * aabb.diameter();
    let size = aabb.width().min(aabb.height());
    let half = size * T::half();

    let mut heap = BinaryHeap::new();
    let mut x = aabb.x_min;
    while x < aabb.x_max {
        let mut y = aabb.y_min;
        while y < aabb.y_max {
            heap.push(Cell::new(Point::new(x + half, y + half), half, edges, obstacles));
            y = y + size;
        }
        x = x + size;
    }

    let mut best = Cell::new(aabb.center(), T::zero(), edges, obstacles);
    while let Some(cell) = heap.pop() {
        if cell.dist > best.dist {
            best = Cell { center: cell.center, half: T::zero(), dist: cell.dist, potential: cell.dist };
        }
        // max-heap: once the top cannot improve on best, nothing can
        if cell.potential - best.dist <= tol {
            break;
        }
        let h = cell.half * T::half();
        for (sx, sy) in [(-T::one(), -T::one()), (T::one(), -T::one()), (-T::one(), T::one()), (T::one(), T::one())] {
            let c = Point::new(cell.center.x + sx * h, cell.center.y + sy * h);
            heap.push(Cell::new(c, h, edges, obstacles));
        }
    }
    (best.center, best.dist)
}
