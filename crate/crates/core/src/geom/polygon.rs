use thiserror::Error;

use crate::geom::poi::pole_search;
use crate::geom::predicates::{edges_intersect, point_in_ring};
use crate::geom::{Aabb, Circle, Edge, Point, Transformation};
use crate::scalar::Scalar;

/// Relative precision of the pole of inaccessibility computed at
/// construction. Tight enough for its role as an interior-safe probe point.
pub const DEFAULT_POI_PRECISION: f64 = 1e-3;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PolygonError {
    #[error("polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("vertex {0} is not finite")]
    NonFiniteVertex(usize),
    #[error("zero-length edge between vertices {0} and {1}")]
    ZeroLengthEdge(usize, usize),
    #[error("polygon is not simple: edges {0} and {1} intersect")]
    SelfIntersection(usize, usize),
    #[error("polygon has (near-)zero area")]
    ZeroArea,
}

/// A closed, non-self-intersecting, hole-free vertex loop.
///
/// Vertices are stored counter-clockwise; clockwise input loops are
/// reversed at construction. Edges, area, bounding box and the pole of
/// inaccessibility are computed once and kept consistent by every
/// operation that produces a new polygon.
#[derive(Clone, Debug, PartialEq)]
pub struct SimplePolygon<T> {
    vertices: Vec<Point<T>>,
    edges: Vec<Edge<T>>,
    area: T,
    aabb: Aabb<T>,
    poi: Circle<T>,
}

fn build_edges<T: Scalar>(vertices: &[Point<T>]) -> Vec<Edge<T>> {
    (0..vertices.len())
        .map(|i| Edge::new(vertices[i], vertices[(i + 1) % vertices.len()]))
        .collect()
}

/// Twice the signed area of the loop (positive for counter-clockwise).
fn shoelace2<T: Scalar>(vertices: &[Point<T>]) -> T {
    let mut acc = T::zero();
    for i in 0..vertices.len() {
        acc = acc + vertices[i].cross(vertices[(i + 1) % vertices.len()]);
    }
    acc
}

impl<T: Scalar> SimplePolygon<T> {
    pub fn new(mut vertices: Vec<Point<T>>) -> Result<Self, PolygonError> {
        // tolerate an explicitly closed input loop
        if vertices.len() > 3 && vertices.first() == vertices.last() {
            vertices.pop();
        }
        if vertices.len() < 3 {
            return Err(PolygonError::TooFewVertices(vertices.len()));
        }
        for (i, v) in vertices.iter().enumerate() {
            if !v.is_finite() {
                return Err(PolygonError::NonFiniteVertex(i));
            }
        }
        let n = vertices.len();
        for i in 0..n {
            let j = (i + 1) % n;
            if vertices[i] == vertices[j] {
                return Err(PolygonError::ZeroLengthEdge(i, j));
            }
        }

        let signed2 = shoelace2(&vertices);
        if signed2.abs() <= T::EPS {
            return Err(PolygonError::ZeroArea);
        }
        if signed2 < T::zero() {
            vertices.reverse();
        }

        let edges = build_edges(&vertices);
        for i in 0..n {
            for j in (i + 1)..n {
                let adjacent = j == i + 1 || (i == 0 && j == n - 1);
                if !adjacent && edges_intersect(&edges[i], &edges[j]) {
                    return Err(PolygonError::SelfIntersection(i, j));
                }
            }
        }

        let area = signed2.abs() * T::half();
        let aabb = Aabb::from_points(vertices.iter().copied());
        let (center, dist) = pole_search(&edges, &aabb, &[], DEFAULT_POI_PRECISION);
        debug_assert!(dist > T::zero(), "no interior point found for a valid polygon");
        let poi = Circle::new(center, dist);
        Ok(Self { vertices, edges, area, aabb, poi })
    }

    pub fn vertices(&self) -> &[Point<T>] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge<T>] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn area(&self) -> T {
        self.area
    }

    pub fn aabb(&self) -> &Aabb<T> {
        &self.aabb
    }

    /// Largest inscribed circle centered on the pole of inaccessibility,
    /// computed at construction.
    pub fn poi(&self) -> &Circle<T> {
        &self.poi
    }

    pub fn diameter(&self) -> T {
        self.aabb.diameter()
    }

    pub fn contains_point(&self, p: Point<T>) -> bool {
        point_in_ring(p, &self.edges)
    }

    /// Vertex-wise image under a rigid transformation. Derived fields are
    /// transformed along (the pole moves rigidly, area is invariant); no
    /// revalidation is performed since rigid maps preserve simplicity.
    pub fn transformed(&self, t: &Transformation<T>) -> Self {
        let mut vertices: Vec<Point<T>> = self.vertices.iter().map(|&p| t.apply(p)).collect();
        if t.flip {
            // a reflection reverses orientation; flip the order to stay CCW
            vertices.reverse();
        }
        let edges = build_edges(&vertices);
        let aabb = Aabb::from_points(vertices.iter().copied());
        let poi = Circle::new(t.apply(self.poi.center), self.poi.radius);
        Self { vertices, edges, area: self.area, aabb, poi }
    }

    pub fn translated(&self, dx: T, dy: T) -> Self {
        self.transformed(&Transformation::translation(dx, dy))
    }

    /// Axis-aligned rectangle.
    pub fn rectangle(x_min: T, y_min: T, x_max: T, y_max: T) -> Self {
        Self::new(vec![
            Point::new(x_min, y_min),
            Point::new(x_max, y_min),
            Point::new(x_max, y_max),
            Point::new(x_min, y_max),
        ])
        .expect("rectangle construction")
    }
}
