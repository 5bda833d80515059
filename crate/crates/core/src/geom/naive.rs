//! The naive full-trigonometry collision test: all edge pairs plus two
//! point-in-polygon inclusion probes.
//!
//! This is the ground-truth oracle every accelerated code path is validated
//! against, and the reference the benchmark harness measures speedups over.

use crate::geom::predicates::{edges_intersect, point_in_polygon};
use crate::geom::SimplePolygon;
use crate::scalar::Scalar;

/// Number of elementary predicate evaluations performed by one oracle call.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct OracleStats {
    /// Segment × segment intersection tests.
    pub segment_tests: u64,
    /// Ray × edge crossing evaluations inside point-in-polygon tests.
    pub ray_tests: u64,
}

/// True iff the two polygons collide: any pair of edges intersects, or one
/// polygon is fully contained in the other. Boundary contact counts as a
/// collision. Symmetric in its arguments.
pub fn collision<T: Scalar>(a: &SimplePolygon<T>, b: &SimplePolygon<T>) -> bool {
    collision_with_stats(a, b).0
}

/// [`collision`] with instrumentation, for test-count arithmetic and
/// benchmark calibration.
pub fn collision_with_stats<T: Scalar>(
    a: &SimplePolygon<T>,
    b: &SimplePolygon<T>,
) -> (bool, OracleStats) {
    let mut stats = OracleStats::default();

    for e_a in a.edges() {
        for e_b in b.edges() {
            stats.segment_tests += 1;
            if edges_intersect(e_a, e_b) {
                return (true, stats);
            }
        }
    }

    // no intersecting edges: only full inclusion remains, one interior-safe
    // point probe per direction suffices
    stats.ray_tests += b.edges().len() as u64;
    if point_in_polygon(a.poi().center, b) {
        return (true, stats);
    }
    stats.ray_tests += a.edges().len() as u64;
    if point_in_polygon(b.poi().center, a) {
        return (true, stats);
    }

    (false, stats)
}
