//! The collision detection engine: owns the hazard registry and the
//! quadtree, resolves placement queries and applies environment updates.
//!
//! A query runs through up to three stages — fail-fast surrogate, edge
//! intersection, inclusion — each of which can only short-circuit towards
//! "collision". The verdict is always identical to what the naive
//! full-trigonometry test over all relevant hazards would produce; the
//! stages only change how fast it is reached.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::predicates::{circle_edge_distance, edges_intersect, point_in_polygon};
use crate::geom::{Aabb, AabbRelation, SimplePolygon, Transformation};
use crate::hazard::{Hazard, HazardFilter, HazardId, HazardKind, RelevantIds};
use crate::quadtree::{ProbeVerdict, QuadTree};
use crate::scalar::Scalar;
use crate::surrogate::{Surrogate, SurrogateConfig};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CdeError {
    #[error("hazard {0:?} is already registered")]
    DuplicateHazard(HazardId),
    #[error("hazard {0:?} is not registered")]
    UnknownHazard(HazardId),
}

/// Which surrogate component the fail-fast stage probes first.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum SurrogateOrder {
    #[default]
    PolesFirst,
    PiersFirst,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CdeConfig {
    pub quadtree_depth: u8,
    pub surrogate: SurrogateConfig,
    /// Disables the fail-fast stage when false; verdicts are unaffected.
    pub fail_fast: bool,
    pub surrogate_order: SurrogateOrder,
}

impl Default for CdeConfig {
    fn default() -> Self {
        Self {
            quadtree_depth: 5,
            surrogate: SurrogateConfig::default(),
            fail_fast: true,
            surrogate_order: SurrogateOrder::PolesFirst,
        }
    }
}

/// A transformed shape ready to be queried, with its surrogate transformed
/// alongside it.
#[derive(Clone, Debug)]
pub struct QueryShape<T> {
    shape: SimplePolygon<T>,
    surrogate: Surrogate<T>,
}

impl<T: Scalar> QueryShape<T> {
    pub fn new(shape: SimplePolygon<T>, surrogate: Surrogate<T>) -> Self {
        Self { shape, surrogate }
    }

    /// Query shape with a freshly generated surrogate.
    pub fn generate(shape: SimplePolygon<T>, cfg: &SurrogateConfig) -> Self {
        let surrogate = Surrogate::generate(&shape, cfg);
        Self { shape, surrogate }
    }

    /// Query shape whose fail-fast stage is a no-op.
    pub fn without_surrogate(shape: SimplePolygon<T>) -> Self {
        Self { shape, surrogate: Surrogate::empty() }
    }

    pub fn shape(&self) -> &SimplePolygon<T> {
        &self.shape
    }

    pub fn surrogate(&self) -> &Surrogate<T> {
        &self.surrogate
    }

    pub fn aabb(&self) -> &Aabb<T> {
        self.shape.aabb()
    }

    pub fn transformed(&self, t: &Transformation<T>) -> Self {
        Self { shape: self.shape.transformed(t), surrogate: self.surrogate.transformed(t) }
    }
}

/// Work counters for one query, for benchmark calibration and tests.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct QueryStats {
    /// Exact segment/segment tests run in the narrow phase.
    pub narrow_segment_tests: u64,
    /// Exact circle/segment tests run for surrogate poles.
    pub narrow_circle_tests: u64,
    /// Point-in-polygon tests run by the inclusion stage.
    pub inclusion_pip_tests: u64,
}

#[derive(Clone, Debug)]
pub struct CDEngine<T> {
    bounds: Aabb<T>,
    hazards: Vec<Hazard<T>>,
    tree: QuadTree<T>,
    config: CdeConfig,
}

impl<T: Scalar> CDEngine<T> {
    pub fn new(bounds: Aabb<T>, config: CdeConfig) -> Self {
        Self {
            bounds,
            hazards: Vec::new(),
            tree: QuadTree::new(bounds, config.quadtree_depth),
            config,
        }
    }

    pub fn bounds(&self) -> &Aabb<T> {
        &self.bounds
    }

    pub fn config(&self) -> &CdeConfig {
        &self.config
    }

    pub fn hazards(&self) -> &[Hazard<T>] {
        &self.hazards
    }

    pub fn tree(&self) -> &QuadTree<T> {
        &self.tree
    }

    pub fn register(&mut self, hazard: Hazard<T>) -> Result<(), CdeError> {
        if self.hazards.iter().any(|h| h.id == hazard.id) {
            return Err(CdeError::DuplicateHazard(hazard.id));
        }
        self.tree.register(&hazard).expect("registry and tree in sync");
        self.hazards.push(hazard);
        Ok(())
    }

    pub fn deregister(&mut self, id: HazardId) -> Result<(), CdeError> {
        let idx = self
            .hazards
            .iter()
            .position(|h| h.id == id)
            .ok_or(CdeError::UnknownHazard(id))?;
        self.hazards.remove(idx);
        self.tree.deregister(id).expect("registry and tree in sync");
        Ok(())
    }

    /// Toggles a hazard without touching the tree; an inactive hazard is
    /// invisible to every query.
    pub fn set_active(&mut self, id: HazardId, active: bool) -> Result<(), CdeError> {
        let h = self
            .hazards
            .iter_mut()
            .find(|h| h.id == id)
            .ok_or(CdeError::UnknownHazard(id))?;
        h.active = active;
        Ok(())
    }

    /// Does the query shape collide with any relevant hazard?
    pub fn collision(&self, q: &QueryShape<T>, f: &HazardFilter) -> bool {
        self.collision_with_stats(q, f).0
    }

    pub fn collision_with_stats(&self, q: &QueryShape<T>, f: &HazardFilter) -> (bool, QueryStats) {
        let mut stats = QueryStats::default();
        let relevant = RelevantIds::resolve(self.hazards.iter(), f);
        if relevant.is_empty() {
            return (false, stats);
        }
        if self.config.fail_fast
            && !q.surrogate.is_empty()
            && self.surrogate_inner(q, &relevant, &mut stats)
        {
            return (true, stats);
        }
        if self.edge_intersection_inner(q, &relevant, &mut stats) {
            return (true, stats);
        }
        (self.inclusion_inner(q, &relevant, &mut stats), stats)
    }

    /// Does any edge of the query shape collide with a relevant hazard
    /// region? Detects more than literal edge crossings: an edge inside an
    /// entirely hazardous node reports a collision without narrow tests.
    pub fn edge_intersection(&self, q: &QueryShape<T>, f: &HazardFilter) -> bool {
        let relevant = RelevantIds::resolve(self.hazards.iter(), f);
        self.edge_intersection_inner(q, &relevant, &mut QueryStats::default())
    }

    /// Containment check for queries whose edges are already known not to
    /// collide: full inclusion of the query in a hazard region or of a
    /// hazard entity inside the query.
    pub fn inclusion(&self, q: &QueryShape<T>, f: &HazardFilter) -> bool {
        let relevant = RelevantIds::resolve(self.hazards.iter(), f);
        self.inclusion_inner(q, &relevant, &mut QueryStats::default())
    }

    /// Fail-fast probe: `true` is a final collision verdict, `false` only
    /// means the full check must run.
    pub fn surrogate_collides(&self, q: &QueryShape<T>, f: &HazardFilter) -> bool {
        let relevant = RelevantIds::resolve(self.hazards.iter(), f);
        self.surrogate_inner(q, &relevant, &mut QueryStats::default())
    }

    fn edge_intersection_inner(
        &self,
        q: &QueryShape<T>,
        relevant: &RelevantIds,
        stats: &mut QueryStats,
    ) -> bool {
        for e in q.shape.edges() {
            let probe = self.tree.query_edge(e, relevant);
            match probe.verdict {
                ProbeVerdict::Collision => return true,
                ProbeVerdict::Clear => {}
                ProbeVerdict::Indeterminable => {
                    for (_, u) in &probe.unresolved {
                        stats.narrow_segment_tests += 1;
                        if edges_intersect(e, u) {
                            return true;
                        }
                    }
                }
            }
        }
        false
    }

    fn inclusion_inner(
        &self,
        q: &QueryShape<T>,
        relevant: &RelevantIds,
        stats: &mut QueryStats,
    ) -> bool {
        for h in &self.hazards {
            if !relevant.contains(h.id) {
                continue;
            }
            match h.kind {
                HazardKind::Interior => {
                    match q.aabb().relation(h.shape.aabb()) {
                        AabbRelation::AContainsB => {
                            // the hazard entity may be swallowed by the query
                            stats.inclusion_pip_tests += 1;
                            if point_in_polygon(h.shape.poi().center, &q.shape) {
                                return true;
                            }
                            // equal boxes: containment could go either way
                            if h.shape.aabb().contains(q.aabb()) {
                                stats.inclusion_pip_tests += 1;
                                if point_in_polygon(q.shape.poi().center, &h.shape) {
                                    return true;
                                }
                            }
                        }
                        AabbRelation::BContainsA => {
                            stats.inclusion_pip_tests += 1;
                            if point_in_polygon(q.shape.poi().center, &h.shape) {
                                return true;
                            }
                        }
                        AabbRelation::Intersecting | AabbRelation::Disjoint => {}
                    }
                }
                HazardKind::Exterior => {
                    // colliding with the complement means NOT being fully
                    // inside the inducing shape
                    if h.shape.aabb().contains(q.aabb()) {
                        stats.inclusion_pip_tests += 1;
                        if !point_in_polygon(q.shape.poi().center, &h.shape) {
                            return true;
                        }
                    } else {
                        return true;
                    }
                }
            }
        }
        false
    }

    fn surrogate_inner(
        &self,
        q: &QueryShape<T>,
        relevant: &RelevantIds,
        stats: &mut QueryStats,
    ) -> bool {
        match self.config.surrogate_order {
            SurrogateOrder::PolesFirst => {
                self.poles_collide(q, relevant, stats) || self.piers_collide(q, relevant, stats)
            }
            SurrogateOrder::PiersFirst => {
                self.piers_collide(q, relevant, stats) || self.poles_collide(q, relevant, stats)
            }
        }
    }

    fn poles_collide(
        &self,
        q: &QueryShape<T>,
        relevant: &RelevantIds,
        stats: &mut QueryStats,
    ) -> bool {
        for pole in q.surrogate.poles() {
            let probe = self.tree.query_circle(pole, relevant);
            match probe.verdict {
                ProbeVerdict::Collision => return true,
                ProbeVerdict::Clear => {}
                ProbeVerdict::Indeterminable => {
                    for (_, u) in &probe.unresolved {
                        stats.narrow_circle_tests += 1;
                        if circle_edge_distance(pole, u) <= T::zero() {
                            return true;
                        }
                    }
                }
            }
        }
        false
    }

    fn piers_collide(
        &self,
        q: &QueryShape<T>,
        relevant: &RelevantIds,
        stats: &mut QueryStats,
    ) -> bool {
        for pier in q.surrogate.piers() {
            let probe = self.tree.query_edge(pier, relevant);
            match probe.verdict {
                ProbeVerdict::Collision => return true,
                ProbeVerdict::Clear => {}
                ProbeVerdict::Indeterminable => {
                    for (_, u) in &probe.unresolved {
                        stats.narrow_segment_tests += 1;
                        if edges_intersect(pier, u) {
                            return true;
                        }
                    }
                }
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::geom::Point;

    fn rect(x0: f64, y0: f64, x1: f64, y1: f64) -> SimplePolygon<f64> {
        SimplePolygon::rectangle(x0, y0, x1, y1)
    }

    /// Engine over a 20×20 container: exterior hazard id 0.
    fn container_engine() -> CDEngine<f64> {
        let mut engine =
            CDEngine::new(Aabb::new(0.0, 0.0, 20.0, 20.0), CdeConfig::default());
        engine
            .register(Hazard::exterior(HazardId(0), Arc::new(rect(0.0, 0.0, 20.0, 20.0))))
            .unwrap();
        engine
    }

    fn query(shape: SimplePolygon<f64>) -> QueryShape<f64> {
        QueryShape::generate(shape, &SurrogateConfig::default())
    }

    #[test]
    fn shape_poking_outside_the_container_collides() {
        let engine = container_engine();
        assert!(engine.collision(&query(rect(18.0, 5.0, 22.0, 8.0)), &HazardFilter::none()));
        assert!(engine.collision(&query(rect(30.0, 30.0, 33.0, 33.0)), &HazardFilter::none()));
    }

    #[test]
    fn empty_interior_is_feasible() {
        let engine = container_engine();
        assert!(!engine.collision(&query(rect(5.0, 5.0, 8.0, 8.0)), &HazardFilter::none()));
    }

    #[test]
    fn register_deregister_roundtrip_preserves_verdicts() {
        let mut engine = container_engine();
        let probes = [
            rect(1.0, 1.0, 4.0, 4.0),
            rect(6.0, 6.0, 11.0, 11.0),
            rect(14.0, 2.0, 19.0, 6.0),
        ];
        let before: Vec<bool> =
            probes.iter().map(|s| engine.collision(&query(s.clone()), &HazardFilter::none())).collect();

        engine
            .register(Hazard::interior(HazardId(7), Arc::new(rect(7.0, 7.0, 10.0, 10.0))))
            .unwrap();
        engine.deregister(HazardId(7)).unwrap();

        let after: Vec<bool> =
            probes.iter().map(|s| engine.collision(&query(s.clone()), &HazardFilter::none())).collect();
        assert_eq!(before, after);
    }

    #[test]
    fn duplicate_and_unknown_hazards_error() {
        let mut engine = container_engine();
        assert_eq!(
            engine.register(Hazard::interior(HazardId(0), Arc::new(rect(1.0, 1.0, 2.0, 2.0)))),
            Err(CdeError::DuplicateHazard(HazardId(0)))
        );
        assert_eq!(engine.deregister(HazardId(4)), Err(CdeError::UnknownHazard(HazardId(4))));
        assert_eq!(engine.set_active(HazardId(4), false), Err(CdeError::UnknownHazard(HazardId(4))));
    }

    #[test]
    fn deactivation_behaves_like_deregistration() {
        let mut engine = container_engine();
        let item = Hazard::interior(HazardId(3), Arc::new(rect(5.0, 5.0, 9.0, 9.0)));
        engine.register(item).unwrap();

        let q = query(rect(6.0, 6.0, 8.0, 8.0));
        assert!(engine.collision(&q, &HazardFilter::none()));
        engine.set_active(HazardId(3), false).unwrap();
        assert!(!engine.collision(&q, &HazardFilter::none()));
        engine.set_active(HazardId(3), true).unwrap();
        assert!(engine.collision(&q, &HazardFilter::none()));
        // ignoring the hazard's id has the same effect as deactivating it
        assert!(!engine.collision(&q, &HazardFilter::ignoring([HazardId(3)])));
    }

    #[test]
    fn edge_through_entire_node_short_circuits() {
        let mut engine = container_engine();
        engine
            .register(Hazard::interior(HazardId(1), Arc::new(rect(4.0, 4.0, 12.0, 12.0))))
            .unwrap();
        // the probe runs deep inside the hazard: broad phase alone decides
        let q = QueryShape::without_surrogate(rect(7.0, 7.0, 9.0, 9.0));
        let (hit, stats) = engine.collision_with_stats(&q, &HazardFilter::none());
        assert!(hit);
        assert_eq!(stats.narrow_segment_tests, 0);
    }

    #[test]
    fn far_query_needs_no_narrow_tests() {
        let mut engine = container_engine();
        engine
            .register(Hazard::interior(HazardId(1), Arc::new(rect(1.0, 1.0, 3.0, 3.0))))
            .unwrap();
        let q = QueryShape::without_surrogate(rect(12.0, 12.0, 14.0, 14.0));
        let (hit, stats) = engine.collision_with_stats(&q, &HazardFilter::none());
        assert!(!hit);
        assert_eq!(stats.narrow_segment_tests, 0);
    }

    #[test]
    fn inclusion_inside_an_interior_hazard() {
        // with depth the broad phase already resolves a fully swallowed
        // query; edge_intersection detects more than its name implies
        let mut deep = container_engine();
        deep.register(Hazard::interior(HazardId(1), Arc::new(rect(2.0, 2.0, 18.0, 18.0))))
            .unwrap();
        let q = QueryShape::without_surrogate(rect(8.0, 8.0, 10.0, 10.0));
        assert!(deep.edge_intersection(&q, &HazardFilter::none()));
        assert!(deep.collision(&q, &HazardFilter::none()));

        // a depth-0 tree cannot: the verdict must come from inclusion
        let config = CdeConfig { quadtree_depth: 0, ..CdeConfig::default() };
        let mut flat = CDEngine::new(Aabb::new(0.0, 0.0, 20.0, 20.0), config);
        flat.register(Hazard::interior(HazardId(1), Arc::new(rect(2.0, 2.0, 18.0, 18.0))))
            .unwrap();
        assert!(!flat.edge_intersection(&q, &HazardFilter::none()));
        assert!(flat.inclusion(&q, &HazardFilter::none()));
        assert!(flat.collision(&q, &HazardFilter::none()));
    }

    #[test]
    fn containment_inside_the_container_is_feasible() {
        let engine = container_engine();
        let q = QueryShape::without_surrogate(rect(8.0, 8.0, 10.0, 10.0));
        assert!(!engine.inclusion(&q, &HazardFilter::none()));
    }

    #[test]
    fn swallowing_a_small_hazard_is_a_collision() {
        let mut engine = container_engine();
        engine
            .register(Hazard::interior(HazardId(1), Arc::new(rect(8.0, 8.0, 9.0, 9.0))))
            .unwrap();
        let q = QueryShape::without_surrogate(rect(5.0, 5.0, 12.0, 12.0));
        assert!(!engine.edge_intersection(&q, &HazardFilter::none()));
        assert!(engine.inclusion(&q, &HazardFilter::none()));
    }

    #[test]
    fn pole_inside_an_entire_node_fails_fast() {
        let mut engine = container_engine();
        engine
            .register(Hazard::interior(HazardId(1), Arc::new(rect(4.0, 4.0, 12.0, 12.0))))
            .unwrap();
        let q = query(rect(6.0, 6.0, 10.0, 10.0));
        assert!(engine.surrogate_collides(&q, &HazardFilter::none()));
    }

    #[test]
    fn empty_surrogate_never_fails_fast() {
        let mut engine = container_engine();
        engine
            .register(Hazard::interior(HazardId(1), Arc::new(rect(4.0, 4.0, 12.0, 12.0))))
            .unwrap();
        let q = QueryShape::without_surrogate(rect(6.0, 6.0, 10.0, 10.0));
        assert!(!engine.surrogate_collides(&q, &HazardFilter::none()));
        // the full pipeline still reports the collision
        assert!(engine.collision(&q, &HazardFilter::none()));
    }

    /// Boundary contact must be a collision (strict separation).
    #[test]
    fn touching_shapes_collide() {
        let mut engine = container_engine();
        engine
            .register(Hazard::interior(HazardId(1), Arc::new(rect(5.0, 5.0, 10.0, 10.0))))
            .unwrap();
        // shares the x = 10 edge segment with the hazard
        let q = QueryShape::without_surrogate(rect(10.0, 6.0, 14.0, 9.0));
        assert!(engine.collision(&q, &HazardFilter::none()));
        // exact fit against the container wall collides too
        let wall = QueryShape::without_surrogate(rect(0.0, 0.0, 3.0, 3.0));
        assert!(engine.collision(&wall, &HazardFilter::none()));
    }
}
