//! Broad-phase spatial index: a depth-bounded quadtree recording, per node,
//! how much of each registered hazard is present.
//!
//! Nodes are always split in the center so the tree structure depends only
//! on the set of registered hazards, never on the order in which they were
//! (de)registered. A node has children exactly when some hazard is partially
//! present in it and the depth bound has not been reached.

mod node;

pub use node::{Presence, QtNode};

use std::sync::Arc;

use thiserror::Error;

use crate::geom::predicates::{circle_intersects_aabb, edge_intersects_aabb};
use crate::geom::{Aabb, Circle, Edge, SimplePolygon};
use crate::hazard::{Hazard, HazardId, HazardKind, RelevantIds};
use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuadTreeError {
    #[error("hazard {0:?} is already registered")]
    DuplicateHazard(HazardId),
    #[error("hazard {0:?} is not registered")]
    UnknownHazard(HazardId),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProbeVerdict {
    Collision,
    Clear,
    Indeterminable,
}

/// Outcome of probing the tree with an edge or circle.
///
/// `unresolved` is non-empty iff the verdict is `Indeterminable`; it holds
/// the deduplicated union of the partially-present hazard edges stored in
/// the leaves the probe crossed, which the caller must resolve with exact
/// narrow-phase tests.
#[derive(Clone, Debug)]
pub struct ProbeResult<T> {
    pub verdict: ProbeVerdict,
    pub unresolved: Vec<(HazardId, Edge<T>)>,
}

impl<T> ProbeResult<T> {
    fn definite(verdict: ProbeVerdict) -> Self {
        Self { verdict, unresolved: Vec::new() }
    }
}

#[derive(Clone, Debug)]
struct RegisteredHazard<T> {
    id: HazardId,
    kind: HazardKind,
    shape: Arc<SimplePolygon<T>>,
}

#[derive(Clone, Debug)]
pub struct QuadTree<T> {
    root: QtNode<T>,
    max_depth: u8,
    registered: Vec<RegisteredHazard<T>>,
}

impl<T: Scalar> QuadTree<T> {
    /// An empty tree over a fixed root region.
    pub fn new(bounds: Aabb<T>, max_depth: u8) -> Self {
        Self { root: QtNode::leaf(bounds, 0), max_depth, registered: Vec::new() }
    }

    pub fn bounds(&self) -> &Aabb<T> {
        &self.root.aabb
    }

    pub fn max_depth(&self) -> u8 {
        self.max_depth
    }

    pub fn root(&self) -> &QtNode<T> {
        &self.root
    }

    pub fn registered_ids(&self) -> impl Iterator<Item = HazardId> + '_ {
        self.registered.iter().map(|r| r.id)
    }

    /// Records the hazard's presence in every node it reaches, splitting
    /// partially covered nodes until the depth bound.
    pub fn register(&mut self, hazard: &Hazard<T>) -> Result<(), QuadTreeError> {
        if self.registered.iter().any(|r| r.id == hazard.id) {
            return Err(QuadTreeError::DuplicateHazard(hazard.id));
        }
        let reg = RegisteredHazard {
            id: hazard.id,
            kind: hazard.kind,
            shape: Arc::clone(&hazard.shape),
        };
        let candidates: Vec<(u32, Edge<T>)> =
            reg.shape.edges().iter().enumerate().map(|(i, e)| (i as u32, *e)).collect();
        self.registered.push(reg);
        let reg = self.registered.last().unwrap().clone();
        node::register_into(&mut self.root, &reg, &candidates, self.max_depth, &self.registered);
        Ok(())
    }

    /// Removes every trace of the hazard and prunes nodes that no longer
    /// need their children.
    pub fn deregister(&mut self, id: HazardId) -> Result<(), QuadTreeError> {
        let idx = self
            .registered
            .iter()
            .position(|r| r.id == id)
            .ok_or(QuadTreeError::UnknownHazard(id))?;
        self.registered.remove(idx);
        node::deregister_from(&mut self.root, id);
        Ok(())
    }

    /// Probes the tree with an edge: crossing any node where a relevant
    /// hazard is entirely present is an immediate collision; leaves crossed
    /// with only absent hazards contribute nothing; partially present
    /// hazards contribute their stored edges to the unresolved set.
    pub fn query_edge(&self, e: &Edge<T>, relevant: &RelevantIds) -> ProbeResult<T> {
        let mut unresolved: Vec<(HazardId, u32, Edge<T>)> = Vec::new();
        let hit = node::visit(
            &self.root,
            &mut unresolved,
            relevant,
            // descent: inclusive with slack so grazing probes never skip a leaf
            &|bb: &Aabb<T>| edge_intersects_aabb(e, &bb.inflated(T::EPS)),
            // entire-node contact: exact closed test
            &|bb: &Aabb<T>| edge_intersects_aabb(e, bb),
        );
        Self::assemble(hit, unresolved)
    }

    /// Same contract as [`Self::query_edge`] with disc/box intersection
    /// tests; unresolved edges are meant for circle narrow-phase checks.
    pub fn query_circle(&self, c: &Circle<T>, relevant: &RelevantIds) -> ProbeResult<T> {
        let mut unresolved: Vec<(HazardId, u32, Edge<T>)> = Vec::new();
        let hit = node::visit(
            &self.root,
            &mut unresolved,
            relevant,
            &|bb: &Aabb<T>| circle_intersects_aabb(c, &bb.inflated(T::EPS)),
            &|bb: &Aabb<T>| circle_intersects_aabb(c, bb),
        );
        Self::assemble(hit, unresolved)
    }

    /// Verdict of the leaf containing the point. Points on a split line
    /// belong to several closed leaves; the most pessimistic verdict wins.
    pub fn query_point(&self, p: crate::geom::Point<T>, relevant: &RelevantIds) -> ProbeVerdict {
        node::visit_point(&self.root, p, relevant)
    }

    fn assemble(hit: bool, mut raw: Vec<(HazardId, u32, Edge<T>)>) -> ProbeResult<T> {
        if hit {
            return ProbeResult::definite(ProbeVerdict::Collision);
        }
        if raw.is_empty() {
            return ProbeResult::definite(ProbeVerdict::Clear);
        }
        raw.sort_unstable_by_key(|(id, idx, _)| (*id, *idx));
        raw.dedup_by_key(|(id, idx, _)| (*id, *idx));
        ProbeResult {
            verdict: ProbeVerdict::Indeterminable,
            unresolved: raw.into_iter().map(|(id, _, e)| (id, e)).collect(),
        }
    }
}

/// Structural equality: same bounds, depth bound and per-node presence
/// records. Registration order does not influence it.
impl<T: Scalar> PartialEq for QuadTree<T> {
    fn eq(&self, other: &Self) -> bool {
        self.max_depth == other.max_depth && self.root == other.root
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use rand::Rng;
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::geom::{Point, SimplePolygon};
    use crate::hazard::Hazard;

    fn bounds() -> Aabb<f64> {
        Aabb::new(0.0, 0.0, 16.0, 16.0)
    }

    fn interior(id: u64, shape: SimplePolygon<f64>) -> Hazard<f64> {
        Hazard::interior(HazardId(id), Arc::new(shape))
    }

    fn all_ids(tree: &QuadTree<f64>) -> RelevantIds {
        RelevantIds::all(tree.registered_ids())
    }

    fn random_edge(rng: &mut impl Rng) -> Edge<f64> {
        loop {
            let a = Point::new(rng.gen::<f64>() * 16.0, rng.gen::<f64>() * 16.0);
            let b = Point::new(rng.gen::<f64>() * 16.0, rng.gen::<f64>() * 16.0);
            if a != b {
                return Edge::new(a, b);
            }
        }
    }

    fn probe_equivalent(a: &QuadTree<f64>, b: &QuadTree<f64>, probes: usize) -> bool {
        let rel_a = all_ids(a);
        let rel_b = all_ids(b);
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        (0..probes).all(|_| {
            let e = random_edge(&mut rng);
            let ra = a.query_edge(&e, &rel_a);
            let rb = b.query_edge(&e, &rel_b);
            ra.verdict == rb.verdict && ra.unresolved == rb.unresolved
        })
    }

    #[test]
    fn hazard_covering_the_root_is_entire_without_splits() {
        let mut tree = QuadTree::new(bounds(), 4);
        tree.register(&interior(1, SimplePolygon::rectangle(-1.0, -1.0, 17.0, 17.0))).unwrap();
        assert!(tree.root().is_leaf());
        assert_eq!(tree.root().presence_of(HazardId(1)), Some(&Presence::Entire));
    }

    #[test]
    fn register_then_deregister_restores_the_empty_tree() {
        let shape = SimplePolygon::rectangle(3.0, 3.0, 9.0, 9.0);
        let mut tree = QuadTree::new(bounds(), 4);
        tree.register(&interior(1, shape)).unwrap();
        assert!(!tree.root().is_leaf());
        tree.deregister(HazardId(1)).unwrap();

        let fresh = QuadTree::new(bounds(), 4);
        assert_eq!(tree, fresh);
        assert!(probe_equivalent(&tree, &fresh, 1000));
    }

    #[test]
    fn duplicate_and_unknown_ids_are_rejected() {
        let mut tree = QuadTree::new(bounds(), 3);
        let h = interior(1, SimplePolygon::rectangle(1.0, 1.0, 2.0, 2.0));
        tree.register(&h).unwrap();
        assert_eq!(tree.register(&h), Err(QuadTreeError::DuplicateHazard(HazardId(1))));
        assert_eq!(tree.deregister(HazardId(9)), Err(QuadTreeError::UnknownHazard(HazardId(9))));
    }

    /// Deeper trees confine partial presence to an ever thinner band around
    /// the hazard boundary while the definite (none/entire) region grows.
    #[test]
    fn partial_leaf_area_shrinks_with_depth() {
        let shape = SimplePolygon::new(vec![
            Point::new(1.0, 1.0),
            Point::new(14.0, 2.0),
            Point::new(13.0, 13.0),
            Point::new(4.0, 14.0),
        ])
        .unwrap();

        let mut partial_areas = Vec::new();
        let mut entire_areas = Vec::new();
        for d in 1..=4 {
            let mut tree = QuadTree::new(bounds(), d);
            tree.register(&interior(1, shape.clone())).unwrap();
            let (mut partial, mut entire) = (0.0, 0.0);
            tree.root().for_each_leaf(&mut |leaf| {
                let area = leaf.aabb.width() * leaf.aabb.height();
                match leaf.presence_of(HazardId(1)) {
                    Some(Presence::Partial(_)) => partial += area,
                    Some(Presence::Entire) => entire += area,
                    None => {}
                }
            });
            partial_areas.push(partial);
            entire_areas.push(entire);
        }
        for w in partial_areas.windows(2) {
            assert!(w[1] < w[0], "partial area must shrink: {partial_areas:?}");
        }
        for w in entire_areas.windows(2) {
            assert!(w[1] >= w[0], "entire area must not shrink: {entire_areas:?}");
        }
    }

    #[test]
    fn deregistration_matches_a_fresh_tree_of_the_survivors() {
        let h1 = interior(1, SimplePolygon::rectangle(1.0, 1.0, 7.0, 7.0));
        let h2 = interior(2, SimplePolygon::rectangle(6.0, 6.0, 15.0, 12.0));

        let mut tree = QuadTree::new(bounds(), 4);
        tree.register(&h1).unwrap();
        tree.register(&h2).unwrap();
        tree.deregister(HazardId(1)).unwrap();

        let mut fresh = QuadTree::new(bounds(), 4);
        fresh.register(&h2).unwrap();
        assert_eq!(tree, fresh);
        assert!(probe_equivalent(&tree, &fresh, 1000));
    }

    #[test]
    fn edge_queries_cover_all_three_verdicts() {
        let empty = QuadTree::<f64>::new(bounds(), 3);
        let e = Edge::new(Point::new(1.0, 1.0), Point::new(15.0, 15.0));
        assert_eq!(empty.query_edge(&e, &RelevantIds::default()).verdict, ProbeVerdict::Clear);

        let mut tree = QuadTree::new(bounds(), 3);
        tree.register(&interior(1, SimplePolygon::rectangle(0.5, 0.5, 9.5, 9.5))).unwrap();
        let rel = all_ids(&tree);

        // deep inside the hazard: crosses an entirely covered node
        let hit = tree.query_edge(&Edge::new(Point::new(4.0, 5.0), Point::new(6.0, 5.0)), &rel);
        assert_eq!(hit.verdict, ProbeVerdict::Collision);
        assert!(hit.unresolved.is_empty());

        let clear = tree.query_edge(&Edge::new(Point::new(12.0, 12.0), Point::new(15.0, 15.0)), &rel);
        assert_eq!(clear.verdict, ProbeVerdict::Clear);

        // grazes the hazard boundary region without touching an entire node
        let indet = tree.query_edge(&Edge::new(Point::new(9.7, 0.2), Point::new(9.7, 15.0)), &rel);
        assert_eq!(indet.verdict, ProbeVerdict::Indeterminable);
        assert!(!indet.unresolved.is_empty());
    }

    /// The unresolved set must be exactly the deduplicated union of the
    /// partial edge lists of the leaves the probe crosses, independently
    /// recomputed from the hazard geometry.
    #[test]
    fn unresolved_edges_match_the_crossed_leaves() {
        let shape = SimplePolygon::new(vec![
            Point::new(1.0, 1.0),
            Point::new(10.0, 3.0),
            Point::new(12.0, 10.0),
            Point::new(2.0, 12.0),
        ])
        .unwrap();
        let mut tree = QuadTree::new(bounds(), 2);
        tree.register(&interior(1, shape.clone())).unwrap();
        let rel = all_ids(&tree);

        let e = Edge::new(Point::new(0.5, 13.5), Point::new(13.5, 11.5));
        let probe = tree.query_edge(&e, &rel);
        assert_eq!(probe.verdict, ProbeVerdict::Indeterminable);

        // derived oracle: enumerate crossed leaves and reclassify their
        // partial edges straight from the hazard shape
        let mut expected: Vec<u32> = Vec::new();
        tree.root().for_each_leaf(&mut |leaf| {
            if !crate::geom::predicates::edge_intersects_aabb(&e, &leaf.aabb.inflated(f64::EPS)) {
                return;
            }
            if matches!(leaf.presence_of(HazardId(1)), Some(Presence::Partial(_))) {
                for (idx, he) in shape.edges().iter().enumerate() {
                    if crate::geom::predicates::edge_intersects_aabb(
                        he,
                        &leaf.aabb.inflated(f64::EPS),
                    ) {
                        expected.push(idx as u32);
                    }
                }
            }
        });
        expected.sort_unstable();
        expected.dedup();

        let got: Vec<&Edge<f64>> = probe.unresolved.iter().map(|(_, e)| e).collect();
        assert_eq!(got.len(), expected.len());
        for (idx, got_edge) in expected.iter().zip(&got) {
            assert_eq!(**got_edge, shape.edges()[*idx as usize]);
        }
    }

    #[test]
    fn circle_queries_cover_all_three_verdicts() {
        let mut tree = QuadTree::new(bounds(), 3);
        tree.register(&interior(1, SimplePolygon::rectangle(0.5, 0.5, 9.5, 9.5))).unwrap();
        let rel = all_ids(&tree);

        let clear = tree.query_circle(&Circle::new(Point::new(13.0, 13.0), 1.0), &rel);
        assert_eq!(clear.verdict, ProbeVerdict::Clear);

        let hit = tree.query_circle(&Circle::new(Point::new(5.0, 5.0), 1.5), &rel);
        assert_eq!(hit.verdict, ProbeVerdict::Collision);

        let indet = tree.query_circle(&Circle::new(Point::new(10.2, 5.0), 0.4), &rel);
        assert_eq!(indet.verdict, ProbeVerdict::Indeterminable);

        // derived oracle for the unresolved set, as in the edge case
        let c = Circle::new(Point::new(10.2, 5.0), 0.4);
        let mut expected = 0usize;
        let mut seen = std::collections::BTreeSet::new();
        tree.root().for_each_leaf(&mut |leaf| {
            if crate::geom::predicates::circle_intersects_aabb(&c, &leaf.aabb.inflated(f64::EPS))
            {
                if let Some(Presence::Partial(edges)) = leaf.presence_of(HazardId(1)) {
                    for (idx, _) in edges {
                        seen.insert(*idx);
                    }
                }
            }
        });
        expected += seen.len();
        assert_eq!(indet.unresolved.len(), expected);
    }

    #[test]
    fn point_queries_report_the_leaf_verdict() {
        let empty = QuadTree::<f64>::new(bounds(), 3);
        assert_eq!(
            empty.query_point(Point::new(8.0, 8.0), &RelevantIds::default()),
            ProbeVerdict::Clear
        );

        let mut tree = QuadTree::new(bounds(), 3);
        tree.register(&interior(1, SimplePolygon::rectangle(0.5, 0.5, 9.5, 9.5))).unwrap();
        let rel = all_ids(&tree);
        assert_eq!(tree.query_point(Point::new(5.0, 5.0), &rel), ProbeVerdict::Collision);
        assert_eq!(tree.query_point(Point::new(14.0, 14.0), &rel), ProbeVerdict::Clear);
        assert_eq!(tree.query_point(Point::new(9.4, 9.4), &rel), ProbeVerdict::Indeterminable);
    }

    /// A hazard filtered out by relevance must be invisible to queries.
    #[test]
    fn irrelevant_hazards_are_ignored() {
        let mut tree = QuadTree::new(bounds(), 3);
        tree.register(&interior(1, SimplePolygon::rectangle(0.5, 0.5, 9.5, 9.5))).unwrap();
        let none = RelevantIds::default();
        let e = Edge::new(Point::new(4.0, 5.0), Point::new(6.0, 5.0));
        assert_eq!(tree.query_edge(&e, &none).verdict, ProbeVerdict::Clear);
    }
}
