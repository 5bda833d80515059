//! Hazards: the unifying abstraction for anything that can invalidate a
//! placement.
//!
//! An entity (item, container, quality zone) induces a hazardous region:
//! its own interior for interior hazards, the complement of its shape for
//! exterior hazards. Queries are answered against the set of hazards deemed
//! relevant by a per-query filter.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::geom::{naive, predicates, SimplePolygon};
use crate::scalar::Scalar;

/// Identifier of a hazard, unique within one engine.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct HazardId(pub u64);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HazardKind {
    /// The hazardous region is the interior of the inducing shape
    /// (placed items, inferior-quality zones).
    Interior,
    /// The hazardous region is the complement of the inducing shape
    /// (containers, superior-quality zones).
    Exterior,
}

#[derive(Clone, Debug)]
pub struct Hazard<T> {
    pub id: HazardId,
    pub kind: HazardKind,
    /// Shape of the inducing entity.
    pub shape: Arc<SimplePolygon<T>>,
    /// Quality level of the inducing zone, if any. Hazards without a
    /// quality level are relevant to every query.
    pub quality: Option<u32>,
    /// Inactive hazards behave as if deregistered, without tree surgery.
    pub active: bool,
}

impl<T: Scalar> Hazard<T> {
    pub fn interior(id: HazardId, shape: Arc<SimplePolygon<T>>) -> Self {
        Self { id, kind: HazardKind::Interior, shape, quality: None, active: true }
    }

    pub fn exterior(id: HazardId, shape: Arc<SimplePolygon<T>>) -> Self {
        Self { id, kind: HazardKind::Exterior, shape, quality: None, active: true }
    }

    pub fn with_quality(mut self, quality: u32) -> Self {
        self.quality = Some(quality);
        self
    }

    /// Naive full-trigonometry test of `other` against this hazard's
    /// region, used as the ground-truth oracle.
    ///
    /// Interior hazards collide like plain polygons. For exterior hazards
    /// the region is the complement of the shape, so `other` collides
    /// unless it lies fully inside the inducing shape.
    pub fn naively_collides_with(&self, other: &SimplePolygon<T>) -> bool {
        match self.kind {
            HazardKind::Interior => naive::collision(&self.shape, other),
            HazardKind::Exterior => {
                for e_h in self.shape.edges() {
                    for e_o in other.edges() {
                        if predicates::edges_intersect(e_h, e_o) {
                            return true;
                        }
                    }
                }
                // no boundary contact: `other` is fully inside the shape,
                // fully outside it, or swallows it. Inclusion is
                // noncommutative, so probe both directions.
                if !predicates::point_in_polygon(other.poi().center, &self.shape) {
                    return true;
                }
                if !predicates::point_in_polygon(self.shape.poi().center, other) {
                    return false; // other ⊆ shape
                }
                // both probes inside: the smaller region is the contained one
                other.area() >= self.shape.area()
            }
        }
    }
}

/// Per-query relevance filter.
///
/// A hazard is relevant iff it is active, its id is not ignored and its
/// quality level (when present) is below the minimum the query requires.
/// Quality-carrying hazards are irrelevant to queries without a quality
/// requirement.
#[derive(Clone, Debug, Default)]
pub struct HazardFilter {
    ignored: Vec<HazardId>,
    min_quality: Option<u32>,
}

impl HazardFilter {
    /// Filter deeming every active hazard relevant.
    pub fn none() -> Self {
        Self::default()
    }

    pub fn ignoring(ids: impl IntoIterator<Item = HazardId>) -> Self {
        let mut ignored: Vec<_> = ids.into_iter().collect();
        ignored.sort_unstable();
        Self { ignored, min_quality: None }
    }

    pub fn with_min_quality(mut self, min_quality: u32) -> Self {
        self.min_quality = Some(min_quality);
        self
    }

    pub fn min_quality(min_quality: Option<u32>) -> Self {
        Self { ignored: Vec::new(), min_quality }
    }

    pub fn deems_relevant<T>(&self, h: &Hazard<T>) -> bool {
        if !h.active || self.ignored.binary_search(&h.id).is_ok() {
            return false;
        }
        match h.quality {
            None => true,
            Some(q) => match self.min_quality {
                None => false,
                Some(m) => q < m,
            },
        }
    }
}

/// Hazards satisfying the relevance predicate, order preserved.
pub fn relevant_hazards<'a, T>(all: &'a [Hazard<T>], f: &HazardFilter) -> Vec<&'a Hazard<T>> {
    all.iter().filter(|h| f.deems_relevant(h)).collect()
}

/// Resolved id set of the hazards relevant to one query; what the quadtree
/// consumes on the hot path.
#[derive(Clone, Debug, Default)]
pub struct RelevantIds {
    ids: Vec<HazardId>,
}

impl RelevantIds {
    pub fn resolve<'a, T: 'a>(
        all: impl IntoIterator<Item = &'a Hazard<T>>,
        f: &HazardFilter,
    ) -> Self {
        let mut ids: Vec<_> =
            all.into_iter().filter(|h| f.deems_relevant(h)).map(|h| h.id).collect();
        ids.sort_unstable();
        Self { ids }
    }

    pub fn all(ids: impl IntoIterator<Item = HazardId>) -> Self {
        let mut ids: Vec<_> = ids.into_iter().collect();
        ids.sort_unstable();
        Self { ids }
    }

    #[inline]
    pub fn contains(&self, id: HazardId) -> bool {
        self.ids.binary_search(&id).is_ok()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Point;

    fn square(side: f64) -> Arc<SimplePolygon<f64>> {
        Arc::new(
            SimplePolygon::new(vec![
                Point::new(0.0, 0.0),
                Point::new(side, 0.0),
                Point::new(side, side),
                Point::new(0.0, side),
            ])
            .unwrap(),
        )
    }

    fn hazards() -> Vec<Hazard<f64>> {
        let s = square(1.0);
        vec![
            Hazard::interior(HazardId(1), s.clone()),
            Hazard::interior(HazardId(2), s.clone()).with_quality(1),
            Hazard::interior(HazardId(3), s.clone()).with_quality(2),
            Hazard::interior(HazardId(4), s.clone()).with_quality(3),
            Hazard::exterior(HazardId(5), s),
        ]
    }

    #[test]
    fn empty_filter_keeps_all_unqualified_and_active() {
        let mut all = hazards();
        let kept = relevant_hazards(&all, &HazardFilter::none());
        // quality-carrying hazards are irrelevant without a requirement
        assert_eq!(kept.iter().map(|h| h.id.0).collect::<Vec<_>>(), vec![1, 5]);

        all[0].active = false;
        let kept = relevant_hazards(&all, &HazardFilter::none());
        assert_eq!(kept.iter().map(|h| h.id.0).collect::<Vec<_>>(), vec![5]);
    }

    #[test]
    fn ignored_ids_are_dropped() {
        let all = hazards();
        let f = HazardFilter::ignoring([HazardId(1)]);
        let kept = relevant_hazards(&all, &f);
        assert_eq!(kept.iter().map(|h| h.id.0).collect::<Vec<_>>(), vec![5]);
    }

    #[test]
    fn quality_threshold_keeps_only_inferior_zones() {
        // item requiring quality >= 2 against zones of quality 1, 2, 3:
        // only the quality-1 zone remains hazardous
        let all = hazards();
        let f = HazardFilter::none().with_min_quality(2);
        let kept = relevant_hazards(&all, &f);
        assert_eq!(kept.iter().map(|h| h.id.0).collect::<Vec<_>>(), vec![1, 2, 5]);
    }

    #[test]
    fn relevant_is_always_a_subset() {
        let all = hazards();
        for f in [
            HazardFilter::none(),
            HazardFilter::ignoring([HazardId(2), HazardId(5)]),
            HazardFilter::none().with_min_quality(3),
        ] {
            let kept = relevant_hazards(&all, &f);
            assert!(kept.len() <= all.len());
            for h in kept {
                assert!(all.iter().any(|o| o.id == h.id));
            }
        }
    }
}
