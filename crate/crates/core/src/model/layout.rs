use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cde::{CDEngine, CdeConfig};
use crate::geom::Transformation;
use crate::hazard::{Hazard, HazardId};
use crate::model::{Container, Instance, Item};
use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PlaceError {
    #[error("placement collides with a hazard")]
    Collision,
    #[error("no placement at index {0}")]
    UnknownPlacement(usize),
}

/// A placed item copy: which item, under which rigid transformation.
#[derive(Clone, Debug)]
pub struct Placement<T> {
    pub item_index: usize,
    pub transformation: Transformation<T>,
    hazard_id: HazardId,
}

/// A container coupled to its engine state and the items placed in it.
/// `Clone` yields an independent snapshot answering queries identically.
#[derive(Clone, Debug)]
pub struct Layout<T> {
    container: Container<T>,
    engine: CDEngine<T>,
    placements: Vec<Placement<T>>,
    next_hazard: u64,
}

impl<T: Scalar> Layout<T> {
    /// Fresh layout: the container induces an exterior hazard, each of its
    /// quality zones an interior hazard carrying its quality level.
    pub fn new(container: Container<T>, config: CdeConfig) -> Self {
        let mut engine = CDEngine::new(*container.shape_original.aabb(), config);
        engine
            .register(Hazard::exterior(HazardId(0), Arc::clone(&container.shape_cde)))
            .expect("fresh engine");
        let mut next = 1;
        for zone in &container.zones {
            engine
                .register(
                    Hazard::interior(HazardId(next), Arc::clone(&zone.shape_cde))
                        .with_quality(zone.quality),
                )
                .expect("fresh engine");
            next += 1;
        }
        Self { container, engine, placements: Vec::new(), next_hazard: next }
    }

    pub fn strip(height: T, width: T, config: CdeConfig) -> Self {
        Self::new(Container::strip(height, width), config)
    }

    pub fn container(&self) -> &Container<T> {
        &self.container
    }

    pub fn engine(&self) -> &CDEngine<T> {
        &self.engine
    }

    pub fn placements(&self) -> &[Placement<T>] {
        &self.placements
    }

    /// Would this placement be feasible right now?
    pub fn can_place(&self, item: &Item<T>, t: &Transformation<T>) -> bool {
        !self.engine.collision(&item.query_shape(t), &item.hazard_filter())
    }

    /// Validates the placement and registers the item's hazard. On a
    /// collision the layout is left untouched.
    pub fn place(
        &mut self,
        item_index: usize,
        item: &Item<T>,
        t: Transformation<T>,
    ) -> Result<(), PlaceError> {
        let q = item.query_shape(&t);
        if self.engine.collision(&q, &item.hazard_filter()) {
            return Err(PlaceError::Collision);
        }
        let hazard_id = HazardId(self.next_hazard);
        self.next_hazard += 1;
        self.engine
            .register(Hazard::interior(hazard_id, Arc::new(q.shape().clone())))
            .expect("fresh hazard id");
        self.placements.push(Placement { item_index, transformation: t, hazard_id });
        Ok(())
    }

    /// Registers a placement without validating it, for re-basing
    /// known-feasible placements onto a compatible container (a grown
    /// strip). The auditor exists to catch misuse.
    pub fn place_unchecked(&mut self, item_index: usize, item: &Item<T>, t: Transformation<T>) {
        let hazard_id = HazardId(self.next_hazard);
        self.next_hazard += 1;
        self.engine
            .register(Hazard::interior(hazard_id, Arc::new(item.shape_cde.transformed(&t))))
            .expect("fresh hazard id");
        self.placements.push(Placement { item_index, transformation: t, hazard_id });
    }

    /// Deregisters the placement's hazard and forgets it.
    pub fn remove(&mut self, placement_index: usize) -> Result<Placement<T>, PlaceError> {
        if placement_index >= self.placements.len() {
            return Err(PlaceError::UnknownPlacement(placement_index));
        }
        let placement = self.placements.remove(placement_index);
        self.engine.deregister(placement.hazard_id).expect("placement hazard registered");
        Ok(placement)
    }

    /// Whole-value copy usable independently of the original.
    pub fn snapshot(&self) -> Self {
        self.clone()
    }

    /// Largest x-coordinate reached by any placed shape (as validated by
    /// the engine); zero for an empty layout.
    pub fn max_x_extent(&self, items: &[Item<T>]) -> T {
        self.placements.iter().fold(T::zero(), |acc, p| {
            let bb = *items[p.item_index].shape_cde.transformed(&p.transformation).aabb();
            acc.max(bb.x_max)
        })
    }

    /// Total original-shape area of the placed items.
    pub fn placed_area(&self, items: &[Item<T>]) -> T {
        self.placements
            .iter()
            .fold(T::zero(), |acc, p| acc + items[p.item_index].shape_original.area())
    }
}

#[derive(Clone, Debug)]
pub struct SolutionMeta {
    pub seed: u64,
    /// Solver configuration snapshot, embedded in the solution document.
    pub config: serde_json::Value,
    /// Wall-clock runtime; reported but never serialized so identical runs
    /// produce identical documents.
    pub runtime_ms: Option<u64>,
}

/// A full solution: one layout snapshot per used container.
#[derive(Clone, Debug)]
pub struct Solution<T> {
    pub instance: String,
    pub layouts: Vec<Layout<T>>,
    /// Strip width or total cost of the opened bins.
    pub objective: T,
    /// Item ids that could not be placed, with their missing counts.
    pub unplaced: Vec<(String, usize)>,
    pub metadata: SolutionMeta,
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct SolutionDoc {
    pub instance: String,
    pub objective: f64,
    pub placements: Vec<PlacementDoc>,
    pub unplaced: Vec<UnplacedDoc>,
    pub metadata: MetaDoc,
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct PlacementDoc {
    pub item: String,
    pub container: usize,
    /// Rotation angle in radians.
    pub rotation: f64,
    pub flip: bool,
    pub translation: [f64; 2],
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct UnplacedDoc {
    pub item: String,
    pub count: usize,
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct MetaDoc {
    pub seed: u64,
    pub config: serde_json::Value,
}

impl<T: Scalar> Solution<T> {
    pub fn to_doc(&self, instance: &Instance<T>) -> SolutionDoc {
        let mut placements = Vec::new();
        for (ci, layout) in self.layouts.iter().enumerate() {
            for p in layout.placements() {
                placements.push(PlacementDoc {
                    item: instance.items[p.item_index].id.clone(),
                    container: ci,
                    rotation: p.transformation.rotation.to_f64().unwrap(),
                    flip: p.transformation.flip,
                    translation: [
                        p.transformation.translation.0.to_f64().unwrap(),
                        p.transformation.translation.1.to_f64().unwrap(),
                    ],
                });
            }
        }
        SolutionDoc {
            instance: self.instance.clone(),
            objective: self.objective.to_f64().unwrap(),
            placements,
            unplaced: self
                .unplaced
                .iter()
                .map(|(item, count)| UnplacedDoc { item: item.clone(), count: *count })
                .collect(),
            metadata: MetaDoc { seed: self.metadata.seed, config: self.metadata.config.clone() },
        }
    }

    pub fn to_json(&self, instance: &Instance<T>) -> String {
        serde_json::to_string_pretty(&self.to_doc(instance)).expect("solution serialization")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Point;
    use crate::hazard::HazardFilter;
    use crate::model::{load_instance, PrepConfig, Problem};

    fn strip_instance() -> Instance<f64> {
        let doc = r#"{
            "name": "fixture",
            "strip_height": 10.0,
            "items": [
                {"id": "sq", "demand": 3, "shape": [[0,0],[3,0],[3,3],[0,3]], "rotations": [0.0]}
            ]
        }"#;
        load_instance(doc, &PrepConfig::default()).unwrap()
    }

    fn probe_feasible(layout: &Layout<f64>, item: &Item<f64>, x: f64, y: f64) -> bool {
        layout.can_place(item, &Transformation::translation(x, y))
    }

    #[test]
    fn place_then_remove_restores_query_behaviour() {
        let instance = strip_instance();
        let item = &instance.items[0];
        let mut layout = Layout::strip(10.0, 20.0, CdeConfig::default());

        let probes: Vec<(f64, f64)> =
            (0..20).map(|i| ((i as f64) * 0.83 % 16.0, (i as f64) * 1.37 % 7.0)).collect();
        let before: Vec<bool> =
            probes.iter().map(|&(x, y)| probe_feasible(&layout, item, x, y)).collect();

        layout.place(0, item, Transformation::translation(4.0, 4.0)).unwrap();
        layout.remove(0).unwrap();

        let after: Vec<bool> =
            probes.iter().map(|&(x, y)| probe_feasible(&layout, item, x, y)).collect();
        assert_eq!(before, after);
        assert!(layout.placements().is_empty());
    }

    #[test]
    fn overlapping_placement_is_rejected_and_state_unchanged() {
        let instance = strip_instance();
        let item = &instance.items[0];
        let mut layout = Layout::strip(10.0, 20.0, CdeConfig::default());

        layout.place(0, item, Transformation::translation(0.5, 0.5)).unwrap();
        layout.place(0, item, Transformation::translation(5.0, 5.0)).unwrap();
        let err = layout.place(0, item, Transformation::translation(4.0, 4.0));
        assert_eq!(err, Err(PlaceError::Collision));
        assert_eq!(layout.placements().len(), 2);

        assert!(matches!(layout.remove(7), Err(PlaceError::UnknownPlacement(7))));
    }

    #[test]
    fn snapshots_are_independent_and_equivalent() {
        let instance = strip_instance();
        let item = &instance.items[0];
        let mut layout = Layout::strip(10.0, 20.0, CdeConfig::default());
        layout.place(0, item, Transformation::translation(1.0, 1.0)).unwrap();

        let snapshot = layout.snapshot();
        layout.place(0, item, Transformation::translation(6.0, 6.0)).unwrap();

        // the snapshot does not see the later mutation
        assert_eq!(snapshot.placements().len(), 1);
        assert!(probe_feasible(&snapshot, item, 6.5, 6.5));
        assert!(!probe_feasible(&layout, item, 6.5, 6.5));

        // restoring means simply adopting the snapshot again
        let restored = snapshot.snapshot();
        let probes: Vec<(f64, f64)> =
            (0..25).map(|i| ((i as f64) * 1.3 % 16.0, (i as f64) * 0.7 % 7.0)).collect();
        for (x, y) in probes {
            assert_eq!(
                probe_feasible(&restored, item, x, y),
                probe_feasible(&snapshot, item, x, y)
            );
        }
    }

    #[test]
    fn strip_objective_is_the_exact_max_extent() {
        let instance = strip_instance();
        let item = &instance.items[0];
        let mut layout = Layout::strip(10.0, 20.0, CdeConfig::default());
        layout.place(0, item, Transformation::translation(0.1, 0.2)).unwrap();
        layout.place(0, item, Transformation::translation(8.25, 3.0)).unwrap();
        let extent = layout.max_x_extent(&instance.items);
        let expect = instance.items[0]
            .shape_cde
            .transformed(&Transformation::translation(8.25, 3.0))
            .aabb()
            .x_max;
        assert_eq!(extent, expect);
    }

    #[test]
    fn zone_hazards_carry_their_quality() {
        let doc = r#"{
            "name": "zones",
            "bins": [{
                "shape": [[0,0],[20,0],[20,10],[0,10]],
                "cost": 1.0,
                "zones": [
                    {"quality": 1, "shape": [[1,1],[4,1],[4,4],[1,4]]},
                    {"quality": 2, "shape": [[10,5],[14,5],[14,9],[10,9]]}
                ]
            }],
            "items": [
                {"id": "picky", "demand": 1, "shape": [[0,0],[2,0],[2,2],[0,2]],
                 "rotations": [0.0], "min_quality": 2},
                {"id": "easy", "demand": 1, "shape": [[0,0],[2,0],[2,2],[0,2]],
                 "rotations": [0.0]}
            ]
        }"#;
        let instance: Instance<f64> = load_instance(doc, &PrepConfig::default()).unwrap();
        let Problem::Bins(bins) = &instance.problem else { panic!() };
        let layout = Layout::new(bins[0].clone(), CdeConfig::default());

        let qualities: Vec<Option<u32>> =
            layout.engine().hazards().iter().map(|h| h.quality).collect();
        assert_eq!(qualities, vec![None, Some(1), Some(2)]);

        // the picky item (needs >= 2) is blocked by the quality-1 zone only
        let picky = &instance.items[0];
        let easy = &instance.items[1];
        let on_zone1 = Transformation::translation(1.5, 1.5);
        let on_zone2 = Transformation::translation(10.5, 5.5);
        assert!(!layout.can_place(picky, &on_zone1));
        assert!(layout.can_place(picky, &on_zone2));
        assert!(layout.can_place(easy, &on_zone1));
        assert!(layout.can_place(easy, &on_zone2));

        let _ = Point::new(0.0, 0.0);
    }
}
