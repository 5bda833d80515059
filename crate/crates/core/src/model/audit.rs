//! Independent feasibility auditor.
//!
//! Re-validates a solution with the naive full-trigonometry oracle over the
//! ORIGINAL, unsimplified shapes — deliberately bypassing the engine, the
//! quadtree and the simplified geometry it was produced with.

use std::fmt;
use std::sync::Arc;

use crate::geom::naive;
use crate::hazard::{Hazard, HazardId};
use crate::model::{Instance, Solution};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// Two placed items overlap.
    ItemItemOverlap { layout: usize, item_a: String, item_b: String },
    /// A placed item is not fully inside its container.
    OutsideContainer { layout: usize, item: String },
    /// A placed item overlaps a zone of insufficient quality.
    QualityZoneOverlap { layout: usize, item: String, zone_quality: u32 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::ItemItemOverlap { layout, item_a, item_b } => {
                write!(f, "layout {layout}: items {item_a:?} and {item_b:?} overlap")
            }
            Violation::OutsideContainer { layout, item } => {
                write!(f, "layout {layout}: item {item:?} is not inside the container")
            }
            Violation::QualityZoneOverlap { layout, item, zone_quality } => {
                write!(
                    f,
                    "layout {layout}: item {item:?} overlaps a quality-{zone_quality} zone"
                )
            }
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct AuditReport {
    pub violations: Vec<Violation>,
}

impl AuditReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for AuditReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_clean() {
            return write!(f, "no violations");
        }
        for v in &self.violations {
            writeln!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Checks every placed item against its container, every zone it must
/// avoid and every other placed item in the same layout, using original
/// shapes throughout. A valid solution yields an empty report.
pub fn audit_solution<T: Scalar>(solution: &Solution<T>, instance: &Instance<T>) -> AuditReport {
    let mut report = AuditReport::default();

    for (li, layout) in solution.layouts.iter().enumerate() {
        let placed: Vec<(usize, crate::geom::SimplePolygon<T>)> = layout
            .placements()
            .iter()
            .map(|p| {
                (p.item_index, instance.items[p.item_index].shape_original.transformed(&p.transformation))
            })
            .collect();

        let container = layout.container();
        let container_hazard =
            Hazard::exterior(HazardId(0), Arc::clone(&container.shape_original));
        for (item_index, shape) in &placed {
            if container_hazard.naively_collides_with(shape) {
                report.violations.push(Violation::OutsideContainer {
                    layout: li,
                    item: instance.items[*item_index].id.clone(),
                });
            }
        }

        for zone in &container.zones {
            for (item_index, shape) in &placed {
                let required = match instance.items[*item_index].min_quality {
                    Some(m) => zone.quality < m,
                    None => false,
                };
                if required && naive::collision(&zone.shape_original, shape) {
                    report.violations.push(Violation::QualityZoneOverlap {
                        layout: li,
                        item: instance.items[*item_index].id.clone(),
                        zone_quality: zone.quality,
                    });
                }
            }
        }

        for i in 0..placed.len() {
            for j in (i + 1)..placed.len() {
                if naive::collision(&placed[i].1, &placed[j].1) {
                    report.violations.push(Violation::ItemItemOverlap {
                        layout: li,
                        item_a: instance.items[placed[i].0].id.clone(),
                        item_b: instance.items[placed[j].0].id.clone(),
                    });
                }
            }
        }
    }

    report
}
