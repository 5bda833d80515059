//! Problem entities for strip- and bin-packing: instance ingestion,
//! layouts coupled to an engine, solution snapshots and an independent
//! feasibility auditor working on the original, unsimplified shapes.

mod audit;
mod instance;
mod layout;

pub use audit::{audit_solution, AuditReport, Violation};
pub use instance::{
    load_instance, Container, Instance, InstanceError, Item, PrepConfig, effective_quality_filter,
    Problem, QualityZone, Rotations,
};
pub use layout::{Layout, PlaceError, Placement, Solution, SolutionDoc, SolutionMeta};
