//! A collision detection engine (CDE) for 2D irregular cutting and packing
//! problems.
//!
//! The engine validates candidate item placements against a set of
//! [`hazard::Hazard`]s — placed items, the container's exterior, quality
//! zones — and keeps its verdicts identical to the naive full-trigonometry
//! test while being orders of magnitude faster. It is built around:
//!
//! * hazards as the unifying abstraction for anything that can invalidate a
//!   placement ([`hazard`]),
//! * a depth-bounded quadtree broad phase over those hazards ([`quadtree`]),
//! * a fail-fast surrogate of inscribed poles and piers that resolves
//!   obviously colliding queries early ([`surrogate`]),
//! * conservative polygon simplification that only ever inflates items or
//!   deflates containers ([`simplify`]).
//!
//! [`model`] hosts the strip- and bin-packing problem entities, instance
//! ingestion and an independent feasibility auditor working on the original,
//! unsimplified shapes.
//!
//! All geometry is generic over the scalar type via [`Scalar`]; concrete
//! `f64` aliases live at the crate root.

pub mod cde;
pub mod geom;
pub mod hazard;
pub mod model;
pub mod quadtree;
pub mod scalar;
pub mod simplify;
pub mod surrogate;
pub mod synthetic;

pub use scalar::Scalar;

/// Concrete aliases for the default double-precision build.
pub type Point64 = geom::Point<f64>;
pub type Edge64 = geom::Edge<f64>;
pub type Aabb64 = geom::Aabb<f64>;
pub type Circle64 = geom::Circle<f64>;
pub type Transformation64 = geom::Transformation<f64>;
pub type SimplePolygon64 = geom::SimplePolygon<f64>;
pub type Hazard64 = hazard::Hazard<f64>;
pub type QuadTree64 = quadtree::QuadTree<f64>;
pub type Surrogate64 = surrogate::Surrogate<f64>;
pub type CDEngine64 = cde::CDEngine<f64>;
pub type QueryShape64 = cde::QueryShape<f64>;
pub type Instance64 = model::Instance<f64>;
pub type Layout64 = model::Layout<f64>;
pub type Solution64 = model::Solution<f64>;
