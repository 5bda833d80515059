//! Exact 2D primitives and predicates, plus the naive full-trigonometry
//! collision oracle used for validation.

mod aabb;
mod circle;
mod edge;
pub mod naive;
mod point;
pub(crate) mod poi;
mod polygon;
pub mod predicates;
mod transform;

pub use aabb::{Aabb, AabbRelation};
pub use circle::Circle;
pub use edge::Edge;
pub use point::Point;
pub use polygon::{PolygonError, SimplePolygon, DEFAULT_POI_PRECISION};
pub use transform::Transformation;
