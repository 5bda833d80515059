use crate::geom::{Aabb, Point};
use crate::scalar::Scalar;

/// A circle with strictly positive radius.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Circle<T> {
    pub center: Point<T>,
    pub radius: T,
}

impl<T: Scalar> Circle<T> {
    #[inline]
    pub fn new(center: Point<T>, radius: T) -> Self {
        assert!(radius.is_finite() && radius > T::zero(), "invalid circle radius");
        Self { center, radius }
    }

    pub fn aabb(&self) -> Aabb<T> {
        Aabb::new(
            self.center.x - self.radius,
            self.center.y - self.radius,
            self.center.x + self.radius,
            self.center.y + self.radius,
        )
    }
}
