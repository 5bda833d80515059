use crate::geom::Point;
use crate::scalar::Scalar;

/// A line segment between two distinct points.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Edge<T> {
    pub start: Point<T>,
    pub end: Point<T>,
}

impl<T: Scalar> Edge<T> {
    /// Panics on zero-length segments; polygon validation rejects those
    /// before any edge is built from user input.
    #[inline]
    pub fn new(start: Point<T>, end: Point<T>) -> Self {
        assert!(
            start.x != end.x || start.y != end.y,
            "zero-length edge at ({:?})",
            start
        );
        Self { start, end }
    }

    #[inline]
    pub fn direction(&self) -> Point<T> {
        self.end - self.start
    }

    #[inline]
    pub fn length(&self) -> T {
        self.start.distance(self.end)
    }

    /// Point at parameter `t` in `[0, 1]` along the segment.
    #[inline]
    pub fn at(&self, t: T) -> Point<T> {
        self.start + self.direction() * t
    }

    #[inline]
    pub fn reversed(&self) -> Self {
        Self { start: self.end, end: self.start }
    }
}
