use crate::geom::Point;
use crate::scalar::Scalar;

/// Axis-aligned bounding box with non-degenerate extent.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Aabb<T> {
    pub x_min: T,
    pub y_min: T,
    pub x_max: T,
    pub y_max: T,
}

/// Set relation between two closed boxes.
///
/// Containment is inclusive on all four sides; when both boxes contain each
/// other (they are equal) `AContainsB` is reported.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AabbRelation {
    Disjoint,
    Intersecting,
    AContainsB,
    BContainsA,
}

impl<T: Scalar> Aabb<T> {
    #[inline]
    pub fn new(x_min: T, y_min: T, x_max: T, y_max: T) -> Self {
        assert!(x_min < x_max && y_min < y_max, "degenerate aabb");
        Self { x_min, y_min, x_max, y_max }
    }

    pub fn from_points<I: IntoIterator<Item = Point<T>>>(points: I) -> Self {
        let mut it = points.into_iter();
        let first = it.next().expect("aabb of empty point set");
        let mut bb = (first.x, first.y, first.x, first.y);
        for p in it {
            bb.0 = bb.0.min(p.x);
            bb.1 = bb.1.min(p.y);
            bb.2 = bb.2.max(p.x);
            bb.3 = bb.3.max(p.y);
        }
        Self::new(bb.0, bb.1, bb.2, bb.3)
    }

    #[inline]
    pub fn width(&self) -> T {
        self.x_max - self.x_min
    }

    #[inline]
    pub fn height(&self) -> T {
        self.y_max - self.y_min
    }

    #[inline]
    pub fn center(&self) -> Point<T> {
        Point::new(
            (self.x_min + self.x_max) * T::half(),
            (self.y_min + self.y_max) * T::half(),
        )
    }

    pub fn corners(&self) -> [Point<T>; 4] {
        [
            Point::new(self.x_min, self.y_min),
            Point::new(self.x_max, self.y_min),
            Point::new(self.x_max, self.y_max),
            Point::new(self.x_min, self.y_max),
        ]
    }

    /// Diagonal length, used as the size reference for relative tolerances.
    #[inline]
    pub fn diameter(&self) -> T {
        self.width().hypot(self.height())
    }

    /// Closed-box point membership.
    #[inline]
    pub fn contains_point(&self, p: Point<T>) -> bool {
        p.x >= self.x_min && p.x <= self.x_max && p.y >= self.y_min && p.y <= self.y_max
    }

    /// Inclusive containment of `other` in `self`.
    #[inline]
    pub fn contains(&self, other: &Self) -> bool {
        self.x_min <= other.x_min
            && self.y_min <= other.y_min
            && self.x_max >= other.x_max
            && self.y_max >= other.y_max
    }

    /// Closed-box overlap: touching boxes intersect.
    #[inline]
    pub fn intersects(&self, other: &Self) -> bool {
        self.x_min <= other.x_max
            && other.x_min <= self.x_max
            && self.y_min <= other.y_max
            && other.y_min <= self.y_max
    }

    pub fn relation(&self, other: &Self) -> AabbRelation {
        if self.contains(other) {
            AabbRelation::AContainsB
        } else if other.contains(self) {
            AabbRelation::BContainsA
        } else if self.intersects(other) {
            AabbRelation::Intersecting
        } else {
            AabbRelation::Disjoint
        }
    }

    /// Box grown by `margin` on all sides.
    pub fn inflated(&self, margin: T) -> Self {
        Self::new(
            self.x_min - margin,
            self.y_min - margin,
            self.x_max + margin,
            self.y_max + margin,
        )
    }

    /// The four equal quadrants of a center split, in
    /// [SW, SE, NE, NW] order.
    pub fn quadrants(&self) -> [Self; 4] {
        let c = self.center();
        [
            Self::new(self.x_min, self.y_min, c.x, c.y),
            Self::new(c.x, self.y_min, self.x_max, c.y),
            Self::new(c.x, c.y, self.x_max, self.y_max),
            Self::new(self.x_min, c.y, c.x, self.y_max),
        ]
    }
}
