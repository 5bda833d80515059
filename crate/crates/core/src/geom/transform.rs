use crate::geom::Point;
use crate::scalar::Scalar;

/// A rigid transformation: an optional reflection about the y-axis, followed
/// by a rotation, followed by a translation. The composition order is fixed.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Transformation<T> {
    /// Rotation angle in radians (counter-clockwise).
    pub rotation: T,
    /// Reflect about the y-axis (`x ↦ -x`) before rotating.
    pub flip: bool,
    /// Translation applied last.
    pub translation: (T, T),
}

impl<T: Scalar> Transformation<T> {
    pub fn identity() -> Self {
        Self { rotation: T::zero(), flip: false, translation: (T::zero(), T::zero()) }
    }

    pub fn new(rotation: T, flip: bool, translation: (T, T)) -> Self {
        Self { rotation, flip, translation }
    }

    pub fn translation(dx: T, dy: T) -> Self {
        Self { rotation: T::zero(), flip: false, translation: (dx, dy) }
    }

    pub fn rotation(angle: T) -> Self {
        Self { rotation: angle, flip: false, translation: (T::zero(), T::zero()) }
    }

    /// Image of `p` under flip → rotate → translate.
    #[inline]
    pub fn apply(&self, p: Point<T>) -> Point<T> {
        let x = if self.flip { -p.x } else { p.x };
        let (sin, cos) = self.rotation.sin_cos();
        Point::new(
            cos * x - sin * p.y + self.translation.0,
            sin * x + cos * p.y + self.translation.1,
        )
    }

    /// The transformation mapping every image point back to its source.
    pub fn inverse(&self) -> Self {
        let (sin, cos) = self.rotation.sin_cos();
        let (tx, ty) = self.translation;
        if self.flip {
            // (R(θ)·F)⁻¹ = F·R(-θ) = R(θ)·F, translation: -R(θ)·F·t
            Self {
                rotation: self.rotation,
                flip: true,
                translation: (tx * cos + ty * sin, tx * sin - ty * cos),
            }
        } else {
            Self {
                rotation: -self.rotation,
                flip: false,
                translation: (-(tx * cos + ty * sin), tx * sin - ty * cos),
            }
        }
    }
}
