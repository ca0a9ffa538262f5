use nalgebra::Vector2;

/// Plane point / vector type used throughout the crate.
pub type Vec2 = Vector2<f64>;

/// Counter-clockwise rotation by a right angle.
#[inline]
pub fn perp(v: Vec2) -> Vec2 {
    Vec2::new(-v.y, v.x)
}

/// z-component of the planar cross product.
#[inline]
pub fn cross(a: Vec2, b: Vec2) -> f64 {
    a.x * b.y - a.y * b.x
}

#[inline]
pub fn unit(angle: f64) -> Vec2 {
    Vec2::new(angle.cos(), angle.sin())
}
