//! Points, projection directions and the orthogonal projection of a polyhedron
//! onto a plane.

use std::f64::consts::PI;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::polyhedron::Polyhedron;

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn dot(self, other: Vec2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the 3-D cross product, i.e. `det(self, other)`.
    pub fn cross(self, other: Vec2) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn distance(self, other: Vec2) -> f64 {
        (self - other).norm()
    }

    /// Counter-clockwise rotation about the origin.
    pub fn rotate(self, alpha: f64) -> Vec2 {
        let (s, c) = alpha.sin_cos();
        self.rotate_sc(s, c)
    }

    #[inline]
    pub(crate) fn rotate_sc(self, sin: f64, cos: f64) -> Vec2 {
        Vec2::new(self.x * cos - self.y * sin, self.x * sin + self.y * cos)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, rhs: f64) -> Vec2 {
        Vec2::new(self.x * rhs, self.y * rhs)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn dot(self, other: Vec3) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn cross(self, other: Vec3) -> Vec3 {
        Vec3::new(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }
}

impl From<[f64; 3]> for Vec3 {
    fn from([x, y, z]: [f64; 3]) -> Self {
        Vec3::new(x, y, z)
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, rhs: Vec3) -> Vec3 {
        Vec3::new(self.x + rhs.x, self.y + rhs.y, self.z + rhs.z)
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, rhs: Vec3) -> Vec3 {
        Vec3::new(self.x - rhs.x, self.y - rhs.y, self.z - rhs.z)
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    fn mul(self, rhs: f64) -> Vec3 {
        Vec3::new(self.x * rhs, self.y * rhs, self.z * rhs)
    }
}

/// Spherical angles of a viewing direction. `theta` is the azimuth and `phi`
/// the polar angle measured from the positive z axis.
///
/// Values outside `[0, 2π) × [0, π]` are accepted as-is; every real pair
/// defines a valid projection and published solutions occasionally sit a
/// rounding step outside the nominal ranges.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ProjectionAngles {
    pub theta: f64,
    pub phi: f64,
}

impl ProjectionAngles {
    pub const fn new(theta: f64, phi: f64) -> Self {
        Self { theta, phi }
    }

    /// Wraps `theta` into `[0, 2π)`; `phi` is left untouched.
    pub fn wrapped(theta: f64, phi: f64) -> Self {
        Self::new(theta.rem_euclid(2.0 * PI), phi)
    }

    /// Unit vector `(cos θ sin φ, sin θ sin φ, cos φ)`.
    pub fn direction(self) -> Vec3 {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        Vec3::new(ct * sp, st * sp, cp)
    }

    pub fn projection(self) -> Projection {
        Projection::new(self)
    }
}

/// Free-function form of [`ProjectionAngles::direction`].
pub fn direction(angles: ProjectionAngles) -> Vec3 {
    angles.direction()
}

/// The 2×3 orthogonal projection onto the plane perpendicular to the viewing
/// direction:
///
/// ```text
/// [ -sin θ         cos θ          0     ]
/// [ -cos θ cos φ   -sin θ cos φ   sin φ ]
/// ```
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Projection {
    pub rows: [[f64; 3]; 2],
}

impl Projection {
    pub fn new(angles: ProjectionAngles) -> Self {
        let (st, ct) = angles.theta.sin_cos();
        let (sp, cp) = angles.phi.sin_cos();
        Self {
            rows: [[-st, ct, 0.0], [-ct * cp, -st * cp, sp]],
        }
    }

    #[inline]
    pub fn apply(&self, p: Vec3) -> Vec2 {
        let [r0, r1] = &self.rows;
        Vec2::new(
            r0[0] * p.x + r0[1] * p.y + r0[2] * p.z,
            r1[0] * p.x + r1[1] * p.y + r1[2] * p.z,
        )
    }
}

pub fn projection_matrix(angles: ProjectionAngles) -> [[f64; 3]; 2] {
    Projection::new(angles).rows
}

/// Projects every vertex of `poly`; the output is index-aligned with the
/// polyhedron's vertex list.
pub fn project(poly: &Polyhedron, angles: ProjectionAngles) -> Vec<Vec2> {
    project_points(poly.vertices(), angles)
}

pub fn project_points(points: &[Vec3], angles: ProjectionAngles) -> Vec<Vec2> {
    let m = Projection::new(angles);
    points.iter().map(|&p| m.apply(p)).collect()
}

/// `T_{x,y} ∘ R_α` applied to a single point.
#[inline]
pub fn place(p: Vec2, alpha: f64, x: f64, y: f64) -> Vec2 {
    p.rotate(alpha) + Vec2::new(x, y)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-12
    }

    #[test]
    fn direction_examples() {
        let d = direction(ProjectionAngles::new(0.0, 0.0));
        assert!(close(d.x, 0.0) && close(d.y, 0.0) && close(d.z, 1.0));

        let s = 1.0 / 3f64.sqrt();
        let d = direction(ProjectionAngles::new(PI / 4.0, s.acos()));
        assert!(close(d.x, s) && close(d.y, s) && close(d.z, s));

        let d = direction(ProjectionAngles::new(PI / 2.0, PI / 2.0));
        assert!(close(d.x, 0.0) && close(d.y, 1.0) && close(d.z, 0.0));
    }

    #[test]
    fn matrix_examples() {
        let m = projection_matrix(ProjectionAngles::new(0.0, 0.0));
        let expect = [[0.0, 1.0, 0.0], [-1.0, 0.0, 0.0]];
        for r in 0..2 {
            for c in 0..3 {
                assert!(close(m[r][c], expect[r][c]), "{m:?}");
            }
        }
        let m = projection_matrix(ProjectionAngles::new(PI / 2.0, PI / 2.0));
        let expect = [[-1.0, 0.0, 0.0], [0.0, 0.0, 1.0]];
        for r in 0..2 {
            for c in 0..3 {
                assert!(close(m[r][c], expect[r][c]), "{m:?}");
            }
        }
    }

    #[test]
    fn kernel_is_the_viewing_direction() {
        for i in 0..50 {
            let a = ProjectionAngles::new(i as f64 * 0.37, i as f64 * 0.11);
            let p = Projection::new(a).apply(a.direction());
            assert!(p.norm() < 1e-12);
        }
    }

    #[test]
    fn rotation_is_counter_clockwise() {
        let p = Vec2::new(1.0, 0.0).rotate(PI / 2.0);
        assert!(close(p.x, 0.0) && close(p.y, 1.0));
    }
}
