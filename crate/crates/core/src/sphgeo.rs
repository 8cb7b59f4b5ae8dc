//! Points on the unit sphere: arcs, chords, subdivision of great-circle
//! arcs, radial projection and orthonormal frames.
//!
//! All angles are radians.

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::vec3::Vec3;

/// A direction in R³ with unit norm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitVec<T>(Vec3<T>);

impl<T: Real> UnitVec<T> {
    /// Accepts `(x, y, z)` only if its norm is 1 within `T::NORM_TOL`.
    pub fn new(x: T, y: T, z: T) -> Result<Self> {
        let v = Vec3::new(x, y, z);
        let n = v.norm();
        if (n - T::one()).abs() > T::NORM_TOL {
            return Err(Error::NotUnit { norm: n.as_f64() });
        }
        Ok(Self(v))
    }

    #[inline]
    pub fn vec(self) -> Vec3<T> {
        self.0
    }
    #[inline]
    pub fn x(self) -> T {
        self.0.x
    }
    #[inline]
    pub fn y(self) -> T {
        self.0.y
    }
    #[inline]
    pub fn z(self) -> T {
        self.0.z
    }
    #[inline]
    pub fn dot(self, o: Self) -> T {
        self.0.dot(o.0)
    }
}

impl<T: Real> std::ops::Neg for UnitVec<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self(-self.0)
    }
}

impl<T: Real> From<UnitVec<T>> for Vec3<T> {
    fn from(u: UnitVec<T>) -> Self {
        u.0
    }
}

/// Right-handed orthonormal frame. Maps local coordinates `(x, y, z)` to
/// `x·e1 + y·e2 + z·e3`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Frame<T> {
    pub e1: UnitVec<T>,
    pub e2: UnitVec<T>,
    pub e3: UnitVec<T>,
}

impl<T: Real> Frame<T> {
    pub fn to_world(&self, local: Vec3<T>) -> Vec3<T> {
        self.e1.vec() * local.x + self.e2.vec() * local.y + self.e3.vec() * local.z
    }

    pub fn to_local(&self, world: Vec3<T>) -> Vec3<T> {
        Vec3::new(world.dot(self.e1.vec()), world.dot(self.e2.vec()), world.dot(self.e3.vec()))
    }
}

/// Great-circle angle between `p` and `q`, in `[0, π]`.
///
/// Uses `atan2(|p×q|, p·q)`, which keeps full relative precision for tiny
/// and near-antipodal arcs.
pub fn arc_length<T: Real>(p: UnitVec<T>, q: UnitVec<T>) -> T {
    let (p, q) = (p.vec(), q.vec());
    p.cross(q).norm().atan2(p.dot(q))
}

/// Euclidean distance `|p − q| = 2 sin(arc/2)`.
pub fn chord_length<T: Real>(p: UnitVec<T>, q: UnitVec<T>) -> T {
    p.vec().distance(q.vec())
}

/// Point at fraction `t` of the shorter great-circle arc from `p` to `q`.
pub fn point_on_arc<T: Real>(p: UnitVec<T>, q: UnitVec<T>, t: T) -> Result<UnitVec<T>> {
    let theta = arc_length(p, q);
    if theta > T::PI() - T::lit(1e-9) {
        return Err(Error::AntipodalInput);
    }
    if !(T::zero()..=T::one()).contains(&t) {
        return Err(Error::Domain(format!("arc fraction {t} outside [0, 1]")));
    }
    if t == T::zero() || theta == T::zero() {
        return Ok(p);
    }
    if t == T::one() {
        return Ok(q);
    }
    // Rotate p toward q inside their common plane.
    let (pv, qv) = (p.vec(), q.vec());
    let tangent = qv - pv * pv.dot(qv);
    let tangent = tangent / tangent.norm();
    let phi = theta * t;
    radial_project(pv * phi.cos() + tangent * phi.sin())
}

/// `v / |v|`.
pub fn radial_project<T: Real>(v: Vec3<T>) -> Result<UnitVec<T>> {
    v.try_normalize(T::lit(1e-12)).map(UnitVec).ok_or(Error::ZeroVector)
}

/// Frame with `e1 = apex`, `e2` the unit component of `toward` orthogonal to
/// the apex, `e3 = e1 × e2`.
pub fn frame_from<T: Real>(apex: UnitVec<T>, toward: UnitVec<T>) -> Result<Frame<T>> {
    let a = apex.vec();
    let w = toward.vec();
    let perp = w - a * a.dot(w);
    if perp.norm() < T::lit(1e-9) {
        return Err(Error::DegenerateFrame);
    }
    let e2 = radial_project(perp)?;
    let e3 = radial_project(a.cross(e2.vec()))?;
    Ok(Frame { e1: apex, e2, e3 })
}

/// `n + 1` points dividing the arc from `p` to `q` into `n` equal parts.
pub fn subdivide_arc<T: Real>(p: UnitVec<T>, q: UnitVec<T>, n: u32) -> Result<Vec<UnitVec<T>>> {
    if n == 0 {
        return Err(Error::InvalidFrequency(0));
    }
    let nf = T::from_count(n as usize);
    (0..=n)
        .map(|k| point_on_arc(p, q, T::from_count(k as usize) / nf))
        .collect()
}
