//! Kitrick's polyhedra with `60 n²` faces.
//!
//! The inscribed regular dodecahedron is projected onto the sphere, each
//! spherical pentagon is cut into five isosceles 72°-60°-60° triangles, and
//! every such triangle is subdivided by meridians and parallels through the
//! `n` equal divisions of its equal sides. Keeping every second division
//! point on each meridian (those with `i ≡ j mod 2`) and joining neighbours
//! by great-circle arcs gives `n²` triangles per copy.
//!
//! Canonical frame of one copy: apex `P₀,₀ = (1, 0, 0)`, the symmetry axis
//! runs along the equator (xy-plane) and the pole is `+z`. Point `P_{i,j}`
//! lies on meridian `i` at longitude `a_i` and on parallel `j` at latitude
//! `b_j`, with `b_{−j} = −b_j`.

use crate::error::{Error, Result};
use crate::mesh::{EdgeKind, EdgeTag, MeshBuilder, TriangleMesh, VertexLabel};
use crate::scalar::{cos36, pi_frac, sin36, two_sin36, Real};
use crate::solids::{dodecahedron_pentagons, dodecahedron_vertices};
use crate::sphgeo::{frame_from, radial_project, UnitVec};
use crate::vec3::Vec3;

/// Largest supported subdivision frequency.
pub const MAX_N: u32 = 64;

pub const NAME: &str = "kitrick";

/// Sides of the 36°-60°-90° right spherical triangle (half of a canonical
/// isosceles triangle), in radians.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BaseTriangleConstants<T> {
    /// Equatorial leg, apex to pentagon edge midpoint: `cos a = 1/(2 sin 36°)`.
    pub a: T,
    /// Meridional leg, half a pentagon edge: `cos b = cos 36°/(√3/2)`.
    pub b: T,
    /// Hypotenuse, apex to dodecahedron vertex: `cos c = cot 36°/√3`.
    pub c: T,
}

impl<T: Real> BaseTriangleConstants<T> {
    pub fn new() -> Self {
        let s36 = sin36::<T>();
        let c36 = cos36::<T>();
        let sqrt3 = T::lit(3.0).sqrt();
        let two = T::lit(2.0);
        Self {
            a: (T::one() / (two * s36)).acos(),
            b: (c36 / (sqrt3 / two)).acos(),
            c: (c36 / s36 / sqrt3).acos(),
        }
    }
}

impl<T: Real> Default for BaseTriangleConstants<T> {
    fn default() -> Self {
        Self::new()
    }
}

/// Position of a vertex within the construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GridIndex {
    /// Triangle copy, `0..60`.
    pub copy: u32,
    /// Meridian, `0..=n`.
    pub i: u32,
    /// Parallel, `−i..=i`.
    pub j: i32,
}

fn check_n(n: u32) -> Result<()> {
    if (1..=MAX_N).contains(&n) {
        Ok(())
    } else {
        Err(Error::InvalidFrequency(n))
    }
}

/// Longitude `a_i = arctan(tan((i/n)c)·cos 36°)` of meridian `i`.
pub fn meridian_longitude<T: Real>(n: u32, i: u32) -> T {
    let c = BaseTriangleConstants::<T>::new().c;
    let s = T::from_count(i as usize) / T::from_count(n as usize) * c;
    (s.tan() * cos36::<T>()).atan()
}

/// Latitude `b_j = arcsin(sin((j/n)c)·sin 36°)` of parallel `j` (odd in `j`).
pub fn parallel_latitude<T: Real>(n: u32, j: i32) -> T {
    let c = BaseTriangleConstants::<T>::new().c;
    let s = T::from_count(j.unsigned_abs() as usize) / T::from_count(n as usize) * c;
    let b = (s.sin() * sin36::<T>()).asin();
    if j < 0 {
        -b
    } else {
        b
    }
}

/// `P_{i,j}` in the canonical frame: `(cos b_j cos a_i, cos b_j sin a_i, sin b_j)`.
///
/// Any `|j| ≤ i` is accepted; triangulation vertices additionally have
/// `i ≡ j (mod 2)`.
pub fn kitrick_vertex<T: Real>(n: u32, i: u32, j: i32) -> Result<UnitVec<T>> {
    if n == 0 || i > n || j.unsigned_abs() > i {
        return Err(Error::IndexOutOfRange { n, i, j });
    }
    let a = meridian_longitude::<T>(n, i);
    let b = parallel_latitude::<T>(n, j);
    radial_project(Vec3::new(b.cos() * a.cos(), b.cos() * a.sin(), b.sin()))
}

/// One subdivided isosceles triangle in its canonical frame.
#[derive(Debug, Clone)]
pub struct CanonicalTriangle<T> {
    pub n: u32,
    /// `(i, j)` of each local vertex, `i ≡ j (mod 2)`.
    pub points: Vec<(u32, i32)>,
    pub positions: Vec<UnitVec<T>>,
    /// Local vertex indices, no particular winding.
    pub faces: Vec<[usize; 3]>,
    pub edges: Vec<(usize, usize, EdgeKind)>,
}

/// Local index of `P_{i,j}` (row `i` holds `i + 1` points).
fn local_index(i: u32, j: i32) -> usize {
    let i = i as usize;
    i * (i + 1) / 2 + ((j + i as i32) / 2) as usize
}

pub fn canonical_triangle_mesh<T: Real>(n: u32) -> Result<CanonicalTriangle<T>> {
    check_n(n)?;
    let mut points = Vec::new();
    let mut positions = Vec::new();
    for i in 0..=n {
        for j in (-(i as i32)..=i as i32).step_by(2) {
            debug_assert_eq!(local_index(i, j), points.len());
            points.push((i, j));
            positions.push(kitrick_vertex(n, i, j)?);
        }
    }

    let mut faces = Vec::with_capacity((n * n) as usize);
    let mut edges = Vec::new();
    let p = local_index;
    for i in 0..n {
        let ii = i as i32;
        for j in (-ii..=ii).step_by(2) {
            faces.push([p(i, j), p(i + 1, j - 1), p(i + 1, j + 1)]);
            edges.push((p(i, j), p(i + 1, j - 1), EdgeKind::Diagonal));
            edges.push((p(i, j), p(i + 1, j + 1), EdgeKind::Diagonal));
        }
        for j in (-ii..=ii - 2).step_by(2) {
            faces.push([p(i, j), p(i, j + 2), p(i + 1, j + 1)]);
        }
    }
    for i in 1..=n {
        let ii = i as i32;
        for j in (-ii + 1..=ii - 1).step_by(2) {
            edges.push((p(i, j - 1), p(i, j + 1), EdgeKind::Meridional));
        }
    }
    Ok(CanonicalTriangle { n, points, positions, faces, edges })
}

/// Builds Kitrick's polyhedron: 60 copies of the canonical triangle placed
/// on the pentagons of the inscribed dodecahedron, with shared boundary
/// vertices merged. `F = 60n²`, `V = 30n² + 2`, `E = 90n²`.
pub fn build_kitrick<T: Real>(n: u32) -> Result<TriangleMesh<T>> {
    let local = canonical_triangle_mesh::<T>(n)?;
    let dverts = dodecahedron_vertices::<T>();
    let mut b = MeshBuilder::new();

    let mut copy = 0u32;
    for pent in dodecahedron_pentagons::<T>() {
        for k in 0..5 {
            let v0 = dverts[pent.vertices[k] as usize].vec();
            let v1 = dverts[pent.vertices[(k + 1) % 5] as usize].vec();
            let frame = frame_from(pent.center, radial_project(v0 + v1)?)?;

            let ids: Vec<u32> = local
                .positions
                .iter()
                .zip(&local.points)
                .map(|(p, &(i, j))| {
                    let w = radial_project(frame.to_world(p.vec()))?;
                    Ok(b.vertex(w, VertexLabel::Kitrick { copy, i, j }))
                })
                .collect::<Result<_>>()?;
            for f in &local.faces {
                b.face(f.map(|x| ids[x]));
            }
            for &(x, y, kind) in &local.edges {
                let label = |z: usize| {
                    let (i, j) = local.points[z];
                    VertexLabel::Kitrick { copy, i, j }
                };
                b.tag(ids[x], ids[y], EdgeTag { kind, origin: (label(x), label(y)) });
            }
            copy += 1;
        }
    }
    let n2 = (n * n) as usize;
    b.finish(NAME, n, 30 * n2 + 2)
}

/// `2 sin 36° · cos(c / 2n)`: the exact edge ratio of Kitrick's polyhedron.
pub fn kitrick_eta_closed_form<T: Real>(n: u32) -> T {
    let c = BaseTriangleConstants::<T>::new().c;
    two_sin36::<T>() * (c / (T::lit(2.0) * T::from_count(n as usize))).cos()
}

/// Half-angle `c/(2n)` of the closed form, in degrees.
pub fn closed_form_half_angle_degrees(n: u32) -> f64 {
    BaseTriangleConstants::<f64>::new().c.to_degrees() / (2.0 * n as f64)
}

/// Edge ratio computed from a single canonical triangle's edges.
pub fn canonical_triangle_eta<T: Real>(n: u32) -> Result<T> {
    let t = canonical_triangle_mesh::<T>(n)?;
    let (lo, hi) = t.edges.iter().fold((T::infinity(), T::neg_infinity()), |(lo, hi), &(x, y, _)| {
        let d = t.positions[x].vec().distance(t.positions[y].vec());
        (lo.min(d), hi.max(d))
    });
    Ok(hi / lo)
}

/// Apex-face base `P₁,₋₁P₁,₁`.
pub fn is_apex_base(origin: &(VertexLabel, VertexLabel)) -> bool {
    match *origin {
        (VertexLabel::Kitrick { copy: c0, i: 1, j: j0 }, VertexLabel::Kitrick { copy: c1, i: 1, j: j1 }) => {
            c0 == c1 && j0 == -j1 && j0.abs() == 1
        }
        _ => false,
    }
}

/// Apex-face leg `P₀,₀P₁,±₁`.
pub fn is_apex_leg(origin: &(VertexLabel, VertexLabel)) -> bool {
    matches!(
        *origin,
        (VertexLabel::Kitrick { i: 0, .. }, VertexLabel::Kitrick { i: 1, .. })
            | (VertexLabel::Kitrick { i: 1, .. }, VertexLabel::Kitrick { i: 0, .. })
    )
}

/// `2 sin 36°` as a convenience for reports.
pub fn eta_limit<T: Real>() -> T {
    two_sin36()
}

/// `72°` apex angle of the canonical triangle.
pub fn apex_angle<T: Real>() -> T {
    pi_frac(2, 5)
}
