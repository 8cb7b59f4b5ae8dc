//! Clinton's polyhedra with `20 n²` faces.
//!
//! Each edge of the inscribed icosahedron is projected to the sphere, split
//! into `n` equal arcs, and the dividing points are carried back to the
//! face plane. Through each carried-back point two lines parallel to the
//! other face sides can be drawn; for a regular-grid point `P'` of the face,
//! three of these lines (one per side) bound a small equilateral triangle
//! `T(P')`. Variant I places a vertex at the radial projection of the centre
//! of `T(P')`; variant II projects the corners of `T(P')` to the sphere and
//! uses the radial projection of that triangle's incentre. Connectivity is
//! the regular `n²` subdivision of each face.
//!
//! Barycentric coordinates `(p, q, r)` weight the face corners `X₀, X₁, X₂`
//! (counter-clockwise from outside). Sides: `a = X₁X₂`, `b = X₂X₀`,
//! `c = X₀X₁`, each traversed in that direction.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::mesh::{edge_key, MeshBuilder, TriangleMesh, VertexLabel};
use crate::scalar::Real;
use crate::solids::{icosahedron, icosahedron_vertices};
use crate::sphgeo::{point_on_arc, radial_project, UnitVec};
use crate::vec3::Vec3;

pub const MAX_N: u32 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClintonVariant {
    /// Centre of `T(P')`, projected.
    Centroid,
    /// Incentre of the projected `T(P')`, projected.
    Incenter,
}

impl ClintonVariant {
    pub fn name(self) -> &'static str {
        match self {
            ClintonVariant::Centroid => "clinton1",
            ClintonVariant::Incenter => "clinton2",
        }
    }
}

/// Which parallel through each dividing point bounds `T(P')`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Matching {
    /// Points on `a` carry the parallel to `b`, on `b` to `c`, on `c` to `a`.
    #[default]
    Primary,
    /// Points on `a` carry the parallel to `c`, on `b` to `a`, on `c` to `b`.
    Mirror,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GridPointKind {
    Vertex,
    Side,
    Interior,
}

/// Regular-grid point of an icosahedron face.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FaceGridPoint {
    pub face: u32,
    pub bary: [u32; 3],
    pub kind: GridPointKind,
}

impl FaceGridPoint {
    pub fn new(face: u32, bary: [u32; 3], n: u32) -> Result<Self> {
        if face >= 20 || bary.iter().sum::<u32>() != n {
            return Err(Error::Domain(format!("grid point {bary:?} on face {face} is not on the n = {n} grid")));
        }
        let kind = match bary.iter().filter(|&&x| x == 0).count() {
            2 => GridPointKind::Vertex,
            1 => GridPointKind::Side,
            _ => GridPointKind::Interior,
        };
        Ok(Self { face, bary, kind })
    }
}

/// Corners of icosahedron face `face`, counter-clockwise from outside.
pub fn icosahedron_face<T: Real>(face: u32) -> Result<[UnitVec<T>; 3]> {
    let ico = icosahedron::<T>();
    let f = *ico
        .faces
        .get(face as usize)
        .ok_or_else(|| Error::Domain(format!("icosahedron face {face} does not exist")))?;
    let verts = icosahedron_vertices::<T>();
    Ok(f.map(|v| verts[v as usize]))
}

/// Where the ray through `s` meets the plane of `face`.
fn onto_face_plane<T: Real>(face: &[UnitVec<T>; 3], s: UnitVec<T>) -> Vec3<T> {
    let [x0, x1, x2] = face.map(|p| p.vec());
    let normal = (x1 - x0).cross(x2 - x0);
    s.vec() * (normal.dot(x0) / normal.dot(s.vec()))
}

/// Spherical dividing points of the arc `p → q` (excluding the ends).
fn arc_dividers<T: Real>(p: UnitVec<T>, q: UnitVec<T>, n: u32) -> Result<Vec<UnitVec<T>>> {
    (1..n).map(|k| point_on_arc(p, q, T::from_count(k as usize) / T::from_count(n as usize))).collect()
}

/// Dividing points carried back to the face plane: `[A, B, C]` with
/// `A₁..A_{n−1}` running along `a = X₁X₂`, `B` along `b = X₂X₀`, `C` along
/// `c = X₀X₁`.
pub fn face_side_points<T: Real>(face: &[UnitVec<T>; 3], n: u32) -> Result<[Vec<Vec3<T>>; 3]> {
    let side = |from: usize, to: usize| -> Result<Vec<Vec3<T>>> {
        Ok(arc_dividers(face[from], face[to], n)?.into_iter().map(|s| onto_face_plane(face, s)).collect())
    };
    Ok([side(1, 2)?, side(2, 0)?, side(0, 1)?])
}

/// Fraction along the chord `x → y` of point `p` on that chord.
fn chord_fraction<T: Real>(x: Vec3<T>, y: Vec3<T>, p: Vec3<T>) -> T {
    let d = y - x;
    (p - x).dot(d) / d.norm_sq()
}

/// Chord fractions of the carried-back dividing points along each side:
/// `t[s][k]` for `k = 0..=n`, with `t[s][0] = 0` and `t[s][n] = 1`.
fn side_fractions<T: Real>(face: &[UnitVec<T>; 3], n: u32) -> Result<[Vec<T>; 3]> {
    let sides = face_side_points(face, n)?;
    let ends = [(1, 2), (2, 0), (0, 1)];
    let mut out: [Vec<T>; 3] = Default::default();
    for s in 0..3 {
        let (x, y) = (face[ends[s].0].vec(), face[ends[s].1].vec());
        out[s].push(T::zero());
        out[s].extend(sides[s].iter().map(|&p| chord_fraction(x, y, p)));
        out[s].push(T::one());
    }
    Ok(out)
}

/// `T(P')`: a single point for face corners and side points, otherwise the
/// triangle bounded by the three selected parallels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TShape<T> {
    Point(Vec3<T>),
    Triangle([Vec3<T>; 3]),
}

impl<T: Real> TShape<T> {
    pub fn centroid(&self) -> Vec3<T> {
        match *self {
            TShape::Point(p) => p,
            TShape::Triangle([a, b, c]) => (a + b + c) / T::lit(3.0),
        }
    }
}

fn from_bary<T: Real>(face: &[UnitVec<T>; 3], w: [T; 3]) -> Vec3<T> {
    face[0].vec() * w[0] + face[1].vec() * w[1] + face[2].vec() * w[2]
}

/// Barycentric levels `(α, β, γ)` of the three parallels through `P'`: the
/// lines `p = α`, `q = β`, `r = γ`.
fn parallel_levels<T: Real>(t: &[Vec<T>; 3], n: u32, bary: [u32; 3], matching: Matching) -> [T; 3] {
    let [p, q, r] = bary.map(|x| x as usize);
    let n = n as usize;
    let [ta, tb, tc] = t;
    match matching {
        // A_k = (0, 1−t, t), B_k = (t, 0, 1−t), C_k = (1−t, t, 0)
        Matching::Primary => [T::one() - tc[n - p], T::one() - ta[n - q], T::one() - tb[n - r]],
        Matching::Mirror => [tb[p], tc[q], ta[r]],
    }
}

fn t_shape<T: Real>(face: &[UnitVec<T>; 3], t: &[Vec<T>; 3], n: u32, gp: FaceGridPoint, matching: Matching) -> TShape<T> {
    let [p, q, r] = gp.bary;
    match gp.kind {
        GridPointKind::Vertex => {
            let corner = gp.bary.iter().position(|&x| x == n).expect("corner grid point");
            TShape::Point(face[corner].vec())
        }
        GridPointKind::Side => {
            let w = if p == 0 {
                let s = t[0][r as usize];
                [T::zero(), T::one() - s, s]
            } else if q == 0 {
                let s = t[1][p as usize];
                [s, T::zero(), T::one() - s]
            } else {
                let s = t[2][q as usize];
                [T::one() - s, s, T::zero()]
            };
            TShape::Point(from_bary(face, w))
        }
        GridPointKind::Interior => {
            let [al, be, ga] = parallel_levels(t, n, gp.bary, matching);
            let one = T::one();
            TShape::Triangle([
                from_bary(face, [al, be, one - al - be]),
                from_bary(face, [al, one - al - ga, ga]),
                from_bary(face, [one - be - ga, be, ga]),
            ])
        }
    }
}

/// `T(P')` for a grid point of `face`.
pub fn t_triangle<T: Real>(face: &[UnitVec<T>; 3], n: u32, gp: FaceGridPoint, matching: Matching) -> Result<TShape<T>> {
    if gp.bary.iter().sum::<u32>() != n {
        return Err(Error::Domain(format!("grid point {:?} is not on the n = {n} grid", gp.bary)));
    }
    Ok(t_shape(face, &side_fractions(face, n)?, n, gp, matching))
}

/// Incentre of the planar triangle `abc` (weights are opposite side
/// lengths); a degenerate triangle yields its first corner.
pub fn incenter<T: Real>([a, b, c]: [Vec3<T>; 3]) -> Vec3<T> {
    let (la, lb, lc) = (b.distance(c), c.distance(a), a.distance(b));
    let sum = la + lb + lc;
    if sum <= T::epsilon() {
        return a;
    }
    (a * la + b * lb + c * lc) / sum
}

fn place<T: Real>(shape: TShape<T>, variant: ClintonVariant) -> Result<UnitVec<T>> {
    match (variant, shape) {
        (_, TShape::Point(p)) => radial_project(p),
        (ClintonVariant::Centroid, s) => radial_project(s.centroid()),
        (ClintonVariant::Incenter, TShape::Triangle(tri)) => {
            let projected = [radial_project(tri[0])?, radial_project(tri[1])?, radial_project(tri[2])?];
            radial_project(incenter(projected.map(|p| p.vec())))
        }
    }
}

/// Builds a Clinton polyhedron: `F = 20n²`, `V = 10n² + 2`, `E = 30n²`.
///
/// Face corners are the icosahedron vertices and side points are the
/// spherical dividing points, each created once per icosahedron edge.
pub fn build_clinton<T: Real>(n: u32, variant: ClintonVariant, matching: Matching) -> Result<TriangleMesh<T>> {
    if !(1..=MAX_N).contains(&n) {
        return Err(Error::InvalidFrequency(n));
    }
    let ico = icosahedron::<T>();
    let verts = icosahedron_vertices::<T>();
    let mut b = MeshBuilder::new();

    let corner_ids: Vec<u32> = (0..verts.len()).map(|i| b.vertex(verts[i], VertexLabel::Solid { index: i as u32 })).collect();
    let mut side_ids: HashMap<(u32, u32, u32), u32> = HashMap::new();
    let mut edge_points: HashMap<(u32, u32), Vec<UnitVec<T>>> = HashMap::new();

    for (fi, f) in ico.faces.iter().enumerate() {
        let face = f.map(|v| verts[v as usize]);
        let t = side_fractions(&face, n)?;
        let mut grid: HashMap<[u32; 3], u32> = HashMap::new();
        for p in 0..=n {
            for q in 0..=n - p {
                let bary = [p, q, n - p - q];
                let gp = FaceGridPoint::new(fi as u32, bary, n)?;
                let id = match gp.kind {
                    GridPointKind::Vertex => corner_ids[f[bary.iter().position(|&x| x == n).unwrap()] as usize],
                    GridPointKind::Side => {
                        let zero = bary.iter().position(|&x| x == 0).unwrap();
                        let (s, e) = ((zero + 1) % 3, (zero + 2) % 3);
                        let (u, v) = (f[s], f[e]);
                        // distance from u in steps of arc/n
                        let k = bary[e];
                        let key = edge_key(u, v);
                        let k = if key.0 == u { k } else { n - k };
                        match side_ids.get(&(key.0, key.1, k)) {
                            Some(&id) => id,
                            None => {
                                let pts = match edge_points.get(&key) {
                                    Some(p) => p,
                                    None => {
                                        let p = arc_dividers(verts[key.0 as usize], verts[key.1 as usize], n)?;
                                        edge_points.entry(key).or_insert(p)
                                    }
                                };
                                let id = b.vertex(pts[k as usize - 1], VertexLabel::Clinton { face: fi as u32, bary });
                                side_ids.insert((key.0, key.1, k), id);
                                id
                            }
                        }
                    }
                    GridPointKind::Interior => {
                        let w = place(t_shape(&face, &t, n, gp, matching), variant)?;
                        b.vertex(w, VertexLabel::Clinton { face: fi as u32, bary })
                    }
                };
                grid.insert(bary, id);
            }
        }
        for p in 0..n {
            for q in 0..n - p {
                let r = n - 1 - p - q;
                b.face([grid[&[p + 1, q, r]], grid[&[p, q + 1, r]], grid[&[p, q, r + 1]]]);
                if r >= 1 {
                    let r = r - 1;
                    b.face([grid[&[p, q + 1, r + 1]], grid[&[p + 1, q, r + 1]], grid[&[p + 1, q + 1, r]]]);
                }
            }
        }
    }
    let n2 = (n * n) as usize;
    b.finish(variant.name(), n, 10 * n2 + 2)
}

#[allow(non_snake_case)]
pub fn build_clinton_I<T: Real>(n: u32) -> Result<TriangleMesh<T>> {
    build_clinton(n, ClintonVariant::Centroid, Matching::Primary)
}

#[allow(non_snake_case)]
pub fn build_clinton_II<T: Real>(n: u32) -> Result<TriangleMesh<T>> {
    build_clinton(n, ClintonVariant::Incenter, Matching::Primary)
}
