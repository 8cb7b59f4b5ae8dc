//! Regular solids inscribed in the unit sphere, in a fixed orientation: the
//! dodecahedron has a vertex at (1,1,1)/√3 and the coordinate axes are
//! two-fold symmetry axes of every icosahedral solid here.

use crate::mesh::{MeshBuilder, TriangleMesh, VertexLabel};
use crate::scalar::Real;
use crate::sphgeo::{radial_project, UnitVec};
use crate::vec3::Vec3;

fn golden<T: Real>() -> T {
    (T::one() + T::lit(5.0).sqrt()) / T::lit(2.0)
}

fn unit<T: Real>(x: T, y: T, z: T) -> UnitVec<T> {
    radial_project(Vec3::new(x, y, z)).expect("nonzero solid vertex")
}

fn signs<T: Real>() -> [(T, T); 4] {
    let (p, m) = (T::one(), -T::one());
    [(p, p), (p, m), (m, p), (m, m)]
}

/// Cyclic permutations of `(0, ±a, ±b)`.
fn cyclic_family<T: Real>(a: T, b: T) -> Vec<UnitVec<T>> {
    let z = T::zero();
    let mut out = Vec::with_capacity(12);
    for (s, t) in signs::<T>() {
        out.push(unit(z, s * a, t * b));
        out.push(unit(s * a, t * b, z));
        out.push(unit(t * b, z, s * a));
    }
    out
}

pub fn icosahedron_vertices<T: Real>() -> Vec<UnitVec<T>> {
    cyclic_family(T::one(), golden())
}

/// Vertex directions of the icosahedron dual to [`dodecahedron_vertices`],
/// i.e. the dodecahedron's face centers.
pub fn dual_icosahedron_vertices<T: Real>() -> Vec<UnitVec<T>> {
    cyclic_family(golden(), T::one())
}

pub fn dodecahedron_vertices<T: Real>() -> Vec<UnitVec<T>> {
    let one = T::one();
    let mut out = Vec::with_capacity(20);
    for sx in [one, -one] {
        for (sy, sz) in signs::<T>() {
            out.push(unit(sx, sy, sz));
        }
    }
    out.extend(cyclic_family(golden::<T>().recip(), golden()));
    out
}

/// One pentagonal face of the dodecahedron.
#[derive(Debug, Clone)]
pub struct Pentagon<T> {
    /// Radial projection of the face centroid.
    pub center: UnitVec<T>,
    /// Indices into [`dodecahedron_vertices`], counter-clockwise from outside.
    pub vertices: [u32; 5],
}

pub fn dodecahedron_pentagons<T: Real>() -> Vec<Pentagon<T>> {
    let verts = dodecahedron_vertices::<T>();
    dual_icosahedron_vertices::<T>()
        .into_iter()
        .map(|dir| {
            let mut idx: Vec<u32> = (0..verts.len() as u32).collect();
            idx.sort_by(|&a, &b| verts[b as usize].dot(dir).partial_cmp(&verts[a as usize].dot(dir)).unwrap());
            idx.truncate(5);
            let centroid: Vec3<T> = idx.iter().map(|&i| verts[i as usize].vec()).sum();
            let center = radial_project(centroid).expect("pentagon centroid");
            // counter-clockwise order around the outward center
            let c = center.vec();
            let r0 = verts[idx[0] as usize].vec();
            let x = (r0 - c * c.dot(r0)) / (r0 - c * c.dot(r0)).norm();
            let y = c.cross(x);
            let angle = |i: u32| {
                let v = verts[i as usize].vec();
                v.dot(y).atan2(v.dot(x))
            };
            idx.sort_by(|&a, &b| angle(a).partial_cmp(&angle(b)).unwrap());
            Pentagon { center, vertices: [idx[0], idx[1], idx[2], idx[3], idx[4]] }
        })
        .collect()
}

/// All vertex triples that are pairwise at the shortest distance, oriented
/// outward. Correct for the tetrahedron, octahedron and icosahedron.
fn deltahedron<T: Real>(name: &str, verts: Vec<UnitVec<T>>) -> TriangleMesh<T> {
    let n = verts.len();
    let mut shortest = T::infinity();
    for i in 0..n {
        for j in i + 1..n {
            shortest = shortest.min(verts[i].vec().distance(verts[j].vec()));
        }
    }
    let adjacent = |i: usize, j: usize| (verts[i].vec().distance(verts[j].vec()) - shortest).abs() < T::GEOM_TOL;
    let mut b = MeshBuilder::new();
    for (i, v) in verts.iter().enumerate() {
        b.vertex(*v, VertexLabel::Solid { index: i as u32 });
    }
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if adjacent(i, j) && adjacent(j, k) && adjacent(i, k) {
                    b.face([i as u32, j as u32, k as u32]);
                }
            }
        }
    }
    b.finish(name, 1, n).expect("regular solid vertices are distinct")
}

pub fn tetrahedron<T: Real>() -> TriangleMesh<T> {
    let (p, m) = (T::one(), -T::one());
    deltahedron("tetrahedron", vec![unit(p, p, p), unit(p, m, m), unit(m, p, m), unit(m, m, p)])
}

pub fn octahedron<T: Real>() -> TriangleMesh<T> {
    let (z, p) = (T::zero(), T::one());
    let v = vec![unit(p, z, z), unit(-p, z, z), unit(z, p, z), unit(z, -p, z), unit(z, z, p), unit(z, z, -p)];
    deltahedron("octahedron", v)
}

pub fn icosahedron<T: Real>() -> TriangleMesh<T> {
    deltahedron("icosahedron", icosahedron_vertices())
}

/// The dodecahedron with each pentagon split into three triangles from its
/// first vertex. The fan triangles of a face are coplanar, so the result is
/// a closed triangle mesh that is convex but not strictly convex.
pub fn dodecahedron_fan<T: Real>() -> TriangleMesh<T> {
    let verts = dodecahedron_vertices::<T>();
    let mut b = MeshBuilder::new();
    for (i, v) in verts.iter().enumerate() {
        b.vertex(*v, VertexLabel::Solid { index: i as u32 });
    }
    for p in dodecahedron_pentagons::<T>() {
        let v = p.vertices;
        for k in 1..4 {
            b.face([v[0], v[k], v[k + 1]]);
        }
    }
    b.finish("dodecahedron", 1, verts.len()).expect("dodecahedron vertices are distinct")
}
