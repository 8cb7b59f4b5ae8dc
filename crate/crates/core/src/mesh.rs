//! Triangle meshes inscribed in the unit sphere: edge extraction, edge-ratio
//! measurement and validation.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::spatial::{PointGrid, Welder};
use crate::sphgeo::{arc_length, radial_project, UnitVec};
use crate::vec3::Vec3;

/// Where a vertex came from in its construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum VertexLabel {
    /// Vertex of a base solid.
    Solid { index: u32 },
    /// Grid point `P_{i,j}` of canonical triangle `copy` (0..60).
    Kitrick { copy: u32, i: u32, j: i32 },
    /// Regular-grid point with barycentric counts `(p, q, r)` on an icosahedron face.
    Clinton { face: u32, bary: [u32; 3] },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EdgeKind {
    Meridional,
    Diagonal,
    Other,
}

/// Construction-time information about an edge: its kind and the two grid
/// labels it joins within the copy that first produced it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeTag {
    pub kind: EdgeKind,
    pub origin: (VertexLabel, VertexLabel),
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MeshInfo {
    pub construction: String,
    pub n: Option<u32>,
}

/// Closed triangle mesh. Faces are 0-based index triples, counter-clockwise
/// seen from outside for every mesh built by this crate.
#[derive(Debug, Clone)]
pub struct TriangleMesh<T> {
    pub vertices: Vec<Vec3<T>>,
    pub faces: Vec<[u32; 3]>,
    pub labels: Option<Vec<VertexLabel>>,
    pub edge_tags: BTreeMap<(u32, u32), EdgeTag>,
    pub info: MeshInfo,
}

impl<T: Real> TriangleMesh<T> {
    /// Checks face indices; manifoldness is checked by [`extract_edges`].
    pub fn new(vertices: Vec<Vec3<T>>, faces: Vec<[u32; 3]>) -> Result<Self> {
        let count = vertices.len();
        for (face, f) in faces.iter().enumerate() {
            if let Some(&index) = f.iter().find(|&&i| i as usize >= count) {
                return Err(Error::FaceIndexOutOfRange { face, index, count });
            }
            if f[0] == f[1] || f[1] == f[2] || f[0] == f[2] {
                return Err(Error::RepeatedVertex { face });
            }
        }
        Ok(Self { vertices, faces, labels: None, edge_tags: BTreeMap::new(), info: MeshInfo::default() })
    }

    pub fn with_info(mut self, construction: &str, n: Option<u32>) -> Self {
        self.info = MeshInfo { construction: construction.to_string(), n };
        self
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    /// Unit normal following the face winding.
    pub fn face_normal(&self, f: usize) -> Vec3<T> {
        let [a, b, c] = self.corners(f);
        let n = (b - a).cross(c - a);
        n / n.norm()
    }

    pub fn corners(&self, f: usize) -> [Vec3<T>; 3] {
        self.faces[f].map(|i| self.vertices[i as usize])
    }

    /// Reorders faces so the winding normal points away from the origin.
    pub fn orient_outward(&mut self) {
        for f in 0..self.faces.len() {
            let [a, b, c] = self.corners(f);
            if (b - a).cross(c - a).dot(a + b + c) < T::zero() {
                self.faces[f].swap(1, 2);
            }
        }
    }

    /// Applies `map` to every vertex, keeping connectivity and labels.
    pub fn map_vertices(&self, map: impl Fn(Vec3<T>) -> Vec3<T>) -> Self {
        let mut out = self.clone();
        out.vertices.iter_mut().for_each(|v| *v = map(*v));
        out
    }
}

/// An undirected edge, `v0 < v1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeRecord<T> {
    pub v0: u32,
    pub v1: u32,
    pub chord: T,
    pub arc: T,
    pub kind: EdgeKind,
    pub origin: Option<(VertexLabel, VertexLabel)>,
}

impl<T> EdgeRecord<T> {
    pub fn key(&self) -> (u32, u32) {
        (self.v0, self.v1)
    }
}

#[inline]
pub(crate) fn edge_key(a: u32, b: u32) -> (u32, u32) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Every undirected edge exactly once, sorted by `(v0, v1)`.
pub fn extract_edges<T: Real>(mesh: &TriangleMesh<T>) -> Result<Vec<EdgeRecord<T>>> {
    let mut keys: Vec<(u32, u32)> = mesh
        .faces
        .iter()
        .flat_map(|&[a, b, c]| [edge_key(a, b), edge_key(b, c), edge_key(c, a)])
        .collect();
    keys.sort_unstable();

    let mut edges = Vec::with_capacity(keys.len() / 2);
    let mut i = 0;
    while i < keys.len() {
        let k = keys[i];
        let run = keys[i..].iter().take_while(|&&x| x == k).count();
        if run != 2 {
            return Err(Error::NonManifold { v0: k.0, v1: k.1, faces: run });
        }
        let (p, q) = (mesh.vertices[k.0 as usize], mesh.vertices[k.1 as usize]);
        let arc = match (radial_project(p), radial_project(q)) {
            (Ok(p), Ok(q)) => arc_length(p, q),
            _ => T::nan(),
        };
        let tag = mesh.edge_tags.get(&k);
        edges.push(EdgeRecord {
            v0: k.0,
            v1: k.1,
            chord: p.distance(q),
            arc,
            kind: tag.map_or(EdgeKind::Other, |t| t.kind),
            origin: tag.map(|t| t.origin),
        });
        i += run;
    }
    Ok(edges)
}

/// Extreme chord lengths, their ratio, and the edges tied at each extreme.
#[derive(Debug, Clone)]
pub struct EtaMeasure<T> {
    pub min_edge: T,
    pub max_edge: T,
    pub eta: T,
    /// Indices into the edge list within relative `GEOM_TOL` of the minimum.
    pub argmin: Vec<usize>,
    pub argmax: Vec<usize>,
}

pub fn measure_eta<T: Real>(mesh: &TriangleMesh<T>) -> Result<EtaMeasure<T>> {
    Ok(eta_of_edges(&extract_edges(mesh)?))
}

/// Panics on an empty edge list.
pub fn eta_of_edges<T: Real>(edges: &[EdgeRecord<T>]) -> EtaMeasure<T> {
    assert!(!edges.is_empty(), "edge ratio of an empty edge set");
    let (min_edge, max_edge) = edges
        .iter()
        .fold((T::infinity(), T::neg_infinity()), |(lo, hi), e| (lo.min(e.chord), hi.max(e.chord)));
    let tol = T::GEOM_TOL;
    let argmin = (0..edges.len()).filter(|&i| edges[i].chord <= min_edge * (T::one() + tol)).collect();
    let argmax = (0..edges.len()).filter(|&i| edges[i].chord >= max_edge * (T::one() - tol)).collect();
    EtaMeasure { min_edge, max_edge, eta: max_edge / min_edge, argmin, argmax }
}

/// Smallest chord over all pairs, exhaustively.
pub fn min_pairwise_chord<T: Real>(points: &[UnitVec<T>]) -> Result<T> {
    let v: Vec<Vec3<T>> = points.iter().map(|p| p.vec()).collect();
    min_pairwise_distance_exhaustive(&v)
}

pub fn min_pairwise_distance_exhaustive<T: Real>(points: &[Vec3<T>]) -> Result<T> {
    if points.len() < 2 {
        return Err(Error::TooFewPoints);
    }
    let mut best = T::infinity();
    for (i, p) in points.iter().enumerate() {
        for q in &points[i + 1..] {
            best = best.min(p.distance(*q));
        }
    }
    Ok(best)
}

/// Smallest pairwise distance, provided it is at most `reach`; `None` if no
/// pair is that close.
pub fn min_pairwise_distance_within<T: Real>(points: &[Vec3<T>], reach: T) -> Option<T> {
    let grid = PointGrid::build(points, reach);
    let mut best = T::infinity();
    for (i, p) in points.iter().enumerate() {
        grid.for_each_near(*p, reach, |j| {
            if (j as usize) > i {
                best = best.min(p.distance(points[j as usize]));
            }
        });
    }
    (best <= reach).then_some(best)
}

fn support_planes<T: Real>(mesh: &TriangleMesh<T>) -> Vec<(Vec3<T>, T)> {
    (0..mesh.face_count())
        .map(|f| {
            let [a, b, c] = mesh.corners(f);
            let mut n = mesh.face_normal(f);
            if n.dot(a + b + c) < T::zero() {
                n = -n;
            }
            (n, n.dot(a))
        })
        .collect()
}

/// `(face, vertex)` pairs where a vertex not on the face fails to lie
/// strictly (by more than `tol`) on the origin side of the face plane.
/// Checks every pair.
pub fn support_plane_violations_exhaustive<T: Real>(mesh: &TriangleMesh<T>, tol: T) -> Vec<(usize, u32)> {
    let mut out = Vec::new();
    for (f, (n, h)) in support_planes(mesh).into_iter().enumerate() {
        for (v, w) in mesh.vertices.iter().enumerate() {
            let v = v as u32;
            if !mesh.faces[f].contains(&v) && !(n.dot(*w) < h - tol) {
                out.push((f, v));
            }
        }
    }
    out
}

/// Same result as [`support_plane_violations_exhaustive`], restricting each
/// face to the vertices whose directions fall in the spherical cap cut off
/// by the face plane (scaled by the largest vertex norm).
pub fn support_plane_violations<T: Real>(mesh: &TriangleMesh<T>, tol: T) -> Vec<(usize, u32)> {
    let planes = support_planes(mesh);
    let max_norm = mesh.vertices.iter().fold(T::zero(), |m, v| m.max(v.norm()));
    let two = T::lit(2.0);
    let cap_radius = |h: T| -> Option<T> {
        let lim = (h - tol) / max_norm;
        (lim > T::zero()).then(|| (two - two * lim).max(T::zero()).sqrt() * (T::one() + T::lit(1e-6)))
    };

    let mut dirs = Vec::with_capacity(mesh.vertex_count());
    let mut near_origin = Vec::new();
    for (i, v) in mesh.vertices.iter().enumerate() {
        match v.try_normalize(T::lit(1e-12)) {
            Some(d) => dirs.push(d),
            None => {
                dirs.push(Vec3::zero());
                near_origin.push(i as u32);
            }
        }
    }
    let cell = planes
        .iter()
        .filter_map(|&(_, h)| cap_radius(h))
        .fold(T::lit(1e-6), |m, r| m.max(r));
    let grid = PointGrid::build(&dirs, cell);

    let mut out = Vec::new();
    for (f, &(n, h)) in planes.iter().enumerate() {
        let mut hits = Vec::new();
        let mut check = |v: u32| {
            if !mesh.faces[f].contains(&v) && !(n.dot(mesh.vertices[v as usize]) < h - tol) {
                hits.push(v);
            }
        };
        match cap_radius(h) {
            Some(r) => {
                grid.for_each_near(n, r, &mut check);
                near_origin.iter().copied().for_each(&mut check);
            }
            None => (0..mesh.vertex_count() as u32).for_each(&mut check),
        }
        hits.sort_unstable();
        hits.dedup();
        out.extend(hits.into_iter().map(|v| (f, v)));
    }
    out
}

/// Number of faces with a corner angle of at least 90°.
pub fn non_acute_faces<T: Real>(mesh: &TriangleMesh<T>) -> usize {
    (0..mesh.face_count())
        .filter(|&f| {
            let [a, b, c] = mesh.corners(f);
            (b - a).dot(c - a) <= T::zero() || (a - b).dot(c - b) <= T::zero() || (a - c).dot(b - c) <= T::zero()
        })
        .count()
}

/// Outcome of [`validate`]. Each check is reported separately.
#[derive(Debug, Clone)]
pub struct ValidationResult<T> {
    pub vertex_count: usize,
    pub edge_count: usize,
    pub face_count: usize,
    pub max_norm_deviation: T,
    pub norms_ok: bool,
    pub euler_ok: bool,
    pub all_faces_acute: bool,
    pub non_acute_faces: usize,
    pub is_convex: bool,
    pub support_violations: usize,
    pub min_chord_is_edge: bool,
    pub failures: Vec<String>,
}

impl<T> ValidationResult<T> {
    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Runs every mesh check: vertex norms, Euler counts, acute faces,
/// support-plane convexity, and "closest vertex pair is an edge".
pub fn validate<T: Real>(mesh: &TriangleMesh<T>) -> ValidationResult<T> {
    let mut failures = Vec::new();
    let tol = T::GEOM_TOL;
    let (v, f) = (mesh.vertex_count(), mesh.face_count());

    let max_norm_deviation = mesh.vertices.iter().fold(T::zero(), |m, p| m.max((p.norm() - T::one()).abs()));
    let norms_ok = max_norm_deviation <= tol;
    if !norms_ok {
        failures.push(format!("vertex norm deviates from 1 by {max_norm_deviation}"));
    }

    let edges = match extract_edges(mesh) {
        Ok(e) => Some(e),
        Err(err) => {
            failures.push(format!("edge extraction failed: {err}"));
            None
        }
    };
    let e = edges.as_ref().map_or(0, Vec::len);
    let euler_ok = edges.is_some() && v + f == e + 2 && 2 * v == f + 4;
    if !euler_ok {
        failures.push(format!("Euler counts fail: V={v} E={e} F={f}"));
    }

    let non_acute = non_acute_faces(mesh);
    if non_acute > 0 {
        failures.push(format!("{non_acute} faces have an angle of at least 90 degrees"));
    }

    let violations = support_plane_violations(mesh, tol).len();
    if violations > 0 {
        failures.push(format!("support-plane test fails for {violations} (face, vertex) pairs"));
    }

    let min_chord_is_edge = match &edges {
        Some(edges) if !edges.is_empty() && v >= 2 => {
            let min_edge = eta_of_edges(edges).min_edge;
            let reach = min_edge * (T::one() + T::lit(1e-6));
            let closest = min_pairwise_distance_within(&mesh.vertices, reach).unwrap_or(min_edge);
            let ok = (closest - min_edge).abs() <= T::NORM_TOL;
            if !ok {
                failures.push(format!("closest vertex pair {closest} is shorter than the shortest edge {min_edge}"));
            }
            ok
        }
        _ => false,
    };

    ValidationResult {
        vertex_count: v,
        edge_count: e,
        face_count: f,
        max_norm_deviation,
        norms_ok,
        euler_ok,
        all_faces_acute: non_acute == 0,
        non_acute_faces: non_acute,
        is_convex: violations == 0,
        support_violations: violations,
        min_chord_is_edge,
        failures,
    }
}

/// Accumulates welded vertices, faces and edge tags for the constructions.
pub(crate) struct MeshBuilder<T> {
    welder: Welder<T>,
    labels: Vec<VertexLabel>,
    faces: Vec<[u32; 3]>,
    tags: BTreeMap<(u32, u32), EdgeTag>,
}

impl<T: Real> MeshBuilder<T> {
    pub fn new() -> Self {
        Self { welder: Welder::new(T::GEOM_TOL), labels: Vec::new(), faces: Vec::new(), tags: BTreeMap::new() }
    }

    pub fn vertex(&mut self, p: UnitVec<T>, label: VertexLabel) -> u32 {
        let (id, fresh) = self.welder.weld(p.vec());
        if fresh {
            self.labels.push(label);
        }
        id
    }

    pub fn face(&mut self, f: [u32; 3]) {
        self.faces.push(f);
    }

    /// First tag wins for edges shared between copies.
    pub fn tag(&mut self, a: u32, b: u32, tag: EdgeTag) {
        self.tags.entry(edge_key(a, b)).or_insert(tag);
    }

    pub fn finish(self, construction: &str, n: u32, expected_vertices: usize) -> Result<TriangleMesh<T>> {
        let got = self.welder.points.len();
        if got != expected_vertices {
            return Err(Error::DedupMismatch { expected: expected_vertices, got });
        }
        let mut mesh = TriangleMesh::new(self.welder.points, self.faces)?.with_info(construction, Some(n));
        mesh.labels = Some(self.labels);
        mesh.edge_tags = self.tags;
        mesh.orient_outward();
        Ok(mesh)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solids;

    #[test]
    fn tetrahedron_edges() {
        let m = solids::tetrahedron::<f64>();
        let edges = extract_edges(&m).unwrap();
        assert_eq!(edges.len(), 6);
        let expect = 2.0 * (2.0f64 / 3.0).sqrt();
        assert!((expect - 1.632_993_161_855_452).abs() < 1e-15);
        for e in &edges {
            assert!((e.chord - expect).abs() < 1e-12);
            assert!((e.chord - 2.0 * (e.arc / 2.0).sin()).abs() < 1e-12);
        }
        assert!(edges.windows(2).all(|w| w[0].key() < w[1].key()));
    }

    #[test]
    fn icosahedron_is_regular_and_valid() {
        let m = solids::icosahedron::<f64>();
        let edges = extract_edges(&m).unwrap();
        assert_eq!(edges.len(), 30);
        let eta = eta_of_edges(&edges);
        assert!((eta.eta - 1.0).abs() < 1e-14);
        assert_eq!(eta.argmax.len(), 30);
        let r = validate(&m);
        assert!(r.is_valid(), "{:?}", r.failures);
    }

    #[test]
    fn non_manifold_is_reported() {
        let m = solids::tetrahedron::<f64>();
        let mut faces = m.faces.clone();
        faces.pop();
        let broken = TriangleMesh::new(m.vertices.clone(), faces).unwrap();
        assert!(matches!(extract_edges(&broken), Err(Error::NonManifold { faces: 1, .. })));
        let r = validate(&broken);
        assert!(!r.euler_ok && !r.is_valid());
    }

    #[test]
    fn bad_faces_rejected() {
        let v = solids::tetrahedron::<f64>().vertices;
        assert!(matches!(TriangleMesh::new(v.clone(), vec![[0, 1, 7]]), Err(Error::FaceIndexOutOfRange { .. })));
        assert!(matches!(TriangleMesh::new(v, vec![[0, 1, 1]]), Err(Error::RepeatedVertex { face: 0 })));
    }

    #[test]
    fn min_pairwise_examples() {
        let u = |x: f64, y: f64, z: f64| radial_project(Vec3::new(x, y, z)).unwrap();
        let p = u(0.0, 0.0, 1.0);
        assert!((min_pairwise_chord(&[p, -p]).unwrap() - 2.0).abs() < 1e-15);
        let square = [u(1.0, 0.0, 0.0), u(0.0, 1.0, 0.0), u(-1.0, 0.0, 0.0), u(0.0, -1.0, 0.0)];
        assert!((min_pairwise_chord(&square).unwrap() - 2f64.sqrt()).abs() < 1e-15);
        let ico: Vec<_> = solids::icosahedron::<f64>().vertices.iter().map(|v| radial_project(*v).unwrap()).collect();
        let d12 = 4.0 / (10.0 + 2.0 * 5f64.sqrt()).sqrt();
        assert!((min_pairwise_chord(&ico).unwrap() - d12).abs() < 1e-12);
        assert!((d12 - 1.051_462_224_238_267_2).abs() < 1e-15);
        assert!(matches!(min_pairwise_chord(&[p]), Err(Error::TooFewPoints)));
    }

    #[test]
    fn scaled_vertex_checks() {
        let mut m = solids::icosahedron::<f64>();
        m.vertices[3] = m.vertices[3] * 1.01;
        let r = validate(&m);
        assert!(!r.norms_ok);
        assert!(r.is_convex);
        assert!((r.max_norm_deviation - 0.01).abs() < 1e-12);

        // pushed below the plane of its five neighbours: a dent
        m.vertices[3] = m.vertices[3] * 0.3;
        let r = validate(&m);
        assert!(!r.is_convex);
        assert_eq!(support_plane_violations(&m, 1e-9), support_plane_violations_exhaustive(&m, 1e-9));
    }

    #[test]
    fn swapped_sphere_points_are_not_convex() {
        let mut m = solids::icosahedron::<f64>();
        let far = (1..12).find(|&v| m.vertices[0].dot(m.vertices[v]) < -0.99).unwrap();
        let near = (1..12).find(|&v| m.vertices[0].dot(m.vertices[v]) > 0.4).unwrap();
        m.vertices.swap(near, far);
        let r = validate(&m);
        assert!(r.norms_ok);
        assert!(!r.is_convex);
        assert_eq!(support_plane_violations(&m, 1e-9), support_plane_violations_exhaustive(&m, 1e-9));
    }

    #[test]
    fn dodecahedron_fan_is_not_strictly_convex() {
        let r = validate(&solids::dodecahedron_fan::<f64>());
        assert!(r.euler_ok);
        assert!(!r.is_convex);
        assert!(!r.all_faces_acute);
    }
}
