//! Per-mesh summary of edge uniformity and validity.

use serde::{Deserialize, Serialize, Serializer};

use crate::bounds::lower_bound_simple;
use crate::error::Result;
use crate::kitrick::{self, kitrick_eta_closed_form};
use crate::mesh::{extract_edges, eta_of_edges, validate, TriangleMesh};
use crate::scalar::{two_sin36, Real};

/// Rounds to 12 significant digits.
pub fn round12(x: f64) -> f64 {
    if x.is_finite() {
        format!("{x:.11e}").parse().unwrap_or(x)
    } else {
        x
    }
}

fn ser12<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(round12(*x))
}

fn ser12_opt<S: Serializer>(x: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(v) => s.serialize_some(&round12(*v)),
        None => s.serialize_none(),
    }
}

/// Field order is the serialized column order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UniformityReport {
    pub construction: String,
    pub n: Option<u32>,
    pub m: usize,
    pub vertices: usize,
    pub edges: usize,
    #[serde(serialize_with = "ser12")]
    pub min_edge: f64,
    #[serde(serialize_with = "ser12")]
    pub max_edge: f64,
    #[serde(serialize_with = "ser12")]
    pub eta: f64,
    /// Only for Kitrick meshes.
    #[serde(serialize_with = "ser12_opt")]
    pub eta_closed_form: Option<f64>,
    /// Absent when the face count is odd or below 4.
    #[serde(serialize_with = "ser12_opt")]
    pub lower_bound_simple: Option<f64>,
    pub is_convex: bool,
    pub all_faces_acute: bool,
    #[serde(serialize_with = "ser12")]
    pub max_norm_deviation: f64,
    pub eta_below_2sin36: bool,
    /// Whether every validation check passed.
    #[serde(skip)]
    pub valid: bool,
    #[serde(skip)]
    pub failures: Vec<String>,
}

impl UniformityReport {
    pub fn from_mesh<T: Real>(mesh: &TriangleMesh<T>) -> Result<Self> {
        let edges = extract_edges(mesh)?;
        let eta = eta_of_edges(&edges);
        let v = validate(mesh);
        let m = mesh.face_count();
        let eta_closed_form = match mesh.info.n {
            Some(n) if mesh.info.construction == kitrick::NAME => Some(kitrick_eta_closed_form::<f64>(n)),
            _ => None,
        };
        let eta_f = eta.eta.as_f64();
        Ok(Self {
            construction: mesh.info.construction.clone(),
            n: mesh.info.n,
            m,
            vertices: mesh.vertex_count(),
            edges: edges.len(),
            min_edge: eta.min_edge.as_f64(),
            max_edge: eta.max_edge.as_f64(),
            eta: eta_f,
            eta_closed_form,
            lower_bound_simple: lower_bound_simple::<f64>(m as u64).ok(),
            is_convex: v.is_convex,
            all_faces_acute: v.all_faces_acute,
            max_norm_deviation: v.max_norm_deviation.as_f64(),
            eta_below_2sin36: eta_f < two_sin36::<f64>(),
            valid: v.is_valid(),
            failures: v.failures,
        })
    }

    /// Human-readable multi-line summary.
    pub fn summary(&self) -> String {
        let n = self.n.map_or("-".to_string(), |n| n.to_string());
        let mut s = format!(
            "construction {}  n={}  m={}  V={}  E={}\nmin edge {:.12}  max edge {:.12}  eta {:.12}\n",
            self.construction, n, self.m, self.vertices, self.edges, self.min_edge, self.max_edge, self.eta
        );
        if let Some(c) = self.eta_closed_form {
            s += &format!("closed form {:.12}  |diff| {:.3e}\n", c, (c - self.eta).abs());
        }
        if let Some(lb) = self.lower_bound_simple {
            s += &format!("lower bound {:.12}  (2 sin 36 = {:.12})\n", lb, two_sin36::<f64>());
        }
        s += &format!(
            "convex {}  acute {}  max |norm-1| {:.3e}  eta < 2 sin 36: {}\n",
            self.is_convex, self.all_faces_acute, self.max_norm_deviation, self.eta_below_2sin36
        );
        for f in &self.failures {
            s += &format!("FAIL {f}\n");
        }
        s
    }
}
