//! Wavefront OBJ import/export and report serialization.
//!
//! Only `v`, `f` and `#` lines are understood. Coordinates are written with
//! 17 significant digits, so `f64` values survive a round trip exactly.

use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::mesh::TriangleMesh;
use crate::report::UniformityReport;
use crate::scalar::Real;
use crate::vec3::Vec3;

/// Largest accepted deviation of an imported vertex from the unit sphere.
pub const INSCRIBED_TOL: f64 = 1e-6;

pub const TOOL: &str = concat!("sphere-eta ", env!("CARGO_PKG_VERSION"));

pub fn write_obj<T: Real, W: Write>(mesh: &TriangleMesh<T>, mut out: W) -> Result<()> {
    let name = if mesh.info.construction.is_empty() { "unknown" } else { &mesh.info.construction };
    let n = mesh.info.n.map_or("-".to_string(), |n| n.to_string());
    writeln!(out, "# construction={name} n={n} faces={}", mesh.face_count())?;
    writeln!(out, "# tool={TOOL}")?;
    for v in &mesh.vertices {
        let [x, y, z] = v.to_f64();
        writeln!(out, "v {x:.16e} {y:.16e} {z:.16e}")?;
    }
    for [a, b, c] in &mesh.faces {
        writeln!(out, "f {} {} {}", a + 1, b + 1, c + 1)?;
    }
    out.flush()?;
    Ok(())
}

/// Renders an OBJ document to a string.
pub fn obj_string<T: Real>(mesh: &TriangleMesh<T>) -> Result<String> {
    let mut buf = Vec::new();
    write_obj(mesh, &mut buf)?;
    Ok(String::from_utf8(buf).expect("OBJ output is ASCII"))
}

fn parse_err<T>(line: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse { line, msg: msg.into() })
}

fn parse_index(tok: &str, line: usize, count: usize) -> Result<u32> {
    let head = tok.split('/').next().unwrap_or("");
    let Ok(i) = head.parse::<i64>() else {
        return parse_err(line, format!("bad face index {tok:?}"));
    };
    // negative indices count back from the latest vertex
    let resolved = if i < 0 { count as i64 + i } else { i - 1 };
    if i == 0 || resolved < 0 || resolved >= count as i64 {
        return parse_err(line, format!("face index {i} out of range for {count} vertices"));
    }
    Ok(resolved as u32)
}

/// Reads a triangle mesh, renormalizing vertices that lie within
/// [`INSCRIBED_TOL`] of the unit sphere.
pub fn read_obj<T: Real, R: BufRead>(input: R) -> Result<TriangleMesh<T>> {
    let mut verts: Vec<Vec3<T>> = Vec::new();
    let mut faces = Vec::new();
    let mut construction = String::new();
    let mut n = None;

    for (k, line) in input.lines().enumerate() {
        let line = line?;
        let lineno = k + 1;
        let mut toks = line.split_whitespace();
        match toks.next() {
            None => {}
            Some(t) if t.starts_with('#') => {
                for kv in line.trim_start_matches('#').split_whitespace() {
                    match kv.split_once('=') {
                        Some(("construction", v)) => construction = v.to_string(),
                        Some(("n", v)) => n = v.parse().ok(),
                        _ => {}
                    }
                }
            }
            Some("v") => {
                let xs: Vec<f64> = toks.map(str::parse).collect::<Result<_, _>>().or_else(|e| parse_err(lineno, format!("bad coordinate: {e}")))?;
                if xs.len() != 3 {
                    return parse_err(lineno, format!("expected 3 coordinates, got {}", xs.len()));
                }
                let p = Vec3::new(xs[0], xs[1], xs[2]);
                let norm = p.norm();
                if !((norm - 1.0).abs() <= INSCRIBED_TOL) {
                    return Err(Error::NotInscribed { index: verts.len(), norm });
                }
                // already unit to rounding: keep the exact text value
                let p = if (norm - 1.0).abs() <= 4.0 * f64::EPSILON { p } else { p / norm };
                verts.push(Vec3::from_f64(p.to_f64()));
            }
            Some("f") => {
                let idx: Vec<u32> = toks.map(|t| parse_index(t, lineno, verts.len())).collect::<Result<_>>()?;
                if idx.len() != 3 {
                    return parse_err(lineno, format!("only triangles are supported, got {} indices", idx.len()));
                }
                faces.push([idx[0], idx[1], idx[2]]);
            }
            Some(other) => log::warn!("line {lineno}: ignoring unsupported OBJ record {other:?}"),
        }
    }
    let name = if construction.is_empty() { "unknown" } else { &construction };
    Ok(TriangleMesh::new(verts, faces)?.with_info(name, n))
}

/// Reads an OBJ file from disk.
pub fn read_obj_file<T: Real>(path: &std::path::Path) -> Result<TriangleMesh<T>> {
    read_obj(std::io::BufReader::new(std::fs::File::open(path)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    /// Header line plus one data row.
    CsvRow,
}

pub fn write_report<W: Write>(report: &UniformityReport, format: ReportFormat, mut out: W) -> Result<()> {
    match format {
        ReportFormat::Json => {
            serde_json::to_writer_pretty(&mut out, report)?;
            writeln!(out)?;
        }
        ReportFormat::CsvRow => {
            let mut w = csv::Writer::from_writer(&mut out);
            w.serialize(report)?;
            w.flush()?;
        }
    }
    Ok(())
}

/// Column order of the report, shared by JSON and CSV.
pub const REPORT_FIELDS: [&str; 14] = [
    "construction",
    "n",
    "m",
    "vertices",
    "edges",
    "min_edge",
    "max_edge",
    "eta",
    "eta_closed_form",
    "lower_bound_simple",
    "is_convex",
    "all_faces_acute",
    "max_norm_deviation",
    "eta_below_2sin36",
];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clinton::build_clinton_II;
    use crate::kitrick::build_kitrick;
    use crate::mesh::{extract_edges, measure_eta};
    use crate::solids::icosahedron;

    fn count(s: &str, prefix: &str) -> usize {
        s.lines().filter(|l| l.starts_with(prefix)).count()
    }

    #[test]
    fn obj_counts_and_header() {
        let s = obj_string(&icosahedron::<f64>()).unwrap();
        assert_eq!((count(&s, "v "), count(&s, "f ")), (12, 20));
        assert!(s.starts_with("# construction=icosahedron n=1 faces=20\n"));
        let s = obj_string(&build_kitrick::<f64>(2).unwrap()).unwrap();
        assert_eq!((count(&s, "v "), count(&s, "f ")), (122, 240));
        assert!(!s.contains('\r'));
    }

    #[test]
    fn obj_is_deterministic() {
        let a = obj_string(&build_kitrick::<f64>(3).unwrap()).unwrap();
        let b = obj_string(&build_kitrick::<f64>(3).unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn round_trip_is_exact() {
        for m in [build_kitrick::<f64>(3).unwrap(), build_clinton_II::<f64>(4).unwrap(), icosahedron()] {
            let back: TriangleMesh<f64> = read_obj(obj_string(&m).unwrap().as_bytes()).unwrap();
            assert_eq!(back.faces, m.faces);
            assert_eq!(back.info, m.info);
            let worst = back.vertices.iter().zip(&m.vertices).map(|(a, b)| a.max_abs_diff(*b)).fold(0.0, f64::max);
            assert_eq!(worst, 0.0);
            let (ea, eb) = (extract_edges(&m).unwrap(), extract_edges(&back).unwrap());
            assert_eq!(ea.len(), eb.len());
            assert!(ea.iter().zip(&eb).all(|(x, y)| (x.chord - y.chord).abs() <= 1e-12));
            assert!((measure_eta(&m).unwrap().eta - measure_eta(&back).unwrap().eta).abs() <= 1e-12);
        }
    }

    #[test]
    fn parse_errors() {
        let mut s = String::new();
        for v in icosahedron::<f64>().vertices.iter().take(11) {
            s += &format!("v {} {} {}\n", v.x, v.y, v.z);
        }
        let bad = format!("{s}f 1 2 99\n");
        assert!(matches!(read_obj::<f64, _>(bad.as_bytes()), Err(Error::Parse { line: 12, .. })));
        assert!(matches!(read_obj::<f64, _>("v 1.1 0 0\n".as_bytes()), Err(Error::NotInscribed { index: 0, .. })));
        assert!(matches!(read_obj::<f64, _>("v 1 0 zero\n".as_bytes()), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(read_obj::<f64, _>("v 1 0\n".as_bytes()), Err(Error::Parse { .. })));
        let quad = "v 1 0 0\nv 0 1 0\nv 0 0 1\nv -1 0 0\nf 1 2 3 4\n";
        assert!(matches!(read_obj::<f64, _>(quad.as_bytes()), Err(Error::Parse { line: 5, .. })));
    }

    #[test]
    fn tolerant_parsing() {
        let src = "# hello\nv 1 0 0\nv 0 1 0\nv 0 0 1.0000001\nvn 0 0 1\no thing\nf 1/1/1 2//2 -1\n";
        let m: TriangleMesh<f64> = read_obj(src.as_bytes()).unwrap();
        assert_eq!(m.faces, vec![[0, 1, 2]]);
        assert_eq!(m.vertices[2].z, 1.0);
        assert_eq!(m.info.construction, "unknown");
    }

    #[test]
    fn report_json_fields() {
        let r = UniformityReport::from_mesh(&build_kitrick::<f64>(1).unwrap()).unwrap();
        let mut buf = Vec::new();
        write_report(&r, ReportFormat::Json, &mut buf).unwrap();
        let v: serde_json::Value = serde_json::from_slice(&buf).unwrap();
        let obj = v.as_object().unwrap();
        assert_eq!(obj.keys().collect::<Vec<_>>().len(), REPORT_FIELDS.len());
        for f in REPORT_FIELDS {
            assert!(obj.contains_key(f), "{f}");
        }
        assert_eq!(obj["construction"], "kitrick");
        assert_eq!(obj["eta_below_2sin36"], true);
        assert_eq!(obj["eta"].as_f64().unwrap(), 1.113_586_880_90);

        let ico = UniformityReport::from_mesh(&icosahedron::<f64>()).unwrap();
        let mut buf = Vec::new();
        write_report(&ico, ReportFormat::Json, &mut buf).unwrap();
        let v: serde_json::Value = serde_json::from_slice(&buf).unwrap();
        assert!(v["eta_closed_form"].is_null());
        assert_eq!(v["eta"].as_f64().unwrap(), 1.0);
    }

    #[test]
    fn report_csv_row() {
        let r = UniformityReport::from_mesh(&icosahedron::<f64>()).unwrap();
        let mut buf = Vec::new();
        write_report(&r, ReportFormat::CsvRow, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), REPORT_FIELDS.join(","));
        let row: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(row.len(), REPORT_FIELDS.len());
        assert_eq!(row[0], "icosahedron");
        assert_eq!(row[8], "");
        assert_eq!(row[9], "1.0");
    }
}
