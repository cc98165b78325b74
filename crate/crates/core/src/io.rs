//! CSV and OBJ artifacts.
//!
//! Every CSV starts with a `# meta:` line of space-separated `key=value`
//! pairs, then a header row. Floats are written as `{:.16e}` so output is
//! deterministic and round-trips exactly. Lines end in LF.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::dirichlet::GridField;
use crate::error::{Error, Result};
use crate::lorentz::SurfaceMesh;
use crate::profile::ProfileSolution;

/// Ordered `key=value` metadata for the first CSV line.
pub type Meta = Vec<(String, String)>;

pub fn meta_line(meta: &Meta) -> String {
    let mut s = String::from("# meta:");
    for (k, v) in meta {
        let _ = write!(s, " {k}={}", v.replace(char::is_whitespace, "_"));
    }
    s
}

pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

/// CSV text with the meta line, `header` and numeric rows.
pub fn csv_text(meta: &Meta, header: &[&str], rows: impl IntoIterator<Item = Vec<f64>>) -> String {
    let mut out = meta_line(meta);
    out.push('\n');
    out.push_str(&header.join(","));
    out.push('\n');
    for row in rows {
        let cells: Vec<String> = row.into_iter().map(fmt_f64).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

/// Samples of a profile as columns r,u,uprime.
pub fn profile_csv(sol: &ProfileSolution, meta: &Meta) -> String {
    csv_text(meta, &["r", "u", "uprime"], sol.samples.iter().map(|s| vec![s.r, s.u, s.up]))
}

/// Grid values as columns x,y,u in row-major node order.
pub fn grid_csv(field: &GridField, meta: &Meta) -> String {
    let d = &field.domain;
    csv_text(
        meta,
        &["x", "y", "u"],
        d.nodes().map(|(i, j)| vec![d.x(i), d.y(j), field.at(i, j)]),
    )
}

/// ASCII OBJ with vertices and 1-based triangle faces.
pub fn obj_text(vertices: &[[f64; 3]], triangles: &[[usize; 3]]) -> String {
    let mut out = String::new();
    for v in vertices {
        let _ = writeln!(out, "v {} {} {}", fmt_f64(v[0]), fmt_f64(v[1]), fmt_f64(v[2]));
    }
    for t in triangles {
        let _ = writeln!(out, "f {} {} {}", t[0] + 1, t[1] + 1, t[2] + 1);
    }
    out
}

pub fn mesh_obj(mesh: &SurfaceMesh) -> String {
    let verts: Vec<[f64; 3]> = mesh.vertices.iter().map(|v| [v.x, v.y, v.z]).collect();
    obj_text(&verts, &mesh.triangles)
}

/// Per-vertex channels as columns vertex,<names...>.
pub fn channels_csv(mesh: &SurfaceMesh, meta: &Meta) -> String {
    let names: Vec<&str> = mesh.channels.keys().map(String::as_str).collect();
    let mut header = vec!["vertex"];
    header.extend(&names);
    csv_text(
        meta,
        &header,
        (0..mesh.len()).map(|i| {
            let mut row = vec![i as f64];
            row.extend(mesh.channels.values().map(|c| c[i]));
            row
        }),
    )
}

/// Graph of a grid field as a triangulated surface.
pub fn grid_obj(field: &GridField) -> String {
    let d = &field.domain;
    let verts: Vec<[f64; 3]> = d.nodes().map(|(i, j)| [d.x(i), d.y(j), field.at(i, j)]).collect();
    let mut tris = Vec::new();
    for j in 0..d.ny() - 1 {
        for i in 0..d.nx() - 1 {
            let (a, b, c, e) = (d.index(i, j), d.index(i + 1, j), d.index(i + 1, j + 1), d.index(i, j + 1));
            tris.push([a, b, c]);
            tris.push([a, c, e]);
        }
    }
    obj_text(&verts, &tris)
}

/// `dir/stem.channels.csv` next to `dir/stem.obj`.
pub fn channels_path(obj: &Path) -> PathBuf {
    let stem = obj.file_stem().and_then(|s| s.to_str()).unwrap_or("mesh");
    obj.with_file_name(format!("{stem}.channels.csv"))
}

/// Writes the mesh and its channels next to each other.
pub fn write_mesh(mesh: &SurfaceMesh, obj: &Path, meta: &Meta) -> Result<()> {
    std::fs::write(obj, mesh_obj(mesh))?;
    std::fs::write(channels_path(obj), channels_csv(mesh, meta))?;
    Ok(())
}

/// Boundary samples x,y,phi read from CSV; `#` lines and a non-numeric
/// header are skipped.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryTable {
    pub samples: Vec<(f64, f64, f64)>,
}

impl BoundaryTable {
    pub fn parse(text: &str) -> Result<Self> {
        let mut samples = Vec::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let cells: Vec<&str> = line.split(',').map(str::trim).collect();
            let nums: std::result::Result<Vec<f64>, _> = cells.iter().map(|c| c.parse::<f64>()).collect();
            match nums {
                Ok(v) if v.len() == 3 => samples.push((v[0], v[1], v[2])),
                Ok(_) => return Err(Error::Config(format!("line {}: expected x,y,phi", n + 1))),
                Err(_) if samples.is_empty() => continue,
                Err(_) => return Err(Error::Config(format!("line {}: not numeric", n + 1))),
            }
        }
        if samples.is_empty() {
            return Err(Error::Config("boundary table has no samples".into()));
        }
        Ok(BoundaryTable { samples })
    }

    /// Value at (x,y), which must match a sample to within `tol`.
    pub fn lookup(&self, x: f64, y: f64, tol: f64) -> Option<f64> {
        self.samples
            .iter()
            .map(|&(sx, sy, v)| ((sx - x).hypot(sy - y), v))
            .min_by(|a, b| a.0.total_cmp(&b.0))
            .filter(|(d, _)| *d <= tol)
            .map(|(_, v)| v)
    }
}
