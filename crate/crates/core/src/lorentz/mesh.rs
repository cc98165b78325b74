use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::lorentz::{lorentz_cross, LVec3};

/// Tolerance on ⟨N,N⟩ = −1 for stored vertex normals.
pub const NORMAL_TOLERANCE: f64 = 1e-9;

/// Triangulated spacelike surface lying in the halfspace z > 0.
///
/// Vertex normals are unit timelike and future-pointing. Scalar channels
/// (mean curvature, residuals, ...) are stored per vertex under a name and
/// exported next to the geometry.
#[derive(Debug, Clone)]
pub struct SurfaceMesh {
    pub vertices: Vec<LVec3>,
    pub triangles: Vec<[usize; 3]>,
    pub vertex_normals: Vec<LVec3>,
    pub channels: BTreeMap<String, Vec<f64>>,
}

impl SurfaceMesh {
    /// Builds a mesh and derives vertex normals from the incident faces.
    pub fn new(vertices: Vec<LVec3>, triangles: Vec<[usize; 3]>) -> Result<Self> {
        let normals = face_averaged_normals(&vertices, &triangles)?;
        Self::with_normals(vertices, triangles, normals)
    }

    pub fn with_normals(
        vertices: Vec<LVec3>,
        triangles: Vec<[usize; 3]>,
        vertex_normals: Vec<LVec3>,
    ) -> Result<Self> {
        let mesh = SurfaceMesh {
            vertices,
            triangles,
            vertex_normals,
            channels: BTreeMap::new(),
        };
        mesh.validate()?;
        Ok(mesh)
    }

    /// Checks the halfspace, normal and spacelike-edge invariants.
    pub fn validate(&self) -> Result<()> {
        if self.vertex_normals.len() != self.vertices.len() {
            return Err(Error::InvalidMesh(format!(
                "{} normals for {} vertices",
                self.vertex_normals.len(),
                self.vertices.len()
            )));
        }
        for (i, v) in self.vertices.iter().enumerate() {
            if !v.is_finite() || v.z <= 0.0 {
                return Err(Error::InvalidMesh(format!(
                    "vertex {i} at {v:?} is outside the halfspace z > 0"
                )));
            }
        }
        for (i, n) in self.vertex_normals.iter().enumerate() {
            if (n.square() + 1.0).abs() > NORMAL_TOLERANCE || n.z <= 0.0 {
                return Err(Error::InvalidMesh(format!(
                    "normal {i} = {n:?} is not unit future-pointing timelike"
                )));
            }
        }
        for tri in &self.triangles {
            for k in 0..3 {
                let (a, b) = (tri[k], tri[(k + 1) % 3]);
                if a >= self.vertices.len() || b >= self.vertices.len() {
                    return Err(Error::InvalidMesh(format!("triangle {tri:?} out of range")));
                }
                let e = self.vertices[b] - self.vertices[a];
                if e.square() <= 0.0 {
                    return Err(Error::NotSpacelike(format!(
                        "edge ({a},{b}) has <e,e> = {}",
                        e.square()
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Sorted one-ring of every vertex.
    pub fn neighbors(&self) -> Vec<Vec<usize>> {
        let mut ring = vec![Vec::new(); self.vertices.len()];
        for tri in &self.triangles {
            for k in 0..3 {
                let a = tri[k];
                ring[a].push(tri[(k + 1) % 3]);
                ring[a].push(tri[(k + 2) % 3]);
            }
        }
        for r in &mut ring {
            r.sort_unstable();
            r.dedup();
        }
        ring
    }

    /// Marks vertices touching an edge used by a single triangle.
    pub fn boundary_mask(&self) -> Vec<bool> {
        let mut edges: BTreeMap<(usize, usize), u32> = BTreeMap::new();
        for tri in &self.triangles {
            for k in 0..3 {
                let (a, b) = (tri[k], tri[(k + 1) % 3]);
                *edges.entry((a.min(b), a.max(b))).or_default() += 1;
            }
        }
        let mut mask = vec![false; self.vertices.len()];
        for ((a, b), count) in edges {
            if count == 1 {
                mask[a] = true;
                mask[b] = true;
            }
        }
        mask
    }

    /// Indices of vertices that are not on the boundary.
    pub fn interior_vertices(&self) -> Vec<usize> {
        self.boundary_mask()
            .iter()
            .enumerate()
            .filter_map(|(i, &b)| (!b).then_some(i))
            .collect()
    }

    /// Vertices whose whole two-ring avoids the boundary.
    pub fn deep_interior_vertices(&self) -> Vec<usize> {
        let boundary = self.boundary_mask();
        let ring = self.neighbors();
        (0..self.vertices.len())
            .filter(|&i| !boundary[i] && ring[i].iter().all(|&j| !boundary[j]))
            .collect()
    }

    pub fn set_channel(&mut self, name: &str, values: Vec<f64>) {
        assert_eq!(values.len(), self.vertices.len(), "channel length mismatch");
        self.channels.insert(name.to_string(), values);
    }
}

/// Area-weighted average of future-pointing face normals.
pub fn face_averaged_normals(vertices: &[LVec3], triangles: &[[usize; 3]]) -> Result<Vec<LVec3>> {
    let mut acc = vec![LVec3::ZERO; vertices.len()];
    for tri in triangles {
        if tri.iter().any(|&i| i >= vertices.len()) {
            return Err(Error::InvalidMesh(format!("triangle {tri:?} out of range")));
        }
        let [a, b, c] = tri.map(|i| vertices[i]);
        let n = lorentz_cross(b - a, c - a);
        if n.square() >= 0.0 {
            return Err(Error::NotSpacelike(format!("face {tri:?} is not spacelike")));
        }
        let n = n.future();
        for &i in tri {
            acc[i] = acc[i] + n;
        }
    }
    acc.into_iter()
        .enumerate()
        .map(|(i, n)| {
            n.normalized()
                .filter(|n| n.square() < 0.0)
                .map(LVec3::future)
                .ok_or_else(|| Error::InvalidMesh(format!("vertex {i} has no timelike normal")))
        })
        .collect()
}

/// Structured (n_s × n_t) grid triangulation. Each quad is split along the
/// diagonal that is shorter in ambient Euclidean length. With `wrap_t` the
/// last column connects back to the first.
pub fn grid_triangles(points: &[LVec3], n_s: usize, n_t: usize, wrap_t: bool) -> Vec<[usize; 3]> {
    let idx = |i: usize, j: usize| i * n_t + (j % n_t);
    let cols = if wrap_t { n_t } else { n_t - 1 };
    let mut tris = Vec::with_capacity(2 * (n_s - 1) * cols);
    for i in 0..n_s - 1 {
        for j in 0..cols {
            let (a, b, c, d) = (idx(i, j), idx(i + 1, j), idx(i + 1, j + 1), idx(i, j + 1));
            let ac = (points[c] - points[a]).euclidean_norm();
            let bd = (points[d] - points[b]).euclidean_norm();
            if ac <= bd {
                tris.push([a, b, c]);
                tris.push([a, c, d]);
            } else {
                tris.push([a, b, d]);
                tris.push([b, c, d]);
            }
        }
    }
    tris
}
