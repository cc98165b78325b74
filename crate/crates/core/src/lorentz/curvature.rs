//! Discrete mean curvature of spacelike meshes and the residual of the
//! singular maximal surface equation H = α⟨N,a⟩/⟨p,a⟩.
//!
//! At every vertex the nearby vertices are expressed in a Lorentz-orthonormal
//! frame (e1, e2, N) and the height w = −⟨q − p, N⟩ is fitted by weighted
//! least squares with w ≈ c1 x + c2 y + A x² + B xy + C y², plus the four
//! cubic monomials when there are at least 12 points. The sample is a disk in
//! the tangent coordinates of radius twice the farthest one-ring neighbor
//! (the two-ring on an isotropic grid), widened at boundary corners until the
//! fit is well posed. A disk keeps the sample balanced on stretched grids where
//! the combinatorial two-ring is not, and Gaussian weights in distance keep
//! far points from dominating where the boundary cuts the disk.
//!
//! The fitted patch is a Lorentzian graph over the tangent plane, so its mean
//! curvature with respect to the future normal is
//!
//!   H = [(1 − f_y²) f_xx + 2 f_x f_y f_xy + (1 − f_x²) f_yy] / (1 − |Df|²)^{3/2}.
//!
//! The linear terms tilt the normal; the fit is repeated once in the tilted frame.

use std::collections::VecDeque;

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lorentz::{tangent_frame, LVec3, SurfaceMesh};

/// Mean curvature and fitted normal at every vertex.
#[derive(Debug, Clone)]
pub struct CurvatureField {
    pub mean: Vec<f64>,
    pub normals: Vec<LVec3>,
}

#[derive(Debug, Clone, Copy)]
struct VertexFit {
    mean: f64,
    normal: LVec3,
}

/// Vertices other than `i` within `radius` of it, measured in the tangent
/// coordinates of `normal` and reached through vertices that are also inside.
fn neighborhood(mesh: &SurfaceMesh, ring: &[Vec<usize>], i: usize, normal: LVec3, radius: f64) -> Vec<usize> {
    let p = mesh.vertices[i];
    let (e1, e2) = tangent_frame(normal);
    let inside = |j: usize| {
        let d = mesh.vertices[j] - p;
        d.dot(e1).hypot(d.dot(e2)) <= radius * (1.0 + TIE_SLACK)
    };
    let mut seen = vec![i];
    let mut out = Vec::new();
    let mut queue = VecDeque::from([i]);
    while let Some(v) = queue.pop_front() {
        for &w in &ring[v] {
            if seen.contains(&w) {
                continue;
            }
            seen.push(w);
            if inside(w) {
                out.push(w);
                queue.push_back(w);
            }
        }
    }
    out
}

fn one_ring_radius(mesh: &SurfaceMesh, ring: &[Vec<usize>], i: usize, normal: LVec3) -> f64 {
    let (e1, e2) = tangent_frame(normal);
    ring[i]
        .iter()
        .map(|&j| {
            let d = mesh.vertices[j] - mesh.vertices[i];
            d.dot(e1).hypot(d.dot(e2))
        })
        .fold(0.0, f64::max)
}

const CUBIC_MIN_POINTS: usize = 12;
/// Weight exp(−k d²/ρ²) for a point at distance d, ρ the disk radius.
const WEIGHT_K: f64 = 6.0;
/// Relative slack on the disk radius so grid points lying on it are kept
/// regardless of rounding.
const TIE_SLACK: f64 = 1e-9;
/// Disk widenings tried before giving up on a vertex.
const MAX_WIDENINGS: usize = 8;
/// Fits whose design matrix has a smaller singular value ratio are rejected.
const MIN_CONDITION: f64 = 1e-10;

/// Fits the heights of `star` over the tangent plane of `normal`; `rho` is the
/// disk radius and scales both the monomials and the weights.
fn fit_once(p: LVec3, normal: LVec3, star: &[LVec3], rho: f64) -> Option<VertexFit> {
    let (e1, e2) = tangent_frame(normal);
    let local: Vec<(f64, f64, f64)> = star
        .iter()
        .map(|&q| {
            let d = q - p;
            (d.dot(e1), d.dot(e2), -d.dot(normal))
        })
        .collect();
    if !(rho > 0.0) {
        return None;
    }
    let with_slope = local.len() >= 5;
    let with_cubic = local.len() >= CUBIC_MIN_POINTS;
    let cols = match (with_slope, with_cubic) {
        (_, true) => 9,
        (true, false) => 5,
        _ => 3,
    };
    if local.len() < cols {
        return None;
    }
    let mut a = DMatrix::<f64>::zeros(local.len(), cols);
    let mut b = DVector::<f64>::zeros(local.len());
    for (r, &(x, y, w)) in local.iter().enumerate() {
        let (s, t) = (x / rho, y / rho);
        let quad = [s * s, s * t, t * t];
        let mut row: Vec<f64> = if with_slope {
            vec![s, t, quad[0], quad[1], quad[2]]
        } else {
            quad.to_vec()
        };
        if with_cubic {
            row.extend([s * s * s, s * s * t, s * t * t, t * t * t]);
        }
        let wt = (-WEIGHT_K * (s * s + t * t)).exp();
        for (c, v) in row.into_iter().enumerate() {
            a[(r, c)] = wt * v;
        }
        b[r] = wt * w;
    }
    let svd = a.svd(true, true);
    let sv = &svd.singular_values;
    if sv.min() <= MIN_CONDITION * sv.max() {
        return None;
    }
    let coef = svd.solve(&b, 0.0).ok()?;
    let (fx, fy, q) = if with_slope {
        (coef[0] / rho, coef[1] / rho, 2)
    } else {
        (0.0, 0.0, 0)
    };
    let rho2 = rho * rho;
    let fxx = 2.0 * coef[q] / rho2;
    let fxy = coef[q + 1] / rho2;
    let fyy = 2.0 * coef[q + 2] / rho2;
    let g2 = fx * fx + fy * fy;
    if g2 >= 1.0 {
        return None;
    }
    let w = (1.0 - g2).sqrt();
    let mean = ((1.0 - fy * fy) * fxx + 2.0 * fx * fy * fxy + (1.0 - fx * fx) * fyy) / (w * w * w);
    let tilted = (e1 * fx + e2 * fy + normal) * (1.0 / w);
    Some(VertexFit {
        mean,
        normal: tilted.normalized()?.future(),
    })
}

/// Fits at `i` over the disk of twice the one-ring radius, widening it until
/// the fit is well posed with enough points for the cubic terms.
fn fit_vertex(mesh: &SurfaceMesh, ring: &[Vec<usize>], i: usize) -> Result<VertexFit> {
    let p = mesh.vertices[i];
    let normal = mesh.vertex_normals[i];
    let mut radius = 2.0 * one_ring_radius(mesh, ring, i, normal);
    let mut best = None;
    let mut count = 0;
    for _ in 0..=MAX_WIDENINGS {
        let star: Vec<LVec3> = neighborhood(mesh, ring, i, normal, radius)
            .into_iter()
            .map(|j| mesh.vertices[j])
            .collect();
        count = star.len();
        if let Some(first) = fit_once(p, normal, &star, radius) {
            let fit = fit_once(p, first.normal, &star, radius).unwrap_or(first);
            if star.len() >= CUBIC_MIN_POINTS {
                return Ok(fit);
            }
            best = Some(fit);
        }
        radius *= 1.25;
    }
    best.ok_or(Error::DegenerateStar {
        vertex: i,
        neighbors: count,
    })
}

/// Per-vertex mean curvature (trace of the second fundamental form) with
/// respect to the future-pointing normal, together with the fitted normals.
pub fn mean_curvature_field(mesh: &SurfaceMesh) -> Result<CurvatureField> {
    let ring = mesh.neighbors();
    let fits: Vec<VertexFit> = (0..mesh.len())
        .into_par_iter()
        .map(|i| fit_vertex(mesh, &ring, i))
        .collect::<Result<_>>()?;
    Ok(CurvatureField {
        mean: fits.iter().map(|f| f.mean).collect(),
        normals: fits.iter().map(|f| f.normal).collect(),
    })
}

/// Per-vertex mean curvature estimate.
pub fn mesh_mean_curvature(mesh: &SurfaceMesh) -> Result<Vec<f64>> {
    Ok(mean_curvature_field(mesh)?.mean)
}

/// H(p) − α⟨N(p),a⟩/⟨p,a⟩ at every vertex.
pub fn eql_residual(mesh: &SurfaceMesh, alpha: f64, a_vec: LVec3) -> Result<Vec<f64>> {
    if let Some(vertex) = mesh.vertices.iter().position(|p| p.dot(a_vec) == 0.0) {
        return Err(Error::DenominatorZero { vertex });
    }
    let field = mean_curvature_field(mesh)?;
    Ok(mesh
        .vertices
        .iter()
        .zip(field.mean.iter().zip(&field.normals))
        .map(|(&p, (&h, &n))| h - alpha * n.dot(a_vec) / p.dot(a_vec))
        .collect())
}

/// Largest |value| over the selected vertices.
pub fn max_abs_over(values: &[f64], vertices: &[usize]) -> f64 {
    vertices.iter().map(|&i| values[i].abs()).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lorentz::mesh::grid_triangles;

    fn graph_mesh(f: impl Fn(f64, f64) -> f64, half: f64, n: usize) -> SurfaceMesh {
        let mut pts = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let x = -half + 2.0 * half * i as f64 / (n - 1) as f64;
                let y = -half + 2.0 * half * j as f64 / (n - 1) as f64;
                pts.push(LVec3::new(x, y, f(x, y)));
            }
        }
        let tris = grid_triangles(&pts, n, n, false);
        SurfaceMesh::new(pts, tris).unwrap()
    }

    #[test]
    fn flat_plane_has_zero_curvature() {
        let m = graph_mesh(|_, _| 1.0, 0.5, 9);
        let h = mesh_mean_curvature(&m).unwrap();
        assert!(h.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn tilted_plane_has_zero_curvature() {
        let m = graph_mesh(|x, y| 2.0 + 0.3 * x - 0.2 * y, 0.5, 9);
        let h = mesh_mean_curvature(&m).unwrap();
        assert!(h.iter().all(|&v| v.abs() < 1e-10), "{h:?}");
    }

    #[test]
    fn hyperboloid_apex_curvature() {
        let m = graph_mesh(|x, y| (1.0 + x * x + y * y).sqrt(), 0.5, 21);
        let h = mesh_mean_curvature(&m).unwrap();
        for i in m.interior_vertices() {
            assert!((h[i] - 2.0).abs() < 5e-2, "H[{i}] = {}", h[i]);
        }
    }

    #[test]
    fn isolated_triangle_is_degenerate() {
        let pts = vec![
            LVec3::new(0.0, 0.0, 1.0),
            LVec3::new(0.1, 0.0, 1.0),
            LVec3::new(0.0, 0.1, 1.0),
        ];
        let m = SurfaceMesh::new(pts, vec![[0, 1, 2]]).unwrap();
        assert!(matches!(
            mesh_mean_curvature(&m),
            Err(Error::DegenerateStar { neighbors: 2, .. })
        ));
    }

    #[test]
    fn residual_rejects_vanishing_denominator() {
        let m = graph_mesh(|_, _| 1.0, 0.5, 5);
        // <p,(1,0,0)> = x vanishes on the middle column.
        assert!(matches!(
            eql_residual(&m, 2.0, LVec3::new(1.0, 0.0, 0.0)),
            Err(Error::DenominatorZero { .. })
        ));
    }
}
