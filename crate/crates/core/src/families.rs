//! Meshes of invariant surfaces: translation surfaces, hyperbolic rotations
//! about the x-axis, rotations about the timelike z-axis and about the
//! lightlike axis spanned by (1,0,1), plus exact reference surfaces and the
//! motions that preserve the equation.

use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::lorentz::{grid_triangles, LVec3, SurfaceMesh};
use crate::profile::{closed_form_catenary, closed_form_cone, AxisKind, ProfileSolution};

/// Parameter rectangle and grid resolution of a structured mesh.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TessellationSpec {
    pub param_range_s: (f64, f64),
    pub param_range_t: (f64, f64),
    pub resolution: (usize, usize),
    /// The t direction is periodic; the last column connects to the first.
    pub wrap_t: bool,
}

/// Default parameter range for hyperbolic and null rotations.
pub const DEFAULT_GROUP_RANGE: (f64, f64) = (-2.0, 2.0);

impl TessellationSpec {
    pub fn new(s: (f64, f64), t: (f64, f64), resolution: (usize, usize)) -> Self {
        TessellationSpec {
            param_range_s: s,
            param_range_t: t,
            resolution,
            wrap_t: false,
        }
    }

    /// Full turn θ ∈ [0, 2π) for rotations about the z-axis.
    pub fn polar(r: (f64, f64), resolution: (usize, usize)) -> Self {
        TessellationSpec {
            param_range_s: r,
            param_range_t: (0.0, TAU),
            resolution,
            wrap_t: true,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let (n_s, n_t) = self.resolution;
        let ok = |(a, b): (f64, f64)| a.is_finite() && b.is_finite() && b > a;
        if n_s < 2 || n_t < 2 || (self.wrap_t && n_t < 3) {
            return Err(Error::InvalidMesh(format!("resolution {:?} too small", self.resolution)));
        }
        if !ok(self.param_range_s) || !ok(self.param_range_t) {
            return Err(Error::InvalidMesh(format!(
                "degenerate parameter ranges {:?} × {:?}",
                self.param_range_s, self.param_range_t
            )));
        }
        Ok(())
    }

    fn s_values(&self) -> Vec<f64> {
        let (a, b) = self.param_range_s;
        let n = self.resolution.0;
        (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect()
    }

    fn t_values(&self) -> Vec<f64> {
        let (a, b) = self.param_range_t;
        let n = self.resolution.1;
        let div = if self.wrap_t { n } else { n - 1 };
        (0..n).map(|j| a + (b - a) * j as f64 / div as f64).collect()
    }

    fn with_s(mut self, s: (f64, f64)) -> Self {
        self.param_range_s = s;
        self
    }
}

/// Meshes X(i, s_i, t_j) over the spec grid; `i` indexes the s values.
fn param_mesh(spec: &TessellationSpec, x: impl Fn(usize, f64, f64) -> LVec3) -> Result<SurfaceMesh> {
    spec.validate()?;
    let (ss, ts) = (spec.s_values(), spec.t_values());
    let mut pts = Vec::with_capacity(ss.len() * ts.len());
    for (i, &s) in ss.iter().enumerate() {
        pts.extend(ts.iter().map(|&t| x(i, s, t)));
    }
    let tris = grid_triangles(&pts, ss.len(), ts.len(), spec.wrap_t);
    SurfaceMesh::new(pts, tris)
}

/// Profile values (u at each s of the grid); the s-range must lie in the
/// sampled range of the profile.
fn profile_column(profile: &ProfileSolution, spec: &TessellationSpec) -> Result<Vec<f64>> {
    spec.s_values()
        .into_iter()
        .map(|s| {
            profile.eval(s).map(|(u, _)| u).ok_or_else(|| {
                let (lo, hi) = profile.r_span();
                Error::DomainEmpty(format!("s = {s} outside the profile range [{lo}, {hi}]"))
            })
        })
        .collect()
}

fn require_kind(profile: &ProfileSolution, kind: AxisKind) -> Result<()> {
    if profile.axis_kind != kind {
        return Err(Error::InvalidInitial(format!(
            "expected a {kind:?} profile, got {:?}",
            profile.axis_kind
        )));
    }
    Ok(())
}

/// X(s, t) = (s, t, u(s)): the profile translated along the y-axis.
pub fn translation_surface(profile: &ProfileSolution, spec: &TessellationSpec) -> Result<SurfaceMesh> {
    require_kind(profile, AxisKind::Translation)?;
    spec.validate()?;
    for s in spec.s_values() {
        if profile.upp_at(s) == Some(0.0) {
            return Err(Error::ZeroCurvature);
        }
    }
    let u = profile_column(profile, spec)?;
    param_mesh(spec, |i, s, t| LVec3::new(s, t, u[i]))
}

/// Hyperbolic rotation of the planar profile z = u(x) about the x-axis,
/// X(x, θ) = (x, u sinh θ, u cosh θ).
///
/// A profile with parameter β gives a surface with α = β + 1.
pub fn rotate_x_axis(profile: &ProfileSolution, spec: &TessellationSpec) -> Result<SurfaceMesh> {
    require_kind(profile, AxisKind::Translation)?;
    spec.validate()?;
    let u = profile_column(profile, spec)?;
    param_mesh(spec, |i, s, th| LVec3::new(s, u[i] * th.sinh(), u[i] * th.cosh()))
}

/// Surface of revolution about the z-axis, X(r, θ) = (r cos θ, r sin θ, u(r)).
/// A range starting at r = 0 closes the mesh with a single apex vertex.
pub fn rotate_z_axis(profile: &ProfileSolution, spec: &TessellationSpec) -> Result<SurfaceMesh> {
    require_kind(profile, AxisKind::RotationZ)?;
    spec.validate()?;
    if spec.param_range_s.0 < 0.0 {
        return Err(Error::InvalidMesh("radii must be nonnegative".into()));
    }
    let polar = TessellationSpec {
        param_range_t: (0.0, TAU),
        wrap_t: true,
        ..*spec
    };
    let u = profile_column(profile, &polar)?;
    let (rs, ts) = (polar.s_values(), polar.t_values());
    let at = |i: usize, t: f64| LVec3::new(rs[i] * t.cos(), rs[i] * t.sin(), u[i]);
    if rs[0] > 0.0 {
        let pts: Vec<LVec3> = (0..rs.len()).flat_map(|i| ts.iter().map(move |&t| at(i, t))).collect();
        let tris = grid_triangles(&pts, rs.len(), ts.len(), true);
        return SurfaceMesh::new(pts, tris);
    }
    // Apex vertex followed by the rings r_1, r_2, ...
    let n_t = ts.len();
    let mut pts = vec![LVec3::new(0.0, 0.0, u[0])];
    let rings: Vec<LVec3> = (1..rs.len()).flat_map(|i| ts.iter().map(move |&t| at(i, t))).collect();
    let mut tris: Vec<[usize; 3]> = (0..n_t).map(|j| [0, 1 + j, 1 + (j + 1) % n_t]).collect();
    tris.extend(
        grid_triangles(&rings, rs.len() - 1, n_t, true)
            .into_iter()
            .map(|t| t.map(|k| k + 1)),
    );
    pts.extend(rings);
    SurfaceMesh::new(pts, tris)
}

/// Profile u(s) of the null-rotation family: m·log s for α = 3/2, otherwise
/// m·sgn(s)|s|^p/p with p = 3 − 2α (the odd extension keeps u' > 0 for s < 0).
pub fn lightlike_profile(alpha: f64, m: f64, s: f64) -> (f64, f64) {
    if alpha == 1.5 {
        (m * s.ln(), m / s)
    } else {
        let p = 3.0 - 2.0 * alpha;
        (m * s.signum() * s.abs().powf(p) / p, m * s.abs().powf(p - 1.0))
    }
}

/// X(s, t) for the surface invariant under null rotations about (1,0,1).
pub fn lightlike_point(u: f64, s: f64, t: f64) -> LVec3 {
    LVec3::new(u + s - t * t * s, -2.0 * t * s, u - s - t * t * s)
}

/// Admissible s for the profile: the sign domain of the power (s > 1 for the
/// logarithm), u > 0, and the whole t-range in the halfspace z > 0.
fn lightlike_admissible(alpha: f64, m: f64, s: f64, t_range: (f64, f64)) -> bool {
    let sign_ok = if alpha == 1.5 {
        s > 1.0
    } else if 3.0 - 2.0 * alpha > 0.0 {
        s > 0.0
    } else {
        s < 0.0
    };
    if !sign_ok {
        return false;
    }
    let (u, up) = lightlike_profile(alpha, m, s);
    // z = u − s(1 + t²) is monotone in t², so the extreme t values decide.
    let mut t2 = vec![t_range.0 * t_range.0, t_range.1 * t_range.1];
    if t_range.0 * t_range.1 <= 0.0 {
        t2.push(0.0);
    }
    u > 0.0 && up > 0.0 && t2.iter().all(|&q| u - s * (1.0 + q) > 0.0)
}

/// Surface swept by null rotations about the lightlike axis (1,0,1).
///
/// The requested s-range is shrunk to its longest admissible run (u > 0,
/// u' > 0, z > 0 on the whole t-range).
pub fn lightlike_surface(alpha: f64, m: f64, spec: &TessellationSpec) -> Result<SurfaceMesh> {
    if !(m > 0.0) {
        return Err(Error::InvalidInitial(format!("m = {m} must be positive")));
    }
    spec.validate()?;
    let (a, b) = spec.param_range_s;
    let probes = 64 * spec.resolution.0;
    let ok: Vec<(f64, bool)> = (0..=probes)
        .map(|i| {
            let s = a + (b - a) * i as f64 / probes as f64;
            (s, lightlike_admissible(alpha, m, s, spec.param_range_t))
        })
        .collect();
    let mut best: Option<(usize, usize)> = None;
    let mut i = 0;
    while i < ok.len() {
        if ok[i].1 {
            let j = (i..ok.len()).take_while(|&k| ok[k].1).last().unwrap();
            if best.is_none_or(|(p, q)| j - i > q - p) {
                best = Some((i, j));
            }
            i = j + 1;
        } else {
            i += 1;
        }
    }
    let (i, j) = best
        .filter(|(i, j)| j > i)
        .ok_or_else(|| {
            Error::DomainEmpty(format!(
                "no s in [{a}, {b}] keeps α = {alpha}, m = {m} spacelike inside z > 0 for t in {:?}",
                spec.param_range_t
            ))
        })?;
    let sub = spec.with_s((ok[i].0, ok[j].0));
    param_mesh(&sub, |_, s, t| lightlike_point(lightlike_profile(alpha, m, s).0, s, t))
}

/// Exact reference surfaces.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CanonicalKind {
    /// {⟨p,p⟩ = −r², z > 0} as the graph z = √(r² + x² + y²) over (s, t) = (x, y).
    HyperbolicPlane { r: f64 },
    /// Hyperbolic rotation of u = sin(a x)/a; parameters (x, θ).
    HyperbolicCatenoid { a: f64 },
    /// z = √α·√(x² + y²) over an annulus; parameters (r, θ). Needs 0 < α < 1.
    Cone { alpha: f64 },
}

pub fn canonical_surface(kind: CanonicalKind, spec: &TessellationSpec) -> Result<SurfaceMesh> {
    match kind {
        CanonicalKind::HyperbolicPlane { r } => {
            if !(r > 0.0) {
                return Err(Error::InvalidInitial(format!("radius {r} must be positive")));
            }
            param_mesh(spec, |_, x, y| LVec3::new(x, y, (r * r + x * x + y * y).sqrt()))
        }
        CanonicalKind::HyperbolicCatenoid { a } => {
            let profile = closed_form_catenary(a, 0.0)?;
            rotate_x_axis(&profile, spec)
        }
        CanonicalKind::Cone { alpha } => {
            let (r0, r1) = spec.param_range_s;
            if !(r0 > 0.0) {
                return Err(Error::InvalidMesh("the cone is meshed away from its apex (r > 0)".into()));
            }
            rotate_z_axis(&closed_form_cone(alpha, r1 * 1.001)?, spec)
        }
    }
}

/// Motions mapping solutions to solutions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Transform {
    /// Translation by a horizontal vector.
    TranslateHorizontal(LVec3),
    /// Rotation about the z-axis by an angle.
    RotateZ(f64),
    /// p ↦ p0 + λ(p − p0) with p0 in the plane z = 0.
    Dilate { lambda: f64, center: LVec3 },
}

/// Applies `op` to positions and normals. Scalar channels are dropped.
pub fn transform(mesh: &SurfaceMesh, op: Transform) -> Result<SurfaceMesh> {
    let (vertices, normals): (Vec<LVec3>, Vec<LVec3>) = match op {
        Transform::TranslateHorizontal(v) => {
            if v.z != 0.0 || !v.is_finite() {
                return Err(Error::InvalidTransform(format!("{v:?} is not horizontal")));
            }
            (mesh.vertices.iter().map(|&p| p + v).collect(), mesh.vertex_normals.clone())
        }
        Transform::RotateZ(theta) => {
            if !theta.is_finite() {
                return Err(Error::InvalidTransform(format!("angle {theta}")));
            }
            let (s, c) = theta.sin_cos();
            let rot = |p: LVec3| LVec3::new(c * p.x - s * p.y, s * p.x + c * p.y, p.z);
            (
                mesh.vertices.iter().map(|&p| rot(p)).collect(),
                mesh.vertex_normals.iter().map(|&n| rot(n)).collect(),
            )
        }
        Transform::Dilate { lambda, center } => {
            if center.z != 0.0 || !center.is_finite() {
                return Err(Error::InvalidTransform(format!(
                    "dilation center {center:?} is not in the plane z = 0"
                )));
            }
            if !(lambda > 0.0) || !lambda.is_finite() {
                return Err(Error::InvalidTransform(format!("factor {lambda} must be positive")));
            }
            (
                mesh.vertices.iter().map(|&p| center + (p - center) * lambda).collect(),
                mesh.vertex_normals.clone(),
            )
        }
    };
    SurfaceMesh::with_normals(vertices, mesh.triangles.clone(), normals)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lorentz::{eql_residual, max_abs_over, mesh_mean_curvature};
    use crate::profile::{closed_form_hyperbola, closed_form_hyperboloid, solve_profile_1d, ProfileOptions as OdeOptions};

    const TOL: f64 = 5e-2;

    #[test]
    fn hyperbolic_plane_vertices() {
        let spec = TessellationSpec::new((-1.0, 1.0), (-1.0, 1.0), (21, 21));
        let m = canonical_surface(CanonicalKind::HyperbolicPlane { r: 1.0 }, &spec).unwrap();
        assert!(m.vertices.iter().all(|p| (p.square() + 1.0).abs() < 1e-12));
    }

    #[test]
    fn cone_vertices() {
        let spec = TessellationSpec::polar((0.2, 1.0), (9, 24));
        let m = canonical_surface(CanonicalKind::Cone { alpha: 0.25 }, &spec).unwrap();
        for p in &m.vertices {
            assert!((p.z - 0.5 * p.x.hypot(p.y)).abs() < 1e-12);
        }
        assert!(matches!(
            canonical_surface(CanonicalKind::Cone { alpha: 4.0 }, &spec),
            Err(Error::NotSpacelike(_))
        ));
    }

    #[test]
    fn catenoid_vertices() {
        let spec = TessellationSpec::new((0.5, 2.5), (-1.0, 1.0), (11, 11));
        let m = canonical_surface(CanonicalKind::HyperbolicCatenoid { a: 1.0 }, &spec).unwrap();
        for p in &m.vertices {
            assert!((p.z * p.z - p.y * p.y - p.x.sin().powi(2)).abs() < 1e-12);
        }
    }

    #[test]
    fn translation_cylinders() {
        let cat = closed_form_catenary(1.0, std::f64::consts::FRAC_PI_2).unwrap();
        let spec = TessellationSpec::new((-0.6, 0.6), (-0.3, 0.3), (25, 13));
        let m = translation_surface(&cat, &spec).unwrap();
        let r = eql_residual(&m, -1.0, LVec3::E3).unwrap();
        assert!(max_abs_over(&r, &m.interior_vertices()) <= TOL);

        let hyp = closed_form_hyperbola(1.0).unwrap();
        let spec = TessellationSpec::new((-1.0, 1.0), (-0.5, 0.5), (41, 21));
        let m = translation_surface(&hyp, &spec).unwrap();
        assert!(m.vertices.iter().all(|p| (p.x * p.x - p.z * p.z + 1.0).abs() < 1e-12));
        let r = eql_residual(&m, 1.0, LVec3::E3).unwrap();
        assert!(max_abs_over(&r, &m.interior_vertices()) <= TOL);
    }

    #[test]
    fn straight_profile_is_rejected() {
        let line = solve_profile_1d(0.0, 1.0, 0.2, &OdeOptions::default()).unwrap();
        let spec = TessellationSpec::new((-0.5, 0.5), (0.0, 1.0), (5, 5));
        assert!(matches!(translation_surface(&line, &spec), Err(Error::ZeroCurvature)));
    }

    #[test]
    fn rotation_about_x_of_hyperbola_is_hyperbolic_plane() {
        let hyp = closed_form_hyperbola(1.0).unwrap();
        let spec = TessellationSpec::new((-1.0, 1.0), DEFAULT_GROUP_RANGE, (31, 61));
        let m = rotate_x_axis(&hyp, &spec).unwrap();
        assert!(m.vertices.iter().all(|p| (p.square() + 1.0).abs() < 1e-12));
        let r = eql_residual(&m, 2.0, LVec3::E3).unwrap();
        assert!(max_abs_over(&r, &m.interior_vertices()) <= TOL);
    }

    #[test]
    fn catenoid_is_maximal() {
        let spec = TessellationSpec::new((0.6, 2.5), DEFAULT_GROUP_RANGE, (31, 61));
        let m = canonical_surface(CanonicalKind::HyperbolicCatenoid { a: 1.0 }, &spec).unwrap();
        let h = mesh_mean_curvature(&m).unwrap();
        assert!(max_abs_over(&h, &m.interior_vertices()) <= TOL);
    }

    #[test]
    fn rotation_about_z() {
        let h2 = closed_form_hyperboloid(1.0, 2.0).unwrap();
        let m = rotate_z_axis(&h2, &TessellationSpec::polar((0.0, 1.5), (31, 64))).unwrap();
        let r = eql_residual(&m, 2.0, LVec3::E3).unwrap();
        assert!(max_abs_over(&r, &m.interior_vertices()) <= TOL);
        assert!(m.vertices.iter().all(|p| (p.square() + 1.0).abs() < 1e-12));
    }

    #[test]
    fn lightlike_hyperbolic_plane() {
        // α = 2 gives u = −m/s on s < 0 and ⟨X, X⟩ = 4 s u = −4m.
        let spec = TessellationSpec::new((-3.0, -0.2), DEFAULT_GROUP_RANGE, (15, 15));
        let m = lightlike_surface(2.0, 1.0, &spec).unwrap();
        for p in &m.vertices {
            assert!((p.square() + 4.0).abs() < 1e-9);
        }
    }

    #[test]
    fn lightlike_empty_domains() {
        let spec = TessellationSpec::new((0.1, 5.0), DEFAULT_GROUP_RANGE, (10, 10));
        // u = s: z = −s t² ≤ 0 for every s > 0.
        assert!(matches!(lightlike_surface(1.0, 1.0, &spec), Err(Error::DomainEmpty(_))));
        // u = log s < s(1 + t²) for every s > 1.
        let spec = TessellationSpec::new((1.0, 50.0), DEFAULT_GROUP_RANGE, (10, 10));
        assert!(matches!(lightlike_surface(1.5, 1.0, &spec), Err(Error::DomainEmpty(_))));
        assert!(lightlike_surface(1.5, 20.0, &spec).is_ok());
        let spec = TessellationSpec::new((0.1, 5.0), (-0.5, 0.5), (10, 10));
        let m = lightlike_surface(1.0, 2.0, &spec).unwrap();
        assert!(m.vertices.iter().all(|p| p.z > 0.0));
    }

    #[test]
    fn rotation_shifts_alpha_by_one() {
        for beta in [-2.0, -1.0, 0.5, 1.0] {
            let u0 = 0.5;
            let p = solve_profile_1d(beta, u0, 0.0, &OdeOptions::default()).unwrap();
            let (lo, hi) = p.r_span();
            let half = (0.4 * hi.min(-lo)).min(u0);
            let spec = TessellationSpec::new((-half, half), DEFAULT_GROUP_RANGE, (31, 61));
            let m = rotate_x_axis(&p, &spec).unwrap();
            let interior = m.interior_vertices();
            let worst = |alpha: f64| max_abs_over(&eql_residual(&m, alpha, LVec3::E3).unwrap(), &interior);
            assert!(worst(beta + 1.0) <= TOL, "β = {beta}: {}", worst(beta + 1.0));
            for off in [-0.5, 0.5] {
                assert!(worst(beta + 1.0 + off) > 10.0 * TOL, "β = {beta}, shift {off}");
            }
        }
    }

    #[test]
    fn lightlike_family_fails_vertical_equation_unless_alpha_two() {
        let t = (-1.0, 1.0);
        let cases = [
            (1.0, 3.0, (0.2, 1.0)),
            (1.25, 1.0, (0.2, 1.0)),
            (1.75, 1.0, (-1.0, -0.2)),
            (3.0, 1.0, (-1.0, -0.2)),
        ];
        for (alpha, m, s) in cases {
            let mesh = lightlike_surface(alpha, m, &TessellationSpec::new(s, t, (21, 21))).unwrap();
            let r = eql_residual(&mesh, alpha, LVec3::E3).unwrap();
            assert!(max_abs_over(&r, &mesh.interior_vertices()) > 10.0 * TOL, "α = {alpha}");
        }
        let mesh = lightlike_surface(2.0, 1.0, &TessellationSpec::new((-1.0, -0.2), t, (21, 21))).unwrap();
        let r = eql_residual(&mesh, 2.0, LVec3::E3).unwrap();
        assert!(max_abs_over(&r, &mesh.interior_vertices()) < TOL);
    }

    #[test]
    fn motions_preserve_the_residual() {
        let spec = TessellationSpec::new((-0.5, 0.5), (-0.5, 0.5), (21, 21));
        let h2 = canonical_surface(CanonicalKind::HyperbolicPlane { r: 1.0 }, &spec).unwrap();
        let base = eql_residual(&h2, 2.0, LVec3::E3).unwrap();
        let moved = transform(&h2, Transform::TranslateHorizontal(LVec3::new(5.0, 0.0, 0.0))).unwrap();
        let r = eql_residual(&moved, 2.0, LVec3::E3).unwrap();
        assert!(max_abs_over(&r, &moved.interior_vertices()) <= TOL);

        let turned = transform(&h2, Transform::RotateZ(std::f64::consts::PI / 7.0)).unwrap();
        let r = eql_residual(&turned, 2.0, LVec3::E3).unwrap();
        for i in h2.interior_vertices() {
            assert!((base[i] - r[i]).abs() <= 1e-12, "{} vs {}", base[i], r[i]);
        }
    }

    #[test]
    fn dilation_scales_the_residual() {
        let spec = TessellationSpec::polar((0.2, 1.0), (17, 64));
        let cone = canonical_surface(CanonicalKind::Cone { alpha: 0.25 }, &spec).unwrap();
        let base = eql_residual(&cone, 0.25, LVec3::E3).unwrap();
        assert!(max_abs_over(&base, &cone.interior_vertices()) <= TOL);
        let big = transform(&cone, Transform::Dilate { lambda: 3.0, center: LVec3::ZERO }).unwrap();
        let r = eql_residual(&big, 0.25, LVec3::E3).unwrap();
        assert!(max_abs_over(&r, &big.interior_vertices()) <= TOL / 3.0);
        for (a, b) in base.iter().zip(&r) {
            assert!((a - 3.0 * b).abs() <= 1e-9 * (1.0 + a.abs()));
        }
    }

    #[test]
    fn transforms_validate_arguments() {
        let spec = TessellationSpec::new((-0.5, 0.5), (-0.5, 0.5), (5, 5));
        let m = canonical_surface(CanonicalKind::HyperbolicPlane { r: 1.0 }, &spec).unwrap();
        assert!(matches!(
            transform(&m, Transform::TranslateHorizontal(LVec3::new(0.0, 0.0, 1.0))),
            Err(Error::InvalidTransform(_))
        ));
        assert!(matches!(
            transform(&m, Transform::Dilate { lambda: 2.0, center: LVec3::new(0.0, 0.0, 1.0) }),
            Err(Error::InvalidTransform(_))
        ));
        let moved = transform(&m, Transform::TranslateHorizontal(LVec3::new(5.0, 0.0, 0.0))).unwrap();
        assert_eq!(moved.vertices[0].x, m.vertices[0].x + 5.0);
    }
}
