//! Central-difference discretisation of
//! Q_t[u] = (1 − |Du|²)Δu + u_i u_j u_ij − αt(1 − |Du|²)/u
//! and its Jacobian with respect to the interior node values.

use rayon::prelude::*;

use super::banded::{BandLu, BandMatrix};
use super::grid::{GridField, RectDomain};
use crate::error::{Error, Result};
use crate::lorentz::{q_operator, Jet};

/// Boundary data as a function of the node coordinates.
pub type Phi<'a> = &'a (dyn Fn(f64, f64) -> f64 + Sync);

/// Nine-point jet of the grid function at interior node (i,j).
pub(crate) fn stencil_jet(dom: &RectDomain, v: &[f64], i: usize, j: usize) -> Jet {
    let nx = dom.nx();
    let at = |a: usize, b: usize| v[b * nx + a];
    let h = dom.h;
    let c = at(i, j);
    Jet {
        u: c,
        ux: (at(i + 1, j) - at(i - 1, j)) / (2.0 * h),
        uy: (at(i, j + 1) - at(i, j - 1)) / (2.0 * h),
        uxx: (at(i + 1, j) - 2.0 * c + at(i - 1, j)) / (h * h),
        uyy: (at(i, j + 1) - 2.0 * c + at(i, j - 1)) / (h * h),
        uxy: (at(i + 1, j + 1) - at(i + 1, j - 1) - at(i - 1, j + 1) + at(i - 1, j - 1)) / (4.0 * h * h),
    }
}

/// Principal coefficients a_ij = (1 − |p|²)δ_ij + p_i p_j of Q at gradient p.
pub fn coefficient_matrix(p: f64, q: f64) -> [[f64; 2]; 2] {
    let g = 1.0 - p * p - q * q;
    [[g + p * p, p * q], [p * q, g + q * q]]
}

/// Q_t at every interior node minus `source`, in unknown order.
pub(crate) fn interior_residual(
    dom: &RectDomain,
    v: &[f64],
    alpha: f64,
    t: f64,
    source: Option<&[f64]>,
) -> Vec<f64> {
    let (m, _) = dom.interior_dims();
    let rows: Vec<Vec<f64>> = (1..dom.ny() - 1)
        .into_par_iter()
        .map(|j| {
            (1..=m)
                .map(|i| {
                    let q = q_operator(&stencil_jet(dom, v, i, j), alpha, t);
                    q - source.map_or(0.0, |s| s[dom.unknown(i, j)])
                })
                .collect()
        })
        .collect();
    rows.concat()
}

/// Jacobian of [`interior_residual`] with respect to the interior values;
/// boundary values are held fixed.
pub(crate) fn jacobian(dom: &RectDomain, v: &[f64], alpha: f64, t: f64) -> BandMatrix {
    let (m, n) = dom.interior_dims();
    let h = dom.h;
    let (h2, hh) = (2.0 * h, h * h);
    let rows: Vec<Vec<(usize, f64)>> = dom
        .interior_nodes()
        .into_par_iter()
        .map(|(i, j)| {
            let jet = stencil_jet(dom, v, i, j);
            let (p, q) = (jet.ux, jet.uy);
            let at = alpha * t;
            let g = 1.0 - p * p - q * q;
            let d_uxx = 1.0 - q * q;
            let d_uyy = 1.0 - p * p;
            let d_uxy = 2.0 * p * q;
            let d_p = 2.0 * q * jet.uxy - 2.0 * p * jet.uyy + 2.0 * at * p / jet.u;
            let d_q = 2.0 * p * jet.uxy - 2.0 * q * jet.uxx + 2.0 * at * q / jet.u;
            let d_u = if at == 0.0 { 0.0 } else { at * g / (jet.u * jet.u) };
            let mut out = Vec::with_capacity(9);
            let mut push = |a: usize, b: usize, w: f64| {
                if !dom.is_boundary(a, b) {
                    out.push((dom.unknown(a, b), w));
                }
            };
            push(i, j, -2.0 * (d_uxx + d_uyy) / hh + d_u);
            push(i + 1, j, d_uxx / hh + d_p / h2);
            push(i - 1, j, d_uxx / hh - d_p / h2);
            push(i, j + 1, d_uyy / hh + d_q / h2);
            push(i, j - 1, d_uyy / hh - d_q / h2);
            let c = d_uxy / (4.0 * hh);
            push(i + 1, j + 1, c);
            push(i - 1, j - 1, c);
            push(i + 1, j - 1, -c);
            push(i - 1, j + 1, -c);
            out
        })
        .collect();
    let mut a = BandMatrix::zeros(n, m + 1, m + 1);
    for (r, row) in rows.into_iter().enumerate() {
        for (c, w) in row {
            a.set(r, c, w);
        }
    }
    a
}

/// Checks the operator's domain: interior |Du| < 1 and, when the zero-order
/// term is present, u > 0 at every node.
pub(crate) fn check_admissible(dom: &RectDomain, v: &[f64], needs_positive: bool) -> Result<()> {
    for (i, j) in dom.interior_nodes() {
        let jet = stencil_jet(dom, v, i, j);
        let grad = jet.ux.hypot(jet.uy);
        if !(grad < 1.0) {
            return Err(Error::SpacelikeViolation {
                index: dom.index(i, j),
                grad,
            });
        }
    }
    if needs_positive {
        if let Some(index) = v.iter().position(|&x| !(x > 0.0)) {
            return Err(Error::PositivityViolation { index, value: v[index] });
        }
    }
    Ok(())
}

/// Discrete Q_t[u] at interior nodes and u − φ on the boundary. Positivity
/// is only required when αt ≠ 0.
pub fn assemble_qt(u: &GridField, phi: Phi, alpha: f64, t: f64) -> Result<GridField> {
    let dom = &u.domain;
    check_admissible(dom, &u.values, alpha * t != 0.0)?;
    let inner = interior_residual(dom, &u.values, alpha, t, None);
    let values = dom
        .nodes()
        .map(|(i, j)| {
            if dom.is_boundary(i, j) {
                u.at(i, j) - phi(dom.x(i), dom.y(j))
            } else {
                inner[dom.unknown(i, j)]
            }
        })
        .collect();
    Ok(GridField {
        domain: dom.clone(),
        values,
    })
}

/// Five-point Laplacian on the interior unknowns with Dirichlet rows removed.
fn laplacian_lu(dom: &RectDomain) -> Result<BandLu> {
    let (m, n) = dom.interior_dims();
    let mut a = BandMatrix::zeros(n, m, m);
    for (i, j) in dom.interior_nodes() {
        let r = dom.unknown(i, j);
        a.set(r, r, -4.0);
        for (p, q) in [(i + 1, j), (i - 1, j), (i, j + 1), (i, j - 1)] {
            if !dom.is_boundary(p, q) {
                a.set(r, dom.unknown(p, q), 1.0);
            }
        }
    }
    a.factor()
}

/// Boundary values of φ, interior values zero.
pub(crate) fn boundary_field(dom: &RectDomain, phi: Phi) -> GridField {
    let mut f = GridField::constant(dom, 0.0);
    for (i, j) in dom.boundary_nodes() {
        let k = dom.index(i, j);
        f.values[k] = phi(dom.x(i), dom.y(j));
    }
    f
}

/// Discrete harmonic extension of the boundary values of φ.
pub fn harmonic_extension(dom: &RectDomain, phi: Phi) -> Result<GridField> {
    let mut f = boundary_field(dom, phi);
    let lu = laplacian_lu(dom)?;
    let (_, n) = dom.interior_dims();
    let mut rhs = vec![0.0; n];
    for (i, j) in dom.interior_nodes() {
        let r = dom.unknown(i, j);
        for (p, q) in [(i + 1, j), (i - 1, j), (i, j + 1), (i, j - 1)] {
            if dom.is_boundary(p, q) {
                rhs[r] -= f.at(p, q);
            }
        }
    }
    let sol = lu.solve(&rhs);
    for (i, j) in dom.interior_nodes() {
        let k = dom.index(i, j);
        f.values[k] = sol[dom.unknown(i, j)];
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square(half: f64, h: f64) -> RectDomain {
        RectDomain::new((-half, half), (-half, half), h).unwrap()
    }

    #[test]
    fn cylinder_residual_is_second_order() {
        let mut errs = Vec::new();
        for h in [0.05, 0.025] {
            let dom = square(0.5, h);
            let u = GridField::from_fn(&dom, |x, _| x.cos());
            let r = assemble_qt(&u, &|x, _| x.cos(), -1.0, 1.0).unwrap();
            errs.push(r.values.iter().fold(0.0f64, |m, v| m.max(v.abs())));
        }
        assert!(errs[0] < 1e-3, "{errs:?}");
        let ratio = errs[0] / errs[1];
        assert!((3.0..5.0).contains(&ratio), "{errs:?}");
    }

    #[test]
    fn constants_have_zero_maximal_residual() {
        let dom = square(1.0, 0.1);
        let u = GridField::constant(&dom, 0.7);
        let r = assemble_qt(&u, &|_, _| 0.7, -3.0, 0.0).unwrap();
        assert!(r.values.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn hyperboloid_residual_is_small() {
        let dom = square(0.5, 0.025);
        let f = |x: f64, y: f64| (1.0 + x * x + y * y).sqrt();
        let u = GridField::from_fn(&dom, f);
        let r = assemble_qt(&u, &f, 2.0, 1.0).unwrap();
        let e = r.values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        assert!(e < 1e-3, "{e}");
    }

    #[test]
    fn rejects_inadmissible_fields() {
        let dom = square(1.0, 0.1);
        let steep = GridField::from_fn(&dom, |x, _| 2.0 + 1.5 * x);
        assert!(matches!(
            assemble_qt(&steep, &|_, _| 0.0, -1.0, 1.0),
            Err(Error::SpacelikeViolation { .. })
        ));
        let neg = GridField::from_fn(&dom, |x, _| 0.3 * x);
        assert!(matches!(
            assemble_qt(&neg, &|_, _| 0.0, -1.0, 1.0),
            Err(Error::PositivityViolation { .. })
        ));
        assert!(assemble_qt(&neg, &|x, _| 0.3 * x, -1.0, 0.0).is_ok());
    }

    #[test]
    fn jacobian_matches_finite_differences() {
        let dom = RectDomain::new((-0.45, 0.45), (-0.45, 0.45), 0.1).unwrap();
        let u = GridField::from_fn(&dom, |x, y| 1.0 + 0.2 * x * x - 0.1 * x * y + 0.15 * y);
        let (alpha, t) = (-1.3, 0.7);
        let jac = jacobian(&dom, &u.values, alpha, t);
        let base = interior_residual(&dom, &u.values, alpha, t, None);
        let eta = 1e-6;
        for (i, j) in dom.interior_nodes() {
            let col = dom.unknown(i, j);
            let mut v = u.values.clone();
            v[dom.index(i, j)] += eta;
            let plus = interior_residual(&dom, &v, alpha, t, None);
            v[dom.index(i, j)] -= 2.0 * eta;
            let minus = interior_residual(&dom, &v, alpha, t, None);
            for r in 0..base.len() {
                let fd = (plus[r] - minus[r]) / (2.0 * eta);
                let an = jac.get(r, col);
                assert!((fd - an).abs() < 1e-5 * (1.0 + an.abs()), "({r},{col}): {fd} vs {an}");
            }
        }
    }

    #[test]
    fn harmonic_extension_reproduces_harmonic_data() {
        let dom = square(1.0, 0.1);
        let f = |x: f64, y: f64| 1.0 + 0.3 * x + 0.2 * (x * x - y * y);
        let ext = harmonic_extension(&dom, &f).unwrap();
        for (i, j) in dom.nodes().collect::<Vec<_>>() {
            assert!((ext.at(i, j) - f(dom.x(i), dom.y(j))).abs() < 1e-12);
        }
    }

    #[test]
    fn coefficient_matrix_ellipticity() {
        let (p, q) = (0.6, -0.5);
        let a = coefficient_matrix(p, q);
        let g = 1.0 - p * p - q * q;
        for k in 0..64 {
            let th = k as f64 * 0.1;
            let xi = [th.cos(), th.sin()];
            let quad = a[0][0] * xi[0] * xi[0] + 2.0 * a[0][1] * xi[0] * xi[1] + a[1][1] * xi[1] * xi[1];
            assert!(quad >= g - 1e-14 && quad <= 1.0 + 1e-14);
        }
    }
}
