use crate::error::{Error, Result};

/// Value, gradient and Hessian of a graph z = u(x,y) at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet {
    pub u: f64,
    pub ux: f64,
    pub uy: f64,
    pub uxx: f64,
    pub uxy: f64,
    pub uyy: f64,
}

/// A graph tabulated on a uniform rectangular lattice with spacing `h`.
#[derive(Debug, Clone)]
pub struct GraphSample {
    pub points: Vec<(f64, f64)>,
    pub jets: Vec<Jet>,
    pub h: f64,
}

impl GraphSample {
    /// Samples `f` on [x0,x1] × [y0,y1] including the edges.
    pub fn tabulate(
        x_range: (f64, f64),
        y_range: (f64, f64),
        h: f64,
        f: impl Fn(f64, f64) -> Jet,
    ) -> Result<Self> {
        if !(h > 0.0) || x_range.1 < x_range.0 || y_range.1 < y_range.0 {
            return Err(Error::InvalidDomain(format!(
                "bad sampling rectangle {x_range:?} × {y_range:?} with h = {h}"
            )));
        }
        let nx = ((x_range.1 - x_range.0) / h).round() as usize;
        let ny = ((y_range.1 - y_range.0) / h).round() as usize;
        let mut points = Vec::with_capacity((nx + 1) * (ny + 1));
        let mut jets = Vec::with_capacity(points.capacity());
        for j in 0..=ny {
            for i in 0..=nx {
                let x = x_range.0 + i as f64 * h;
                let y = y_range.0 + j as f64 * h;
                points.push((x, y));
                jets.push(f(x, y));
            }
        }
        Ok(GraphSample { points, jets, h })
    }
}

/// Q_t[u] = (1 − |Du|²)Δu + u_i u_j u_ij − αt(1 − |Du|²)/u at one point.
pub fn q_operator(jet: &Jet, alpha: f64, t: f64) -> f64 {
    let g = 1.0 - jet.ux * jet.ux - jet.uy * jet.uy;
    (1.0 - jet.uy * jet.uy) * jet.uxx
        + 2.0 * jet.ux * jet.uy * jet.uxy
        + (1.0 - jet.ux * jet.ux) * jet.uyy
        - alpha * t * g / jet.u
}

/// Pointwise Q_t residual of a tabulated graph; t = 1 is the singular
/// maximal surface operator, t = 0 the maximal surface operator.
pub fn graph_q_residual(g: &GraphSample, alpha: f64, t: f64) -> Result<Vec<f64>> {
    for (index, jet) in g.jets.iter().enumerate() {
        let grad = jet.ux.hypot(jet.uy);
        if !(grad < 1.0) {
            return Err(Error::SpacelikeViolation { index, grad });
        }
        if !(jet.u > 0.0) {
            return Err(Error::PositivityViolation {
                index,
                value: jet.u,
            });
        }
    }
    Ok(g.jets.iter().map(|j| q_operator(j, alpha, t)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cylinder(x: f64, _y: f64) -> Jet {
        Jet {
            u: x.cos(),
            ux: -x.sin(),
            uy: 0.0,
            uxx: -x.cos(),
            uxy: 0.0,
            uyy: 0.0,
        }
    }

    fn hyperboloid(x: f64, y: f64) -> Jet {
        let u = (1.0 + x * x + y * y).sqrt();
        let u3 = u * u * u;
        Jet {
            u,
            ux: x / u,
            uy: y / u,
            uxx: (1.0 + y * y) / u3,
            uxy: -x * y / u3,
            uyy: (1.0 + x * x) / u3,
        }
    }

    #[test]
    fn cylinder_over_catenary() {
        let g = GraphSample::tabulate((-0.5, 0.5), (-0.5, 0.5), 0.05, cylinder).unwrap();
        let r = graph_q_residual(&g, -1.0, 1.0).unwrap();
        assert!(r.iter().all(|v| v.abs() < 1e-10));
    }

    #[test]
    fn hyperbolic_plane_alpha_two() {
        let g = GraphSample::tabulate((-2.0, 2.0), (-2.0, 2.0), 0.1, hyperboloid).unwrap();
        let r = graph_q_residual(&g, 2.0, 1.0).unwrap();
        assert!(r.iter().all(|v| v.abs() < 1e-10));
    }

    #[test]
    fn constants_are_maximal() {
        let g = GraphSample::tabulate((0.0, 1.0), (0.0, 1.0), 0.25, |_, _| Jet {
            u: 3.0,
            ux: 0.0,
            uy: 0.0,
            uxx: 0.0,
            uxy: 0.0,
            uyy: 0.0,
        })
        .unwrap();
        let r = graph_q_residual(&g, 7.5, 0.0).unwrap();
        assert!(r.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn rejects_lightlike_gradient_and_nonpositive_height() {
        let g = GraphSample::tabulate((0.0, 1.0), (0.0, 1.0), 0.5, |x, _| Jet {
            u: 1.0,
            ux: x,
            uy: 0.0,
            uxx: 0.0,
            uxy: 0.0,
            uyy: 0.0,
        })
        .unwrap();
        assert!(matches!(
            graph_q_residual(&g, 1.0, 1.0),
            Err(Error::SpacelikeViolation { .. })
        ));
        let g = GraphSample::tabulate((0.0, 1.0), (0.0, 1.0), 0.5, |x, _| Jet {
            u: x - 0.5,
            ux: 0.0,
            uy: 0.0,
            uxx: 0.0,
            uxy: 0.0,
            uyy: 0.0,
        })
        .unwrap();
        assert!(matches!(
            graph_q_residual(&g, 1.0, 1.0),
            Err(Error::PositivityViolation { .. })
        ));
    }
}
