//! Radial solutions on disks and the C₁ bound from the dilated radial family
//! v_λ(r) = λ v(r/λ).

use super::grid::RectDomain;
use super::operator::Phi;
use crate::error::{Error, Result};
use crate::profile::{ClosedForm, EndpointLimits, ProfileOptions, ProfileSolution};
use crate::rotational::solve_rotational;

/// The profile r ↦ λ u(r/λ), again a solution for the same α.
pub fn dilate_profile(sol: &ProfileSolution, lambda: f64) -> Result<ProfileSolution> {
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(Error::InvalidTransform(format!("dilation factor {lambda}")));
    }
    let mut out = sol.clone();
    for s in &mut out.samples {
        s.r *= lambda;
        s.u *= lambda;
    }
    out.domain = (sol.domain.0 * lambda, sol.domain.1 * lambda);
    let l = sol.endpoint_limits;
    out.endpoint_limits = EndpointLimits {
        u_a: l.u_a.map(|u| u * lambda),
        up_a: l.up_a,
        u_b: l.u_b.map(|u| u * lambda),
        up_b: l.up_b,
    };
    out.closed_form = sol.closed_form.map(|cf| match cf {
        ClosedForm::Catenary { a, b } => ClosedForm::Catenary { a: a / lambda, b },
        ClosedForm::Hyperbola { a } => ClosedForm::Hyperbola { a: a / lambda },
        ClosedForm::Hyperboloid { radius } => ClosedForm::Hyperboloid {
            radius: radius * lambda,
        },
        c @ ClosedForm::Cone { .. } => c,
    });
    Ok(out)
}

/// The radial profile with v(0) = 1, v'(0) = 0 in the plane.
fn unit_profile(alpha: f64) -> Result<ProfileSolution> {
    solve_rotational(alpha, 1.0, 0.0, 2, &ProfileOptions::default())
}

/// v(r), taken as 0 past the end of the profile.
fn height(v: &ProfileSolution, r: f64) -> f64 {
    v.eval(r).map_or(0.0, |(u, _)| u)
}

const BISECTIONS: usize = 200;

/// Radial solution on the disk of radius R with constant boundary value c:
/// the unit profile v is cut by the line c·r/R at r_o and dilated by R/r_o.
pub fn solve_disk_radial(alpha: f64, radius: f64, c: f64) -> Result<ProfileSolution> {
    if !(alpha < 0.0) || !(radius > 0.0) || !(c > 0.0) {
        return Err(Error::InvalidInitial(format!(
            "need α < 0, R > 0 and c > 0 (got α = {alpha}, R = {radius}, c = {c})"
        )));
    }
    let v = unit_profile(alpha)?;
    let f = |r: f64| height(&v, r) - c * r / radius;
    let (mut lo, mut hi) = (0.0, v.r_span().1);
    if !(f(lo) > 0.0 && f(hi) < 0.0) {
        return Err(Error::NoIntersection);
    }
    for _ in 0..BISECTIONS {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let r_o = 0.5 * (lo + hi);
    if !(r_o > 0.0) {
        return Err(Error::NoIntersection);
    }
    dilate_profile(&v, radius / r_o)
}

/// Smallest dilation of the unit radial profile, centred at the rectangle's
/// centre, that lies above φ on the boundary; its height at the centre bounds
/// the solution from above.
#[derive(Debug, Clone)]
pub struct RadialSweep {
    pub lambda: f64,
    pub center: (f64, f64),
    pub c1: f64,
}

pub fn c1_sweep(dom: &RectDomain, phi: Phi, alpha: f64) -> Result<RadialSweep> {
    if !(alpha < 0.0) {
        return Err(Error::InvalidInitial(format!("the radial sweep needs α < 0, got {alpha}")));
    }
    let v = unit_profile(alpha)?;
    let center = dom.center();
    let pts: Vec<(f64, f64)> = dom
        .boundary_nodes()
        .into_iter()
        .map(|(i, j)| {
            let (x, y) = (dom.x(i), dom.y(j));
            ((x - center.0).hypot(y - center.1), phi(x, y))
        })
        .collect();
    // λ v(ρ/λ) increases with λ, so the admissible λ form a half-line.
    let above = |lambda: f64| pts.iter().all(|&(rho, f)| lambda * height(&v, rho / lambda) >= f);
    let mut hi = 1.0;
    let mut guard = 0;
    while !above(hi) {
        hi *= 2.0;
        guard += 1;
        if guard > 200 {
            return Err(Error::NoIntersection);
        }
    }
    let mut lo = hi;
    while above(lo) && lo > 1e-300 {
        lo *= 0.5;
    }
    for _ in 0..BISECTIONS {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if above(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(RadialSweep {
        lambda: hi,
        center,
        c1: hi * height(&v, 0.0),
    })
}
