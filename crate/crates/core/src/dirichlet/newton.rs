//! Damped Newton iteration for the discrete Q_t equation.

use super::grid::GridField;
use super::operator::{check_admissible, interior_residual, jacobian};
use super::SolverOptions;
use crate::error::{Error, Result};

/// Smallest damping factor tried before the step is abandoned.
const MIN_DAMPING: f64 = 1.0 / (1u64 << 30) as f64;
/// Consecutive safeguard-limited steps that count as a breach.
const MAX_PINNED: usize = 5;
const ARMIJO: f64 = 1e-4;

/// Result of one converged Newton solve.
#[derive(Debug, Clone)]
pub struct NewtonOutcome {
    pub u: GridField,
    pub iterations: usize,
    pub residual: f64,
    /// Largest interior |Du| over all accepted iterates, the start included.
    pub max_iterate_grad: f64,
    /// Accepted iterates when requested in the options.
    pub iterates: Vec<GridField>,
}

fn inf_norm(r: &[f64]) -> f64 {
    r.iter().fold(0.0, |m, v| m.max(v.abs()))
}

enum Reject {
    Gradient(f64),
    Positivity(f64),
}

/// Solves Q_t[u] = source with the boundary values of `init` held fixed.
pub fn newton_solve(
    init: &GridField,
    alpha: f64,
    t: f64,
    source: Option<&[f64]>,
    opts: &SolverOptions,
) -> Result<NewtonOutcome> {
    let dom = &init.domain;
    let needs_positive = alpha * t != 0.0;
    let safe = 1.0 - opts.eps_s;
    let mut u = init.clone();
    let grad0 = u.max_interior_grad().0;
    if !(grad0 < safe) {
        return Err(Error::SpacelikeBreach { max_grad: grad0 });
    }
    if needs_positive && !(u.min() > 0.0) {
        return Err(Error::PositivityBreach { t, min_u: u.min() });
    }
    check_admissible(dom, &u.values, needs_positive)?;
    let mut r = interior_residual(dom, &u.values, alpha, t, source);
    let mut rn = inf_norm(&r);
    let mut max_grad = grad0;
    let mut pinned = 0;
    let mut iterates = Vec::new();
    for it in 0..=opts.max_newton_iters {
        if rn <= opts.tol {
            return Ok(NewtonOutcome {
                u,
                iterations: it,
                residual: rn,
                max_iterate_grad: max_grad,
                iterates,
            });
        }
        if it == opts.max_newton_iters || !rn.is_finite() {
            break;
        }
        let neg: Vec<f64> = r.iter().map(|v| -v).collect();
        let delta = jacobian(dom, &u.values, alpha, t).factor()?.solve(&neg);
        let mut lambda = 1.0;
        let mut limited = false;
        let mut last_reject = None;
        let accepted = loop {
            if lambda < MIN_DAMPING {
                break None;
            }
            let mut cand = u.clone();
            for (i, j) in dom.interior_nodes() {
                cand.values[dom.index(i, j)] += lambda * delta[dom.unknown(i, j)];
            }
            let g = cand.max_interior_grad().0;
            if !(g < safe) {
                limited = true;
                last_reject = Some(Reject::Gradient(g));
                lambda *= 0.5;
                continue;
            }
            if needs_positive && !(cand.min() > 0.0) {
                last_reject = Some(Reject::Positivity(cand.min()));
                lambda *= 0.5;
                continue;
            }
            let rc = interior_residual(dom, &cand.values, alpha, t, source);
            let rcn = inf_norm(&rc);
            if rcn <= (1.0 - ARMIJO * lambda) * rn {
                break Some((cand, rc, rcn, g));
            }
            last_reject = None;
            lambda *= 0.5;
        };
        let Some((cand, rc, rcn, g)) = accepted else {
            return Err(match last_reject {
                Some(Reject::Gradient(g)) => Error::SpacelikeBreach { max_grad: g },
                Some(Reject::Positivity(m)) => Error::PositivityBreach { t, min_u: m },
                None => Error::NewtonDiverged {
                    iterations: it,
                    residual: rn,
                },
            });
        };
        pinned = if limited { pinned + 1 } else { 0 };
        if pinned >= MAX_PINNED {
            return Err(Error::SpacelikeBreach { max_grad: g });
        }
        max_grad = max_grad.max(g);
        u = cand;
        r = rc;
        rn = rcn;
        if opts.keep_iterates {
            iterates.push(u.clone());
        }
    }
    Err(Error::NewtonDiverged {
        iterations: opts.max_newton_iters,
        residual: rn,
    })
}
