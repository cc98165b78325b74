//! Dirichlet problem for α-singular maximal graphs over rectangles:
//!
//!   Q[u] = (1 − |Du|²)Δu + u_i u_j u_ij − α(1 − |Du|²)/u = 0,  u = φ on ∂Ω,
//!
//! with |Du| < 1 and u > 0. The discrete equation is solved by continuation in
//! t ∈ [0,1] on Q_t (α replaced by αt), starting from the maximal graph at
//! t = 0, each step by damped Newton with a banded LU. Radial problems on disks
//! reduce to the rotational ODE; the a-priori bounds are checked on the output.

mod banded;
mod barrier;
mod grid;
mod newton;
mod operator;
mod radial;

pub use banded::{BandLu, BandMatrix};
pub use barrier::{auto_tune_barrier, verify_barrier, BarrierParams, BarrierReport};
pub use grid::{GridField, RectDomain, MIN_INTERIOR_NODES};
pub use newton::{newton_solve, NewtonOutcome};
pub use operator::{assemble_qt, coefficient_matrix, harmonic_extension, Phi};
pub use radial::{c1_sweep, dilate_profile, solve_disk_radial, RadialSweep};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::report::{Check, SolveReport};

/// Newton and continuation controls.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SolverOptions {
    /// Target ∞-norm of the interior residual.
    pub tol: f64,
    pub max_newton_iters: usize,
    pub dt_initial: f64,
    pub dt_max: f64,
    /// Continuation gives up once the t-step falls below this.
    pub dt_min: f64,
    /// Iterates must keep max |Du| < 1 − eps_s.
    pub eps_s: f64,
    /// A step converging within this many iterations counts as easy.
    pub easy_iters: usize,
    /// Keep every accepted Newton iterate (diagnostics only).
    pub keep_iterates: bool,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            tol: 1e-10,
            max_newton_iters: 50,
            dt_initial: 0.1,
            dt_max: 0.25,
            dt_min: 1e-4,
            eps_s: 1e-6,
            easy_iters: 4,
            keep_iterates: false,
        }
    }
}

/// One accepted continuation step.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceStep {
    pub t: f64,
    pub newton_iters: usize,
    pub residual_inf_norm: f64,
    pub max_grad: f64,
    pub min_u: f64,
    pub max_u: f64,
}

/// Accepted steps of the continuation with the field at each of them.
#[derive(Debug, Clone, Default)]
pub struct ContinuationTrace {
    pub steps: Vec<TraceStep>,
    pub fields: Vec<GridField>,
    /// Largest interior |Du| over every accepted Newton iterate.
    pub max_iterate_grad: f64,
    /// Accepted Newton iterates, kept only with `keep_iterates`.
    pub iterates: Vec<GridField>,
    /// Steps rejected and retried with a smaller Δt.
    pub rejected: usize,
}

impl ContinuationTrace {
    fn push(&mut self, t: f64, out: NewtonOutcome) {
        let (g, _) = out.u.max_interior_grad();
        self.steps.push(TraceStep {
            t,
            newton_iters: out.iterations,
            residual_inf_norm: out.residual,
            max_grad: g,
            min_u: out.u.min(),
            max_u: out.u.max(),
        });
        self.max_iterate_grad = self.max_iterate_grad.max(out.max_iterate_grad);
        self.iterates.extend(out.iterates);
        self.fields.push(out.u);
    }
}

/// Harmonic extension of φ, rejected unless it is spacelike.
fn spacelike_extension(dom: &RectDomain, phi: Phi) -> Result<GridField> {
    let ext = harmonic_extension(dom, phi)?;
    let slope = ext.max_boundary_slope();
    let (g, _) = ext.max_interior_grad();
    if !(slope < 1.0 && g < 1.0) {
        return Err(Error::NotSpacelike(format!(
            "boundary data has discrete slope {slope} and its harmonic extension max |Du| = {g}"
        )));
    }
    Ok(ext)
}

fn solve_maximal_traced(dom: &RectDomain, phi: Phi, opts: &SolverOptions) -> Result<NewtonOutcome> {
    let ext = spacelike_extension(dom, phi)?;
    newton_solve(&ext, 0.0, 0.0, None, opts)
}

/// Discrete maximal graph (Q₀[u] = 0) with boundary values φ, started from
/// the harmonic extension.
pub fn solve_maximal(dom: &RectDomain, phi: Phi) -> Result<GridField> {
    Ok(solve_maximal_traced(dom, phi, &SolverOptions::default())?.u)
}

/// Solves Q[u] = 0, u = φ on ∂Ω by continuation from the maximal graph.
pub fn solve_dirichlet(
    dom: &RectDomain,
    phi: Phi,
    alpha: f64,
    opts: &SolverOptions,
) -> Result<(GridField, ContinuationTrace, SolveReport)> {
    if !alpha.is_finite() {
        return Err(Error::Config(format!("alpha = {alpha}")));
    }
    for (i, j) in dom.boundary_nodes() {
        let v = phi(dom.x(i), dom.y(j));
        if !(v > 0.0) {
            return Err(Error::InvalidInitial(format!(
                "boundary value {v} at ({}, {}) is not positive",
                dom.x(i),
                dom.y(j)
            )));
        }
    }
    let mut trace = ContinuationTrace::default();
    trace.push(0.0, solve_maximal_traced(dom, phi, opts)?);
    let (mut t, mut dt, mut easy) = (0.0f64, opts.dt_initial, 0);
    while t < 1.0 {
        let t_next = (t + dt).min(1.0);
        let start = trace.fields.last().expect("t = 0 is always present");
        match newton_solve(start, alpha, t_next, None, opts) {
            Ok(out) => {
                easy = if out.iterations <= opts.easy_iters { easy + 1 } else { 0 };
                trace.push(t_next, out);
                t = t_next;
                if easy >= 2 {
                    dt = (2.0 * dt).min(opts.dt_max);
                    easy = 0;
                }
            }
            Err(e @ Error::PositivityBreach { .. }) if alpha < 0.0 => return Err(e),
            Err(
                Error::NewtonDiverged { .. }
                | Error::SpacelikeBreach { .. }
                | Error::PositivityBreach { .. }
                | Error::SingularMatrix(_)
                | Error::SpacelikeViolation { .. }
                | Error::PositivityViolation { .. },
            ) => {
                trace.rejected += 1;
                dt *= 0.5;
                easy = 0;
                if dt < opts.dt_min {
                    return Err(Error::ContinuationStalled { t, step: dt });
                }
            }
            Err(e) => return Err(e),
        }
    }
    let u = trace.fields.last().expect("at least one step").clone();
    let report = estimate_report(&u, phi, alpha, &trace, opts);
    Ok((u, trace, report))
}

/// Bounds and invariant checks on a solved field; see the check names.
pub fn estimate_report(
    u: &GridField,
    phi: Phi,
    alpha: f64,
    trace: &ContinuationTrace,
    opts: &SolverOptions,
) -> SolveReport {
    let dom = &u.domain;
    let mut report = SolveReport {
        min_u: Some(u.min()),
        max_u: Some(u.max()),
        t_steps: trace.steps.iter().map(|s| s.t).collect(),
        residuals: trace.steps.iter().map(|s| s.residual_inf_norm).collect(),
        ..Default::default()
    };
    let (g, (gi, gj)) = u.max_interior_grad();
    report.max_grad = Some(g);
    let checks = &mut report.checks;
    let phi_min = dom
        .boundary_nodes()
        .into_iter()
        .map(|(i, j)| phi(dom.x(i), dom.y(j)))
        .fold(f64::INFINITY, f64::min);
    checks.insert("min_on_boundary".into(), Check::at_most((u.min() - phi_min).abs(), 1e-8));
    checks.insert("max_grad_on_ring".into(), Check::new(dom.is_ring(gi, gj), g));
    checks.insert("spacelike".into(), Check::new(g < 1.0 - opts.eps_s, g));
    checks.insert(
        "safeguard".into(),
        Check::new(trace.max_iterate_grad < 1.0 - opts.eps_s, trace.max_iterate_grad),
    );
    let last_res = trace.steps.last().map_or(f64::NAN, |s| s.residual_inf_norm);
    checks.insert("residual".into(), Check::at_most(last_res, opts.tol));
    checks.insert("alpha_negative".into(), Check::new(alpha < 0.0, alpha));
    // Rectangles relax the smooth mean-convex hypothesis; recorded, not judged.
    checks.insert("corner_relaxation".into(), Check::flag(true));
    let mut monotone = true;
    let mut min_gap = f64::INFINITY;
    for w in trace.fields.windows(2) {
        for (i, j) in dom.interior_nodes() {
            let d = w[1].at(i, j) - w[0].at(i, j);
            min_gap = min_gap.min(if alpha < 0.0 { d } else { -d });
            monotone &= if alpha < 0.0 { d > 0.0 } else { d < 0.0 };
        }
    }
    if trace.fields.len() >= 2 {
        checks.insert("monotone_in_t".into(), Check::new(monotone, min_gap));
    }
    if alpha < 0.0 {
        match c1_sweep(dom, phi, alpha) {
            Ok(sweep) => {
                report.c1_bound = Some(sweep.c1);
                report
                    .checks
                    .insert("c1_bound".into(), Check::new(sweep.c1 >= u.max(), sweep.c1 - u.max()));
            }
            Err(_) => {
                report.checks.insert("c1_bound".into(), Check::flag(false));
            }
        }
    }
    report
}

#[cfg(test)]
mod tests;
