//! Surfaces of revolution about the timelike axis.
//!
//! The profile satisfies
//!
//!   u''/(1 − u'²) + (n − 1)u'/r = α/u,   equivalently
//!   (r^{n−1} φ(u'))' = r^{n−1} f(u, u'),  φ(y) = y/√(1 − y²),  f = α/(u√(1 − u'²)).
//!
//! At r = 0 the equation is singular. A flat start u(0) = u0, u'(0) = 0 is
//! obtained as the fixed point of
//!
//!   (T u)(r) = u0 + ∫₀^r φ⁻¹( s^{1−n} ∫₀^s t^{n−1} f(u, u') dt ) ds
//!
//! on a short interval [0, δ] and continued with RK4.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ode::{integrate_leg, OdeOptions, Rhs, State};
use crate::profile::{assemble, run_leg, AxisKind, EndpointTag, Leg, ProfileSolution, Sample};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PicardConfig {
    /// Length of the interval [0, δ].
    pub delta: f64,
    /// Trapezoid panels on [0, δ].
    pub quad_points: usize,
    pub max_iters: usize,
    /// Stop when sup|Δu| + sup|Δu'| falls below this.
    pub contraction_tol: f64,
    pub dim_n: usize,
}

impl PicardConfig {
    /// δ = 0.1·min(u0, 1) with 2048 panels.
    pub fn for_height(u0: f64) -> Self {
        PicardConfig {
            delta: 0.1 * u0.min(1.0),
            quad_points: 2048,
            max_iters: 200,
            contraction_tol: 1e-14,
            dim_n: 2,
        }
    }
}

/// Cumulative ∫₀^{r_j} t^k f(t) dt with f piecewise linear on a uniform grid
/// and the weight t^k integrated exactly. For k = 1 this is the trapezoid
/// rule applied to t·f.
fn cumulative_weighted(h: f64, k: i32, f: &[f64]) -> Vec<f64> {
    if k == 1 {
        let g: Vec<f64> = f.iter().enumerate().map(|(j, v)| j as f64 * h * v).collect();
        return cumulative_trapezoid(h, &g);
    }
    // With t = a + s h: ∫₀¹ (a + s h)^k (1 − s) ds and ∫₀¹ (a + s h)^k s ds,
    // expanded binomially so every term is positive.
    let mut out = Vec::with_capacity(f.len());
    let mut acc = 0.0;
    out.push(0.0);
    for j in 0..f.len() - 1 {
        let a = j as f64 * h;
        let (mut wl, mut wr, mut binom) = (0.0, 0.0, 1.0);
        for i in 0..=k {
            let term = binom * a.powi(k - i) * h.powi(i);
            wl += term / ((i + 1) * (i + 2)) as f64;
            wr += term / (i + 2) as f64;
            binom = binom * (k - i) as f64 / (i + 1) as f64;
        }
        acc += h * (wl * f[j] + wr * f[j + 1]);
        out.push(acc);
    }
    out
}

fn cumulative_trapezoid(h: f64, g: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(g.len());
    let mut acc = 0.0;
    out.push(0.0);
    for w in g.windows(2) {
        acc += 0.5 * h * (w[0] + w[1]);
        out.push(acc);
    }
    out
}

/// Fixed point of the integral operator on [0, δ] for the flat start u(0) = u0.
pub fn picard_solve(alpha: f64, u0: f64, cfg: &PicardConfig) -> Result<ProfileSolution> {
    if !(u0 > 0.0) || !u0.is_finite() {
        return Err(Error::InvalidInitial(format!("u0 = {u0} must be positive")));
    }
    if !(cfg.delta > 0.0) || !(cfg.contraction_tol > 0.0) || cfg.quad_points < 2 || cfg.dim_n < 2 {
        return Err(Error::InvalidInitial(format!("bad Picard configuration {cfg:?}")));
    }
    let n = cfg.quad_points;
    let h = cfg.delta / n as f64;
    let k = cfg.dim_n as i32 - 1;
    let r: Vec<f64> = (0..=n).map(|j| j as f64 * h).collect();
    let mut u = vec![u0; n + 1];
    // y = φ(u') = u'/√(1 − u'²); the iteration works with y directly.
    let mut y = vec![0.0f64; n + 1];
    let mut last = f64::INFINITY;
    let mut growing = 0;
    for _ in 0..cfg.max_iters {
        let f: Vec<f64> = (0..=n).map(|j| alpha * (1.0 + y[j] * y[j]).sqrt() / u[j]).collect();
        let big_g = cumulative_weighted(h, k, &f);
        let y_new: Vec<f64> = (0..=n)
            .map(|j| if j == 0 { 0.0 } else { big_g[j] / r[j].powi(k) })
            .collect();
        let up_new: Vec<f64> = y_new.iter().map(|&v| v / (1.0 + v * v).sqrt()).collect();
        let u_new: Vec<f64> = cumulative_trapezoid(h, &up_new).iter().map(|&v| u0 + v).collect();
        let up_old: Vec<f64> = y.iter().map(|&v| v / (1.0 + v * v).sqrt()).collect();
        let du = u.iter().zip(&u_new).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        let dp = up_old.iter().zip(&up_new).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        let dist = du + dp;
        if u_new.iter().any(|&v| !(v > 0.0)) {
            return Err(Error::NoContraction {
                delta: cfg.delta,
                ratio: f64::INFINITY,
            });
        }
        u = u_new;
        y = y_new;
        if dist < cfg.contraction_tol {
            let samples: Vec<Sample> = (0..=n)
                .map(|j| {
                    let q = 1.0 + y[j] * y[j];
                    Sample {
                        r: r[j],
                        u: u[j],
                        up: y[j] / q.sqrt(),
                        gap: 1.0 / q,
                    }
                })
                .collect();
            let end = samples[n];
            return Ok(ProfileSolution {
                alpha,
                axis_kind: AxisKind::RotationZ,
                dim_n: cfg.dim_n,
                samples,
                domain: (0.0, cfg.delta),
                endpoint_tags: (EndpointTag::Axis, EndpointTag::Truncated),
                endpoint_limits: crate::profile::EndpointLimits {
                    u_a: Some(u0),
                    up_a: Some(0.0),
                    u_b: Some(end.u),
                    up_b: Some(end.up),
                },
                closed_form: None,
            });
        }
        let ratio = dist / last;
        growing = if ratio >= 1.0 { growing + 1 } else { 0 };
        if growing >= 3 {
            return Err(Error::NoContraction {
                delta: cfg.delta,
                ratio,
            });
        }
        last = dist;
    }
    Err(Error::NoContraction {
        delta: cfg.delta,
        ratio: f64::NAN,
    })
}

/// Maximum number of δ halvings after a failed contraction.
pub const MAX_DELTA_HALVINGS: usize = 10;

/// [`picard_solve`] starting from δ = 0.1·min(u0, 1), halving δ on failure.
pub fn picard_solve_auto(alpha: f64, u0: f64, dim_n: usize) -> Result<ProfileSolution> {
    let mut cfg = PicardConfig::for_height(u0);
    cfg.dim_n = dim_n;
    let mut err = None;
    for _ in 0..=MAX_DELTA_HALVINGS {
        match picard_solve(alpha, u0, &cfg) {
            Ok(sol) => return Ok(sol),
            Err(e @ Error::NoContraction { .. }) => {
                err = Some(e);
                cfg.delta *= 0.5;
            }
            Err(e) => return Err(e),
        }
    }
    Err(err.expect("at least one attempt"))
}

/// Continues `seed` to the right with RK4 until an endpoint event.
pub fn extend_rotational(
    alpha: f64,
    seed: &ProfileSolution,
    n_dim: usize,
    opts: &OdeOptions,
) -> Result<ProfileSolution> {
    let last = seed.samples[seed.samples.len() - 1];
    if !(last.r > 0.0) {
        return Err(Error::InvalidInitial("seed must end at r > 0".into()));
    }
    let rhs = Rhs {
        alpha,
        weight: n_dim as f64 - 1.0,
    };
    let start = State {
        r: last.r,
        u: last.u,
        psi: last.psi(),
    };
    let fwd = run_leg(rhs, start, 1.0, opts)?;
    let lim = seed.endpoint_limits;
    let left = (seed.domain.0, seed.endpoint_tags.0, lim.u_a, lim.up_a);
    Ok(assemble(
        alpha,
        AxisKind::RotationZ,
        n_dim,
        None,
        &seed.samples,
        &fwd,
        Some(left),
    ))
}

/// Solution with u(0) = u0, u'(0) = up0, on its maximal domain.
///
/// Only the flat start up0 = 0 is integrated from the axis. No solution has
/// 0 < up0² < 1 at the axis, and the starts up0 = ±1 are reached from the
/// interior with [`solve_from_interior`].
pub fn solve_rotational(
    alpha: f64,
    u0: f64,
    up0: f64,
    n_dim: usize,
    opts: &OdeOptions,
) -> Result<ProfileSolution> {
    if up0 != 0.0 {
        return Err(Error::InvalidInitial(format!(
            "u'(0) = {up0}: an axis start must be flat; slopes ±1 are reached from interior data"
        )));
    }
    if n_dim < 2 {
        return Err(Error::InvalidInitial(format!("dimension {n_dim} < 2")));
    }
    let seed = picard_solve_auto(alpha, u0, n_dim)?;
    extend_rotational(alpha, &seed, n_dim, opts)
}

/// Integrates in both directions from interior data (r0, u0, up0).
pub fn solve_from_interior(
    alpha: f64,
    r0: f64,
    u0: f64,
    up0: f64,
    n_dim: usize,
    opts: &OdeOptions,
) -> Result<ProfileSolution> {
    if !(r0 > 0.0) || !(u0 > 0.0) || !(up0 * up0 < 1.0) || !alpha.is_finite() || n_dim < 2 {
        return Err(Error::InvalidInitial(format!(
            "need r0 > 0, u0 > 0, u0'² < 1 and n ≥ 2 (got r0 = {r0}, u0 = {u0}, u0' = {up0}, n = {n_dim})"
        )));
    }
    let rhs = Rhs {
        alpha,
        weight: n_dim as f64 - 1.0,
    };
    let start = State::new(r0, u0, up0);
    let back = run_leg(rhs, start, -1.0, opts)?;
    let fwd = run_leg(rhs, start, 1.0, opts)?;
    Ok(assemble(alpha, AxisKind::RotationZ, n_dim, Some(&back), &[], &fwd, None))
}

/// RK4 solution from (r0, u0, up0) to `r_end` (either side of r0).
pub fn integrate_rotational_to(
    alpha: f64,
    n_dim: usize,
    start: (f64, f64, f64),
    r_end: f64,
    opts: &OdeOptions,
) -> Result<ProfileSolution> {
    let (r0, u0, up0) = start;
    if !(r0 > 0.0) || !(u0 > 0.0) || !(up0 * up0 < 1.0) {
        return Err(Error::InvalidInitial(format!("bad start {start:?}")));
    }
    let rhs = Rhs {
        alpha,
        weight: n_dim as f64 - 1.0,
    };
    let dir = if r_end >= r0 { 1.0 } else { -1.0 };
    let (states, event) = integrate_leg(rhs, State::new(r0, u0, up0), dir, Some(r_end), opts)?;
    let leg = Leg { states, event, dir };
    let mut sol = assemble(alpha, AxisKind::RotationZ, n_dim, None, &[], &leg, None);
    if dir < 0.0 {
        sol.samples.reverse();
        let lim = sol.endpoint_limits;
        sol.domain = (sol.domain.1, sol.domain.0);
        sol.endpoint_tags = (sol.endpoint_tags.1, sol.endpoint_tags.0);
        sol.endpoint_limits = crate::profile::EndpointLimits {
            u_a: lim.u_b,
            up_a: lim.up_b,
            u_b: lim.u_a,
            up_b: lim.up_a,
        };
    }
    Ok(sol)
}

/// u'' − (1 − u'²)(α/u − (n − 1)u'/r).
pub fn radial_residual(alpha: f64, n_dim: usize, r: f64, u: f64, up: f64, upp: f64) -> f64 {
    upp - (1.0 - up * up) * (alpha / u - (n_dim as f64 - 1.0) * up / r)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Start {
    AxisFlat,
    AxisDown,
    AxisUp,
    Interior,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Feature {
    Increasing,
    Decreasing,
    GlobalMin,
    GlobalMax,
    HitsZeroAtB,
    HitsZeroAtA,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RotClass {
    pub alpha_positive: bool,
    pub start: Start,
    pub features: BTreeSet<Feature>,
}

/// Height and slope tolerances for an endpoint on the plane z = 0.
pub const ZERO_HEIGHT_TOL: f64 = 1e-4;
pub const ENDPOINT_SLOPE_TOL: f64 = 1e-2;

/// The features required for each (sign α, start); `None` when no solution
/// of that kind exists.
pub fn expected_features(alpha_positive: bool, start: Start) -> Option<BTreeSet<Feature>> {
    use Feature::*;
    let set: &[Feature] = match (alpha_positive, start) {
        (true, Start::AxisFlat) => &[Increasing, Unbounded],
        (true, Start::AxisDown) => &[GlobalMin, Unbounded],
        (true, Start::AxisUp) => &[Increasing, Unbounded],
        (true, Start::Interior) => return None,
        (false, Start::AxisFlat) => &[Decreasing, HitsZeroAtB],
        (false, Start::AxisDown) => &[Decreasing, HitsZeroAtB],
        (false, Start::AxisUp) => &[GlobalMax, HitsZeroAtB],
        (false, Start::Interior) => &[GlobalMax, HitsZeroAtA, HitsZeroAtB],
    };
    Some(set.iter().copied().collect())
}

/// Measures the start and features of a rotational profile and checks them
/// against the case table of [`expected_features`].
pub fn classify_rotational(sol: &ProfileSolution) -> Result<RotClass> {
    if sol.axis_kind != AxisKind::RotationZ || sol.alpha == 0.0 {
        return Err(Error::ClassificationMismatch(
            "only rotational profiles with α ≠ 0 are classified".into(),
        ));
    }
    let lim = sol.endpoint_limits;
    let (tag_a, tag_b) = sol.endpoint_tags;
    let start = if tag_a == EndpointTag::Axis {
        match lim.up_a.unwrap_or(f64::NAN) {
            p if p.abs() <= 0.5 => Start::AxisFlat,
            p if p < -0.5 => Start::AxisDown,
            p if p > 0.5 => Start::AxisUp,
            p => {
                return Err(Error::ClassificationMismatch(format!(
                    "undefined slope {p} at the axis"
                )))
            }
        }
    } else {
        Start::Interior
    };
    let ups: Vec<f64> = sol.samples.iter().filter(|s| s.r > 0.0).map(|s| s.up).collect();
    let mut features = BTreeSet::new();
    if ups.iter().all(|&p| p > 0.0) {
        features.insert(Feature::Increasing);
    } else if ups.iter().all(|&p| p < 0.0) {
        features.insert(Feature::Decreasing);
    } else {
        let changes: Vec<bool> = ups
            .windows(2)
            .filter(|w| (w[0] > 0.0) != (w[1] > 0.0))
            .map(|w| w[1] > 0.0)
            .collect();
        match changes.as_slice() {
            [true] => {
                features.insert(Feature::GlobalMin);
            }
            [false] => {
                features.insert(Feature::GlobalMax);
            }
            _ => {
                return Err(Error::ClassificationMismatch(format!(
                    "u' changes sign {} times",
                    changes.len()
                )))
            }
        }
    }
    let at_zero = |u: Option<f64>, up: Option<f64>, target: f64| {
        u.is_some_and(|u| u <= ZERO_HEIGHT_TOL)
            && up.is_some_and(|p| (p - target).abs() <= ENDPOINT_SLOPE_TOL)
    };
    if tag_b.is_zero_end() {
        // A solution meeting the plane z = 0 does so with a lightlike slope.
        if !at_zero(lim.u_b, lim.up_b, -1.0) {
            return Err(Error::ClassificationMismatch(format!(
                "endpoint b = {} on z = 0 with u = {:?}, u' = {:?}",
                sol.domain.1, lim.u_b, lim.up_b
            )));
        }
        features.insert(Feature::HitsZeroAtB);
    }
    if tag_a.is_zero_end() {
        if !at_zero(lim.u_a, lim.up_a, 1.0) {
            return Err(Error::ClassificationMismatch(format!(
                "endpoint a = {} on z = 0 with u = {:?}, u' = {:?}",
                sol.domain.0, lim.u_a, lim.up_a
            )));
        }
        features.insert(Feature::HitsZeroAtA);
    }
    if tag_b == EndpointTag::Infinite {
        features.insert(Feature::Unbounded);
    }
    let alpha_positive = sol.alpha > 0.0;
    let class = RotClass {
        alpha_positive,
        start,
        features,
    };
    match expected_features(alpha_positive, start) {
        Some(exp) if exp == class.features => Ok(class),
        Some(exp) => Err(Error::ClassificationMismatch(format!(
            "α = {}, start {:?}: measured {:?}, expected {:?}",
            sol.alpha, start, class.features, exp
        ))),
        None => Err(Error::ClassificationMismatch(format!(
            "α = {} > 0 admits no solution away from the axis, measured {:?}",
            sol.alpha, class.features
        ))),
    }
}
