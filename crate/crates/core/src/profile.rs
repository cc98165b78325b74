//! Profile curves: solutions u(r) of the reduced equations
//!
//!   u''/(1 − u'²) = α/u                        (translation invariant),
//!   u''/(1 − u'²) + (n − 1)u'/r = α/u          (rotation about the z-axis),
//!
//! sampled on their maximal domain with the behaviour at both ends.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ode::{integrate_leg, lagrange3, Event, OdeOptions, Rhs, State};
use crate::report::{Check, Checks};

pub use crate::ode::OdeOptions as ProfileOptions;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AxisKind {
    Translation,
    RotationZ,
    RotationX,
    Lightlike,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EndpointTag {
    Axis,
    ZeroHeight,
    Infinite,
    LightlikeSlope,
    /// The solution continues past the last sample (finite window).
    Truncated,
}

impl EndpointTag {
    pub fn as_str(self) -> &'static str {
        match self {
            EndpointTag::Axis => "axis",
            EndpointTag::ZeroHeight => "zero_height",
            EndpointTag::Infinite => "infinite",
            EndpointTag::LightlikeSlope => "lightlike_slope",
            EndpointTag::Truncated => "truncated",
        }
    }

    /// The graph meets the plane z = 0 here.
    pub fn is_zero_end(self) -> bool {
        matches!(self, EndpointTag::ZeroHeight | EndpointTag::LightlikeSlope)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Sample {
    pub r: f64,
    pub u: f64,
    pub up: f64,
    /// 1 − u'², kept separately because it underflows the difference.
    pub gap: f64,
}

impl Sample {
    fn from_state(s: &State) -> Self {
        Sample {
            r: s.r,
            u: s.u,
            up: s.up(),
            gap: s.gap(),
        }
    }

    /// Rapidity ψ with u' = tanh ψ.
    pub fn psi(&self) -> f64 {
        if self.gap < 0.25 {
            (1.0 / self.gap.sqrt()).acosh().copysign(self.up)
        } else {
            self.up.atanh()
        }
    }

    fn state(&self) -> State {
        State {
            r: self.r,
            u: self.u,
            psi: self.psi(),
        }
    }
}

/// Limits u(a⁺), u'(a⁺), u(b⁻), u'(b⁻) where they are finite.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct EndpointLimits {
    pub u_a: Option<f64>,
    pub up_a: Option<f64>,
    pub u_b: Option<f64>,
    pub up_b: Option<f64>,
}

/// Known exact solutions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum ClosedForm {
    /// u = sin(ax + b)/a, translation profile with α = −1.
    Catenary { a: f64, b: f64 },
    /// u = √(1 + a²x²)/a, translation profile with α = 1.
    Hyperbola { a: f64 },
    /// u = √α·r, rotational with n = 2.
    Cone { alpha: f64 },
    /// u = √(r² + R²), rotational with n = 2 and α = 2.
    Hyperboloid { radius: f64 },
}

impl ClosedForm {
    /// (u, u', u'', 1 − u'²) at `r`.
    pub fn jet(&self, r: f64) -> (f64, f64, f64, f64) {
        match *self {
            ClosedForm::Catenary { a, b } => {
                let (s, c) = (a * r + b).sin_cos();
                (s / a, c, -a * s, s * s)
            }
            ClosedForm::Hyperbola { a } => {
                let q = 1.0 + a * a * r * r;
                let w = q.sqrt();
                (w / a, a * r / w, a / (q * w), 1.0 / q)
            }
            ClosedForm::Cone { alpha } => (alpha.sqrt() * r, alpha.sqrt(), 0.0, 1.0 - alpha),
            ClosedForm::Hyperboloid { radius } => {
                let q = r * r + radius * radius;
                let w = q.sqrt();
                (w, r / w, radius * radius / (q * w), radius * radius / q)
            }
        }
    }

    fn sample(&self, r: f64) -> Sample {
        let (u, up, _, gap) = self.jet(r);
        Sample { r, u, up, gap }
    }
}

/// A sampled profile on its maximal domain (a, b).
#[derive(Debug, Clone, Serialize)]
pub struct ProfileSolution {
    pub alpha: f64,
    pub axis_kind: AxisKind,
    /// 1 for translation profiles, the ambient dimension n for radial ones.
    pub dim_n: usize,
    pub samples: Vec<Sample>,
    pub domain: (f64, f64),
    pub endpoint_tags: (EndpointTag, EndpointTag),
    pub endpoint_limits: EndpointLimits,
    pub closed_form: Option<ClosedForm>,
}

impl ProfileSolution {
    fn rhs(&self) -> Rhs {
        Rhs {
            alpha: self.alpha,
            weight: self.weight(),
        }
    }

    /// Coefficient k of the u'/r term.
    pub fn weight(&self) -> f64 {
        match self.axis_kind {
            AxisKind::RotationZ => self.dim_n as f64 - 1.0,
            _ => 0.0,
        }
    }

    pub fn r_span(&self) -> (f64, f64) {
        (self.samples[0].r, self.samples[self.samples.len() - 1].r)
    }

    /// (u, u') at `r` inside the sampled range.
    ///
    /// Numerical profiles are evaluated by a short RK4 re-integration from
    /// the nearest sample, which keeps the full accuracy of the solver.
    pub fn eval(&self, r: f64) -> Option<(f64, f64)> {
        self.eval_sample(r).map(|s| (s.u, s.up))
    }

    pub fn eval_sample(&self, r: f64) -> Option<Sample> {
        if let Some(cf) = self.closed_form {
            let (lo, hi) = self.domain;
            return (r >= lo && r <= hi).then(|| cf.sample(r));
        }
        let (lo, hi) = self.r_span();
        if !(r >= lo && r <= hi) {
            return None;
        }
        let i = self.samples.partition_point(|s| s.r <= r).clamp(1, self.samples.len() - 1);
        let (left, right) = (&self.samples[i - 1], &self.samples[i]);
        if r == left.r {
            return Some(*left);
        }
        if r == right.r {
            return Some(*right);
        }
        let from_left = (r - left.r) <= (right.r - r);
        let base = if (from_left && !(self.weight() != 0.0 && left.r == 0.0)) || (right.r == 0.0) {
            left
        } else {
            right
        };
        let step = ((r - base.r).abs() / 4.0).max(f64::MIN_POSITIVE);
        let s = self.rhs().advance_to(base.state(), r, step);
        Some(Sample::from_state(&s))
    }

    /// u'' at `r`, from the closed form or from the equation.
    pub fn upp_at(&self, r: f64) -> Option<f64> {
        if let Some(cf) = self.closed_form {
            return Some(cf.jet(r).2);
        }
        let s = self.eval_sample(r)?;
        let drag = if self.weight() == 0.0 || r == 0.0 {
            0.0
        } else {
            self.weight() * s.up / r
        };
        let psi_p = if r == 0.0 && self.weight() != 0.0 {
            // u''(0) = α/(n u0) on a flat axis start.
            self.alpha / (self.dim_n as f64 * s.u)
        } else {
            self.alpha / s.u - drag
        };
        Some(s.gap * psi_p)
    }

    /// Curvature u''/(1 − u'²)^{3/2} of the planar curve (r, u(r)) in L².
    pub fn planar_curvature(&self, r: f64) -> Option<f64> {
        let s = self.eval_sample(r)?;
        Some(self.upp_at(r)? / (s.gap * s.gap.sqrt()))
    }
}

/// u'' − α(1 − u'²)/u, the translation equation with the gap cleared.
pub fn profile_residual(alpha: f64, u: f64, up: f64, upp: f64) -> f64 {
    upp - alpha * (1.0 - up * up) / u
}

fn check_initial(alpha: f64, u0: f64, up0: f64) -> Result<()> {
    if !alpha.is_finite() {
        return Err(Error::InvalidInitial(format!("alpha = {alpha}")));
    }
    if !(u0 > 0.0) || !u0.is_finite() {
        return Err(Error::InvalidInitial(format!("u0 = {u0} must be positive")));
    }
    if !(up0 * up0 < 1.0) {
        return Err(Error::InvalidInitial(format!("u0' = {up0} is not spacelike")));
    }
    Ok(())
}

pub(crate) struct Leg {
    pub states: Vec<State>,
    pub event: Event,
    pub dir: f64,
}

/// Endpoint abscissa, tag and limits of a leg.
fn close_leg(leg: &Leg) -> (f64, EndpointTag, Option<f64>, Option<f64>) {
    let st = &leg.states;
    let last = st[st.len() - 1];
    let extrapolate = |x: f64| -> (f64, f64) {
        if st.len() < 3 {
            return (last.u, last.up());
        }
        let t = [st[st.len() - 3], st[st.len() - 2], last];
        let rs = t.map(|s| s.r);
        let u = lagrange3(rs, t.map(|s| s.u), x);
        let up = lagrange3(rs, t.map(|s| s.up()), x).clamp(-1.0, 1.0);
        (u, up)
    };
    match leg.event {
        Event::ZeroHeight | Event::LightlikeSlope => {
            let up = last.up().abs();
            let end = if up > 0.0 {
                last.r + leg.dir * last.u / up
            } else {
                last.r
            };
            let (u, upl) = extrapolate(end);
            let tag = if leg.event == Event::ZeroHeight {
                EndpointTag::ZeroHeight
            } else {
                EndpointTag::LightlikeSlope
            };
            (end, tag, Some(u.max(0.0)), Some(upl))
        }
        Event::Axis => {
            let (u, up) = extrapolate(0.0);
            (0.0, EndpointTag::Axis, Some(u), Some(up))
        }
        Event::Infinite => (leg.dir * f64::INFINITY, EndpointTag::Infinite, None, None),
        Event::Target => (last.r, EndpointTag::Truncated, Some(last.u), Some(last.up())),
    }
}

/// Joins a backward leg (or a fixed left end) with a forward leg.
pub(crate) fn assemble(
    alpha: f64,
    axis_kind: AxisKind,
    dim_n: usize,
    left: Option<&Leg>,
    prefix: &[Sample],
    right: &Leg,
    left_end: Option<(f64, EndpointTag, Option<f64>, Option<f64>)>,
) -> ProfileSolution {
    let mut samples: Vec<Sample> = Vec::new();
    if let Some(l) = left {
        samples.extend(l.states.iter().rev().map(Sample::from_state));
    }
    samples.extend_from_slice(prefix);
    let skip = usize::from(!samples.is_empty());
    samples.extend(right.states.iter().skip(skip).map(Sample::from_state));
    let (a, tag_a, u_a, up_a) = match (left, left_end) {
        (Some(l), _) => close_leg(l),
        (None, Some(e)) => e,
        (None, None) => {
            let s = samples[0];
            (s.r, EndpointTag::Truncated, Some(s.u), Some(s.up))
        }
    };
    let (b, tag_b, u_b, up_b) = close_leg(right);
    ProfileSolution {
        alpha,
        axis_kind,
        dim_n,
        samples,
        domain: (a, b),
        endpoint_tags: (tag_a, tag_b),
        endpoint_limits: EndpointLimits {
            u_a,
            up_a,
            u_b,
            up_b,
        },
        closed_form: None,
    }
}

pub(crate) fn run_leg(rhs: Rhs, start: State, dir: f64, opts: &OdeOptions) -> Result<Leg> {
    let (states, event) = integrate_leg(rhs, start, dir, None, opts)?;
    Ok(Leg { states, event, dir })
}

/// Integrates u'' = α(1 − u'²)/u in both directions from (0, u0, u0').
pub fn solve_profile_1d(alpha: f64, u0: f64, up0: f64, opts: &OdeOptions) -> Result<ProfileSolution> {
    check_initial(alpha, u0, up0)?;
    let rhs = Rhs { alpha, weight: 0.0 };
    let start = State::new(0.0, u0, up0);
    let back = run_leg(rhs, start, -1.0, opts)?;
    let fwd = run_leg(rhs, start, 1.0, opts)?;
    Ok(assemble(alpha, AxisKind::Translation, 1, Some(&back), &[], &fwd, None))
}

/// Number of samples used by the tabulated closed forms.
pub const CLOSED_FORM_SAMPLES: usize = 1000;

fn tabulate(
    alpha: f64,
    axis_kind: AxisKind,
    dim_n: usize,
    cf: ClosedForm,
    domain: (f64, f64),
    window: (f64, f64),
    tags: (EndpointTag, EndpointTag),
    n: usize,
) -> ProfileSolution {
    let (lo, hi) = window;
    let samples: Vec<Sample> = (0..n)
        .map(|i| cf.sample(lo + (i as f64 + 0.5) * (hi - lo) / n as f64))
        .collect();
    let lim = |r: f64, tag: EndpointTag| -> (Option<f64>, Option<f64>) {
        if tag == EndpointTag::Infinite {
            (None, None)
        } else {
            let (u, up, _, _) = cf.jet(r);
            (Some(u.max(0.0)), Some(up))
        }
    };
    let (u_a, up_a) = lim(domain.0, tags.0);
    let (u_b, up_b) = lim(domain.1, tags.1);
    ProfileSolution {
        alpha,
        axis_kind,
        dim_n,
        samples,
        domain,
        endpoint_tags: tags,
        endpoint_limits: EndpointLimits {
            u_a,
            up_a,
            u_b,
            up_b,
        },
        closed_form: Some(cf),
    }
}

/// u = sin(ax + b)/a on the arc where it is positive, α = −1.
pub fn closed_form_catenary(a: f64, b: f64) -> Result<ProfileSolution> {
    if a == 0.0 || !a.is_finite() || !b.is_finite() {
        return Err(Error::InvalidInitial(format!("catenary needs a ≠ 0, got a = {a}")));
    }
    // sin(ax + b)/a > 0 for ax + b in (0, π) when a > 0, (−π, 0) when a < 0.
    let (t0, t1) = if a > 0.0 { (0.0, PI) } else { (-PI, 0.0) };
    let (x0, x1) = ((t0 - b) / a, (t1 - b) / a);
    let dom = (x0.min(x1), x0.max(x1));
    Ok(tabulate(
        -1.0,
        AxisKind::Translation,
        1,
        ClosedForm::Catenary { a, b },
        dom,
        dom,
        (EndpointTag::ZeroHeight, EndpointTag::ZeroHeight),
        CLOSED_FORM_SAMPLES,
    ))
}

/// u = √(1 + a²x²)/a, α = 1, tabulated on |x| ≤ 2/a.
pub fn closed_form_hyperbola(a: f64) -> Result<ProfileSolution> {
    closed_form_hyperbola_on(a, (-2.0 / a, 2.0 / a))
}

pub fn closed_form_hyperbola_on(a: f64, window: (f64, f64)) -> Result<ProfileSolution> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::InvalidInitial(format!("hyperbola needs a > 0, got {a}")));
    }
    Ok(tabulate(
        1.0,
        AxisKind::Translation,
        1,
        ClosedForm::Hyperbola { a },
        (f64::NEG_INFINITY, f64::INFINITY),
        window,
        (EndpointTag::Infinite, EndpointTag::Infinite),
        CLOSED_FORM_SAMPLES,
    ))
}

/// The cone u = √α·r on (0, r_max]; spacelike only for 0 < α < 1.
pub fn closed_form_cone(alpha: f64, r_max: f64) -> Result<ProfileSolution> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::NotSpacelike(format!(
            "the cone u = √α r has slope √α = {}; it is spacelike only for 0 < α < 1",
            alpha.max(0.0).sqrt()
        )));
    }
    Ok(tabulate(
        alpha,
        AxisKind::RotationZ,
        2,
        ClosedForm::Cone { alpha },
        (0.0, f64::INFINITY),
        (0.0, r_max),
        (EndpointTag::Axis, EndpointTag::Infinite),
        CLOSED_FORM_SAMPLES,
    ))
}

/// The hyperbolic plane u = √(r² + R²) as a rotational profile, α = 2.
pub fn closed_form_hyperboloid(radius: f64, r_max: f64) -> Result<ProfileSolution> {
    if !(radius > 0.0) {
        return Err(Error::InvalidInitial(format!("radius {radius} must be positive")));
    }
    Ok(tabulate(
        2.0,
        AxisKind::RotationZ,
        2,
        ClosedForm::Hyperboloid { radius },
        (0.0, f64::INFINITY),
        (0.0, r_max),
        (EndpointTag::Axis, EndpointTag::Infinite),
        CLOSED_FORM_SAMPLES,
    ))
}

/// log cosh ψ without overflow, from the gap: −½ log(1 − u'²).
fn log_cosh(s: &Sample) -> f64 {
    -0.5 * s.gap.ln()
}

/// First integral 1/(1 − u'²) = μ u^{2α} of a translation profile.
///
/// μ is taken at the first sample; the drift is the largest relative
/// deviation |1/((1 − u'²) μ u^{2α}) − 1| over all samples.
pub fn first_integral_mu(sol: &ProfileSolution) -> Result<(f64, f64)> {
    if sol.axis_kind != AxisKind::Translation {
        return Err(Error::InvalidInitial(
            "the first integral exists for translation profiles only".into(),
        ));
    }
    let log_mu_at = |s: &Sample| 2.0 * log_cosh(s) - 2.0 * sol.alpha * s.u.ln();
    let log_mu = log_mu_at(&sol.samples[0]);
    let drift = sol
        .samples
        .iter()
        .map(|s| (log_mu_at(s) - log_mu).exp_m1().abs())
        .fold(0.0, f64::max);
    Ok((log_mu.exp(), drift))
}

/// Pass/fail checks of the qualitative behaviour of a profile started at a
/// critical point.
#[derive(Debug, Clone, Serialize)]
pub struct QualReport {
    pub checks: Checks,
}

impl QualReport {
    pub fn all_pass(&self) -> bool {
        crate::report::all_pass(&self.checks)
    }

    pub fn get(&self, name: &str) -> &Check {
        &self.checks[name]
    }
}

/// Probe radius for the asymptotic slope of unbounded profiles.
pub const SLOPE_PROBE_R: f64 = 50.0;

pub fn classify_profile(sol: &ProfileSolution) -> QualReport {
    let mut checks = Checks::new();
    let alpha = sol.alpha;
    let s0 = sol.eval_sample(0.0);
    let u0 = s0.map_or(f64::NAN, |s| s.u);
    checks.insert(
        "critical_start".into(),
        Check::new(s0.is_some_and(|s| s.up == 0.0), s0.map_or(f64::NAN, |s| s.up)),
    );

    // Mirror symmetry on the common sampled range.
    let (lo, hi) = sol.r_span();
    let reach = (-lo).min(hi);
    let mut sym: f64 = 0.0;
    for i in 1..=400 {
        let r = reach * i as f64 / 400.0;
        if let (Some((a, _)), Some((b, _))) = (sol.eval(r), sol.eval(-r)) {
            sym = sym.max((a - b).abs() / (1.0 + a.abs()));
        }
    }
    checks.insert("symmetric".into(), Check::at_most(sym, 1e-9));

    // Unique extremum at r = 0 and monotone slope (convex or concave).
    let ups: Vec<f64> = sol.samples.iter().map(|s| s.up).collect();
    let slope_monotone = if alpha > 0.0 {
        ups.windows(2).all(|w| w[1] > w[0])
    } else {
        ups.windows(2).all(|w| w[1] < w[0])
    };
    let extremum = sol
        .samples
        .iter()
        .all(|s| s.r == 0.0 || (s.up != 0.0 && (s.up > 0.0) == ((s.r > 0.0) == (alpha > 0.0))));
    let (tag_a, tag_b) = sol.endpoint_tags;
    let lim = sol.endpoint_limits;
    if alpha > 0.0 {
        checks.insert("convex".into(), Check::flag(slope_monotone));
        checks.insert("unique_global_min".into(), Check::flag(extremum));
        checks.insert(
            "domain_is_line".into(),
            Check::flag(tag_a == EndpointTag::Infinite && tag_b == EndpointTag::Infinite),
        );
        let first = sol.samples[0];
        let last = sol.samples[sol.samples.len() - 1];
        let growth = first.u.min(last.u) - u0;
        checks.insert(
            "unbounded".into(),
            Check::new(growth > 0.25 * reach, growth),
        );
        let slope = match (sol.eval(SLOPE_PROBE_R), sol.eval(-SLOPE_PROBE_R)) {
            (Some((_, p)), Some((_, m))) => (1.0 - p).max(1.0 + m),
            _ => f64::NAN,
        };
        checks.insert("slope_tends_to_one".into(), Check::at_most(slope, 2e-2));
    } else {
        checks.insert("concave".into(), Check::flag(slope_monotone));
        checks.insert("unique_global_max".into(), Check::flag(extremum));
        checks.insert(
            "domain_bounded".into(),
            Check::flag(tag_a.is_zero_end() && tag_b.is_zero_end()),
        );
        let ub = lim.u_b.unwrap_or(f64::NAN);
        let upb = lim.up_b.unwrap_or(f64::NAN);
        let upa = lim.up_a.unwrap_or(f64::NAN);
        checks.insert("zero_height_at_b".into(), Check::at_most(ub, 1e-4));
        checks.insert("slope_minus_one_at_b".into(), Check::at_most((upb + 1.0).abs(), 1e-2));
        checks.insert("slope_plus_one_at_a".into(), Check::at_most((upa - 1.0).abs(), 1e-2));
        checks.insert(
            "symmetric_domain".into(),
            Check::at_most((sol.domain.0 + sol.domain.1).abs(), 1e-6),
        );
    }
    QualReport { checks }
}
