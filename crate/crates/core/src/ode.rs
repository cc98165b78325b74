//! RK4 integration of u'' = (1 − u'²)(α/u − k u'/r) in rapidity form.
//!
//! With u' = tanh ψ the equation becomes ψ' = α/u − k tanh ψ / r, so the
//! spacelike condition |u'| < 1 holds for every finite ψ and the gap
//! 1 − u'² = sech²ψ is available without cancellation. k = 0 gives the
//! translation profile, k = n − 1 the radial equation in dimension n.

use crate::error::{Error, Result};

/// Step control and endpoint event thresholds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OdeOptions {
    /// Base step, scaled by max(1, u).
    pub h_base: f64,
    /// Smallest admissible step relative to max(1, |r|).
    pub h_min: f64,
    /// Bound on the rapidity change per step, h |ψ'| ≤ psi_step.
    pub psi_step: f64,
    /// |r| beyond this tags the endpoint as infinite.
    pub r_max: f64,
    /// u below this tags a zero-height endpoint.
    pub eps_u: f64,
    /// 1 − u'² below this (with u decreasing) tags a lightlike endpoint.
    pub eps_s: f64,
    /// r below this tags the rotation axis.
    pub r_axis: f64,
    pub max_steps: usize,
}

impl Default for OdeOptions {
    fn default() -> Self {
        OdeOptions {
            h_base: 1e-3,
            h_min: 1e-14,
            psi_step: 0.02,
            r_max: 1e3,
            eps_u: 1e-8,
            eps_s: 1e-10,
            r_axis: 1e-8,
            max_steps: 5_000_000,
        }
    }
}

/// One accepted state. `psi` is the rapidity, u' = tanh ψ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct State {
    pub r: f64,
    pub u: f64,
    pub psi: f64,
}

impl State {
    pub fn new(r: f64, u: f64, up: f64) -> Self {
        State { r, u, psi: up.atanh() }
    }

    pub fn up(&self) -> f64 {
        self.psi.tanh()
    }

    /// 1 − u'² computed as sech²ψ.
    pub fn gap(&self) -> f64 {
        let c = self.psi.cosh();
        1.0 / (c * c)
    }
}

/// Why an integration leg stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Event {
    Axis,
    ZeroHeight,
    Infinite,
    LightlikeSlope,
    /// Reached the requested stopping abscissa.
    Target,
}

#[derive(Debug, Clone, Copy)]
pub struct Rhs {
    pub alpha: f64,
    pub weight: f64,
}

impl Rhs {
    fn psi_prime(&self, r: f64, u: f64, psi: f64) -> f64 {
        let drag = if self.weight == 0.0 {
            0.0
        } else {
            self.weight * psi.tanh() / r
        };
        self.alpha / u - drag
    }

    /// Classical RK4 step of signed length `h`.
    pub fn rk4(&self, s: State, h: f64) -> State {
        let f = |r: f64, u: f64, p: f64| (p.tanh(), self.psi_prime(r, u, p));
        let (k1u, k1p) = f(s.r, s.u, s.psi);
        let (k2u, k2p) = f(s.r + 0.5 * h, s.u + 0.5 * h * k1u, s.psi + 0.5 * h * k1p);
        let (k3u, k3p) = f(s.r + 0.5 * h, s.u + 0.5 * h * k2u, s.psi + 0.5 * h * k2p);
        let (k4u, k4p) = f(s.r + h, s.u + h * k3u, s.psi + h * k3p);
        State {
            r: s.r + h,
            u: s.u + h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u),
            psi: s.psi + h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p),
        }
    }

    /// Advances from `s` to abscissa `r_end` with steps no longer than `h_max`.
    pub fn advance_to(&self, mut s: State, r_end: f64, h_max: f64) -> State {
        let n = ((r_end - s.r).abs() / h_max).ceil().max(1.0) as usize;
        let h = (r_end - s.r) / n as f64;
        for i in 0..n {
            s = self.rk4(s, h);
            if i + 1 == n {
                s.r = r_end;
            }
        }
        s
    }
}

/// Integrates from `start` in direction `dir` (±1) until an endpoint event
/// or until r crosses `stop` if given. Returns the visited states (start
/// included) and the event.
pub fn integrate_leg(
    rhs: Rhs,
    start: State,
    dir: f64,
    stop: Option<f64>,
    opts: &OdeOptions,
) -> Result<(Vec<State>, Event)> {
    let mut out = vec![start];
    let mut s = start;
    for _ in 0..opts.max_steps {
        if let Some(ev) = check_event(&rhs, &s, dir, opts) {
            return Ok((out, ev));
        }
        let psi_p = rhs.psi_prime(s.r, s.u, s.psi).abs();
        let up = s.psi.tanh().abs();
        let mut h = opts.h_base * s.u.max(1.0);
        if psi_p > 0.0 {
            h = h.min(opts.psi_step / psi_p);
        }
        if up > 0.0 && dir * s.psi < 0.0 {
            h = h.min(0.5 * s.u / up);
        }
        if rhs.weight != 0.0 && dir < 0.0 {
            h = h.min(s.r / 10.0);
        }
        let mut hit_target = false;
        if let Some(t) = stop {
            if dir * (t - s.r) <= h {
                h = dir * (t - s.r);
                hit_target = true;
            }
        }
        let floor = opts.h_min * s.r.abs().max(1.0);
        loop {
            if h < floor {
                return Err(Error::StepCollapse { r: s.r, step: h });
            }
            let next = rhs.rk4(s, dir * h);
            if next.u > 0.0 && next.u.is_finite() && next.psi.is_finite() {
                s = next;
                break;
            }
            h *= 0.5;
            hit_target = false;
        }
        if hit_target {
            s.r = stop.unwrap();
            out.push(s);
            return Ok((out, Event::Target));
        }
        out.push(s);
    }
    Err(Error::StepCollapse {
        r: s.r,
        step: 0.0,
    })
}

fn check_event(rhs: &Rhs, s: &State, dir: f64, opts: &OdeOptions) -> Option<Event> {
    if s.u < opts.eps_u {
        return Some(Event::ZeroHeight);
    }
    if rhs.weight != 0.0 && s.r < opts.r_axis {
        return Some(Event::Axis);
    }
    // An unbounded branch also approaches |u'| = 1, so only a slope that
    // drives u down along the direction of travel is an endpoint. Near the
    // axis |u'| → 1 as well; there the axis comes first.
    if s.gap() < opts.eps_s && dir * s.psi < 0.0 {
        let reach = s.u / s.psi.tanh().abs();
        if rhs.weight == 0.0 || dir > 0.0 || reach < s.r {
            return Some(Event::LightlikeSlope);
        }
    }
    if s.r.abs() > opts.r_max {
        return Some(Event::Infinite);
    }
    None
}

/// Value at `x` of the quadratic through three points.
pub fn lagrange3(xs: [f64; 3], ys: [f64; 3], x: f64) -> f64 {
    let mut acc = 0.0;
    for i in 0..3 {
        let mut w = 1.0;
        for j in 0..3 {
            if i != j {
                w *= (x - xs[j]) / (xs[i] - xs[j]);
            }
        }
        acc += w * ys[i];
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lagrange_reproduces_quadratics() {
        let f = |x: f64| 2.0 - x + 0.5 * x * x;
        let xs = [0.1, 0.4, 1.3];
        let v = lagrange3(xs, xs.map(f), 2.0);
        assert!((v - f(2.0)).abs() < 1e-13);
    }

    #[test]
    fn cosine_leg_stops_at_lightlike_slope() {
        let rhs = Rhs {
            alpha: -1.0,
            weight: 0.0,
        };
        let (states, ev) =
            integrate_leg(rhs, State::new(0.0, 1.0, 0.0), 1.0, None, &OdeOptions::default()).unwrap();
        assert_eq!(ev, Event::LightlikeSlope);
        for s in &states {
            assert!((s.u - s.r.cos()).abs() < 1e-9, "r = {}", s.r);
        }
    }

    #[test]
    fn target_is_hit_exactly() {
        let rhs = Rhs {
            alpha: 1.0,
            weight: 0.0,
        };
        let (states, ev) =
            integrate_leg(rhs, State::new(0.0, 1.0, 0.0), 1.0, Some(1.0), &OdeOptions::default())
                .unwrap();
        assert_eq!(ev, Event::Target);
        let last = states.last().unwrap();
        assert_eq!(last.r, 1.0);
        assert!((last.u - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn unbounded_branch_runs_to_infinity() {
        let rhs = Rhs {
            alpha: 2.0,
            weight: 0.0,
        };
        let (states, ev) =
            integrate_leg(rhs, State::new(0.0, 1.0, 0.0), 1.0, None, &OdeOptions::default()).unwrap();
        assert_eq!(ev, Event::Infinite);
        assert!(states.iter().all(|s| s.up().abs() < 1.0));
    }
}
