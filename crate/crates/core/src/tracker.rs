//! Predictor-corrector path tracking from `t = 1` to `t = 0`.
//!
//! The predictor is an explicit Euler step on the Davidenko equation
//! `dx/dt = -(∂H/∂x)⁻¹ ∂H/∂t`; the corrector is Newton's method at fixed `t`.
//! Steps are halved when the corrector fails and grown after a run of
//! accepted steps. Endpoints are classified, never refined by an endgame.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::homotopy::Homotopy;
use crate::lazy::LiveToken;
use crate::linalg::{norm2, Lu};
use crate::C64;

/// Start residual accepted by [`track`], relative to `1 + ‖start‖`.
pub const START_TOLERANCE: f64 = 1e-8;

const GROW_AFTER: u32 = 4;
const CONTRACTION: f64 = 0.25;

#[derive(Clone, Debug, PartialEq)]
pub struct TrackOptions {
    pub newton_tol: f64,
    pub max_corrector_iters: u32,
    pub initial_step: f64,
    pub min_step: f64,
    pub step_grow: f64,
    pub divergence_norm: f64,
    pub singular_cond: f64,
    pub real_tol: f64,
    pub max_steps: u32,
}

impl Default for TrackOptions {
    fn default() -> Self {
        TrackOptions {
            newton_tol: 1e-10,
            max_corrector_iters: 3,
            initial_step: 0.05,
            min_step: 1e-14,
            step_grow: 1.25,
            divergence_norm: 1e8,
            singular_cond: 1e12,
            real_tol: 1e-6,
            max_steps: 10_000,
        }
    }
}

impl TrackOptions {
    pub fn validate(&self) -> Result<()> {
        let positive = [
            self.newton_tol,
            self.initial_step,
            self.min_step,
            self.step_grow,
            self.divergence_norm,
            self.singular_cond,
            self.real_tol,
        ];
        if positive.iter().any(|v| v.is_nan() || *v <= 0.0)
            || self.max_corrector_iters == 0
            || self.max_steps == 0
        {
            return Err(Error::InvalidArgument(
                "tracker options must be positive".into(),
            ));
        }
        if !(self.min_step < self.initial_step && self.initial_step <= 1.0) {
            return Err(Error::InvalidArgument(
                "tracker options need min_step < initial_step <= 1".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum PathStatus {
    Success,
    Diverged,
    TrackingFailed,
    Singular,
}

impl fmt::Display for PathStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            PathStatus::Success => "success",
            PathStatus::Diverged => "diverged",
            PathStatus::TrackingFailed => "tracking_failed",
            PathStatus::Singular => "singular",
        };
        f.write_str(s)
    }
}

/// Outcome of tracking one start solution.
#[derive(Clone, Debug, PartialEq)]
pub struct PathResult {
    pub start: Vec<C64>,
    pub solution: Vec<C64>,
    pub status: PathStatus,
    pub t_reached: f64,
    pub residual: f64,
    pub condition_estimate: f64,
    pub steps_taken: u32,
    singular_cond: f64,
    pub(crate) live: Option<LiveToken>,
}

impl PathResult {
    pub fn is_success(&self) -> bool {
        self.status == PathStatus::Success
    }

    /// Every coordinate has imaginary part at most `tol * (1 + ‖solution‖)`.
    pub fn is_real(&self, tol: f64) -> bool {
        let bound = tol * (1.0 + norm2(&self.solution));
        self.solution.iter().all(|z| z.im.abs() <= bound)
    }

    pub fn is_nonsingular(&self) -> bool {
        self.is_success() && self.condition_estimate < self.singular_cond
    }

    pub fn into_solution(self) -> Vec<C64> {
        self.solution
    }
}

pub fn is_success(r: &PathResult) -> bool {
    r.is_success()
}

pub fn is_real(r: &PathResult, tol: f64) -> bool {
    r.is_real(tol)
}

pub fn is_nonsingular(r: &PathResult) -> bool {
    r.is_nonsingular()
}

/// The map from start solutions to path results for a fixed homotopy.
pub fn path_map<'a>(h: &'a Homotopy, opts: &'a TrackOptions) -> impl Fn(&[C64]) -> PathResult + 'a {
    move |start| track(h, start, opts)
}

struct Tracker<'a> {
    h: &'a Homotopy,
    opts: &'a TrackOptions,
}

enum Correction {
    Converged(Vec<C64>),
    Failed,
}

impl Tracker<'_> {
    fn tol(&self, x: &[C64]) -> f64 {
        self.opts.newton_tol * (1.0 + norm2(x))
    }

    /// Euler step from `(x, t)` to `t_next`.
    fn predict(&self, x: &[C64], t: f64, t_next: f64) -> Option<Vec<C64>> {
        let e = self.h.eval_all(x, t);
        let rhs: Vec<C64> = e.dt.iter().map(|v| -v).collect();
        let v = Lu::factor(&e.dx).solve(&rhs)?;
        let dt = t_next - t;
        Some(x.iter().zip(&v).map(|(xi, vi)| xi + vi * dt).collect())
    }

    fn correct(&self, mut x: Vec<C64>, t: f64, iters: u32) -> Correction {
        let mut last = f64::INFINITY;
        for _ in 0..iters {
            let e = self.h.eval_all(&x, t);
            let rhs: Vec<C64> = e.value.iter().map(|v| -v).collect();
            let Some(d) = Lu::factor(&e.dx).solve(&rhs) else {
                return Correction::Failed;
            };
            let dn = norm2(&d);
            if last.is_finite() && dn > CONTRACTION * last {
                return Correction::Failed;
            }
            x.iter_mut().zip(&d).for_each(|(xi, di)| *xi += di);
            if dn <= self.tol(&x) {
                return Correction::Converged(x);
            }
            last = dn;
        }
        Correction::Failed
    }

    fn residual_and_condition(&self, x: &[C64], t: f64) -> (f64, f64) {
        let e = self.h.eval_all(x, t);
        (norm2(&e.value), Lu::factor(&e.dx).condition_estimate())
    }
}

/// Tracks `start` along `h` from `t = 1` towards `t = 0`.
///
/// Deterministic: the result depends only on the arguments.
pub fn track(h: &Homotopy, start: &[C64], opts: &TrackOptions) -> PathResult {
    let tr = Tracker { h, opts };
    let fail_at_start = |residual: f64| PathResult {
        start: start.to_vec(),
        solution: start.to_vec(),
        status: PathStatus::TrackingFailed,
        t_reached: 1.0,
        residual,
        condition_estimate: f64::INFINITY,
        steps_taken: 0,
        singular_cond: opts.singular_cond,
        live: None,
    };
    if start.len() != h.nvars() || start.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return fail_at_start(f64::INFINITY);
    }
    let r0 = norm2(&h.eval_all(start, 1.0).value);
    if r0.is_nan() || r0 > START_TOLERANCE * (1.0 + norm2(start)) {
        return fail_at_start(r0);
    }

    let mut x = start.to_vec();
    let mut t = 1.0f64;
    let mut step = opts.initial_step;
    let mut streak = 0;
    let mut steps = 0u32;
    // norm recorded the first time t drops below each power of ten
    let mut decade_norms: Vec<f64> = vec![norm2(&x)];
    let mut underflow = false;

    while t > 0.0 {
        if steps >= opts.max_steps {
            break;
        }
        steps += 1;
        let t_next = if step >= t { 0.0 } else { t - step };
        let corrected = match tr.predict(&x, t, t_next) {
            Some(pred) => tr.correct(pred, t_next, opts.max_corrector_iters),
            None => Correction::Failed,
        };
        match corrected {
            Correction::Converged(xn) => {
                x = xn;
                t = t_next;
                streak += 1;
                if streak >= GROW_AFTER {
                    step = (step * opts.step_grow).min(1.0);
                    streak = 0;
                }
                let nx = norm2(&x);
                while t > 0.0 && t < 10f64.powi(-(decade_norms.len() as i32)) {
                    decade_norms.push(nx);
                }
                if nx >= opts.divergence_norm {
                    let (residual, cond) = tr.residual_and_condition(&x, t);
                    return PathResult {
                        start: start.to_vec(),
                        solution: x,
                        status: PathStatus::Diverged,
                        t_reached: t,
                        residual,
                        condition_estimate: cond,
                        steps_taken: steps,
                        singular_cond: opts.singular_cond,
                        live: None,
                    };
                }
            }
            Correction::Failed => {
                streak = 0;
                step /= 2.0;
                if step < opts.min_step {
                    underflow = true;
                    break;
                }
            }
        }
    }

    if t == 0.0 {
        // polish at the endpoint
        if let Correction::Converged(xn) = tr.correct(x.clone(), 0.0, opts.max_corrector_iters) {
            x = xn;
        }
    }
    let (residual, cond) = tr.residual_and_condition(&x, t);
    let nx = norm2(&x);
    let status = if t == 0.0 && residual <= 100.0 * opts.newton_tol * (1.0 + nx) {
        PathStatus::Success
    } else if nx >= opts.divergence_norm || (underflow && norm_is_growing(&decade_norms, nx)) {
        PathStatus::Diverged
    } else if t < NEAR_END && cond >= opts.singular_cond {
        PathStatus::Singular
    } else {
        PathStatus::TrackingFailed
    };
    PathResult {
        start: start.to_vec(),
        solution: x,
        status,
        t_reached: t,
        residual,
        condition_estimate: cond,
        steps_taken: steps,
        singular_cond: opts.singular_cond,
        live: None,
    }
}

/// `t` below which a stalled path counts as having reached the end.
const NEAR_END: f64 = 1e-4;

/// Large and at least ten times the norm two decades of `t` earlier.
fn norm_is_growing(decade_norms: &[f64], current: f64) -> bool {
    let k = decade_norms.len();
    let earlier = decade_norms[k.saturating_sub(3)];
    current >= 1e4 && current >= 10.0 * earlier.max(1.0)
}
