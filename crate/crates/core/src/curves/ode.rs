//! Dormand–Prince 5(4) integration with local re-integration as dense output.
//!
//! The accepted steps are stored as nodes. A value between nodes is produced
//! by one fifth-order step from the nearest node; with node spacing capped at
//! `max_step` the local error of that step is far below the step tolerance,
//! and the result is a polynomial in the offset, so finite differences of the
//! dense output stay meaningful at small spacings.

use std::sync::Arc;

use crate::error::{Error, Result};

pub(crate) const DIM: usize = 5;
pub(crate) type State = [f64; DIM];
pub(crate) type Rhs = Arc<dyn Fn(f64, &State) -> State + Send + Sync>;

pub(crate) const ODE_TOL: f64 = 1e-12;

// Dormand–Prince tableau.
const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

fn axpy(y: &State, terms: &[(f64, &State)], h: f64) -> State {
    let mut out = *y;
    for (c, k) in terms {
        for i in 0..DIM {
            out[i] += h * c * k[i];
        }
    }
    out
}

/// One Dormand–Prince step: fifth-order solution and embedded error vector.
fn dp_step(f: &Rhs, t: f64, y: &State, h: f64) -> (State, State) {
    let k1 = f(t, y);
    let k2 = f(t + C2 * h, &axpy(y, &[(A21, &k1)], h));
    let k3 = f(t + C3 * h, &axpy(y, &[(A31, &k1), (A32, &k2)], h));
    let k4 = f(t + C4 * h, &axpy(y, &[(A41, &k1), (A42, &k2), (A43, &k3)], h));
    let k5 = f(
        t + C5 * h,
        &axpy(y, &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)], h),
    );
    let k6 = f(
        t + h,
        &axpy(y, &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)], h),
    );
    let y5 = axpy(y, &[(B1, &k1), (B3, &k3), (B4, &k4), (B5, &k5), (B6, &k6)], h);
    let k7 = f(t + h, &y5);
    let mut err = [0.0; DIM];
    for i in 0..DIM {
        err[i] = h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
    }
    (y5, err)
}

/// Solution nodes of an ODE over a closed interval.
#[derive(Clone)]
pub(crate) struct OdeTable {
    ts: Vec<f64>,
    ys: Vec<State>,
    rhs: Rhs,
}

impl std::fmt::Debug for OdeTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("OdeTable")
            .field("nodes", &self.ts.len())
            .field("lo", &self.lo())
            .field("hi", &self.hi())
            .finish()
    }
}

impl OdeTable {
    /// Integrates from `(t0, y0)` to both ends of `[lo, hi]`.
    pub(crate) fn solve(rhs: Rhs, t0: f64, y0: State, lo: f64, hi: f64, max_step: f64) -> Result<Self> {
        if !(lo <= t0 && t0 <= hi) || !(lo < hi) {
            return Err(Error::Invalid(format!(
                "start {t0} must lie in a non-empty span [{lo}, {hi}]"
            )));
        }
        if !(max_step > 0.0) {
            return Err(Error::Invalid(format!("step must be positive, got {max_step}")));
        }
        let back = march(&rhs, t0, y0, lo, max_step)?;
        let fwd = march(&rhs, t0, y0, hi, max_step)?;
        let mut ts = Vec::with_capacity(back.len() + fwd.len());
        let mut ys = Vec::with_capacity(back.len() + fwd.len());
        for (t, y) in back.into_iter().rev() {
            ts.push(t);
            ys.push(y);
        }
        // fwd[0] duplicates the start node
        for (t, y) in fwd.into_iter().skip(1) {
            ts.push(t);
            ys.push(y);
        }
        Ok(Self { ts, ys, rhs })
    }

    pub(crate) fn lo(&self) -> f64 {
        self.ts[0]
    }

    pub(crate) fn hi(&self) -> f64 {
        self.ts[self.ts.len() - 1]
    }

    /// Dense state at `t` (caller guarantees `t` is in range).
    pub(crate) fn state(&self, t: f64) -> State {
        let k = match self.ts.binary_search_by(|x| x.total_cmp(&t)) {
            Ok(i) => return self.ys[i],
            Err(i) => {
                if i == 0 {
                    0
                } else if i >= self.ts.len() {
                    self.ts.len() - 1
                } else if (t - self.ts[i - 1]) <= (self.ts[i] - t) {
                    i - 1
                } else {
                    i
                }
            }
        };
        let h = t - self.ts[k];
        dp_step(&self.rhs, self.ts[k], &self.ys[k], h).0
    }
}

fn march(rhs: &Rhs, t0: f64, y0: State, end: f64, max_step: f64) -> Result<Vec<(f64, State)>> {
    let mut out = vec![(t0, y0)];
    let span = end - t0;
    if span == 0.0 {
        return Ok(out);
    }
    let dir = span.signum();
    let mut t = t0;
    let mut y = y0;
    let mut h = max_step.min(span.abs()) * 0.1;
    let min_step = 1e-13 * (1.0 + t0.abs().max(end.abs()));
    let mut steps = 0usize;
    while (end - t) * dir > 0.0 {
        steps += 1;
        if steps > 5_000_000 {
            return Err(Error::Integrator {
                t,
                reason: "step budget exhausted".into(),
            });
        }
        let remaining = (end - t).abs();
        let last = h >= remaining;
        let step = if last { remaining } else { h };
        let (y5, e) = dp_step(rhs, t, &y, dir * step);
        let mut err = 0.0f64;
        let mut finite = true;
        for i in 0..DIM {
            if !y5[i].is_finite() {
                finite = false;
            }
            let sc = ODE_TOL + ODE_TOL * y[i].abs().max(y5[i].abs());
            err = err.max((e[i] / sc).abs());
        }
        if !finite {
            return Err(Error::Integrator {
                t,
                reason: "right-hand side produced a non-finite state".into(),
            });
        }
        if err <= 1.0 {
            t = if last { end } else { t + dir * step };
            y = y5;
            out.push((t, y));
            let grow = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
            h = (step * grow).min(max_step);
        } else {
            h = step * (0.9 * err.powf(-0.2)).clamp(0.1, 0.9);
            if h < min_step {
                return Err(Error::Integrator {
                    t,
                    reason: format!("step size fell below {min_step:e}; tolerance {ODE_TOL:e} not reachable"),
                });
            }
        }
    }
    Ok(out)
}
