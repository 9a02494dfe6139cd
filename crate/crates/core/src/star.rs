//! The star product `Φ = α∗ω` and its first- and second-order geometry.
//!
//! Positions use the gauge
//! `Φ(t, s) = ( (|ω|² − |α|²)/2 + i(B(s) − A(t)),  α(t)ω(s) )`
//! with `A(t) = ∫_{t0}^t ⟨α′, Jα⟩` and `B(s) = ∫_{s0}^s ⟨ω̇, Jω⟩`.

use std::f64::consts::{PI, TAU};

use crate::curves::{CurveJet, PlanarCurve};
use crate::error::{Error, Result};
use crate::geom::{herm, jrot2, Cplx, C2};
use crate::specfun::{self, QuadTable};

/// Global sign in `C(∂a, ∂b, ∂c) = C_SIGN · Im herm(Φ_ab, Φ_c)`.
pub const C_SIGN: f64 = 1.0;

/// Below this, `|α(t)|` and `|ω(s)|` count as zero.
pub const SINGULAR_EPS: f64 = 1e-12;

const PREFIX_TOL: f64 = 1e-11;
const PANEL_WIDTH: f64 = 0.05;
const MAX_DOUBLINGS: usize = 6;
const DEFAULT_HALF_WINDOW: f64 = 2.0;

/// Prefix integral `∫_{base}^x ⟨c′, Jc⟩` with periodic extension.
#[derive(Debug, Clone)]
struct Prefix {
    curve: PlanarCurve,
    base: f64,
    table: QuadTable,
    offset: f64,
    period: Option<f64>,
}

impl Prefix {
    fn build(curve: &PlanarCurve, base: f64) -> Result<Self> {
        let (lo, hi, period) = match curve.period() {
            Some(p) => (base, base + p, Some(p)),
            None => {
                let (dlo, dhi) = curve.domain();
                let lo = if dlo.is_finite() { dlo } else { base.min(dhi) - DEFAULT_HALF_WINDOW };
                let hi = if dhi.is_finite() { dhi } else { base.max(dlo) + DEFAULT_HALF_WINDOW };
                (lo, hi, None)
            }
        };
        if base < lo - 1e-12 || base > hi + 1e-12 {
            return Err(Error::OutOfDomain { t: base, lo, hi });
        }
        let f = |t: f64| Ok(curve.eval(t)?.areal_rate());
        let mut n = (((hi - lo) / PANEL_WIDTH).ceil() as usize).max(4);
        let mut table = specfun::cumulative_integral(f, lo, hi, n)?;
        let mut converged = false;
        for _ in 0..MAX_DOUBLINGS {
            n *= 2;
            let finer = specfun::cumulative_integral(f, lo, hi, n)?;
            let diff = (finer.total() - table.total()).abs();
            table = finer;
            if diff <= PREFIX_TOL * (1.0 + table.total().abs()) {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::Quadrature(format!(
                "prefix integral on [{lo}, {hi}] did not settle to {PREFIX_TOL:e}"
            )));
        }
        let offset = table.value(base);
        Ok(Self {
            curve: curve.clone(),
            base,
            table,
            offset,
            period,
        })
    }

    fn value(&self, x: f64) -> Result<f64> {
        if let Some(p) = self.period {
            let k = ((x - self.base) / p).floor();
            let r = x - k * p;
            return Ok(k * self.table.total() + self.table.value(r) - self.offset);
        }
        let (lo, hi) = (self.table.lo(), self.table.hi());
        let f = |t: f64| Ok(self.curve.eval(t)?.areal_rate());
        let raw = if x > hi {
            let n = (((x - hi) / PANEL_WIDTH).ceil() as usize).max(1);
            self.table.total() + specfun::integrate(f, hi, x, n)?
        } else if x < lo {
            let n = (((lo - x) / PANEL_WIDTH).ceil() as usize).max(1);
            -specfun::integrate(f, x, lo, n)?
        } else {
            self.table.value(x)
        };
        Ok(raw - self.offset)
    }
}

/// Curve data at one parameter value, shared along a grid row or column.
#[derive(Debug, Clone, Copy)]
pub struct Fiber {
    pub param: f64,
    pub jet: CurveJet,
    /// Prefix integral from the base point.
    pub prefix: f64,
}

/// Full geometry of `Φ` at one parameter pair.
#[derive(Debug, Clone, Copy)]
pub struct SurfaceJet {
    pub t: f64,
    pub s: f64,
    pub phi: C2,
    pub phi_t: C2,
    pub phi_s: C2,
    pub e: f64,
    pub f: f64,
    pub g: f64,
    /// `|α|² + |ω|²`.
    pub conf: f64,
    pub c_ttt: f64,
    pub c_tts: f64,
    pub c_tss: f64,
    pub c_sss: f64,
    /// Lagrangian angle, principal value in `(−π, π]`.
    pub beta: f64,
    pub h: C2,
    pub alpha: CurveJet,
    pub omega: CurveJet,
}

impl SurfaceJet {
    /// `|H|²`.
    pub fn h_sqr(&self) -> f64 {
        self.h.norm_sqr()
    }

    /// Normalized Lagrangian residual `|herm(Φ_t, Φ_s)| / (|Φ_t||Φ_s|)`.
    pub fn lagrangian_residual(&self) -> f64 {
        herm(self.phi_t, self.phi_s).norm() / (self.phi_t.norm() * self.phi_s.norm())
    }

    /// Orthogonal projection of `v` onto the normal plane `span{JΦ_t, JΦ_s}`.
    pub fn normal_part(&self, v: C2) -> C2 {
        let mut out = C2::ZERO;
        for d in [self.phi_t, self.phi_s] {
            out += jrot2(d) * (herm(v, d).im / d.norm_sqr());
        }
        out
    }
}

/// Second parameter derivatives of `Φ`.
#[derive(Debug, Clone, Copy)]
pub struct SecondDerivatives {
    pub tt: C2,
    pub ts: C2,
    pub ss: C2,
}

/// The immersion `α∗ω`; immutable after [`StarSurface::build`].
#[derive(Debug, Clone)]
pub struct StarSurface {
    alpha: PlanarCurve,
    omega: PlanarCurve,
    t0: f64,
    s0: f64,
    a: Prefix,
    b: Prefix,
}

impl StarSurface {
    /// Builds `α∗ω` with prefix integrals vanishing at `(t0, s0)`.
    pub fn build(alpha: PlanarCurve, omega: PlanarCurve, t0: f64, s0: f64) -> Result<Self> {
        let a = Prefix::build(&alpha, t0)?;
        let b = Prefix::build(&omega, s0)?;
        Ok(Self {
            alpha,
            omega,
            t0,
            s0,
            a,
            b,
        })
    }

    pub fn alpha(&self) -> &PlanarCurve {
        &self.alpha
    }

    pub fn omega(&self) -> &PlanarCurve {
        &self.omega
    }

    pub fn base(&self) -> (f64, f64) {
        (self.t0, self.s0)
    }

    /// `A(t) = ∫_{t0}^t ⟨α′, Jα⟩`.
    pub fn prefix_a(&self, t: f64) -> Result<f64> {
        self.a.value(t)
    }

    /// `B(s) = ∫_{s0}^s ⟨ω̇, Jω⟩`.
    pub fn prefix_b(&self, s: f64) -> Result<f64> {
        self.b.value(s)
    }

    pub fn fiber_t(&self, t: f64) -> Result<Fiber> {
        Ok(Fiber {
            param: t,
            jet: self.alpha.eval(t)?,
            prefix: self.a.value(t)?,
        })
    }

    pub fn fiber_s(&self, s: f64) -> Result<Fiber> {
        Ok(Fiber {
            param: s,
            jet: self.omega.eval(s)?,
            prefix: self.b.value(s)?,
        })
    }

    pub fn is_singular(&self, t: f64, s: f64) -> Result<bool> {
        Ok(self.alpha.position(t)?.norm() < SINGULAR_EPS && self.omega.position(s)?.norm() < SINGULAR_EPS)
    }

    pub fn position(&self, t: f64, s: f64) -> Result<C2> {
        Ok(position_from(&self.fiber_t(t)?, &self.fiber_s(s)?))
    }

    pub fn jet(&self, t: f64, s: f64) -> Result<SurfaceJet> {
        jet_from(&self.fiber_t(t)?, &self.fiber_s(s)?)
    }

    /// `Φ_tt`, `Φ_ts`, `Φ_ss` from the curves' second derivatives.
    pub fn second_derivatives(&self, t: f64, s: f64) -> Result<SecondDerivatives> {
        let a = self.alpha.eval(t)?;
        let w = self.omega.eval(s)?;
        Ok(second_from(&a, &w))
    }

    /// `Φ^⊥`, the normal part of the position vector.
    pub fn normal_project_position(&self, t: f64, s: f64) -> Result<C2> {
        let j = self.jet(t, s)?;
        Ok(j.normal_part(j.phi))
    }

    /// `e^⊥` for a constant vector `e`.
    pub fn normal_project_constant(&self, t: f64, s: f64, e: C2) -> Result<C2> {
        Ok(self.jet(t, s)?.normal_part(e))
    }
}

/// Position from precomputed fibers.
pub fn position_from(a: &Fiber, w: &Fiber) -> C2 {
    let (al, om) = (a.jet.pos, w.jet.pos);
    let first = Cplx::new(0.5 * (om.norm_sqr() - al.norm_sqr()), w.prefix - a.prefix);
    C2::new(first, al * om)
}

/// Second derivatives from curve jets.
pub fn second_from(a: &CurveJet, w: &CurveJet) -> SecondDerivatives {
    SecondDerivatives {
        tt: C2::new(-a.d2 * a.pos.conj() - a.d1 * a.d1.conj(), a.d2 * w.pos),
        ts: C2::new(Cplx::default(), a.d1 * w.d1),
        ss: C2::new(w.d2 * w.pos.conj() + w.d1 * w.d1.conj(), w.d2 * a.pos),
    }
}

/// Surface jet from precomputed fibers.
pub fn jet_from(af: &Fiber, wf: &Fiber) -> Result<SurfaceJet> {
    let (a, w) = (&af.jet, &wf.jet);
    let (t, s) = (af.param, wf.param);
    if a.pos.norm() < SINGULAR_EPS && w.pos.norm() < SINGULAR_EPS {
        return Err(Error::Singular { t, s });
    }
    let conf = a.pos.norm_sqr() + w.pos.norm_sqr();
    let phi_t = C2::new(-a.pos.conj(), w.pos) * a.d1;
    let phi_s = C2::new(w.pos.conj(), a.pos) * w.d1;
    let (la, lw) = (a.speed, w.speed);
    let (la2, lw2) = (la * la, lw * lw);
    let ja = a.areal_rate();
    let jw = w.areal_rate();
    let c_ttt = C_SIGN * la2 * (conf * la * a.kappa - ja);
    let c_tts = C_SIGN * la2 * jw;
    let c_tss = C_SIGN * lw2 * ja;
    let c_sss = C_SIGN * lw2 * (conf * lw * w.kappa - jw);
    let mut beta = (-(a.d1 * w.d1)).arg();
    if beta <= -PI {
        beta += TAU;
    }
    let h = (jrot2(phi_t) * (a.kappa / la) + jrot2(phi_s) * (w.kappa / lw)) / conf;
    Ok(SurfaceJet {
        t,
        s,
        phi: position_from(af, wf),
        phi_t,
        phi_s,
        e: la2 * conf,
        f: 0.0,
        g: lw2 * conf,
        conf,
        c_ttt,
        c_tts,
        c_tss,
        c_sss,
        beta,
        h,
        alpha: *a,
        omega: *w,
    })
}

/// `e^{iβ}` from the complex determinant of the normalized tangents.
pub fn det_angle(j: &SurfaceJet) -> Cplx {
    let u = j.phi_t / j.phi_t.norm();
    let v = j.phi_s / j.phi_s.norm();
    u.z1 * v.z2 - u.z2 * v.z1
}

#[cfg(test)]
mod tests;
