//! Planar curves behind a uniform jet interface.
//!
//! A [`PlanarCurve`] is either a closed-form catalog curve (line, circle,
//! Cornu spiral, Gerono lemniscate, Lissajous figure, Bernoulli lemniscate
//! from `sn(t, i)`) or an ODE-backed curve produced by one of the Frenet
//! generators. Every curve answers [`PlanarCurve::eval`] with position, first
//! and second derivatives, speed, signed curvature and its parameter
//! derivative.

mod ode;

use std::f64::consts::TAU;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{bracket_j, dot, Cplx, PlanePoint, I};
use crate::specfun::{self, QuadTable};

use ode::{OdeTable, Rhs, State};

/// Maximum node spacing for the ODE generators unless the caller asks for less.
pub const DEFAULT_ODE_STEP: f64 = 0.01;

/// Curves whose speed drops below this are treated as irregular.
pub const REGULARITY_MARGIN: f64 = 1e-8;

const PANEL_WIDTH: f64 = 0.05;

/// Position and derivatives of a curve at one parameter value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveJet {
    pub pos: PlanePoint,
    pub d1: PlanePoint,
    pub d2: PlanePoint,
    pub speed: f64,
    /// Signed curvature `Im(conj(d1)·d2)/|d1|³`.
    pub kappa: f64,
    /// Derivative of the curvature with respect to the curve parameter.
    pub dkappa: f64,
}

impl CurveJet {
    fn from_derivatives(pos: Cplx, d1: Cplx, d2: Cplx, d3: Cplx) -> Self {
        let speed = d1.norm();
        let s2 = speed * speed;
        let s3 = s2 * speed;
        let kappa = (d1.conj() * d2).im / s3;
        let dkappa = (d1.conj() * d3).im / s3 - 3.0 * kappa * dot(d1, d2) / s2;
        Self {
            pos,
            d1,
            d2,
            speed,
            kappa,
            dkappa,
        }
    }

    /// Unit-speed Frenet jet from tangent angle and curvature.
    fn frenet(pos: Cplx, theta: f64, kappa: f64, dkappa: f64) -> Self {
        let d1 = Cplx::from_polar(1.0, theta);
        Self {
            pos,
            d1,
            d2: I * kappa * d1,
            speed: 1.0,
            kappa,
            dkappa,
        }
    }

    /// `⟨α′, Jα⟩`, the integrand of the prefix integrals.
    pub fn areal_rate(&self) -> f64 {
        bracket_j(self.d1, self.pos)
    }
}

/// Curvature laws for the `(x, y, θ)` Frenet system.
#[derive(Clone)]
enum CurvatureLaw {
    /// κ as a function of the parameter.
    Prescribed(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
    /// `κ = sign·ρ·Im(e^{−iφ} α′ ᾱ)` for a unit-speed α.
    Translating { rho: f64, angle: f64, sign: f64 },
}

impl CurvatureLaw {
    fn kappa(&self, t: f64, pos: Cplx, theta: f64) -> f64 {
        match self {
            CurvatureLaw::Prescribed(f) => f(t),
            CurvatureLaw::Translating { rho, angle, sign } => {
                sign * rho * (Cplx::from_polar(1.0, theta - angle) * pos.conj()).im
            }
        }
    }

    fn dkappa(&self, t: f64, pos: Cplx, theta: f64, kappa: f64) -> f64 {
        match self {
            CurvatureLaw::Prescribed(f) => {
                let h = 1e-5 * (1.0 + t.abs());
                (f(t + h) - f(t - h)) / (2.0 * h)
            }
            CurvatureLaw::Translating { rho, angle, sign } => {
                let rot = Cplx::from_polar(1.0, theta - angle);
                sign * rho * (kappa * (rot * pos.conj()).re - angle.sin())
            }
        }
    }
}

/// Autonomous second-order laws `κ″ = G(κ)` for the `(x, y, θ, κ, κ′)` system.
#[derive(Debug, Clone, Copy, PartialEq)]
enum KappaLaw {
    /// `2κ″ + κ³ − λκ = 0`.
    Elastica { lambda: f64 },
    /// Unit-speed curves with `κ² = ρ²|α|² − λ` and
    /// `κ³/ρ² + μ = 3⟨α′, Jα⟩`, reduced to an equation in κ alone.
    CmcRadial { rho: f64, lambda: f64, mu: f64 },
}

impl KappaLaw {
    fn accel(&self, k: f64) -> f64 {
        match *self {
            KappaLaw::Elastica { lambda } => 0.5 * (lambda * k - k * k * k),
            KappaLaw::CmcRadial { rho, lambda, mu } => {
                let rho2 = rho * rho;
                let k3 = k * k * k;
                let c = rho2 * (rho2 * mu * mu / 9.0 - lambda);
                let tail = if c == 0.0 { 0.0 } else { c / k3 };
                -2.0 * k3 / 9.0 - rho2 * mu / 9.0 + tail
            }
        }
    }
}

#[derive(Clone)]
enum Kind {
    Line { origin: Cplx, dir: Cplx },
    Circle { center: Cplx, radius: f64, rate: f64, phase: f64 },
    Cornu { a: f64, offset: Cplx },
    Gerono,
    Lissajous,
    Lemniscate,
    Frenet { table: Arc<OdeTable>, law: CurvatureLaw },
    KappaOde { table: Arc<OdeTable>, law: KappaLaw },
    Affine { base: Box<PlanarCurve>, mul: Cplx, add: Cplx, mirror: bool },
}

/// A regular parametrized planar curve.
#[derive(Clone)]
pub struct PlanarCurve {
    kind: Kind,
    domain: (f64, f64),
    period: Option<f64>,
}

impl fmt::Debug for PlanarCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PlanarCurve")
            .field("kind", &self.kind_name())
            .field("params", &self.params())
            .field("domain", &self.domain)
            .field("period", &self.period)
            .finish()
    }
}

/// Closure data of a periodic curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClosureReport {
    pub period: f64,
    /// `∫₀^T ⟨α′, Jα⟩`.
    pub closure_integral: f64,
    /// Largest `|α(t + T) − α(t)|` over the samples.
    pub position_gap: f64,
}

const ALL_REALS: (f64, f64) = (f64::NEG_INFINITY, f64::INFINITY);

impl PlanarCurve {
    fn closed(kind: Kind, period: Option<f64>) -> Self {
        Self {
            kind,
            domain: ALL_REALS,
            period,
        }
    }

    /// The horizontal line `t + i a`.
    pub fn line(a: f64) -> Self {
        Self::line_through(Cplx::new(0.0, a), Cplx::new(1.0, 0.0))
    }

    /// `origin + t·dir`.
    pub fn line_through(origin: Cplx, dir: Cplx) -> Self {
        Self::closed(Kind::Line { origin, dir }, None)
    }

    /// `center + radius·e^{i(phase + rate·t)}`.
    pub fn circle(center: Cplx, radius: f64, rate: f64, phase: f64) -> Self {
        let period = if rate != 0.0 { Some(TAU / rate.abs()) } else { None };
        Self::closed(
            Kind::Circle {
                center,
                radius,
                rate,
                phase,
            },
            period,
        )
    }

    /// Arclength-parametrized circle, curvature `1/radius`.
    pub fn circle_arclength(center: Cplx, radius: f64) -> Self {
        Self::circle(center, radius, 1.0 / radius, 0.0)
    }

    /// Unit-speed Euler spiral `offset + ∫₀^t e^{i a x²/2} dx`, curvature `a·t`.
    pub fn cornu(a: f64, offset: Cplx) -> Self {
        Self::closed(Kind::Cornu { a, offset }, None)
    }

    /// Gerono lemniscate `(1 + 2 cos t, 2 cos t sin t)`.
    pub fn gerono() -> Self {
        Self::closed(Kind::Gerono, Some(TAU))
    }

    /// Lissajous figure `(sin s, sin 2s)`.
    pub fn lissajous() -> Self {
        Self::closed(Kind::Lissajous, Some(TAU))
    }

    /// Bernoulli lemniscate `r(t)·e^{iθ(t)}` with `r = sn(t, i)`, `θ = ∫ r`.
    /// Unit speed, curvature `3r`.
    pub fn lemniscate() -> Self {
        Self::closed(Kind::Lemniscate, Some(specfun::lemniscate_period()))
    }

    /// Unit-speed curve with prescribed curvature: `θ′ = κ(t)`, `α′ = e^{iθ}`,
    /// `α(t0) = p0`, `θ(t0) = theta0`, integrated over `span` with node
    /// spacing at most `step`.
    pub fn curve_from_curvature<F>(
        kappa: F,
        t0: f64,
        theta0: f64,
        p0: PlanePoint,
        span: (f64, f64),
        step: f64,
    ) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self::frenet(CurvatureLaw::Prescribed(Arc::new(kappa)), t0, theta0, p0, span, step)
    }

    /// Unit-speed curve satisfying `|α′|κ = sign·ρ·Im(e^{−iφ} α′ ᾱ)`, the
    /// curve-level condition for `α∗ω` to translate along `(ρe^{iφ}, 0)`
    /// (`sign = +1` for α, `−1` for ω).
    pub fn translating_curve(
        rho: f64,
        angle: f64,
        sign: f64,
        p0: PlanePoint,
        theta0: f64,
        span: (f64, f64),
    ) -> Result<Self> {
        if sign != 1.0 && sign != -1.0 {
            return Err(Error::Invalid(format!("translating sign must be ±1, got {sign}")));
        }
        let start = start_in(span);
        Self::frenet(
            CurvatureLaw::Translating { rho, angle, sign },
            start,
            theta0,
            p0,
            span,
            DEFAULT_ODE_STEP,
        )
    }

    fn frenet(law: CurvatureLaw, t0: f64, theta0: f64, p0: PlanePoint, span: (f64, f64), step: f64) -> Result<Self> {
        let l = law.clone();
        let rhs: Rhs = Arc::new(move |t, y: &State| {
            let (s, c) = y[2].sin_cos();
            [c, s, l.kappa(t, Cplx::new(y[0], y[1]), y[2]), 0.0, 0.0]
        });
        let table = OdeTable::solve(rhs, t0, [p0.re, p0.im, theta0, 0.0, 0.0], span.0, span.1, step)?;
        Ok(Self {
            domain: (table.lo(), table.hi()),
            kind: Kind::Frenet {
                table: Arc::new(table),
                law,
            },
            period: None,
        })
    }

    /// Elastica: unit-speed curve whose curvature solves `2κ″ + κ³ − λκ = 0`
    /// with `κ(t0) = kappa0`, `κ′(t0) = kappa0_prime`, starting at the origin
    /// heading along the positive real axis. `t0` is 0 clamped into `span`.
    pub fn elastica_curve(lambda: f64, kappa0: f64, kappa0_prime: f64, span: (f64, f64)) -> Result<Self> {
        let t0 = start_in(span);
        Self::kappa_ode(
            KappaLaw::Elastica { lambda },
            t0,
            [0.0, 0.0, 0.0, kappa0, kappa0_prime],
            span,
        )
    }

    /// Unit-speed curve with `κ² = ρ²|α|² − λ`, the generating curves of the
    /// constant-|H| family, selected by the first integral
    /// `(ρ²r² − λ)^{3/2}/ρ² + μ = 3 r √(1 − r′²)` where `r = |α|`.
    ///
    /// Starts at `α = r_init` on the positive real axis with `r′ ≥ 0` and the
    /// positive curvature branch `κ = +√(ρ²r² − λ)`; conjugate the result for
    /// the mirrored branch. `t0` is 0 clamped into `span`.
    pub fn cmc_radial_curve(rho: f64, lambda: f64, mu: f64, r_init: f64, span: (f64, f64)) -> Result<Self> {
        if !(rho > 0.0) || !(r_init > 0.0) {
            return Err(Error::Invalid(format!(
                "cmc radial curve needs rho > 0 and r_init > 0 (got {rho}, {r_init})"
            )));
        }
        let rho2 = rho * rho;
        let k2 = rho2 * r_init * r_init - lambda;
        if k2 <= 0.0 {
            return Err(Error::Invalid(format!(
                "rho² r_init² − lambda = {k2} must be positive at the start"
            )));
        }
        let k0 = k2.sqrt();
        let w0 = (k0 * k2 / rho2 + mu) / (3.0 * r_init);
        if w0.abs() > 1.0 + 1e-12 {
            return Err(Error::Invalid(format!(
                "first integral gives |r θ′| = {} > 1 at r_init = {r_init}",
                w0.abs()
            )));
        }
        let w0 = w0.clamp(-1.0, 1.0);
        let dr0 = (1.0 - w0 * w0).max(0.0).sqrt();
        let theta0 = w0.atan2(dr0);
        // κκ′ = ρ²⟨α, α′⟩
        let dk0 = rho2 * r_init * dr0 / k0;
        let t0 = start_in(span);
        Self::kappa_ode(
            KappaLaw::CmcRadial { rho, lambda, mu },
            t0,
            [r_init, 0.0, theta0, k0, dk0],
            span,
        )
        .map_err(|e| match e {
            Error::Integrator { t, reason } => Error::TurningPoint { t, reason },
            other => other,
        })
    }

    fn kappa_ode(law: KappaLaw, t0: f64, y0: State, span: (f64, f64)) -> Result<Self> {
        let rhs: Rhs = Arc::new(move |_, y: &State| {
            let (s, c) = y[2].sin_cos();
            [c, s, y[3], y[4], law.accel(y[3])]
        });
        let table = OdeTable::solve(rhs, t0, y0, span.0, span.1, DEFAULT_ODE_STEP)?;
        Ok(Self {
            domain: (table.lo(), table.hi()),
            kind: Kind::KappaOde {
                table: Arc::new(table),
                law,
            },
            period: None,
        })
    }

    /// `mul·α + add`, or `mul·conj(α) + add` when `mirror` is set.
    pub fn affine(&self, mul: Cplx, add: Cplx, mirror: bool) -> Self {
        Self {
            domain: self.domain,
            period: self.period,
            kind: Kind::Affine {
                base: Box::new(self.clone()),
                mul,
                add,
                mirror,
            },
        }
    }

    pub fn scaled(&self, rho: f64) -> Self {
        self.affine(Cplx::new(rho, 0.0), Cplx::new(0.0, 0.0), false)
    }

    pub fn rotated(&self, angle: f64) -> Self {
        self.affine(Cplx::from_polar(1.0, angle), Cplx::new(0.0, 0.0), false)
    }

    pub fn translated(&self, by: Cplx) -> Self {
        self.affine(Cplx::new(1.0, 0.0), by, false)
    }

    /// Complex conjugate curve (curvature changes sign).
    pub fn mirrored(&self) -> Self {
        self.affine(Cplx::new(1.0, 0.0), Cplx::new(0.0, 0.0), true)
    }

    /// Restricts the parameter domain.
    pub fn with_domain(mut self, lo: f64, hi: f64) -> Result<Self> {
        if !(lo < hi) {
            return Err(Error::Invalid(format!("empty curve domain [{lo}, {hi}]")));
        }
        if lo < self.domain.0 - 1e-12 || hi > self.domain.1 + 1e-12 {
            return Err(Error::Invalid(format!(
                "domain [{lo}, {hi}] exceeds the available [{}, {}]",
                self.domain.0, self.domain.1
            )));
        }
        self.domain = (lo, hi);
        Ok(self)
    }

    /// Declares a period after checking `|α(t + T) − α(t)| < 1e-10` on samples
    /// inside the domain.
    pub fn with_period(mut self, period: f64) -> Result<Self> {
        if !(period > 0.0) || !period.is_finite() {
            return Err(Error::Invalid(format!("period must be positive, got {period}")));
        }
        let (lo, hi) = self.sample_window(period);
        if hi - lo < period {
            return Err(Error::Invalid(format!(
                "domain length {} is shorter than the declared period {period}",
                hi - lo
            )));
        }
        let gap = self.max_gap(lo, hi - period, period, 64)?;
        if gap >= 1e-10 {
            return Err(Error::Invalid(format!(
                "declared period {period} does not close the curve (gap {gap:e})"
            )));
        }
        self.period = Some(period);
        Ok(self)
    }

    pub fn domain(&self) -> (f64, f64) {
        self.domain
    }

    pub fn period(&self) -> Option<f64> {
        self.period
    }

    pub fn kind_name(&self) -> &'static str {
        match &self.kind {
            Kind::Line { .. } => "line",
            Kind::Circle { .. } => "circle",
            Kind::Cornu { .. } => "cornu",
            Kind::Gerono => "gerono",
            Kind::Lissajous => "lissajous",
            Kind::Lemniscate => "lemniscate",
            Kind::Frenet {
                law: CurvatureLaw::Prescribed(_),
                ..
            } => "curvature",
            Kind::Frenet {
                law: CurvatureLaw::Translating { .. },
                ..
            } => "translating",
            Kind::KappaOde {
                law: KappaLaw::Elastica { .. },
                ..
            } => "elastica",
            Kind::KappaOde {
                law: KappaLaw::CmcRadial { .. },
                ..
            } => "cmc-radial",
            Kind::Affine { .. } => "affine",
        }
    }

    /// Numeric parameters of the curve's kind, for reports.
    pub fn params(&self) -> Vec<f64> {
        match &self.kind {
            Kind::Line { origin, dir } => vec![origin.re, origin.im, dir.re, dir.im],
            Kind::Circle {
                center,
                radius,
                rate,
                phase,
            } => vec![center.re, center.im, *radius, *rate, *phase],
            Kind::Cornu { a, offset } => vec![*a, offset.re, offset.im],
            Kind::Gerono | Kind::Lissajous | Kind::Lemniscate => vec![],
            Kind::Frenet { law, .. } => match law {
                CurvatureLaw::Prescribed(_) => vec![],
                CurvatureLaw::Translating { rho, angle, sign } => vec![*rho, *angle, *sign],
            },
            Kind::KappaOde { law, .. } => match *law {
                KappaLaw::Elastica { lambda } => vec![lambda],
                KappaLaw::CmcRadial { rho, lambda, mu } => vec![rho, lambda, mu],
            },
            Kind::Affine { mul, add, mirror, .. } => {
                vec![mul.re, mul.im, add.re, add.im, if *mirror { 1.0 } else { 0.0 }]
            }
        }
    }

    /// True when values come from numerical integration rather than a
    /// closed form.
    pub fn is_ode_backed(&self) -> bool {
        match &self.kind {
            Kind::Frenet { .. } | Kind::KappaOde { .. } => true,
            Kind::Affine { base, .. } => base.is_ode_backed(),
            Kind::Cornu { .. } => false,
            _ => false,
        }
    }

    /// Length multiplier λ when the curve (possibly after a similarity) is an
    /// elastica.
    pub fn elastica_lambda(&self) -> Option<f64> {
        match &self.kind {
            Kind::KappaOde {
                law: KappaLaw::Elastica { lambda },
                ..
            } => Some(*lambda),
            Kind::Affine { base, mul, .. } => base.elastica_lambda().map(|l| l / mul.norm_sqr()),
            _ => None,
        }
    }

    /// `(ρ, λ, μ)` of a constant-|H| radial curve.
    pub fn cmc_parameters(&self) -> Option<(f64, f64, f64)> {
        match &self.kind {
            Kind::KappaOde {
                law: KappaLaw::CmcRadial { rho, lambda, mu },
                ..
            } => Some((*rho, *lambda, *mu)),
            _ => None,
        }
    }

    /// `(ρ, φ, sign)` of a translating-soliton generator.
    pub fn translating_parameters(&self) -> Option<(f64, f64, f64)> {
        match &self.kind {
            Kind::Frenet {
                law: CurvatureLaw::Translating { rho, angle, sign },
                ..
            } => Some((*rho, *angle, *sign)),
            _ => None,
        }
    }

    fn check_domain(&self, t: f64) -> Result<()> {
        let (lo, hi) = self.domain;
        let slack = 1e-9 * (1.0 + t.abs());
        if !t.is_finite() || t < lo - slack || t > hi + slack {
            return Err(Error::OutOfDomain { t, lo, hi });
        }
        Ok(())
    }

    /// Jet at parameter `t`.
    pub fn eval(&self, t: f64) -> Result<CurveJet> {
        self.check_domain(t)?;
        Ok(match &self.kind {
            Kind::Line { origin, dir } => CurveJet::from_derivatives(*origin + *dir * t, *dir, Cplx::default(), Cplx::default()),
            Kind::Circle {
                center,
                radius,
                rate,
                phase,
            } => {
                let e = Cplx::from_polar(*radius, phase + rate * t);
                let ir = I * rate;
                CurveJet::from_derivatives(*center + e, ir * e, ir * ir * e, ir * ir * ir * e)
            }
            Kind::Cornu { a, offset } => {
                let d1 = Cplx::from_polar(1.0, 0.5 * a * t * t);
                CurveJet {
                    pos: *offset + fresnel_path(*a, t),
                    d1,
                    d2: I * a * t * d1,
                    speed: 1.0,
                    kappa: a * t,
                    dkappa: *a,
                }
            }
            Kind::Gerono => {
                let (s, c) = t.sin_cos();
                let (s2, c2) = (2.0 * t).sin_cos();
                CurveJet::from_derivatives(
                    Cplx::new(1.0 + 2.0 * c, s2),
                    Cplx::new(-2.0 * s, 2.0 * c2),
                    Cplx::new(-2.0 * c, -4.0 * s2),
                    Cplx::new(2.0 * s, -8.0 * c2),
                )
            }
            Kind::Lissajous => {
                let (s, c) = t.sin_cos();
                let (s2, c2) = (2.0 * t).sin_cos();
                CurveJet::from_derivatives(
                    Cplx::new(s, s2),
                    Cplx::new(c, 2.0 * c2),
                    Cplx::new(-s, -4.0 * s2),
                    Cplx::new(-c, -8.0 * c2),
                )
            }
            Kind::Lemniscate => {
                let (r, dr) = specfun::sn_imag_unit_jet(t);
                let e = Cplx::from_polar(1.0, specfun::lemniscate_angle(t));
                let r2 = r * r;
                CurveJet::from_derivatives(
                    r * e,
                    Cplx::new(dr, r2) * e,
                    3.0 * Cplx::new(-r2 * r, r * dr) * e,
                    3.0 * Cplx::new(-4.0 * r2 * dr, dr * dr - 3.0 * r2 * r2) * e,
                )
            }
            Kind::Frenet { table, law } => {
                let y = table.state(t);
                let pos = Cplx::new(y[0], y[1]);
                let k = law.kappa(t, pos, y[2]);
                CurveJet::frenet(pos, y[2], k, law.dkappa(t, pos, y[2], k))
            }
            Kind::KappaOde { table, .. } => {
                let y = table.state(t);
                CurveJet::frenet(Cplx::new(y[0], y[1]), y[2], y[3], y[4])
            }
            Kind::Affine { base, mul, add, mirror } => {
                let b = base.eval(t)?;
                let f = |z: Cplx| if *mirror { z.conj() } else { z };
                let sign = if *mirror { -1.0 } else { 1.0 };
                let m = mul.norm();
                CurveJet {
                    pos: *mul * f(b.pos) + *add,
                    d1: *mul * f(b.d1),
                    d2: *mul * f(b.d2),
                    speed: m * b.speed,
                    kappa: sign * b.kappa / m,
                    dkappa: sign * b.dkappa / m,
                }
            }
        })
    }

    /// Position only.
    pub fn position(&self, t: f64) -> Result<PlanePoint> {
        Ok(self.eval(t)?.pos)
    }

    /// Tangent angle `arg α′` along the curve (principal value).
    pub fn tangent_angle(&self, t: f64) -> Result<f64> {
        Ok(self.eval(t)?.d1.arg())
    }

    /// Parameter window used for sampling: one period for periodic curves,
    /// otherwise the domain.
    fn sample_window(&self, period: f64) -> (f64, f64) {
        let (lo, hi) = self.domain;
        if lo.is_finite() && hi.is_finite() {
            (lo, hi)
        } else if lo.is_finite() {
            (lo, lo + 2.0 * period)
        } else if hi.is_finite() {
            (hi - 2.0 * period, hi)
        } else {
            (0.0, 2.0 * period)
        }
    }

    fn max_gap(&self, lo: f64, hi: f64, period: f64, n: usize) -> Result<f64> {
        let mut gap = 0.0f64;
        for k in 0..n {
            let t = lo + (hi - lo) * k as f64 / (n - 1).max(1) as f64;
            gap = gap.max((self.position(t + period)? - self.position(t)?).norm());
        }
        Ok(gap)
    }

    /// A finite parameter window: one period or the domain.
    pub fn natural_window(&self) -> Result<(f64, f64)> {
        if let Some(p) = self.period {
            let lo = if self.domain.0.is_finite() { self.domain.0 } else { 0.0 };
            return Ok((lo, lo + p));
        }
        let (lo, hi) = self.domain;
        if lo.is_finite() && hi.is_finite() {
            Ok((lo, hi))
        } else {
            Err(Error::Invalid(format!(
                "{} curve has neither a period nor a finite domain",
                self.kind_name()
            )))
        }
    }

    /// Cumulative arclength over `[lo, hi]`.
    pub fn arclength(&self, lo: f64, hi: f64) -> Result<QuadTable> {
        let n = panels_for(lo, hi);
        specfun::cumulative_integral(|t| Ok(self.eval(t)?.speed), lo, hi, n)
    }

    /// Prefix table of `⟨α′, Jα⟩` over `[lo, hi]`.
    pub fn areal_table(&self, lo: f64, hi: f64) -> Result<QuadTable> {
        let n = panels_for(lo, hi);
        specfun::cumulative_integral(|t| Ok(self.eval(t)?.areal_rate()), lo, hi, n)
    }

    /// Period, closure integral and position gap of a periodic curve.
    pub fn closure_report(&self) -> Result<ClosureReport> {
        let period = self.period.ok_or(Error::MissingPeriod)?;
        let (lo, _) = self.natural_window()?;
        let closure_integral = self.areal_table(lo, lo + period)?.total();
        let (wlo, whi) = self.sample_window(period);
        let position_gap = self.max_gap(wlo, (whi - period).max(wlo), period, 64)?;
        Ok(ClosureReport {
            period,
            closure_integral,
            position_gap,
        })
    }

    /// Smallest speed over `n` uniform samples of `[lo, hi]`.
    pub fn min_speed(&self, lo: f64, hi: f64, n: usize) -> Result<f64> {
        let mut m = f64::INFINITY;
        for k in 0..n {
            let t = lo + (hi - lo) * k as f64 / (n - 1).max(1) as f64;
            m = m.min(self.eval(t)?.speed);
        }
        Ok(m)
    }

    /// Checks `min speed > REGULARITY_MARGIN` over the natural window.
    pub fn check_regular(&self) -> Result<()> {
        let (lo, hi) = self.natural_window()?;
        let m = self.min_speed(lo, hi, 2001)?;
        if m > REGULARITY_MARGIN {
            Ok(())
        } else {
            Err(Error::Invalid(format!(
                "{} curve is not regular: speed {m:e} on [{lo}, {hi}]",
                self.kind_name()
            )))
        }
    }

    /// Smallest `|α|` over the natural window: a sampled minimum refined by
    /// golden-section search around the best sample.
    pub fn origin_distance(&self) -> Result<f64> {
        let (lo, hi) = self.natural_window()?;
        let n = 4001;
        let h = (hi - lo) / (n - 1) as f64;
        let mut best = (f64::INFINITY, lo);
        for k in 0..n {
            let t = lo + h * k as f64;
            let r = self.position(t)?.norm();
            if r < best.0 {
                best = (r, t);
            }
        }
        let (mut a, mut b) = ((best.1 - h).max(lo), (best.1 + h).min(hi));
        let g = 0.5 * (5f64.sqrt() - 1.0);
        for _ in 0..80 {
            let x1 = b - g * (b - a);
            let x2 = a + g * (b - a);
            if self.position(x1)?.norm() < self.position(x2)?.norm() {
                b = x2;
            } else {
                a = x1;
            }
        }
        Ok(best.0.min(self.position(0.5 * (a + b))?.norm()))
    }

    /// Whether the curve meets the origin, where the construction can branch.
    pub fn passes_through_origin(&self) -> Result<bool> {
        Ok(self.origin_distance()? < 1e-9)
    }
}

fn start_in(span: (f64, f64)) -> f64 {
    0.0f64.clamp(span.0.min(span.1), span.1.max(span.0))
}

fn panels_for(lo: f64, hi: f64) -> usize {
    (((hi - lo).abs() / PANEL_WIDTH).ceil() as usize).max(4)
}

/// `∫₀^t e^{i a x²/2} dx` by composite Gauss–Legendre, with panels short
/// enough that the phase advances by less than one radian per panel.
fn fresnel_path(a: f64, t: f64) -> Cplx {
    if t == 0.0 {
        return Cplx::default();
    }
    let n = ((t.abs() * (1.0 + 0.5 * a.abs() * t.abs())).ceil() as usize).max(1);
    let re = specfun::integrate(|x| Ok((0.5 * a * x * x).cos()), 0.0, t, n).unwrap_or(f64::NAN);
    let im = specfun::integrate(|x| Ok((0.5 * a * x * x).sin()), 0.0, t, n).unwrap_or(f64::NAN);
    Cplx::new(re, im)
}
