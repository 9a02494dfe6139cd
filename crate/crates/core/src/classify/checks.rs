use crate::curves::{CurveJet, PlanarCurve};
use crate::error::{Error, Result};
use crate::geom::{bracket_j, dot, Cplx, C2};
use crate::specfun::{self, gauss_legendre};
use crate::star::{jet_from, position_from, StarSurface};

use super::{linspace, Grid, Sweep};

/// `max |herm(Φ_t, Φ_s)| / (|Φ_t||Φ_s|)` over the unmasked grid.
pub fn check_lagrangian(sweep: &Sweep) -> f64 {
    sweep.max_over(|j| j.lagrangian_residual())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpecialResult {
    /// `max |κ_α|, |κ_ω|` over the grid's parameter values.
    pub curvature: f64,
    /// `max |H|` over the grid.
    pub h_max: f64,
}

pub fn check_special(sweep: &Sweep) -> SpecialResult {
    let curvature = sweep
        .fibers_t
        .iter()
        .chain(&sweep.fibers_s)
        .map(|f| f.jet.kappa.abs())
        .fold(0.0, f64::max);
    SpecialResult {
        curvature,
        h_max: sweep.max_over(|j| j.h.norm()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HolomorphicResult {
    pub residual: f64,
    pub c: Cplx,
}

/// `c = −(a − ib)² / (2(a² + b²)²)`.
pub fn holomorphic_coefficient(a: f64, b: f64) -> Cplx {
    let z = Cplx::new(a, -b);
    -(z * z) / (2.0 * (a * a + b * b).powi(2))
}

/// `(x1 + iy1, x2 + iy2) ↦ (y1 + iy2, x1 − ix2)`.
pub fn holomorphic_map(p: C2) -> C2 {
    C2::new(Cplx::new(p.z1.im, p.z2.im), Cplx::new(p.z1.re, -p.z2.re))
}

/// Lines surface `α = t + ia`, `ω = s + ib` over `grid`.
pub fn special_surface(a: f64, b: f64, grid: &Grid) -> Result<StarSurface> {
    let t = (grid.t_range.0.min(0.0), grid.t_range.1.max(0.0));
    let s = (grid.s_range.0.min(0.0), grid.s_range.1.max(0.0));
    let al = PlanarCurve::line(a).with_domain(t.0 - 1.0, t.1 + 1.0)?;
    let om = PlanarCurve::line(b).with_domain(s.0 - 1.0, s.1 + 1.0)?;
    StarSurface::build(al, om, 0.0, 0.0)
}

/// Image of the special Lagrangian `(t + ia)∗(s + ib)`, translated so that
/// `(0, 0)` maps to the origin, under [`holomorphic_map`], compared with the
/// graph `w2 = c·w1²`.
pub fn holomorphic_correspondence(a: f64, b: f64, grid: Grid) -> Result<HolomorphicResult> {
    if a == 0.0 && b == 0.0 {
        return Err(Error::Invalid("holomorphic correspondence needs (a, b) ≠ (0, 0)".into()));
    }
    let surf = special_surface(a, b, &grid)?;
    let c = holomorphic_coefficient(a, b);
    let origin = surf.position(0.0, 0.0)?;
    let mut residual = 0.0f64;
    for t in grid.t_values() {
        for s in grid.s_values() {
            let w = holomorphic_map(surf.position(t, s)? - origin);
            residual = residual.max((w.z2 - c * w.z1 * w.z1).norm());
        }
    }
    Ok(HolomorphicResult { residual, c })
}

fn u_rates(a: &CurveJet, w: &CurveJet) -> (f64, f64) {
    let conf = a.pos.norm_sqr() + w.pos.norm_sqr();
    (dot(a.pos, a.d1) / (a.speed * conf), dot(w.pos, w.d1) / (w.speed * conf))
}

/// Parallel mean curvature system in arclength, `u = ½ log(|α|² + |ω|²)`:
/// max of the three residuals over the grid.
pub fn check_pmc(sweep: &Sweep) -> f64 {
    sweep.max_over(|j| {
        let (a, w) = (&j.alpha, &j.omega);
        let (ut, us) = u_rates(a, w);
        let dka = a.dkappa / a.speed;
        let dkw = w.dkappa / w.speed;
        let r1 = dka - ut * a.kappa + us * w.kappa;
        let r2 = ut * w.kappa + us * a.kappa;
        let r3 = dkw - us * w.kappa + ut * a.kappa;
        r1.abs().max(r2.abs()).max(r3.abs())
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HslResult {
    /// `max |κ_α′ + κ̇_ω|` in arclength.
    pub residual: f64,
    /// `(a, b, c)` with `κ_α = aσ + b`, `κ_ω = −aσ + c` (arclength measured
    /// from the start of each grid range), when the residual is small.
    pub fit: Option<(f64, f64, f64)>,
}

fn linear_fit(x: &[f64], y: &[f64]) -> (f64, f64) {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxx: f64 = x.iter().map(|v| (v - mx).powi(2)).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let slope = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    (slope, my - slope * mx)
}

pub fn check_hsl(surf: &StarSurface, sweep: &Sweep) -> Result<HslResult> {
    let da: Vec<f64> = sweep.fibers_t.iter().map(|f| f.jet.dkappa / f.jet.speed).collect();
    let dw: Vec<f64> = sweep.fibers_s.iter().map(|f| f.jet.dkappa / f.jet.speed).collect();
    let (amin, amax) = minmax(&da);
    let (wmin, wmax) = minmax(&dw);
    // separable: max |x_i + y_j| is attained at matching extremes
    let residual = (amax + wmax).abs().max((amin + wmin).abs());
    let fit = if residual < 1e-6 {
        let g = sweep.grid;
        let la = surf.alpha().arclength(g.t_range.0, g.t_range.1)?;
        let lw = surf.omega().arclength(g.s_range.0, g.s_range.1)?;
        let sa: Vec<f64> = sweep.fibers_t.iter().map(|f| la.value(f.param)).collect();
        let sw: Vec<f64> = sweep.fibers_s.iter().map(|f| lw.value(f.param)).collect();
        let ka: Vec<f64> = sweep.fibers_t.iter().map(|f| f.jet.kappa).collect();
        let kw: Vec<f64> = sweep.fibers_s.iter().map(|f| f.jet.kappa).collect();
        let (a, b) = linear_fit(&sa, &ka);
        let (_, c) = linear_fit(&sw, &kw);
        Some((a, b, c))
    } else {
        None
    };
    Ok(HslResult { residual, fit })
}

fn minmax(v: &[f64]) -> (f64, f64) {
    v.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| (lo.min(x), hi.max(x)))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CmcResult {
    /// Mean of `|H|` over the grid.
    pub rho: f64,
    /// `max ||H| − ρ|`.
    pub residual: f64,
    /// Mean of `ρ²|α|² − κ_α²`.
    pub lambda_alpha: f64,
    /// Mean of `κ_ω² − ρ²|ω|²`.
    pub lambda_omega: f64,
    /// Largest deviation of any sample of either λ estimate from their
    /// common mean.
    pub lambda_spread: f64,
}

pub fn check_cmc(sweep: &Sweep) -> CmcResult {
    let hs: Vec<f64> = sweep.jets().map(|j| j.h.norm()).collect();
    let rho = hs.iter().sum::<f64>() / hs.len() as f64;
    let residual = hs.iter().map(|h| (h - rho).abs()).fold(0.0, f64::max);
    let r2 = rho * rho;
    let la: Vec<f64> = sweep
        .fibers_t
        .iter()
        .map(|f| r2 * f.jet.pos.norm_sqr() - f.jet.kappa * f.jet.kappa)
        .collect();
    let lw: Vec<f64> = sweep
        .fibers_s
        .iter()
        .map(|f| f.jet.kappa * f.jet.kappa - r2 * f.jet.pos.norm_sqr())
        .collect();
    let lambda_alpha = la.iter().sum::<f64>() / la.len() as f64;
    let lambda_omega = lw.iter().sum::<f64>() / lw.len() as f64;
    let mid = 0.5 * (lambda_alpha + lambda_omega);
    let lambda_spread = la.iter().chain(&lw).map(|l| (l - mid).abs()).fold(0.0, f64::max);
    CmcResult {
        rho,
        residual,
        lambda_alpha,
        lambda_omega,
        lambda_spread,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SelfSimilarResult {
    /// `max |H − sign·Φ^⊥|`.
    pub residual: f64,
    /// `max |⟨ω, ω̇⟩⟨α, Jα′⟩ − ⟨ω̇, Jω⟩⟨α, α′⟩|`.
    pub necessary: f64,
}

pub fn check_self_similar(sweep: &Sweep, sign: f64) -> SelfSimilarResult {
    let residual = sweep.max_over(|j| (j.h - j.normal_part(j.phi) * sign).norm());
    let necessary = sweep.max_over(|j| {
        let (a, w) = (&j.alpha, &j.omega);
        (dot(w.pos, w.d1) * bracket_j(a.pos, a.d1) - bracket_j(w.d1, w.pos) * dot(a.pos, a.d1)).abs()
    });
    SelfSimilarResult { residual, necessary }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TranslatingResult {
    /// Curve-level residual of `|α′|κ_α = ρ Im(e^{−iθ}α′ᾱ)` and
    /// `|ω̇|κ_ω = −ρ Im(e^{−iθ}ω̇ω̄)`.
    pub curve: f64,
    /// `max |H − e^⊥|` with `e = (ρe^{iθ}, 0)`.
    pub surface: f64,
}

pub fn check_translating(sweep: &Sweep, rho: f64, theta: f64) -> TranslatingResult {
    let rot = Cplx::from_polar(1.0, -theta);
    let level = |j: &CurveJet, sign: f64| (j.speed * j.kappa - sign * rho * (rot * j.d1 * j.pos.conj()).im).abs();
    let curve = sweep
        .fibers_t
        .iter()
        .map(|f| level(&f.jet, 1.0))
        .chain(sweep.fibers_s.iter().map(|f| level(&f.jet, -1.0)))
        .fold(0.0, f64::max);
    let e = C2::new(Cplx::from_polar(rho, theta), Cplx::default());
    let surface = sweep.max_over(|j| (j.h - j.normal_part(e)).norm());
    TranslatingResult { curve, surface }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WillmoreResult {
    /// `L(ω)∫κ_α² dσ + L(α)∫κ_ω² dσ`.
    pub factored: f64,
    /// `∫∫ |H|² √(EG) dt ds`.
    pub direct: f64,
}

const WILLMORE_PANEL: f64 = 0.1;

fn gl_points(lo: f64, hi: f64) -> Vec<(f64, f64)> {
    let (x, w) = gauss_legendre(specfun::GL_ORDER);
    let n = (((hi - lo) / WILLMORE_PANEL).ceil() as usize).max(1);
    let h = (hi - lo) / n as f64;
    let mut out = Vec::with_capacity(n * x.len());
    for p in 0..n {
        let a = lo + h * p as f64;
        for (xi, wi) in x.iter().zip(&w) {
            out.push((a + 0.5 * h * (xi + 1.0), 0.5 * h * wi));
        }
    }
    out
}

/// Willmore energy over one period (or the finite domain) of each curve.
pub fn willmore_energy(surf: &StarSurface) -> Result<WillmoreResult> {
    let (t0, t1) = surf.alpha().natural_window()?;
    let (s0, s1) = surf.omega().natural_window()?;
    let pt = gl_points(t0, t1);
    let ps = gl_points(s0, s1);
    let ft = pt.iter().map(|&(t, _)| surf.fiber_t(t)).collect::<Result<Vec<_>>>()?;
    let fs = ps.iter().map(|&(s, _)| surf.fiber_s(s)).collect::<Result<Vec<_>>>()?;
    let sum1 = |f: &dyn Fn(&CurveJet) -> f64, pts: &[(f64, f64)], fib: &[crate::star::Fiber]| -> f64 {
        pts.iter().zip(fib).map(|(&(_, w), fb)| w * f(&fb.jet)).sum()
    };
    let len_a = sum1(&|j| j.speed, &pt, &ft);
    let len_w = sum1(&|j| j.speed, &ps, &fs);
    let ka = sum1(&|j| j.kappa * j.kappa * j.speed, &pt, &ft);
    let kw = sum1(&|j| j.kappa * j.kappa * j.speed, &ps, &fs);
    let factored = len_w * ka + len_a * kw;
    let mut direct = 0.0;
    for (&(_, wt), a) in pt.iter().zip(&ft) {
        let mut row = 0.0;
        for (&(_, ws), w) in ps.iter().zip(&fs) {
            let j = jet_from(a, w)?;
            row += ws * j.h_sqr() * (j.e * j.g).sqrt();
        }
        direct += wt * row;
    }
    Ok(WillmoreResult { factored, direct })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TorusResult {
    /// `max |Φ(t + T, s) − Φ(t, s)|, |Φ(t, s + S) − Φ(t, s)|` over the grid.
    pub gap: f64,
    /// `∫₀^T ⟨α′, Jα⟩`.
    pub closure_t: f64,
    /// `∫₀^S ⟨ω̇, Jω⟩`.
    pub closure_s: f64,
}

pub fn check_torus(surf: &StarSurface, sweep: &Sweep) -> Result<TorusResult> {
    let tp = surf.alpha().period().ok_or(Error::MissingPeriod)?;
    let sp = surf.omega().period().ok_or(Error::MissingPeriod)?;
    let closure_t = surf.alpha().closure_report()?.closure_integral;
    let closure_s = surf.omega().closure_report()?.closure_integral;
    let shifted_t = sweep
        .fibers_t
        .iter()
        .map(|f| surf.fiber_t(f.param + tp))
        .collect::<Result<Vec<_>>>()?;
    let shifted_s = sweep
        .fibers_s
        .iter()
        .map(|f| surf.fiber_s(f.param + sp))
        .collect::<Result<Vec<_>>>()?;
    let mut gap = 0.0f64;
    for (a, a2) in sweep.fibers_t.iter().zip(&shifted_t) {
        for (w, w2) in sweep.fibers_s.iter().zip(&shifted_s) {
            let p = position_from(a, w);
            gap = gap
                .max((position_from(a2, w) - p).norm())
                .max((position_from(a, w2) - p).norm());
        }
    }
    Ok(TorusResult {
        gap,
        closure_t,
        closure_s,
    })
}

/// Elastica Euler–Lagrange residual `max |2κ_σσ + κ³ − λκ|` in arclength,
/// with `κ_σσ` from central differences of the analytic `κ_σ`.
pub fn check_elastica(curve: &PlanarCurve) -> Result<f64> {
    let lambda = curve
        .elastica_lambda()
        .ok_or_else(|| Error::Invalid(format!("{} curve is not an elastica", curve.kind_name())))?;
    let (lo, hi) = curve.natural_window()?;
    let h = 1e-4;
    let ks = |t: f64| -> Result<f64> {
        let j = curve.eval(t)?;
        Ok(j.dkappa / j.speed)
    };
    let mut worst = 0.0f64;
    for t in linspace((lo + 2.0 * h, hi - 2.0 * h), 201) {
        let j = curve.eval(t)?;
        let kss = (ks(t + h)? - ks(t - h)?) / (2.0 * h) / j.speed;
        worst = worst.max((2.0 * kss + j.kappa.powi(3) - lambda * j.kappa).abs());
    }
    Ok(worst)
}
