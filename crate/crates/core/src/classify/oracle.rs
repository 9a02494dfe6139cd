//! Finite-difference oracles. Second derivatives come from central
//! differences of the analytic tangents; the normal projection uses the
//! general inverse metric, so neither the closed forms nor the orthogonality
//! of the parametrization are assumed.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::geom::{euclid, herm, jrot2, C2};
use crate::star::{StarSurface, SurfaceJet, C_SIGN};

use super::{linspace, Grid, Sweep};

fn wrap(x: f64) -> f64 {
    let y = (x + PI).rem_euclid(TAU) - PI;
    if y <= -PI {
        y + TAU
    } else {
        y
    }
}

struct Metric {
    e: f64,
    f: f64,
    g: f64,
}

impl Metric {
    fn of(j: &SurfaceJet) -> Self {
        Self {
            e: euclid(j.phi_t, j.phi_t),
            f: euclid(j.phi_t, j.phi_s),
            g: euclid(j.phi_s, j.phi_s),
        }
    }

    fn inverse(&self) -> (f64, f64, f64) {
        let det = self.e * self.g - self.f * self.f;
        (self.g / det, -self.f / det, self.e / det)
    }
}

fn normal_component(j: &SurfaceJet, m: &Metric, v: C2) -> C2 {
    let (itt, its, iss) = m.inverse();
    let (pt, ps) = (euclid(v, j.phi_t), euclid(v, j.phi_s));
    let ct = itt * pt + its * ps;
    let cs = its * pt + iss * ps;
    v - j.phi_t * ct - j.phi_s * cs
}

struct Seconds {
    tt: C2,
    ts: C2,
    ss: C2,
}

fn fd_seconds(surf: &StarSurface, t: f64, s: f64, h: f64) -> Result<Seconds> {
    let tp = surf.jet(t + h, s)?;
    let tm = surf.jet(t - h, s)?;
    let sp = surf.jet(t, s + h)?;
    let sm = surf.jet(t, s - h)?;
    let d = 2.0 * h;
    Ok(Seconds {
        tt: (tp.phi_t - tm.phi_t) / d,
        ts: (sp.phi_t - sm.phi_t) / d,
        ss: (sp.phi_s - sm.phi_s) / d,
    })
}

/// `[C_ttt, C_tts, C_tss, C_sss]` from differenced tangents.
pub fn fd_oracle_c(surf: &StarSurface, t: f64, s: f64, h: f64) -> Result<[f64; 4]> {
    let j = surf.jet(t, s)?;
    let d = fd_seconds(surf, t, s, h)?;
    let c = |a: C2, b: C2| C_SIGN * herm(a, b).im;
    Ok([c(d.tt, j.phi_t), c(d.tt, j.phi_s), c(d.ss, j.phi_t), c(d.ss, j.phi_s)])
}

/// Mean curvature as the metric trace of the normal part of the
/// differenced second derivatives.
pub fn fd_oracle_h(surf: &StarSurface, t: f64, s: f64, h: f64) -> Result<C2> {
    let j = surf.jet(t, s)?;
    let m = Metric::of(&j);
    let d = fd_seconds(surf, t, s, h)?;
    let (itt, its, iss) = m.inverse();
    Ok(normal_component(&j, &m, d.tt) * itt
        + normal_component(&j, &m, d.ts) * (2.0 * its)
        + normal_component(&j, &m, d.ss) * iss)
}

/// `J∇β` with the gradient of the Lagrangian angle from central differences.
pub fn fd_oracle_grad_beta(surf: &StarSurface, t: f64, s: f64, h: f64) -> Result<C2> {
    let j = surf.jet(t, s)?;
    let m = Metric::of(&j);
    let bt = wrap(surf.jet(t + h, s)?.beta - surf.jet(t - h, s)?.beta) / (2.0 * h);
    let bs = wrap(surf.jet(t, s + h)?.beta - surf.jet(t, s - h)?.beta) / (2.0 * h);
    let (itt, its, iss) = m.inverse();
    let grad = j.phi_t * (itt * bt + its * bs) + j.phi_s * (its * bt + iss * bs);
    Ok(jrot2(grad))
}

/// `Δβ` in flux form for the orthogonal metric `E dt² + G ds²`:
/// `(1/√(EG)) [∂_t(√(G/E) β_t) + ∂_s(√(E/G) β_s)]`.
pub fn fd_oracle_laplace_beta(surf: &StarSurface, t: f64, s: f64, h: f64) -> Result<f64> {
    let c = surf.jet(t, s)?;
    let beta = |tt: f64, ss: f64| -> Result<f64> { Ok(wrap(surf.jet(tt, ss)?.beta - c.beta)) };
    let ratio = |tt: f64, ss: f64| -> Result<f64> {
        let m = Metric::of(&surf.jet(tt, ss)?);
        Ok((m.g / m.e).sqrt())
    };
    let hh = 0.5 * h;
    let flux_t = ratio(t + hh, s)? * beta(t + h, s)? / h - ratio(t - hh, s)? * (-beta(t - h, s)?) / h;
    let flux_s = beta(t, s + h)? / (h * ratio(t, s + hh)?) - (-beta(t, s - h)?) / (h * ratio(t, s - hh)?);
    let m = Metric::of(&c);
    Ok((flux_t + flux_s) / (h * (m.e * m.g).sqrt()))
}

/// `Δβ = (κ_α′/|α′| + κ̇_ω/|ω̇|) / (|α|² + |ω|²)` from the curve jets.
pub fn analytic_laplace_beta(j: &SurfaceJet) -> f64 {
    (j.alpha.dkappa / j.alpha.speed + j.omega.dkappa / j.omega.speed) / j.conf
}

/// Relative error with a unit floor in the denominator.
pub fn rel_err(approx: f64, exact: f64) -> f64 {
    (approx - exact).abs() / exact.abs().max(1.0)
}

fn rel_err_c2(approx: C2, exact: C2) -> f64 {
    (approx - exact).norm() / exact.norm().max(1.0)
}

/// Largest oracle discrepancies over a sample of grid nodes.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct OracleSummary {
    pub samples: usize,
    pub c_rel: f64,
    pub h_rel: f64,
    pub grad_beta_rel: f64,
    pub laplace_beta_rel: f64,
}

impl OracleSummary {
    pub fn max(&self) -> f64 {
        self.c_rel.max(self.h_rel).max(self.grad_beta_rel).max(self.laplace_beta_rel)
    }
}

/// Compares every oracle with the closed forms on a `per_axis × per_axis`
/// subsample of the grid's interior, skipping nodes whose stencil reaches
/// the singular mask.
pub fn verify_oracles(surf: &StarSurface, grid: Grid, per_axis: usize, h: f64) -> Result<OracleSummary> {
    let sweep = Sweep::new(surf, grid)?;
    let pick = |n: usize| -> Vec<usize> {
        let k = per_axis.min(n.saturating_sub(2)).max(1);
        linspace((1.0, (n - 2) as f64), k)
            .into_iter()
            .map(|x| x.round() as usize)
            .collect()
    };
    let (rows, cols) = (pick(grid.nt), pick(grid.ns));
    let mut out = OracleSummary::default();
    for &i in &rows {
        for &k in &cols {
            let near_mask = (i - 1..=i + 1).any(|a| (k - 1..=k + 1).any(|b| sweep.mask[a * grid.ns + b]));
            let Some(j) = sweep.jet(i, k) else { continue };
            if near_mask {
                continue;
            }
            accumulate(&mut out, surf, j, h)?;
        }
    }
    Ok(out)
}

fn accumulate(out: &mut OracleSummary, surf: &StarSurface, j: &SurfaceJet, h: f64) -> Result<()> {
    let (t, s) = (j.t, j.s);
    let c = fd_oracle_c(surf, t, s, h)?;
    let an = [j.c_ttt, j.c_tts, j.c_tss, j.c_sss];
    for q in 0..4 {
        out.c_rel = out.c_rel.max(rel_err(c[q], an[q]));
    }
    out.h_rel = out.h_rel.max(rel_err_c2(fd_oracle_h(surf, t, s, h)?, j.h));
    out.grad_beta_rel = out.grad_beta_rel.max(rel_err_c2(fd_oracle_grad_beta(surf, t, s, h)?, j.h));
    out.laplace_beta_rel = out
        .laplace_beta_rel
        .max(rel_err(fd_oracle_laplace_beta(surf, t, s, h)?, analytic_laplace_beta(j)));
    out.samples += 1;
    Ok(())
}

/// Same comparison at explicit parameter points, skipping those with
/// `|α(t)| + |ω(s)| < min_dist`.
pub fn verify_oracles_at(surf: &StarSurface, points: &[(f64, f64)], h: f64, min_dist: f64) -> Result<OracleSummary> {
    let mut out = OracleSummary::default();
    for &(t, s) in points {
        let near = surf.alpha().position(t)?.norm() + surf.omega().position(s)?.norm();
        if near < min_dist {
            continue;
        }
        let j = surf.jet(t, s)?;
        accumulate(&mut out, surf, &j, h)?;
    }
    Ok(out)
}

/// Ratio `err(h) / err(h/2)` of the H oracle against the closed form; close
/// to 4 for a second-order stencil.
pub fn convergence_ratio(surf: &StarSurface, t: f64, s: f64, h: f64) -> Result<f64> {
    let exact = surf.jet(t, s)?.h;
    let e1 = (fd_oracle_h(surf, t, s, h)? - exact).norm();
    let e2 = (fd_oracle_h(surf, t, s, 0.5 * h)? - exact).norm();
    Ok(e1 / e2)
}
