//! Residual-based certification of the special families, the Willmore
//! functional and finite-difference oracles for the closed-form geometry.

mod checks;
pub mod explicit;
mod oracle;

pub use checks::*;
pub use oracle::*;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::star::{jet_from, Fiber, StarSurface, SurfaceJet};

/// Threshold for surfaces built from closed-form curves.
pub const CLOSED_FORM_TOL: f64 = 1e-10;
/// Threshold when a generating curve comes from ODE integration.
pub const ODE_TOL: f64 = 1e-8;
/// Threshold for finite-difference oracle comparisons.
pub const FD_TOL: f64 = 1e-6;
/// Default oracle step.
pub const FD_STEP: f64 = 1e-4;

/// Uniform parameter grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub nt: usize,
    pub ns: usize,
    pub t_range: (f64, f64),
    pub s_range: (f64, f64),
}

impl Grid {
    pub const DEFAULT_N: usize = 101;

    pub fn new(nt: usize, ns: usize, t_range: (f64, f64), s_range: (f64, f64)) -> Result<Self> {
        if nt < 2 || ns < 2 {
            return Err(Error::Invalid(format!("grid needs at least 2×2 nodes, got {nt}×{ns}")));
        }
        for (name, (a, b)) in [("t", t_range), ("s", s_range)] {
            if !(a.is_finite() && b.is_finite() && a < b) {
                return Err(Error::Invalid(format!("empty or non-finite {name} range [{a}, {b}]")));
            }
        }
        Ok(Self { nt, ns, t_range, s_range })
    }

    /// Default 101×101 grid over the curves' natural windows.
    pub fn default_for(surf: &StarSurface) -> Result<Self> {
        Self::new(
            Self::DEFAULT_N,
            Self::DEFAULT_N,
            surf.alpha().natural_window()?,
            surf.omega().natural_window()?,
        )
    }

    pub fn t_values(&self) -> Vec<f64> {
        linspace(self.t_range, self.nt)
    }

    pub fn s_values(&self) -> Vec<f64> {
        linspace(self.s_range, self.ns)
    }

    pub fn len(&self) -> usize {
        self.nt * self.ns
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

pub(crate) fn linspace((a, b): (f64, f64), n: usize) -> Vec<f64> {
    (0..n)
        .map(|k| if k + 1 == n { b } else { a + (b - a) * k as f64 / (n - 1) as f64 })
        .collect()
}

/// Singular mask over a grid: `(i, j)` is masked when some node within one
/// cell has `α(t) = 0 = ω(s)`.
pub fn singular_mask(fibers_t: &[Fiber], fibers_s: &[Fiber]) -> Vec<bool> {
    use crate::star::SINGULAR_EPS;
    let (nt, ns) = (fibers_t.len(), fibers_s.len());
    let zt: Vec<bool> = fibers_t.iter().map(|f| f.jet.pos.norm() < SINGULAR_EPS).collect();
    let zs: Vec<bool> = fibers_s.iter().map(|f| f.jet.pos.norm() < SINGULAR_EPS).collect();
    let near = |z: &[bool], i: usize| {
        let lo = i.saturating_sub(1);
        let hi = (i + 1).min(z.len() - 1);
        z[lo..=hi].iter().any(|&b| b)
    };
    let mut mask = vec![false; nt * ns];
    for i in 0..nt {
        if !near(&zt, i) {
            continue;
        }
        for j in 0..ns {
            // the singular set is a product, so dilation factorizes
            mask[i * ns + j] = near(&zs, j);
        }
    }
    mask
}

/// Jets of a surface over a grid, with the singular mask applied.
#[derive(Debug, Clone)]
pub struct Sweep {
    pub grid: Grid,
    pub fibers_t: Vec<Fiber>,
    pub fibers_s: Vec<Fiber>,
    pub mask: Vec<bool>,
    jets: Vec<Option<SurfaceJet>>,
}

impl Sweep {
    pub fn new(surf: &StarSurface, grid: Grid) -> Result<Self> {
        let fibers_t = grid.t_values().into_iter().map(|t| surf.fiber_t(t)).collect::<Result<Vec<_>>>()?;
        let fibers_s = grid.s_values().into_iter().map(|s| surf.fiber_s(s)).collect::<Result<Vec<_>>>()?;
        let mask = singular_mask(&fibers_t, &fibers_s);
        let mut jets = Vec::with_capacity(grid.len());
        for (i, ft) in fibers_t.iter().enumerate() {
            for (j, fs) in fibers_s.iter().enumerate() {
                if mask[i * grid.ns + j] {
                    jets.push(None);
                    continue;
                }
                let jet = jet_from(ft, fs)?;
                if !(jet.phi.is_finite() && jet.h.is_finite() && jet.conf.is_finite()) {
                    return Err(Error::Invalid(format!(
                        "non-finite geometry at (t, s) = ({}, {})",
                        ft.param, fs.param
                    )));
                }
                jets.push(Some(jet));
            }
        }
        if jets.iter().all(Option::is_none) {
            return Err(Error::Invalid("every grid node is singular".into()));
        }
        Ok(Self {
            grid,
            fibers_t,
            fibers_s,
            mask,
            jets,
        })
    }

    /// Unmasked jets in row-major order.
    pub fn jets(&self) -> impl Iterator<Item = &SurfaceJet> {
        self.jets.iter().flatten()
    }

    pub fn jet(&self, i: usize, j: usize) -> Option<&SurfaceJet> {
        self.jets[i * self.grid.ns + j].as_ref()
    }

    pub fn masked_count(&self) -> usize {
        self.mask.iter().filter(|&&m| m).count()
    }

    fn max_over<F: Fn(&SurfaceJet) -> f64>(&self, f: F) -> f64 {
        self.jets().map(f).fold(0.0, f64::max)
    }
}

/// One family check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilyRecord {
    pub name: String,
    #[serde(with = "float_repr")]
    pub residual: f64,
    #[serde(with = "float_repr")]
    pub threshold: f64,
    pub pass: bool,
    #[serde(default)]
    pub details: Map<String, Value>,
}

impl FamilyRecord {
    pub fn new(name: &str, residual: f64, threshold: f64) -> Self {
        Self {
            name: name.to_string(),
            residual,
            threshold,
            pass: residual < threshold,
            details: Map::new(),
        }
    }

    pub fn with(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.details.insert(key.to_string(), value.into());
        self
    }
}

/// JSON numbers for finite values, `"inf"`, `"-inf"` or `"nan"` otherwise.
mod float_repr {
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
        if x.is_finite() {
            s.serialize_f64(*x)
        } else if x.is_nan() {
            s.serialize_str("nan")
        } else if *x > 0.0 {
            s.serialize_str("inf")
        } else {
            s.serialize_str("-inf")
        }
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Num(f64),
        Text(String),
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Num(x) => Ok(x),
            Repr::Text(t) => match t.as_str() {
                "inf" => Ok(f64::INFINITY),
                "-inf" => Ok(f64::NEG_INFINITY),
                "nan" => Ok(f64::NAN),
                other => Err(de::Error::custom(format!("expected a number, got `{other}`"))),
            },
        }
    }
}

/// Aggregated classification of one surface.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassReport {
    pub surface: String,
    pub grid: Grid,
    #[serde(default)]
    pub params: Value,
    pub records: Vec<FamilyRecord>,
}

impl ClassReport {
    pub fn all_pass(&self) -> bool {
        self.records.iter().all(|r| r.pass)
    }

    pub fn get(&self, name: &str) -> Option<&FamilyRecord> {
        self.records.iter().find(|r| r.name == name)
    }
}

/// Families that [`classify`] knows how to check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Lagrangian,
    Special,
    Holomorphic,
    Pmc,
    Hsl,
    Cmc,
    Shrinker,
    Expander,
    Translating,
    Willmore,
    Elastica,
    Torus,
}

impl Family {
    pub const ALL: [Family; 12] = [
        Family::Lagrangian,
        Family::Special,
        Family::Holomorphic,
        Family::Pmc,
        Family::Hsl,
        Family::Cmc,
        Family::Shrinker,
        Family::Expander,
        Family::Translating,
        Family::Willmore,
        Family::Elastica,
        Family::Torus,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Lagrangian => "lagrangian",
            Family::Special => "special",
            Family::Holomorphic => "holomorphic",
            Family::Pmc => "pmc",
            Family::Hsl => "hsl",
            Family::Cmc => "cmc",
            Family::Shrinker => "shrinker",
            Family::Expander => "expander",
            Family::Translating => "translating",
            Family::Willmore => "willmore",
            Family::Elastica => "elastica",
            Family::Torus => "torus",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .iter()
            .copied()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown family `{s}`")))
    }
}

/// Parameters some checks need beyond the surface itself.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct CheckParams {
    /// Translating vector `(ρe^{iθ}, 0)`.
    pub translating_rho: f64,
    pub translating_theta: f64,
    /// Line offsets `α = t + ia`, `ω = s + ib` for the holomorphic map.
    pub special_a: f64,
    pub special_b: f64,
}

impl Default for CheckParams {
    fn default() -> Self {
        Self {
            translating_rho: 1.0,
            translating_theta: 0.0,
            special_a: 1.0,
            special_b: 0.0,
        }
    }
}

/// Base threshold for a surface: looser when a curve is ODE-backed.
pub fn surface_tolerance(surf: &StarSurface) -> f64 {
    if surf.alpha().is_ode_backed() || surf.omega().is_ode_backed() {
        ODE_TOL
    } else {
        CLOSED_FORM_TOL
    }
}

/// Runs the requested checks and assembles a report.
pub fn classify(
    name: &str,
    surf: &StarSurface,
    grid: Grid,
    families: &[Family],
    params: &CheckParams,
) -> Result<ClassReport> {
    let sweep = Sweep::new(surf, grid)?;
    let tol = surface_tolerance(surf);
    let mut records = Vec::with_capacity(families.len());
    for &fam in families {
        let rec = match fam {
            Family::Lagrangian => FamilyRecord::new("lagrangian", check_lagrangian(&sweep), tol)
                .with("masked", sweep.masked_count()),
            Family::Special => {
                let r = check_special(&sweep);
                FamilyRecord::new("special", r.curvature.max(r.h_max), tol)
                    .with("curvature", r.curvature)
                    .with("h_max", r.h_max)
            }
            Family::Holomorphic => {
                let r = holomorphic_correspondence(params.special_a, params.special_b, grid)?;
                FamilyRecord::new("holomorphic", r.residual, 10.0 * tol)
                    .with("c_re", r.c.re)
                    .with("c_im", r.c.im)
            }
            Family::Pmc => FamilyRecord::new("pmc", check_pmc(&sweep), tol),
            Family::Hsl => {
                let r = check_hsl(surf, &sweep)?;
                let mut rec = FamilyRecord::new("hsl", r.residual, tol);
                if let Some((a, b, c)) = r.fit {
                    rec = rec.with("a", a).with("b", b).with("c", c);
                }
                rec
            }
            Family::Cmc => {
                let r = check_cmc(&sweep);
                FamilyRecord::new("cmc", r.residual, tol)
                    .with("rho", r.rho)
                    .with("lambda_alpha", r.lambda_alpha)
                    .with("lambda_omega", r.lambda_omega)
                    .with("lambda_spread", r.lambda_spread)
            }
            Family::Shrinker | Family::Expander => {
                let sign = if fam == Family::Shrinker { -1.0 } else { 1.0 };
                let r = check_self_similar(&sweep, sign);
                FamilyRecord::new(fam.name(), r.residual, tol).with("necessary", r.necessary)
            }
            Family::Translating => {
                let r = check_translating(&sweep, params.translating_rho, params.translating_theta);
                FamilyRecord::new("translating", r.curve.max(r.surface), tol)
                    .with("curve", r.curve)
                    .with("surface", r.surface)
                    .with("rho", params.translating_rho)
                    .with("theta", params.translating_theta)
            }
            Family::Willmore => {
                let w = willmore_energy(surf)?;
                let rel = (w.factored - w.direct).abs() / w.factored.abs().max(1.0);
                FamilyRecord::new("willmore", rel, ODE_TOL)
                    .with("factored", w.factored)
                    .with("direct", w.direct)
            }
            Family::Elastica => {
                let r = [surf.alpha(), surf.omega()]
                    .into_iter()
                    .map(check_elastica)
                    .collect::<Result<Vec<_>>>();
                match r {
                    Ok(v) => FamilyRecord::new("elastica", v[0].max(v[1]), 1e-7)
                        .with("alpha", v[0])
                        .with("omega", v[1]),
                    Err(e) => FamilyRecord::new("elastica", f64::INFINITY, 1e-7).with("error", e.to_string()),
                }
            }
            Family::Torus => match check_torus(surf, &sweep) {
                Ok(r) => FamilyRecord::new("torus", r.gap.max(r.closure_t.abs()).max(r.closure_s.abs()), ODE_TOL)
                    .with("gap", r.gap)
                    .with("closure_t", r.closure_t)
                    .with("closure_s", r.closure_s),
                Err(e) => FamilyRecord::new("torus", f64::INFINITY, ODE_TOL).with("error", e.to_string()),
            },
        };
        records.push(rec);
    }
    Ok(ClassReport {
        surface: name.to_string(),
        grid,
        params: serde_json::to_value(params).unwrap_or(Value::Null),
        records,
    })
}

#[cfg(test)]
mod tests;
