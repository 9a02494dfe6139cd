//! Named example surfaces with their default parameters and expected
//! classification outcomes.

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, TAU};

use crate::classify::{CheckParams, Family, Grid};
use crate::error::{Error, Result};
use crate::spec::{CurveSpec, OutputSpec, SurfaceSpec};
use crate::specfun::lemniscate_period;

type Builder = fn(&Params) -> Result<SurfaceSpec>;

struct Entry {
    name: &'static str,
    summary: &'static str,
    defaults: &'static [(&'static str, f64)],
    build: Builder,
}

/// Parameters of a gallery entry after overrides.
pub struct Params(BTreeMap<String, f64>);

impl Params {
    fn get(&self, k: &str) -> f64 {
        self.0[k]
    }
}

const ENTRIES: &[Entry] = &[
    Entry {
        name: "plane",
        summary: "totally geodesic plane from two lines through the origin",
        defaults: &[],
        build: plane,
    },
    Entry {
        name: "special",
        summary: "special Lagrangian from the lines t + ia and s + ib",
        defaults: &[("a", 1.0), ("b", 2.0)],
        build: special,
    },
    Entry {
        name: "cylinder",
        summary: "right circular cylinder from e^{it} and R e^{is}",
        defaults: &[("R", 1.0)],
        build: cylinder,
    },
    Entry {
        name: "hsl-circle-line",
        summary: "Hamiltonian stationary surface from a0 + R e^{it/R} and s + i b0",
        defaults: &[("a0", 0.0), ("b0", 0.0), ("R", 1.0)],
        build: hsl_circle_line,
    },
    Entry {
        name: "hsl-two-circles",
        summary: "Hamiltonian stationary surface from a1 + e^{it} and a2 + R e^{is/R}",
        defaults: &[("a1", 0.5), ("a2", 0.5), ("R", 2.0)],
        build: hsl_two_circles,
    },
    Entry {
        name: "hsl-cornu",
        summary: "Hamiltonian stationary surface from Cornu spirals with curvature at and -as",
        defaults: &[("a", 1.0)],
        build: hsl_cornu,
    },
    Entry {
        name: "cmc-lemniscate",
        summary: "branched torus with |H|² = 9 from two Bernoulli lemniscates",
        defaults: &[],
        build: cmc_lemniscate,
    },
    Entry {
        name: "shrinker-cylinder",
        summary: "self-shrinking cylinder from two unit circles",
        defaults: &[],
        build: shrinker_cylinder,
    },
    Entry {
        name: "translating",
        summary: "translating soliton with vector (rho e^{i theta}, 0)",
        defaults: &[("rho", 1.0), ("theta", 0.0)],
        build: translating,
    },
    Entry {
        name: "willmore-elastica",
        summary: "Willmore-critical surface from two free elastic curves",
        defaults: &[("lambda", 0.0)],
        build: willmore_elastica,
    },
    Entry {
        name: "torus-gerono-lissajous",
        summary: "Lagrangian torus from a Gerono lemniscate and a Lissajous curve",
        defaults: &[],
        build: torus_gerono_lissajous,
    },
];

/// Names of all gallery entries.
pub fn names() -> Vec<&'static str> {
    ENTRIES.iter().map(|e| e.name).collect()
}

/// One-line description and default parameters of an entry.
pub fn describe(name: &str) -> Result<(&'static str, Vec<(&'static str, f64)>)> {
    let e = find(name)?;
    Ok((e.summary, e.defaults.to_vec()))
}

fn find(name: &str) -> Result<&'static Entry> {
    ENTRIES.iter().find(|e| e.name == name).ok_or_else(|| Error::UnknownGallery {
        name: name.to_string(),
        available: names().join(", "),
    })
}

/// Spec of a gallery entry with default parameters.
pub fn entry(name: &str) -> Result<SurfaceSpec> {
    entry_with(name, &BTreeMap::new())
}

/// Spec of a gallery entry with some parameters overridden.
pub fn entry_with(name: &str, overrides: &BTreeMap<String, f64>) -> Result<SurfaceSpec> {
    let e = find(name)?;
    let mut params: BTreeMap<String, f64> = e.defaults.iter().map(|(k, v)| (k.to_string(), *v)).collect();
    for (k, v) in overrides {
        if !params.contains_key(k) {
            let known: Vec<&str> = e.defaults.iter().map(|(k, _)| *k).collect();
            return Err(Error::Invalid(format!(
                "gallery entry `{name}` has no parameter `{k}` (known: {})",
                if known.is_empty() { "none".to_string() } else { known.join(", ") }
            )));
        }
        if !v.is_finite() {
            return Err(Error::Invalid(format!("parameter `{k}` is not finite")));
        }
        params.insert(k.clone(), *v);
    }
    let spec = (e.build)(&Params(params))?;
    spec.validate()?;
    Ok(spec)
}

fn grid(t: (f64, f64), s: (f64, f64)) -> Grid {
    Grid {
        nt: Grid::DEFAULT_N,
        ns: Grid::DEFAULT_N,
        t_range: t,
        s_range: s,
    }
}

fn spec(
    name: &str,
    alpha: CurveSpec,
    omega: CurveSpec,
    grid: Grid,
    expect: &[(Family, bool)],
    check_params: CheckParams,
) -> SurfaceSpec {
    SurfaceSpec {
        name: name.to_string(),
        alpha,
        omega,
        base: (0.0, 0.0),
        grid,
        checks: expect.iter().map(|(f, _)| *f).collect(),
        check_params,
        expect: expect.iter().map(|(f, b)| (f.name().to_string(), *b)).collect(),
        output: OutputSpec::default(),
    }
}

fn line(origin_im: f64, lo: f64, hi: f64) -> CurveSpec {
    CurveSpec::new("line", &[("origin_im", origin_im)]).with_domain(lo, hi)
}

fn circle(center_re: f64, radius: f64, rate: f64) -> CurveSpec {
    CurveSpec::new("circle", &[("center_re", center_re), ("radius", radius), ("rate", rate)])
}

fn positive(name: &str, v: f64) -> Result<f64> {
    if v > 0.0 {
        Ok(v)
    } else {
        Err(Error::Invalid(format!("parameter `{name}` must be positive, got {v}")))
    }
}

fn plane(_: &Params) -> Result<SurfaceSpec> {
    use Family::*;
    Ok(spec(
        "plane",
        line(0.0, -2.0, 2.0),
        line(0.0, -2.0, 2.0),
        grid((-1.0, 1.0), (-1.0, 1.0)),
        &[
            (Lagrangian, true),
            (Special, true),
            (Pmc, true),
            (Hsl, true),
            (Cmc, true),
            (Shrinker, true),
            (Expander, true),
        ],
        CheckParams::default(),
    ))
}

fn special(p: &Params) -> Result<SurfaceSpec> {
    use Family::*;
    let (a, b) = (p.get("a"), p.get("b"));
    if a == 0.0 && b == 0.0 {
        return Err(Error::Invalid("special needs (a, b) ≠ (0, 0); use `plane`".into()));
    }
    Ok(spec(
        "special",
        line(a, -2.0, 2.0),
        line(b, -2.0, 2.0),
        grid((-1.0, 1.0), (-1.0, 1.0)),
        &[
            (Lagrangian, true),
            (Special, true),
            (Holomorphic, true),
            (Pmc, true),
            (Hsl, true),
            (Cmc, true),
        ],
        CheckParams {
            special_a: a,
            special_b: b,
            ..CheckParams::default()
        },
    ))
}

fn cylinder(p: &Params) -> Result<SurfaceSpec> {
    use Family::*;
    let r = positive("R", p.get("R"))?;
    Ok(spec(
        "cylinder",
        circle(0.0, 1.0, 1.0),
        circle(0.0, r, 1.0),
        grid((0.0, TAU), (0.0, TAU)),
        &[
            (Lagrangian, true),
            (Special, false),
            (Pmc, true),
            (Hsl, true),
            (Cmc, true),
            (Shrinker, r == 1.0),
            (Willmore, true),
            (Torus, false),
        ],
        CheckParams::default(),
    ))
}

fn hsl_circle_line(p: &Params) -> Result<SurfaceSpec> {
    use Family::*;
    let (a0, b0) = (p.get("a0"), p.get("b0"));
    let r = positive("R", p.get("R"))?;
    Ok(spec(
        "hsl-circle-line",
        circle(a0, r, 1.0 / r),
        line(b0, -2.0, 2.0),
        grid((0.0, TAU * r), (-1.0, 1.0)),
        &[(Lagrangian, true), (Special, false), (Hsl, true), (Pmc, false)],
        CheckParams::default(),
    ))
}

fn hsl_two_circles(p: &Params) -> Result<SurfaceSpec> {
    use Family::*;
    let (a1, a2) = (p.get("a1"), p.get("a2"));
    let r = positive("R", p.get("R"))?;
    let centered = a1 == 0.0 && a2 == 0.0;
    Ok(spec(
        "hsl-two-circles",
        circle(a1, 1.0, 1.0),
        circle(a2, r, 1.0 / r),
        grid((0.0, TAU), (0.0, TAU * r)),
        &[(Lagrangian, true), (Special, false), (Hsl, true), (Pmc, centered)],
        CheckParams::default(),
    ))
}

fn hsl_cornu(p: &Params) -> Result<SurfaceSpec> {
    use Family::*;
    let a = p.get("a");
    if a == 0.0 {
        return Err(Error::Invalid("hsl-cornu needs a ≠ 0".into()));
    }
    Ok(spec(
        "hsl-cornu",
        CurveSpec::new("cornu", &[("a", a), ("shift_re", 1.0)]).with_domain(-3.0, 3.0),
        CurveSpec::new("cornu", &[("a", a), ("shift_re", 1.0), ("mirror", 1.0)]).with_domain(-3.0, 3.0),
        grid((-2.0, 2.0), (-2.0, 2.0)),
        &[(Lagrangian, true), (Special, false), (Hsl, true), (Pmc, false)],
        CheckParams::default(),
    ))
}

fn cmc_lemniscate(_: &Params) -> Result<SurfaceSpec> {
    use Family::*;
    let t = lemniscate_period();
    Ok(spec(
        "cmc-lemniscate",
        CurveSpec::new("lemniscate", &[]),
        CurveSpec::new("lemniscate", &[]),
        grid((0.0, t), (0.0, t)),
        &[(Lagrangian, true), (Cmc, true), (Torus, true), (Hsl, false), (Special, false)],
        CheckParams::default(),
    ))
}

fn shrinker_cylinder(_: &Params) -> Result<SurfaceSpec> {
    use Family::*;
    Ok(spec(
        "shrinker-cylinder",
        circle(0.0, 1.0, 1.0),
        circle(0.0, 1.0, 1.0),
        grid((0.0, TAU), (0.0, TAU)),
        &[(Lagrangian, true), (Shrinker, true), (Expander, false), (Pmc, true)],
        CheckParams::default(),
    ))
}

fn translating(p: &Params) -> Result<SurfaceSpec> {
    use Family::*;
    let rho = positive("rho", p.get("rho"))?;
    let theta = p.get("theta");
    let gen = |sign: f64| {
        CurveSpec::new(
            "translating",
            &[
                ("rho", rho),
                ("theta", theta),
                ("sign", sign),
                ("x0", 1.0),
                ("y0", 0.0),
                ("theta0", FRAC_PI_2),
            ],
        )
        .with_domain(-2.0, 2.0)
    };
    Ok(spec(
        "translating",
        gen(1.0),
        gen(-1.0),
        grid((-1.5, 1.5), (-1.5, 1.5)),
        &[(Lagrangian, true), (Translating, true), (Special, false)],
        CheckParams {
            translating_rho: rho,
            translating_theta: theta,
            ..CheckParams::default()
        },
    ))
}

fn willmore_elastica(p: &Params) -> Result<SurfaceSpec> {
    use Family::*;
    let lambda = p.get("lambda");
    let gen = |kappa0: f64| {
        CurveSpec::new(
            "elastica",
            &[
                ("lambda", lambda),
                ("kappa0", kappa0),
                ("rotate", FRAC_PI_2),
                ("shift_re", 1.0),
            ],
        )
        .with_domain(-3.0, 3.0)
    };
    Ok(spec(
        "willmore-elastica",
        gen(1.0),
        gen(0.5),
        grid((-2.5, 2.5), (-2.5, 2.5)),
        &[(Lagrangian, true), (Elastica, true), (Willmore, true), (Special, false)],
        CheckParams::default(),
    ))
}

fn torus_gerono_lissajous(_: &Params) -> Result<SurfaceSpec> {
    use Family::*;
    Ok(spec(
        "torus-gerono-lissajous",
        CurveSpec::new("gerono", &[]),
        CurveSpec::new("lissajous", &[]),
        grid((0.0, TAU), (0.0, TAU)),
        &[(Lagrangian, true), (Torus, true), (Hsl, false), (Special, false)],
        CheckParams::default(),
    ))
}
