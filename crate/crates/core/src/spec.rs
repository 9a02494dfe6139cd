//! JSON descriptions of curves and surfaces.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::classify::{CheckParams, Family, Grid};
use crate::curves::PlanarCurve;
use crate::error::{Error, Result};
use crate::geom::Cplx;
use crate::star::StarSurface;

/// Named-parameter description of a planar curve.
///
/// Every kind also accepts the similarity parameters `scale`, `rotate`,
/// `shift_re`, `shift_im` and `mirror` (non-zero for complex conjugation),
/// applied as `c ↦ scale·e^{i·rotate}·c + shift` after the optional mirror.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveSpec {
    pub kind: String,
    #[serde(default)]
    pub params: BTreeMap<String, f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub domain: Option<(f64, f64)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub period: Option<f64>,
}

/// Output selection for `mesh`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct OutputSpec {
    pub dir: Option<String>,
    pub formats: Vec<String>,
    /// R⁴ coordinates to drop, one projection each.
    pub project: Vec<usize>,
}

impl Default for OutputSpec {
    fn default() -> Self {
        Self {
            dir: None,
            formats: vec!["obj".into()],
            project: vec![],
        }
    }
}

/// Complete description of a surface run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurfaceSpec {
    #[serde(default = "default_name")]
    pub name: String,
    pub alpha: CurveSpec,
    pub omega: CurveSpec,
    #[serde(default)]
    pub base: (f64, f64),
    pub grid: Grid,
    #[serde(default)]
    pub checks: Vec<Family>,
    #[serde(default)]
    pub check_params: CheckParams,
    /// Expected pass/fail per family name.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub expect: BTreeMap<String, bool>,
    #[serde(default)]
    pub output: OutputSpec,
}

fn default_name() -> String {
    "custom".into()
}

const TRANSFORM_KEYS: [&str; 5] = ["scale", "rotate", "shift_re", "shift_im", "mirror"];

/// Known curve kinds and their parameters with defaults.
pub fn curve_kinds() -> Vec<(&'static str, Vec<(&'static str, f64)>)> {
    vec![
        ("line", vec![("origin_re", 0.0), ("origin_im", 0.0), ("dir_re", 1.0), ("dir_im", 0.0)]),
        (
            "circle",
            vec![("center_re", 0.0), ("center_im", 0.0), ("radius", 1.0), ("rate", 1.0), ("phase", 0.0)],
        ),
        ("cornu", vec![("a", 1.0)]),
        ("gerono", vec![]),
        ("lissajous", vec![]),
        ("lemniscate", vec![]),
        (
            "curvature-poly",
            vec![
                ("c0", 0.0),
                ("c1", 0.0),
                ("c2", 0.0),
                ("c3", 0.0),
                ("t0", 0.0),
                ("theta0", 0.0),
            ],
        ),
        ("cmc-radial", vec![("rho", 3.0), ("lambda", 0.0), ("mu", 0.0), ("r_init", 1.0)]),
        ("elastica", vec![("lambda", 0.0), ("kappa0", 1.0), ("kappa0_prime", 0.0)]),
        (
            "translating",
            vec![("rho", 1.0), ("theta", 0.0), ("sign", 1.0), ("x0", 1.0), ("y0", 0.0), ("theta0", std::f64::consts::FRAC_PI_2)],
        ),
    ]
}

impl CurveSpec {
    pub fn new(kind: &str, params: &[(&str, f64)]) -> Self {
        Self {
            kind: kind.into(),
            params: params.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            domain: None,
            period: None,
        }
    }

    pub fn with_domain(mut self, lo: f64, hi: f64) -> Self {
        self.domain = Some((lo, hi));
        self
    }

    /// Checks the kind and parameter names.
    pub fn validate(&self) -> Result<()> {
        let kinds = curve_kinds();
        let (_, allowed) = kinds
            .iter()
            .find(|(k, _)| *k == self.kind)
            .ok_or_else(|| {
                let names: Vec<&str> = kinds.iter().map(|(k, _)| *k).collect();
                Error::Invalid(format!("unknown curve kind `{}` (known: {})", self.kind, names.join(", ")))
            })?;
        for (key, v) in &self.params {
            if !allowed.iter().any(|(k, _)| k == key) && !TRANSFORM_KEYS.contains(&key.as_str()) {
                return Err(Error::Invalid(format!("curve kind `{}` has no parameter `{key}`", self.kind)));
            }
            if !v.is_finite() {
                return Err(Error::Invalid(format!("parameter `{key}` is not finite")));
            }
        }
        if let Some((a, b)) = self.domain {
            if !(a < b) {
                return Err(Error::Invalid(format!("empty curve domain [{a}, {b}]")));
            }
        }
        Ok(())
    }

    fn get(&self, key: &str) -> f64 {
        if let Some(v) = self.params.get(key) {
            return *v;
        }
        curve_kinds()
            .into_iter()
            .find(|(k, _)| *k == self.kind)
            .and_then(|(_, ps)| ps.into_iter().find(|(k, _)| *k == key).map(|(_, v)| v))
            .unwrap_or(match key {
                "scale" => 1.0,
                _ => 0.0,
            })
    }

    fn span(&self) -> Result<(f64, f64)> {
        self.domain
            .ok_or_else(|| Error::Invalid(format!("curve kind `{}` needs an explicit domain", self.kind)))
    }

    /// Constructs the curve.
    pub fn build(&self) -> Result<PlanarCurve> {
        self.validate()?;
        let p = |k: &str| self.get(k);
        let ode = matches!(self.kind.as_str(), "curvature-poly" | "cmc-radial" | "elastica" | "translating");
        let base = match self.kind.as_str() {
            "line" => PlanarCurve::line_through(Cplx::new(p("origin_re"), p("origin_im")), Cplx::new(p("dir_re"), p("dir_im"))),
            "circle" => PlanarCurve::circle(
                Cplx::new(p("center_re"), p("center_im")),
                p("radius"),
                p("rate"),
                p("phase"),
            ),
            "cornu" => PlanarCurve::cornu(p("a"), Cplx::default()),
            "gerono" => PlanarCurve::gerono(),
            "lissajous" => PlanarCurve::lissajous(),
            "lemniscate" => PlanarCurve::lemniscate(),
            "curvature-poly" => {
                let c = [p("c0"), p("c1"), p("c2"), p("c3")];
                PlanarCurve::curve_from_curvature(
                    move |t| c[0] + t * (c[1] + t * (c[2] + t * c[3])),
                    p("t0"),
                    p("theta0"),
                    Cplx::default(),
                    self.span()?,
                    crate::curves::DEFAULT_ODE_STEP,
                )?
            }
            "cmc-radial" => PlanarCurve::cmc_radial_curve(p("rho"), p("lambda"), p("mu"), p("r_init"), self.span()?)?,
            "elastica" => PlanarCurve::elastica_curve(p("lambda"), p("kappa0"), p("kappa0_prime"), self.span()?)?,
            "translating" => PlanarCurve::translating_curve(
                p("rho"),
                p("theta"),
                p("sign"),
                Cplx::new(p("x0"), p("y0")),
                p("theta0"),
                self.span()?,
            )?,
            other => unreachable!("validated kind {other}"),
        };
        let (scale, rot, shift) = (p("scale"), p("rotate"), Cplx::new(p("shift_re"), p("shift_im")));
        let mirror = p("mirror") != 0.0;
        if scale <= 0.0 {
            return Err(Error::Invalid(format!("scale must be positive, got {scale}")));
        }
        let mut curve = if scale != 1.0 || rot != 0.0 || shift != Cplx::default() || mirror {
            base.affine(Cplx::from_polar(scale, rot), shift, mirror)
        } else {
            base
        };
        if !ode {
            if let Some((lo, hi)) = self.domain {
                curve = curve.with_domain(lo, hi)?;
            }
        }
        if let Some(per) = self.period {
            curve = curve.with_period(per)?;
        }
        Ok(curve)
    }
}

impl SurfaceSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        let spec: Self = serde_json::from_str(text).map_err(|e| Error::Invalid(format!("spec JSON: {e}")))?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec is always serializable")
    }

    pub fn validate(&self) -> Result<()> {
        self.alpha.validate()?;
        self.omega.validate()?;
        Grid::new(self.grid.nt, self.grid.ns, self.grid.t_range, self.grid.s_range)?;
        for key in self.expect.keys() {
            key.parse::<Family>()?;
        }
        for &axis in &self.output.project {
            if axis > 3 {
                return Err(Error::Invalid(format!("projection axis must be 0..=3, got {axis}")));
            }
        }
        for f in &self.output.formats {
            if !matches!(f.as_str(), "obj" | "ply" | "csv") {
                return Err(Error::Invalid(format!("unknown mesh format `{f}`")));
            }
        }
        Ok(())
    }

    pub fn build(&self) -> Result<StarSurface> {
        StarSurface::build(self.alpha.build()?, self.omega.build()?, self.base.0, self.base.1)
    }
}
