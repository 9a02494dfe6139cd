//! Composite Gauss–Legendre quadrature with cumulative (prefix) tables.
//!
//! Each panel carries the Legendre expansion of the integrand interpolated at
//! the panel's Gauss nodes, so partial panel integrals are exact for the
//! interpolant and the table can be evaluated anywhere in its range.

use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Points per panel.
pub const GL_ORDER: usize = 10;

/// Gauss–Legendre nodes and weights on [−1, 1], by Newton iteration on P_n.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1, "Gauss–Legendre rule needs at least one node");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (p, d) = legendre_and_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_and_derivative(n, x);
        dp = if d != 0.0 { d } else { dp };
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre_and_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// P_0(x) … P_{N}(x) into `out` (length N+1).
fn legendre_all(x: f64, out: &mut [f64]) {
    out[0] = 1.0;
    if out.len() > 1 {
        out[1] = x;
    }
    for k in 2..out.len() {
        let kf = k as f64;
        out[k] = ((2.0 * kf - 1.0) * x * out[k - 1] - (kf - 1.0) * out[k - 2]) / kf;
    }
}

struct Rule {
    nodes: [f64; GL_ORDER],
    weights: [f64; GL_ORDER],
    /// P_j evaluated at node i, row-major [i][j].
    legendre: [[f64; GL_ORDER]; GL_ORDER],
}

fn rule() -> &'static Rule {
    static RULE: OnceLock<Rule> = OnceLock::new();
    RULE.get_or_init(|| {
        let (x, w) = gauss_legendre(GL_ORDER);
        let mut nodes = [0.0; GL_ORDER];
        let mut weights = [0.0; GL_ORDER];
        let mut legendre = [[0.0; GL_ORDER]; GL_ORDER];
        for i in 0..GL_ORDER {
            nodes[i] = x[i];
            weights[i] = w[i];
            legendre_all(x[i], &mut legendre[i]);
        }
        Rule {
            nodes,
            weights,
            legendre,
        }
    })
}

/// Cumulative integral of a function tabulated on uniform panels.
#[derive(Debug, Clone)]
pub struct QuadTable {
    nodes: Vec<f64>,
    prefix: Vec<f64>,
    coeffs: Vec<[f64; GL_ORDER]>,
}

impl QuadTable {
    /// Panel endpoints, strictly increasing.
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// Integral from the first node up to each node; `prefix()[0] == 0`.
    pub fn prefix(&self) -> &[f64] {
        &self.prefix
    }

    /// Interpolation order inside a panel (number of Gauss points).
    pub fn order(&self) -> usize {
        GL_ORDER
    }

    pub fn lo(&self) -> f64 {
        self.nodes[0]
    }

    pub fn hi(&self) -> f64 {
        self.nodes[self.nodes.len() - 1]
    }

    /// Integral over the whole table range.
    pub fn total(&self) -> f64 {
        self.prefix[self.prefix.len() - 1]
    }

    fn locate(&self, x: f64) -> (usize, f64, f64) {
        let panels = self.coeffs.len();
        let k = match self.nodes.binary_search_by(|n| n.total_cmp(&x)) {
            Ok(i) => i.min(panels - 1),
            Err(i) => i.saturating_sub(1).min(panels - 1),
        };
        let (a, b) = (self.nodes[k], self.nodes[k + 1]);
        let hw = 0.5 * (b - a);
        let xi = (x - 0.5 * (a + b)) / hw;
        (k, xi, hw)
    }

    /// Integral from `lo()` to `x`. Points outside the range extrapolate the
    /// end panels' polynomials.
    pub fn value(&self, x: f64) -> f64 {
        let (k, xi, hw) = self.locate(x);
        let mut p = [0.0; GL_ORDER + 1];
        legendre_all(xi, &mut p);
        let c = &self.coeffs[k];
        let mut acc = c[0] * (xi + 1.0);
        for j in 1..GL_ORDER {
            acc += c[j] * (p[j + 1] - p[j - 1]) / (2 * j + 1) as f64;
        }
        self.prefix[k] + hw * acc
    }

    /// The interpolated integrand at `x`.
    pub fn integrand(&self, x: f64) -> f64 {
        let (k, xi, _) = self.locate(x);
        let mut p = [0.0; GL_ORDER];
        legendre_all(xi, &mut p);
        self.coeffs[k].iter().zip(p.iter()).map(|(c, p)| c * p).sum()
    }
}

/// Builds the prefix table of `f` over `[a, b]` with `n` equal panels.
pub fn cumulative_integral<F>(mut f: F, a: f64, b: f64, n: usize) -> Result<QuadTable>
where
    F: FnMut(f64) -> Result<f64>,
{
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(Error::Quadrature(format!("empty or non-finite range [{a}, {b}]")));
    }
    if n < 1 {
        return Err(Error::Quadrature("at least one panel is required".into()));
    }
    let r = rule();
    let h = (b - a) / n as f64;
    let mut nodes = Vec::with_capacity(n + 1);
    let mut prefix = Vec::with_capacity(n + 1);
    let mut coeffs = Vec::with_capacity(n);
    nodes.push(a);
    prefix.push(0.0);
    let mut acc = 0.0;
    for k in 0..n {
        let lo = a + k as f64 * h;
        let hi = if k + 1 == n { b } else { a + (k + 1) as f64 * h };
        let mid = 0.5 * (lo + hi);
        let hw = 0.5 * (hi - lo);
        let mut c = [0.0; GL_ORDER];
        let mut panel = 0.0;
        for i in 0..GL_ORDER {
            let x = mid + hw * r.nodes[i];
            let fx = f(x).map_err(|e| Error::Quadrature(format!("integrand at {x}: {e}")))?;
            if !fx.is_finite() {
                return Err(Error::Quadrature(format!("integrand is not finite at {x}")));
            }
            let wf = r.weights[i] * fx;
            panel += wf;
            for (cj, pj) in c.iter_mut().zip(&r.legendre[i]) {
                *cj += wf * pj;
            }
        }
        for (j, cj) in c.iter_mut().enumerate() {
            *cj *= (2 * j + 1) as f64 / 2.0;
        }
        acc += hw * panel;
        nodes.push(hi);
        prefix.push(acc);
        coeffs.push(c);
    }
    Ok(QuadTable {
        nodes,
        prefix,
        coeffs,
    })
}

/// Composite Gauss–Legendre integral of `f` over `[a, b]` with `n` panels.
pub fn integrate<F>(mut f: F, a: f64, b: f64, n: usize) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let r = rule();
    let h = (b - a) / n as f64;
    let mut acc = 0.0;
    for k in 0..n {
        let mid = a + (k as f64 + 0.5) * h;
        let mut panel = 0.0;
        for i in 0..GL_ORDER {
            let x = mid + 0.5 * h * r.nodes[i];
            let fx = f(x)?;
            if !fx.is_finite() {
                return Err(Error::Quadrature(format!("integrand is not finite at {x}")));
            }
            panel += r.weights[i] * fx;
        }
        acc += 0.5 * h * panel;
    }
    Ok(acc)
}

/// Tensor-product Gauss–Legendre integral over a rectangle with `n × m` panels.
pub fn integrate_2d<F>(mut f: F, t: (f64, f64), s: (f64, f64), n: usize, m: usize) -> Result<f64>
where
    F: FnMut(f64, f64) -> Result<f64>,
{
    let r = rule();
    let ht = (t.1 - t.0) / n as f64;
    let hs = (s.1 - s.0) / m as f64;
    let mut acc = 0.0;
    for a in 0..n {
        let mt = t.0 + (a as f64 + 0.5) * ht;
        for b in 0..m {
            let ms = s.0 + (b as f64 + 0.5) * hs;
            let mut panel = 0.0;
            for i in 0..GL_ORDER {
                let x = mt + 0.5 * ht * r.nodes[i];
                for j in 0..GL_ORDER {
                    let y = ms + 0.5 * hs * r.nodes[j];
                    let v = f(x, y)?;
                    if !v.is_finite() {
                        return Err(Error::Quadrature(format!("integrand is not finite at ({x}, {y})")));
                    }
                    panel += r.weights[i] * r.weights[j] * v;
                }
            }
            acc += 0.25 * ht * hs * panel;
        }
    }
    Ok(acc)
}
