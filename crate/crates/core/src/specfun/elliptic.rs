//! Complete elliptic integral K(m) and the Jacobi elliptic functions.
//!
//! Everything takes the parameter `m = k²`. The Jacobi functions use the
//! descending Landen (AGM) scheme; the imaginary-modulus function `sn(t, i)`
//! is reduced to real parameter `m = 1/2` through
//! `sn(t, i) = sn(√2 t | 1/2) / (√2 · dn(√2 t | 1/2))`.

use std::f64::consts::{FRAC_PI_2, SQRT_2};

use crate::error::{Error, Result};

/// (sn, cn, dn) at one argument.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipticTriple {
    pub sn: f64,
    pub cn: f64,
    pub dn: f64,
}

/// Arithmetic–geometric mean.
pub fn agm(mut a: f64, mut b: f64) -> f64 {
    for _ in 0..64 {
        if (a - b).abs() <= 1e-16 * a.abs() {
            break;
        }
        let an = 0.5 * (a + b);
        b = (a * b).sqrt();
        a = an;
    }
    a
}

/// Complete elliptic integral of the first kind, `0 ≤ m < 1`.
pub fn ellipk(m: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&m) {
        return Err(Error::Domain {
            what: "ellipk",
            value: m,
        });
    }
    Ok(FRAC_PI_2 / agm(1.0, (1.0 - m).sqrt()))
}

/// Jacobi elliptic functions `(sn, cn, dn)(u | m)` for `0 ≤ m ≤ 1`.
pub fn ellipj(u: f64, m: f64) -> Result<EllipticTriple> {
    if !(0.0..=1.0).contains(&m) || m.is_nan() {
        return Err(Error::Domain {
            what: "ellipj",
            value: m,
        });
    }
    if m == 0.0 {
        return Ok(EllipticTriple {
            sn: u.sin(),
            cn: u.cos(),
            dn: 1.0,
        });
    }
    if m == 1.0 {
        let sech = 1.0 / u.cosh();
        return Ok(EllipticTriple {
            sn: u.tanh(),
            cn: sech,
            dn: sech,
        });
    }

    // Reduce into one real period 4K to keep the Landen phase small.
    let period = 4.0 * ellipk(m)?;
    let u = u - period * (u / period).round();

    let mut a = [0.0f64; 40];
    let mut c = [0.0f64; 40];
    a[0] = 1.0;
    c[0] = m.sqrt();
    let mut b = (1.0 - m).sqrt();
    let mut n = 0;
    while c[n].abs() > 1e-16 && n + 1 < a.len() {
        let an = a[n];
        a[n + 1] = 0.5 * (an + b);
        c[n + 1] = 0.5 * (an - b);
        b = (an * b).sqrt();
        n += 1;
    }
    let mut phi = (1u64 << n) as f64 * a[n] * u;
    for j in (1..=n).rev() {
        phi = 0.5 * (phi + (c[j] / a[j] * phi.sin()).asin());
    }
    let (sn, cn) = phi.sin_cos();
    // 1 − m sn² written as a sum of non-negative terms; the usual
    // cos φ₀ / cos(φ₁ − φ₀) ratio is 0/0 at odd multiples of K.
    let dn = (cn * cn + (1.0 - m) * sn * sn).sqrt();
    let out = EllipticTriple { sn, cn, dn };
    debug_assert!((sn * sn + cn * cn - 1.0).abs() < 1e-12);
    debug_assert!((dn * dn + m * sn * sn - 1.0).abs() < 1e-12);
    Ok(out)
}

const HALF: f64 = 0.5;

fn triple_half(t: f64) -> EllipticTriple {
    ellipj(SQRT_2 * t, HALF).expect("m = 1/2 is inside the domain")
}

/// `r(t) = sn(t, i)`, the odd solution of `r′² + r⁴ = 1` with `r(0) = 0`.
pub fn sn_imag_unit(t: f64) -> f64 {
    let e = triple_half(t);
    e.sn / (SQRT_2 * e.dn)
}

/// `(r, r′)` for [`sn_imag_unit`]; `r′ = cn/dn²` at the scaled argument.
pub fn sn_imag_unit_jet(t: f64) -> (f64, f64) {
    let e = triple_half(t);
    (e.sn / (SQRT_2 * e.dn), e.cn / (e.dn * e.dn))
}

/// Real period of [`sn_imag_unit`]: `4K(1/2)/√2`.
pub fn lemniscate_period() -> f64 {
    4.0 * ellipk(HALF).expect("m = 1/2 is inside the domain") / SQRT_2
}

/// `θ(t) = ∫ r dt = −arctan((1 + cn)/(1 − cn))`, `cn = cn(√2 t | 1/2)`.
///
/// Both arguments of the two-argument arctangent are non-negative, so the
/// value stays in `[−π/2, 0]` and is continuous through `cn = 1`, where the
/// quotient form divides by zero.
pub fn lemniscate_angle(t: f64) -> f64 {
    let cn = triple_half(t).cn;
    -(1.0 + cn).atan2(1.0 - cn)
}
