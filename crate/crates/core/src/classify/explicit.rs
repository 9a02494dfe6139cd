//! Displayed closed forms of catalog surfaces, each valid up to a
//! translation of C², plus a least-squares translation fit.

use std::f64::consts::SQRT_2;

use crate::geom::{Cplx, C2, I};
use crate::specfun::ellipj;

/// `((s² − t²)/2, ts)`.
pub fn plane(t: f64, s: f64) -> C2 {
    C2::new(Cplx::new(0.5 * (s * s - t * t), 0.0), Cplx::new(t * s, 0.0))
}

/// `((s² − t²)/2 + i(at − bs), (t + ia)(s + ib))`.
pub fn special(a: f64, b: f64, t: f64, s: f64) -> C2 {
    C2::new(
        Cplx::new(0.5 * (s * s - t * t), a * t - b * s),
        Cplx::new(t, a) * Cplx::new(s, b),
    )
}

/// `(i(R²s − t), R e^{i(s + t)})`.
pub fn cylinder(r: f64, t: f64, s: f64) -> C2 {
    C2::new(I * (r * r * s - t), Cplx::from_polar(r, s + t))
}

/// Circle `a0 + R e^{it/R}` against the line `s + i b0`:
/// `(s²/2 − R a0 e^{it/R} − i(b0 s + R t), a0 s + R(s + i b0) e^{it/R})`.
pub fn hsl_circle_line(a0: f64, b0: f64, r: f64, t: f64, s: f64) -> C2 {
    let e = Cplx::from_polar(1.0, t / r);
    C2::new(
        0.5 * s * s - r * a0 * e - I * (b0 * s + r * t),
        a0 * s + r * Cplx::new(s, b0) * e,
    )
}

/// Circles `a1 + e^{it}` and `a2 + R e^{is/R}`:
/// `(a2 R e^{is/R} − a1 e^{it} + i(R s − t), a1 R e^{is/R} + a2 e^{it} + R e^{i(t + s/R)})`.
pub fn hsl_two_circles(a1: f64, a2: f64, r: f64, t: f64, s: f64) -> C2 {
    let et = Cplx::from_polar(1.0, t);
    let es = Cplx::from_polar(1.0, s / r);
    C2::new(
        a2 * r * es - a1 * et + I * (r * s - t),
        a1 * r * es + a2 * et + r * et * es,
    )
}

/// Gerono × Lissajous torus in trigonometric form.
pub fn gerono_lissajous(t: f64, s: f64) -> C2 {
    let (st, ct) = t.sin_cos();
    let (ss, cs) = s.sin_cos();
    let re1 = 0.25 * (8.0 * st.powi(4) - 2.0 * cs * cs - (4.0 * s).cos() - 8.0 * ct);
    let im1 = (9.0 * cs - (3.0 * s).cos() - 2.0 * (9.0 * st + 3.0 * (2.0 * t).sin() + (3.0 * t).sin())) / 6.0;
    let re2 = (1.0 + (2.0 - 4.0 * cs * st) * ct) * ss;
    let im2 = (1.0 + 2.0 * ct) * (2.0 * s).sin() + ss * (2.0 * t).sin();
    C2::new(Cplx::new(re1, im1), Cplx::new(re2, im2))
}

/// Lemniscate CMC torus in Jacobi form at modulus `1/√2`:
/// `( ¼(sd²(√2s) − sd²(√2t)) + i·k·(cd·nd(√2t) − cd·nd(√2s)),
///    ½ sd(√2t) sd(√2s) e^{−i(atan q(t) + atan q(s))} )`, `q = (1 + cn)/(1 − cn)`.
///
/// The form is sometimes stated with `k = 1/4`; integrating `r³` gives `k = 1/2`.
pub fn lemniscate_torus(t: f64, s: f64, im_coeff: f64) -> C2 {
    let parts = |x: f64| {
        let e = ellipj(SQRT_2 * x, 0.5).expect("modulus 1/2 is in range");
        let sd = e.sn / e.dn;
        let cdnd = e.cn / (e.dn * e.dn);
        let ang = ((1.0 + e.cn) / (1.0 - e.cn)).atan();
        (sd, cdnd, ang)
    };
    let (sdt, ct, at) = parts(t);
    let (sds, cs, as_) = parts(s);
    C2::new(
        Cplx::new(0.25 * (sds * sds - sdt * sdt), im_coeff * (ct - cs)),
        Cplx::from_polar(0.5 * sdt * sds, -(at + as_)),
    )
}

/// Best translation `c` minimizing `Σ |a_k − b_k − c|²` and the largest
/// remaining deviation `max |a_k − b_k − c|`.
pub fn translation_fit(pairs: &[(C2, C2)]) -> (C2, f64) {
    if pairs.is_empty() {
        return (C2::ZERO, 0.0);
    }
    let mut mean = C2::ZERO;
    for (a, b) in pairs {
        mean += *a - *b;
    }
    let shift = mean / pairs.len() as f64;
    let residual = pairs
        .iter()
        .map(|(a, b)| (*a - *b - shift).norm())
        .fold(0.0, f64::max);
    (shift, residual)
}
