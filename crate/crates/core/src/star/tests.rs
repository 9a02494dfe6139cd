use super::*;
use crate::geom::{euclid, I};
use rand::{Rng, SeedableRng};
use std::f64::consts::{PI, TAU};

fn lines(a: f64, b: f64) -> StarSurface {
    let al = PlanarCurve::line(a).with_domain(-2.0, 2.0).unwrap();
    let om = PlanarCurve::line(b).with_domain(-2.0, 2.0).unwrap();
    StarSurface::build(al, om, 0.0, 0.0).unwrap()
}

fn cylinder(r: f64) -> StarSurface {
    let al = PlanarCurve::circle(Cplx::default(), 1.0, 1.0, 0.0);
    let om = PlanarCurve::circle(Cplx::default(), r, 1.0, 0.0);
    StarSurface::build(al, om, 0.0, 0.0).unwrap()
}

fn torus() -> StarSurface {
    StarSurface::build(PlanarCurve::gerono(), PlanarCurve::lissajous(), 0.0, 0.0).unwrap()
}

fn ode_surface() -> StarSurface {
    let a = PlanarCurve::translating_curve(1.0, 0.0, 1.0, Cplx::new(1.0, 0.0), PI / 2.0, (-2.0, 2.0)).unwrap();
    let w = PlanarCurve::translating_curve(1.0, 0.0, -1.0, Cplx::new(1.0, 0.0), PI / 2.0, (-2.0, 2.0)).unwrap();
    StarSurface::build(a, w, 0.0, 0.0).unwrap()
}

fn cornu_pair() -> StarSurface {
    let a = PlanarCurve::cornu(1.0, Cplx::new(1.0, 0.0));
    let w = PlanarCurve::cornu(1.0, Cplx::default()).mirrored().translated(Cplx::new(1.0, 0.0));
    StarSurface::build(a, w, 0.0, 0.0).unwrap()
}

fn samples(seed: u64, n: usize, lo: f64, hi: f64) -> Vec<(f64, f64)> {
    let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
    (0..n).map(|_| (rng.gen_range(lo..hi), rng.gen_range(lo..hi))).collect()
}

fn surfaces() -> Vec<(&'static str, StarSurface, f64, f64)> {
    vec![
        ("lines", lines(1.0, 2.0), -1.5, 1.5),
        ("cylinder", cylinder(2.0), -3.0, 3.0),
        ("torus", torus(), 0.0, TAU),
        ("ode", ode_surface(), -1.5, 1.5),
        ("cornu", cornu_pair(), -1.5, 1.5),
    ]
}

#[test]
fn plane_position() {
    let s = lines(0.0, 0.0);
    let p = s.position(1.0, 2.0).unwrap();
    assert!((p.z1 - Cplx::new(1.5, 0.0)).norm() < 1e-15);
    assert!((p.z2 - Cplx::new(2.0, 0.0)).norm() < 1e-15);
    let j = s.jet(0.3, -0.7).unwrap();
    for c in [j.c_ttt, j.c_tts, j.c_tss, j.c_sss] {
        assert_eq!(c, 0.0);
    }
    assert_eq!(j.h.norm(), 0.0);
    assert!((j.beta - PI).abs() < 1e-15);
}

#[test]
fn cylinder_closed_form() {
    for r in [0.5, 1.0, 2.0] {
        let s = cylinder(r);
        let shift = C2::new(Cplx::new(0.5 * (r * r - 1.0), 0.0), Cplx::default());
        for (t, u) in samples(1, 50, -7.0, 7.0) {
            let j = s.jet(t, u).unwrap();
            let exact = C2::new(I * (r * r * u - t), Cplx::from_polar(r, u + t)) + shift;
            assert!((j.phi - exact).norm() < 1e-10, "R={r} ({t},{u})");
            assert!((j.h.norm() - 1.0 / r).abs() < 1e-12);
            let db = (j.beta - (t + u)).rem_euclid(TAU);
            assert!(db.min(TAU - db) < 1e-12);
        }
    }
}

#[test]
fn special_closed_form() {
    // α = t + ia, ω = s + ib: first slot (s² − t²)/2 + (b² − a²)/2 + i(a t − b s)
    let (a, b) = (1.0, 2.0);
    let s = lines(a, b);
    for (t, u) in samples(2, 30, -2.0, 2.0) {
        let p = s.position(t, u).unwrap();
        let first = Cplx::new(0.5 * (u * u - t * t) + 0.5 * (b * b - a * a), a * t - b * u);
        let second = Cplx::new(t, a) * Cplx::new(u, b);
        assert!((p.z1 - first).norm() < 1e-12 && (p.z2 - second).norm() < 1e-12);
    }
}

#[test]
fn lagrangian_and_metric() {
    for (name, s, lo, hi) in surfaces() {
        for (t, u) in samples(3, 100, lo, hi) {
            let j = s.jet(t, u).unwrap();
            assert!(j.lagrangian_residual() < 1e-11, "{name}");
            assert!((j.e - j.phi_t.norm_sqr()).abs() < 1e-11 * j.e);
            assert!((j.g - j.phi_s.norm_sqr()).abs() < 1e-11 * j.g);
            assert_eq!(j.f, 0.0);
        }
    }
}

#[test]
fn tangents_match_position_differences() {
    let h = 1e-5;
    for (name, s, lo, hi) in surfaces() {
        for (t, u) in samples(4, 20, lo, hi) {
            let j = s.jet(t, u).unwrap();
            let dt = (s.position(t + h, u).unwrap() - s.position(t - h, u).unwrap()) / (2.0 * h);
            let ds = (s.position(t, u + h).unwrap() - s.position(t, u - h).unwrap()) / (2.0 * h);
            let scale = 1.0 + j.phi_t.norm() + j.phi_s.norm();
            assert!((dt - j.phi_t).norm() < 1e-7 * scale, "{name} t ({t},{u})");
            assert!((ds - j.phi_s).norm() < 1e-7 * scale, "{name} s ({t},{u})");
        }
    }
}

#[test]
fn cubic_form_matches_second_derivatives() {
    for (name, s, lo, hi) in surfaces() {
        for (t, u) in samples(5, 50, lo, hi) {
            let j = s.jet(t, u).unwrap();
            let d = s.second_derivatives(t, u).unwrap();
            let c = |x: C2, y: C2| C_SIGN * herm(x, y).im;
            let direct = [
                c(d.tt, j.phi_t),
                c(d.tt, j.phi_s),
                c(d.ss, j.phi_t),
                c(d.ss, j.phi_s),
            ];
            let sym = [c(d.ts, j.phi_t), c(d.ts, j.phi_s)];
            let stored = [j.c_ttt, j.c_tts, j.c_tss, j.c_sss];
            let scale = 1.0 + stored.iter().fold(0.0f64, |m, x| m.max(x.abs()));
            for k in 0..4 {
                assert!((direct[k] - stored[k]).abs() < 1e-11 * scale, "{name} C[{k}]");
            }
            assert!((sym[0] - j.c_tts).abs() < 1e-11 * scale);
            assert!((sym[1] - j.c_tss).abs() < 1e-11 * scale);
        }
    }
}

#[test]
fn determinant_gives_lagrangian_angle() {
    for (name, s, lo, hi) in surfaces() {
        for (t, u) in samples(6, 50, lo, hi) {
            let j = s.jet(t, u).unwrap();
            let z = det_angle(&j);
            assert!((z - Cplx::from_polar(1.0, j.beta)).norm() < 1e-11, "{name}");
            let w = -(j.alpha.d1 * j.omega.d1) / (j.alpha.speed * j.omega.speed);
            assert!((z - w).norm() < 1e-11);
        }
    }
}

#[test]
fn mean_curvature_norm() {
    for (name, s, lo, hi) in surfaces() {
        for (t, u) in samples(7, 30, lo, hi) {
            let j = s.jet(t, u).unwrap();
            let expect = (j.alpha.kappa.powi(2) + j.omega.kappa.powi(2)) / j.conf;
            assert!((j.h_sqr() - expect).abs() < 1e-12 * (1.0 + expect), "{name}");
            // H is normal
            assert!(euclid(j.h, j.phi_t).abs() < 1e-12 * (1.0 + j.phi_t.norm()));
            assert!(euclid(j.h, j.phi_s).abs() < 1e-12 * (1.0 + j.phi_s.norm()));
        }
    }
}

#[test]
fn gauge_change_is_translation() {
    let base = torus();
    let moved = StarSurface::build(PlanarCurve::gerono(), PlanarCurve::lissajous(), 1.3, -0.4).unwrap();
    let shift = base.position(0.0, 0.0).unwrap() - moved.position(0.0, 0.0).unwrap();
    for (t, u) in samples(8, 100, -1.0, 7.0) {
        let d = base.position(t, u).unwrap() - moved.position(t, u).unwrap() - shift;
        assert!(d.norm() < 1e-11);
    }
}

#[test]
fn prefix_table_derivative_and_periodicity() {
    let s = torus();
    let h = 1e-5;
    for k in 0..30 {
        let t = -5.0 + 0.4 * k as f64;
        let fd = (s.prefix_a(t + h).unwrap() - s.prefix_a(t - h).unwrap()) / (2.0 * h);
        let exact = s.alpha().eval(t).unwrap().areal_rate();
        assert!((fd - exact).abs() < 1e-9, "t={t}: {fd} vs {exact}");
    }
    assert_eq!(s.prefix_a(0.0).unwrap(), 0.0);
    let c = cylinder(2.0);
    assert!((c.prefix_a(TAU).unwrap() - TAU).abs() < 1e-12);
    assert!((c.prefix_b(-TAU).unwrap() + 4.0 * TAU).abs() < 1e-11);
    assert!((c.prefix_a(37.0).unwrap() - 37.0).abs() < 1e-11);
}

#[test]
fn prefix_beyond_window() {
    let s = cornu_pair();
    // far outside the default window the value comes from direct integration
    let a5 = s.prefix_a(5.0).unwrap();
    let n = 400;
    let exact = specfun::integrate(|t| Ok(s.alpha().eval(t)?.areal_rate()), 0.0, 5.0, n).unwrap();
    assert!((a5 - exact).abs() < 1e-11);
}

/// Projection onto span{JΦ_t, JΦ_s} by 2×2 normal equations in R⁴, without
/// using orthogonality of the spanning vectors.
fn gram_projection(j: &SurfaceJet, v: C2) -> C2 {
    let n1 = jrot2(j.phi_t);
    let n2 = jrot2(j.phi_s);
    let (g11, g12, g22) = (euclid(n1, n1), euclid(n1, n2), euclid(n2, n2));
    let (r1, r2) = (euclid(v, n1), euclid(v, n2));
    let det = g11 * g22 - g12 * g12;
    let c1 = (r1 * g22 - r2 * g12) / det;
    let c2 = (g11 * r2 - g12 * r1) / det;
    n1 * c1 + n2 * c2
}

#[test]
fn projections_match_gram_oracle() {
    for (name, s, lo, hi) in surfaces() {
        for (t, u) in samples(9, 30, lo, hi) {
            let j = s.jet(t, u).unwrap();
            let p = s.normal_project_position(t, u).unwrap();
            let o = gram_projection(&j, j.phi);
            assert!((p - o).norm() < 1e-10 * (1.0 + j.phi.norm()), "{name}");
            let tang = j.phi - p;
            for d in [j.phi_t, j.phi_s] {
                assert!(herm(tang, d).im.abs() < 1e-11 * (1.0 + j.phi.norm()) * d.norm());
            }
            let e = C2::new(Cplx::from_polar(1.3, 0.4), Cplx::default());
            let pe = s.normal_project_constant(t, u, e).unwrap();
            assert!((pe - gram_projection(&j, e)).norm() < 1e-11);
            assert_eq!(s.normal_project_constant(t, u, C2::ZERO).unwrap(), C2::ZERO);
        }
    }
}

#[test]
fn translating_projection_on_plane() {
    // e = (ρe^{iθ}, 0) on α = t, ω = s: the coefficients are Im(e^{−iθ}…) terms
    let s = lines(0.0, 0.0);
    let (rho, th) = (1.7, 0.6);
    let e = C2::new(Cplx::from_polar(rho, th), Cplx::default());
    for (t, u) in samples(10, 20, -1.5, 1.5) {
        let j = s.jet(t, u).unwrap();
        let pe = s.normal_project_constant(t, u, e).unwrap();
        let ca = rho * (Cplx::from_polar(1.0, -th) * j.alpha.d1 * j.alpha.pos.conj()).im / (j.e);
        let cw = -rho * (Cplx::from_polar(1.0, -th) * j.omega.d1 * j.omega.pos.conj()).im / (j.g);
        let expect = jrot2(j.phi_t) * ca + jrot2(j.phi_s) * cw;
        assert!((pe - expect).norm() < 1e-11);
    }
}

#[test]
fn unit_cylinder_is_a_shrinker() {
    let s = cylinder(1.0);
    for (t, u) in samples(11, 50, -4.0, 4.0) {
        let j = s.jet(t, u).unwrap();
        let p = s.normal_project_position(t, u).unwrap();
        assert!((j.h + p).norm() < 1e-10);
        assert!(((j.h - p).norm() - 2.0).abs() < 1e-10);
    }
}

#[test]
fn singular_point_is_reported() {
    let l = PlanarCurve::lemniscate();
    let s = StarSurface::build(l.clone(), l, 0.0, 0.0).unwrap();
    assert!(s.is_singular(0.0, 0.0).unwrap());
    assert!(matches!(s.jet(0.0, 0.0), Err(Error::Singular { .. })));
    assert!(s.jet(0.0, 0.5).is_ok());
}

#[test]
fn dilation_scales_by_rho_squared() {
    let rho = 2.0;
    let g = PlanarCurve::gerono();
    let l = PlanarCurve::lissajous();
    let big = StarSurface::build(g.scaled(rho), l.scaled(rho), 0.0, 0.0).unwrap();
    let s = torus();
    for (t, u) in samples(12, 50, 0.0, TAU) {
        let d = big.position(t, u).unwrap() - s.position(t, u).unwrap() * (rho * rho);
        assert!(d.norm() < 1e-10);
    }
}
