use super::*;
use crate::curves::PlanarCurve;
use crate::geom::{Cplx, C2};
use crate::specfun;
use std::f64::consts::{PI, TAU};

fn circle(r: f64) -> PlanarCurve {
    PlanarCurve::circle(Cplx::default(), r, 1.0, 0.0)
}

fn cylinder(r: f64) -> StarSurface {
    StarSurface::build(circle(1.0), circle(r), 0.0, 0.0).unwrap()
}

fn lines(a: f64, b: f64) -> StarSurface {
    let al = PlanarCurve::line(a).with_domain(-2.0, 2.0).unwrap();
    let om = PlanarCurve::line(b).with_domain(-2.0, 2.0).unwrap();
    StarSurface::build(al, om, 0.0, 0.0).unwrap()
}

fn torus() -> StarSurface {
    StarSurface::build(PlanarCurve::gerono(), PlanarCurve::lissajous(), 0.0, 0.0).unwrap()
}

fn lemniscate_torus() -> StarSurface {
    StarSurface::build(PlanarCurve::lemniscate(), PlanarCurve::lemniscate(), 0.0, 0.0).unwrap()
}

fn cornu_pair() -> StarSurface {
    let a = PlanarCurve::cornu(1.0, Cplx::new(1.0, 0.0));
    let w = PlanarCurve::cornu(1.0, Cplx::default()).mirrored().translated(Cplx::new(1.0, 0.0));
    StarSurface::build(a, w, 0.0, 0.0).unwrap()
}

fn square(n: usize, lo: f64, hi: f64) -> Grid {
    Grid::new(n, n, (lo, hi), (lo, hi)).unwrap()
}

fn sweep(s: &StarSurface, g: Grid) -> Sweep {
    Sweep::new(s, g).unwrap()
}

#[test]
fn grid_validation() {
    assert!(Grid::new(1, 5, (0.0, 1.0), (0.0, 1.0)).is_err());
    assert!(Grid::new(3, 3, (1.0, 1.0), (0.0, 1.0)).is_err());
    let g = square(5, 0.0, 1.0);
    assert_eq!(g.t_values(), vec![0.0, 0.25, 0.5, 0.75, 1.0]);
}

#[test]
fn lagrangian_residuals() {
    assert!(check_lagrangian(&sweep(&lines(0.0, 0.0), square(41, -1.0, 1.0))) < 1e-14);
    assert!(check_lagrangian(&sweep(&cylinder(2.0), square(41, 0.0, TAU))) < 1e-12);
    assert!(check_lagrangian(&sweep(&torus(), square(101, 0.0, TAU))) < 1e-10);
}

#[test]
fn special_check() {
    let r = check_special(&sweep(&lines(1.0, 2.0), square(41, -1.0, 1.0)));
    assert!(r.curvature < 1e-12 && r.h_max < 1e-10);
    let r = check_special(&sweep(&cylinder(1.0), square(41, 0.0, TAU)));
    assert!((r.curvature - 1.0).abs() < 1e-12);
    let r = check_special(&sweep(&lines(0.0, 0.0), square(11, -1.0, 1.0)));
    assert_eq!(r.curvature, 0.0);
}

fn brute_force_c(a: f64, b: f64, g: Grid) -> Cplx {
    let s = special_surface(a, b, &g).unwrap();
    let o = s.position(0.0, 0.0).unwrap();
    let (mut num, mut den) = (Cplx::default(), 0.0);
    for t in g.t_values() {
        for u in g.s_values() {
            let w = holomorphic_map(s.position(t, u).unwrap() - o);
            let q = w.z1 * w.z1;
            num += w.z2 * q.conj();
            den += q.norm_sqr();
        }
    }
    num / den
}

#[test]
fn holomorphic_correspondence_cases() {
    let g = square(21, -1.0, 1.0);
    for (a, b, c) in [
        (1.0, 0.0, Cplx::new(-0.5, 0.0)),
        (0.0, 1.0, Cplx::new(0.5, 0.0)),
        (1.0, 2.0, Cplx::new(3.0 / 50.0, 4.0 / 50.0)),
    ] {
        let r = holomorphic_correspondence(a, b, g).unwrap();
        assert!((r.c - c).norm() < 1e-15, "({a},{b}): {}", r.c);
        assert!(r.residual < 1e-9, "({a},{b}): {}", r.residual);
        assert!((brute_force_c(a, b, g) - c).norm() < 1e-10);
    }
    assert!(holomorphic_correspondence(0.0, 0.0, g).is_err());
}

#[test]
fn pmc_cases() {
    for r in [0.5, 1.0, 2.0] {
        assert!(check_pmc(&sweep(&cylinder(r), square(41, 0.0, TAU))) < 1e-10);
    }
    assert_eq!(check_pmc(&sweep(&lines(0.0, 0.0), square(11, -1.0, 1.0))), 0.0);
    assert!(check_pmc(&sweep(&cornu_pair(), square(21, -1.0, 1.0))) > 1e-3);
}

#[test]
fn hsl_cases() {
    let s = cornu_pair();
    let r = check_hsl(&s, &sweep(&s, square(41, -2.0, 2.0))).unwrap();
    assert!(r.residual < 1e-8);
    let (a, b, c) = r.fit.unwrap();
    assert!((a - 1.0).abs() < 1e-9);
    // arclength measured from t = −2, so κ_α = (σ − 2) and κ_ω = −(σ − 2)
    assert!((b + 2.0).abs() < 1e-9 && (c - 2.0).abs() < 1e-9);

    let line = PlanarCurve::line(0.0).with_domain(-3.0, 3.0).unwrap();
    let s = StarSurface::build(PlanarCurve::circle(Cplx::default(), 2.0, 0.5, 0.0), line, 0.0, 0.0).unwrap();
    let g = Grid::new(31, 31, (0.0, 4.0 * PI), (-2.0, 2.0)).unwrap();
    assert!(check_hsl(&s, &sweep(&s, g)).unwrap().residual < 1e-12);

    let s = StarSurface::build(PlanarCurve::gerono(), PlanarCurve::gerono(), 0.0, 0.0).unwrap();
    let r = check_hsl(&s, &sweep(&s, square(41, 0.0, TAU))).unwrap();
    assert!(r.residual > 0.1 && r.fit.is_none());
}

#[test]
fn cmc_cases() {
    let s = lemniscate_torus();
    let t = specfun::lemniscate_period();
    let sw = sweep(&s, square(101, 0.0, t));
    assert!(sw.masked_count() > 0);
    let r = check_cmc(&sw);
    assert!((r.rho - 3.0).abs() < 1e-6 && r.residual < 1e-6, "{r:?}");
    assert!(r.lambda_alpha.abs() < 1e-6 && r.lambda_omega.abs() < 1e-6);

    let r = check_cmc(&sweep(&cylinder(2.0), square(41, 0.0, TAU)));
    assert!((r.rho - 0.5).abs() < 1e-12 && r.residual < 1e-10);
    assert!((r.lambda_alpha - r.lambda_omega).abs() < 1e-6);
    assert!((r.lambda_alpha + 0.75).abs() < 1e-10);

    let r = check_cmc(&sweep(&lines(0.0, 0.0), square(11, -1.0, 1.0)));
    assert_eq!(r.rho, 0.0);
    assert_eq!(r.residual, 0.0);
}

#[test]
fn lemniscate_mask_is_the_branch_lattice() {
    let s = lemniscate_torus();
    let t = specfun::lemniscate_period();
    let g = square(101, 0.0, t);
    let sw = sweep(&s, g);
    // zeros at t = 0, T/2, T → nodes 0, 50, 100, each dilated by one cell
    let hit = |i: usize| [0usize, 1, 49, 50, 51, 99, 100].contains(&i);
    for i in 0..101 {
        for j in 0..101 {
            assert_eq!(sw.mask[i * 101 + j], hit(i) && hit(j), "({i},{j})");
        }
    }
}

#[test]
fn self_similar_cases() {
    let sw = sweep(&cylinder(1.0), square(41, 0.0, TAU));
    let r = check_self_similar(&sw, -1.0);
    assert!(r.residual < 1e-10 && r.necessary < 1e-12);
    let r = check_self_similar(&sw, 1.0);
    assert!((r.residual - 2.0).abs() < 1e-10);
    for sign in [1.0, -1.0] {
        let r = check_self_similar(&sweep(&lines(0.0, 0.0), square(21, -1.0, 1.0)), sign);
        assert!(r.residual < 1e-15, "{r:?}");
    }
}

#[test]
fn translating_cases() {
    let a = PlanarCurve::translating_curve(1.0, 0.0, 1.0, Cplx::new(1.0, 0.0), PI / 2.0, (-2.0, 2.0)).unwrap();
    let w = PlanarCurve::translating_curve(1.0, 0.0, -1.0, Cplx::new(1.0, 0.0), PI / 2.0, (-2.0, 2.0)).unwrap();
    let s = StarSurface::build(a, w, 0.0, 0.0).unwrap();
    let r = check_translating(&sweep(&s, square(41, -1.5, 1.5)), 1.0, 0.0);
    assert!(r.curve < 1e-8 && r.surface < 1e-8, "{r:?}");

    let r = check_translating(&sweep(&cylinder(1.0), square(21, 0.0, TAU)), 1.0, 0.0);
    assert!(r.curve >= 1.0 && r.surface > 0.1);

    let sw = sweep(&cylinder(1.0), square(21, 0.0, TAU));
    let r = check_translating(&sw, 0.0, 0.0);
    assert!((r.curve - check_special(&sw).curvature).abs() < 1e-12);
}

#[test]
fn willmore_cases() {
    let w = willmore_energy(&StarSurface::build(circle(1.0), circle(1.0), 0.0, 0.0).unwrap()).unwrap();
    assert!((w.factored - 8.0 * PI * PI).abs() < 1e-9);
    assert!((w.direct - w.factored).abs() < 1e-8 * w.factored);

    let c2 = PlanarCurve::circle_arclength(Cplx::default(), 2.0);
    let w = willmore_energy(&StarSurface::build(circle(1.0), c2, 0.0, 0.0).unwrap()).unwrap();
    assert!((w.factored - 10.0 * PI * PI).abs() < 1e-9);
    assert!((w.direct - w.factored).abs() < 1e-8 * w.factored);

    let w = willmore_energy(&lines(0.0, 0.0)).unwrap();
    assert_eq!(w.factored, 0.0);
    assert_eq!(w.direct, 0.0);
}

#[test]
fn torus_cases() {
    let s = torus();
    let r = check_torus(&s, &sweep(&s, square(41, 0.0, TAU))).unwrap();
    assert!(r.closure_t.abs() < 1e-10 && r.closure_s.abs() < 1e-10 && r.gap < 1e-8, "{r:?}");

    let s = cylinder(2.0);
    let r = check_torus(&s, &sweep(&s, square(21, 0.0, TAU))).unwrap();
    assert!((r.closure_t - TAU).abs() < 1e-10 && (r.closure_s - 4.0 * TAU).abs() < 1e-10);
    assert!(r.gap > 1.0);

    let s = lemniscate_torus();
    let t = specfun::lemniscate_period();
    let r = check_torus(&s, &sweep(&s, square(41, 0.0, t))).unwrap();
    assert!(r.gap < 1e-8 && r.closure_t.abs() < 1e-10);

    let s = lines(0.0, 0.0);
    assert!(matches!(check_torus(&s, &sweep(&s, square(5, -1.0, 1.0))), Err(Error::MissingPeriod)));
}

#[test]
fn elastica_residual() {
    let c = PlanarCurve::elastica_curve(0.0, 1.0, 0.0, (-3.0, 3.0)).unwrap();
    assert!(check_elastica(&c).unwrap() < 1e-7);
    let placed = c.affine(Cplx::new(0.0, 1.0), Cplx::new(1.0, 0.0), false);
    assert!(check_elastica(&placed).unwrap() < 1e-7);
    let scaled = PlanarCurve::elastica_curve(0.7, 0.5, 0.1, (-3.0, 3.0)).unwrap().scaled(1.5);
    assert!(check_elastica(&scaled).unwrap() < 1e-7);
    assert!(check_elastica(&circle(1.0)).is_err());
}

#[test]
fn oracles_on_cylinder_and_plane() {
    let s = cylinder(2.0);
    for &(t, u) in &[(0.3, 1.1), (2.0, -0.4), (5.0, 3.3)] {
        let j = s.jet(t, u).unwrap();
        assert!(rel_err(0.0, (fd_oracle_h(&s, t, u, 1e-4).unwrap() - j.h).norm()) < 1e-6);
        let c = fd_oracle_c(&s, t, u, 1e-4).unwrap();
        for (x, y) in c.iter().zip([j.c_ttt, j.c_tts, j.c_tss, j.c_sss]) {
            assert!(rel_err(*x, y) < 1e-6);
        }
        assert!((fd_oracle_grad_beta(&s, t, u, 1e-4).unwrap() - j.h).norm() < 1e-6);
    }
    let p = lines(0.0, 0.0);
    let h = fd_oracle_h(&p, 0.2, 0.3, 1e-4).unwrap();
    assert!(h.norm() < 1e-9);
    assert!(fd_oracle_c(&p, 0.2, 0.3, 1e-4).unwrap().iter().all(|c| c.abs() < 1e-9));
    assert!(fd_oracle_laplace_beta(&p, 0.2, 0.3, 1e-4).unwrap().abs() < 1e-9);
}

#[test]
fn laplace_beta_vanishes_on_cornu_pair() {
    let s = cornu_pair();
    for &(t, u) in &[(-1.0, 0.5), (0.3, 0.3), (1.2, -1.4)] {
        assert!(fd_oracle_laplace_beta(&s, t, u, 1e-4).unwrap().abs() < 1e-6);
    }
}

#[test]
fn oracle_summary_on_catalog() {
    for s in [cylinder(0.5), torus(), cornu_pair(), lemniscate_torus()] {
        let g = Grid::default_for(&s).unwrap_or(square(101, -1.5, 1.5));
        let r = verify_oracles(&s, g, 9, FD_STEP).unwrap();
        assert!(r.samples > 20);
        assert!(r.max() < FD_TOL, "{r:?}");
    }
}

#[test]
fn oracle_converges_at_second_order() {
    let ratio = convergence_ratio(&torus(), 0.7, 2.1, 1e-2).unwrap();
    assert!((3.0..=5.0).contains(&ratio), "{ratio}");
}

#[test]
fn explicit_forms() {
    use explicit::*;
    let s = torus();
    let pairs: Vec<(C2, C2)> = (0..40)
        .map(|k| {
            let (t, u) = (0.37 * k as f64, 0.11 + 0.23 * k as f64);
            (s.position(t, u).unwrap(), gerono_lissajous(t, u))
        })
        .collect();
    let (shift, res) = translation_fit(&pairs);
    assert!(res < 1e-8, "{res}");
    assert!((shift.z1 - Cplx::new(-1.75, -4.0 / 3.0)).norm() < 1e-8);

    let s = super::tests::lemniscate_torus();
    let pairs = |k: f64| -> Vec<(C2, C2)> {
        (0..20)
            .map(|n| {
                let (t, u) = (0.3 + 0.21 * n as f64, 0.7 + 0.17 * n as f64);
                (s.position(t, u).unwrap(), explicit::lemniscate_torus(t, u, k))
            })
            .collect()
    };
    assert!(translation_fit(&pairs(0.5)).1 < 1e-8);
    assert!(translation_fit(&pairs(0.25)).1 > 1e-3);
}

#[test]
fn implication_chain() {
    let cases: Vec<(StarSurface, Grid)> = vec![
        (lines(0.0, 0.0), square(21, -1.0, 1.0)),
        (lines(1.0, 2.0), square(21, -1.0, 1.0)),
        (cylinder(0.5), square(21, 0.0, TAU)),
        (cylinder(2.0), square(21, 0.0, TAU)),
        (cornu_pair(), square(21, -1.0, 1.0)),
        (torus(), square(21, 0.0, TAU)),
    ];
    for (s, g) in cases {
        let r = classify(
            "case",
            &s,
            g,
            &[Family::Special, Family::Pmc, Family::Hsl, Family::Cmc],
            &CheckParams::default(),
        )
        .unwrap();
        let p = |n: &str| r.get(n).unwrap().pass;
        if p("special") {
            assert!(p("pmc"));
        }
        if p("pmc") {
            assert!(p("hsl") && p("cmc"), "{r:?}");
        }
    }
}

#[test]
fn report_roundtrip_and_families() {
    let s = cylinder(1.0);
    let r = classify(
        "cylinder",
        &s,
        square(21, 0.0, TAU),
        &Family::ALL,
        &CheckParams::default(),
    )
    .unwrap();
    assert!(r.get("pmc").unwrap().pass);
    assert!(r.get("shrinker").unwrap().pass);
    assert!(!r.get("special").unwrap().pass);
    assert!(!r.get("elastica").unwrap().pass);
    let json = serde_json::to_string(&r).unwrap();
    let back: ClassReport = serde_json::from_str(&json).unwrap();
    assert_eq!(back.records.len(), r.records.len());
    for f in Family::ALL {
        assert_eq!(f.name().parse::<Family>().unwrap(), f);
    }
    assert!("bogus".parse::<Family>().is_err());
}

#[test]
fn hamiltonian_stationary_displays() {
    let fit = |s: &StarSurface, f: &dyn Fn(f64, f64) -> C2| {
        let pairs: Vec<(C2, C2)> = (0..25)
            .map(|n| {
                let (t, u) = (-1.1 + 0.19 * n as f64, 0.9 - 0.13 * n as f64);
                (s.position(t, u).unwrap(), f(t, u))
            })
            .collect();
        explicit::translation_fit(&pairs).1
    };
    for &(a0, b0, r) in &[(0.0, 0.0, 1.0), (0.7, -0.4, 1.5)] {
        let al = PlanarCurve::circle(Cplx::new(a0, 0.0), r, 1.0 / r, 0.0);
        let om = PlanarCurve::line(b0).with_domain(-3.0, 3.0).unwrap();
        let s = StarSurface::build(al, om, 0.0, 0.0).unwrap();
        let res = fit(&s, &|t, u| explicit::hsl_circle_line(a0, b0, r, t, u));
        assert!(res < 1e-10, "{res}");
    }
    for &(a1, a2, r) in &[(0.5, 0.5, 2.0), (-0.3, 1.2, 0.7)] {
        let al = PlanarCurve::circle(Cplx::new(a1, 0.0), 1.0, 1.0, 0.0);
        let om = PlanarCurve::circle(Cplx::new(a2, 0.0), r, 1.0 / r, 0.0);
        let s = StarSurface::build(al, om, 0.0, 0.0).unwrap();
        let res = fit(&s, &|t, u| explicit::hsl_two_circles(a1, a2, r, t, u));
        assert!(res < 1e-10, "{res}");
    }
}

#[test]
fn oracles_at_explicit_points() {
    let s = lines(0.0, 0.0);
    let pts = [(0.0, 0.0), (0.3, -0.4), (-0.7, 0.2)];
    let r = verify_oracles_at(&s, &pts, FD_STEP, 1e-3).unwrap();
    assert_eq!(r.samples, 2);
    assert!(r.max() < FD_TOL, "{r:?}");
}
