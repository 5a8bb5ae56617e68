//! Constructions pushed through the independent verifier.

use std::f64::consts::{PI, TAU};
use std::sync::Arc;

use approx::assert_abs_diff_eq;
use poncelet_core::curve::{Circle, PlaneCurve};
use poncelet_core::{
    clan_from_envelope, clan_from_vertex, curve_from_support, envelope_from_vertex, equiangular_clan, equiangular_pair,
    equilateral_pair, is_strictly_convex_curve, make_torsion, next_vertex_oracle, regularity_scan, seeded_next_vertex,
    translate_vertex_curves, verify, verify_pair, vertex_from_envelope, CircleDiffeo, ContactStepSystem,
    EquiangularSpec, FourierLift, FourierTerm, OracleMode, Rational, RationalAngle, SupportFunction, TorsionMap,
    TrigTerm, Vec2, VerifyOptions, VertexStepSystem,
};

fn angle(n: i64, d: i64) -> RationalAngle {
    RationalAngle::from_pi_multiple(Rational::new(n, d).unwrap())
}

fn conjugated(l: f64, m: i64, n: u32, amp: f64) -> TorsionMap {
    let h: CircleDiffeo = FourierLift::new(
        l,
        0.0,
        vec![
            FourierTerm { j: 1, sin: amp * l / TAU, cos: 0.0 },
            FourierTerm { j: 2, sin: 0.0, cos: 0.3 * amp * l / TAU },
        ],
    )
    .unwrap()
    .into();
    make_torsion(&h, m, n).unwrap()
}

#[test]
fn equilateral_oracle_step_is_rigid() {
    // a = 8/5: K is not convex, so the step is recovered near the schedule
    let pair = equilateral_pair(1, Rational::integer(2), 1.6).unwrap();
    let cfg = pair.configuration().unwrap();
    let tr = &cfg.schedule.transitions[0];
    for i in 0..16 {
        let t1 = 0.37 * i as f64;
        let s = seeded_next_vertex(&cfg.envelopes[0], &pair.vertex_curve, &pair.vertex_curve, tr, t1).unwrap();
        assert_abs_diff_eq!(s.t2 - t1, 2.0 * PI / 3.0, epsilon = 1e-8);
    }
    // above the critical a the blind search applies
    let convex = equilateral_pair(1, Rational::integer(2), 5.0).unwrap();
    assert!(is_strictly_convex_curve(&convex.vertex_curve, 1024).unwrap());
    for i in 0..16 {
        let t1 = 0.37 * i as f64;
        let s = next_vertex_oracle(&convex.vertex_curve, &convex.support, t1).unwrap();
        assert_abs_diff_eq!((s.t2 - t1).rem_euclid(TAU), 2.0 * PI / 3.0, epsilon = 1e-8);
    }
}

#[test]
fn wankel_pair_verifies() {
    let pair = equilateral_pair(1, Rational::integer(2), 2.0 + 3f64.sqrt()).unwrap();
    assert!(pair.convex_envelope);
    let mut cfg = pair.configuration().unwrap();
    cfg.expect.interior_contacts = true;
    cfg.expect.regular = Some(true);
    let r = verify_pair(&cfg, 64, 1e-7).unwrap();
    assert!(r.pass, "{:?}", r.failed_checks());
    assert!(r.closure_error < 1e-7);
    assert!(r.max_tangency_gap < 1e-8);
    assert!(r.s_range[0] > 0.0 && r.s_range[1] < 1.0);
}

#[test]
fn triangle_and_hexagon_branches() {
    let p = SupportFunction::new(
        9.0,
        vec![
            TrigTerm::new(Rational::integer(2), 0.9, 0.0),
            TrigTerm::new(Rational::integer(5), -2.0 / 9.0, 0.0),
            TrigTerm::new(Rational::integer(3), 0.0, 2.0 / 7.0),
        ],
        1,
    )
    .unwrap();
    for (branch, count) in [(0, 3), (1, 6)] {
        let spec = EquiangularSpec::new(p.clone(), angle(2, 3), branch).unwrap();
        let cfg = equiangular_pair(&spec).unwrap();
        assert_eq!(cfg.schedule.vertex_count, count);
        let r = verify_pair(&cfg, 64, 1e-7).unwrap();
        assert!(r.pass, "branch {branch}: {:?}", r.failed_checks());
    }
}

#[test]
fn concentric_circles_seven() {
    let p = SupportFunction::constant(1.0, 1).unwrap();
    let spec = EquiangularSpec::new(p, angle(2, 7), 0).unwrap();
    let cfg = equiangular_pair(&spec).unwrap();
    let opts = VerifyOptions { closure_tol: 1e-9, step_tol: 1e-9, ..Default::default() };
    let r = verify(&cfg, &opts).unwrap();
    assert!(r.pass, "{:?}", r.failed_checks());
}

#[test]
fn pentagram_has_five_vertices() {
    let p = SupportFunction::new(4.0, vec![TrigTerm::new(Rational::new(2, 3).unwrap(), 1.0, 0.0)], 3).unwrap();
    let pair = equilateral_pair(4, Rational::new(2, 3).unwrap(), 4.0).unwrap();
    assert_eq!(pair.vertex_count, 5);
    assert_eq!(pair.support.sheets(), 3);
    assert_eq!(pair.support.terms(), p.terms());
    let r = verify_pair(&pair.configuration().unwrap(), 64, 1e-7).unwrap();
    assert!(r.pass, "{:?}", r.failed_checks());
}

#[test]
fn vertex_from_envelope_round_trip() {
    // circle envelope with a conjugated rotation: the vertex curve is not a circle
    let p = SupportFunction::constant(2.0, 1).unwrap();
    let sys = ContactStepSystem::new(p, conjugated(TAU, 1, 5, 0.3)).unwrap();
    let k = vertex_from_envelope(&sys).unwrap();
    let radii: Vec<f64> = k.sample(64).iter().map(|v| v.norm()).collect();
    let spread = radii.iter().cloned().fold(0.0, f64::max) - radii.iter().cloned().fold(f64::INFINITY, f64::min);
    assert!(spread > 1e-2);
    let cfg = sys.configuration(&k).unwrap();
    let r = verify_pair(&cfg, 64, 1e-7).unwrap();
    assert!(r.pass, "{:?}", r.failed_checks());
    assert!(r.max_step_error < 1e-7);
}

#[test]
fn envelope_from_vertex_pair_verifies_and_perturbation_fails() {
    let y = curve_from_support(&SupportFunction::cosine(20.0, Rational::integer(3), 1.0).unwrap());
    let sys = VertexStepSystem::new(Arc::new(y), conjugated(TAU, 1, 4, 0.2)).unwrap();
    let c = envelope_from_vertex(&sys).unwrap();
    let cfg = sys.configuration(&c).unwrap();
    let r = verify_pair(&cfg, 64, 1e-7).unwrap();
    assert_eq!(r.oracle, OracleMode::Seeded);
    assert!(r.pass, "{:?}", r.failed_checks());
    let bad = translate_vertex_curves(&cfg, Vec2::new(0.0, 1e-3));
    assert!(!verify_pair(&bad, 64, 1e-6).unwrap().pass);
}

#[test]
fn clan_from_vertex_three_distinct_envelopes() {
    let y = Arc::new(Circle::new(Vec2::ZERO, 3.0));
    let h1: CircleDiffeo =
        FourierLift::new(TAU, TAU / 3.0, vec![FourierTerm { j: 1, sin: 0.1, cos: 0.0 }]).unwrap().into();
    let h2: CircleDiffeo =
        FourierLift::new(TAU, TAU / 3.0, vec![FourierTerm { j: 2, sin: 0.0, cos: 0.05 }]).unwrap().into();
    let clan = clan_from_vertex(y, &[h1, h2]).unwrap();
    assert_eq!(clan.envelopes.len(), 3);
    let (a, b) = (clan.envelopes[0].point(0.3), clan.envelopes[1].point(0.3));
    assert!(a.distance(b) > 1e-3);
    let cfg = clan.configuration().unwrap();
    let r = verify_pair(&cfg, 64, 1e-7).unwrap();
    assert!(r.pass, "{:?}", r.failed_checks());
}

#[test]
fn clan_from_envelope_triangle_around_circle() {
    let p = SupportFunction::constant(1.0, 1).unwrap();
    let f1: CircleDiffeo = FourierLift::new(TAU, 2.0, vec![FourierTerm { j: 1, sin: 0.2, cos: 0.0 }]).unwrap().into();
    let f2: CircleDiffeo = FourierLift::new(TAU, 2.1, vec![FourierTerm { j: 1, sin: 0.0, cos: 0.15 }]).unwrap().into();
    let clan = clan_from_envelope(&p, &[f1, f2]).unwrap();
    let cfg = clan.configuration().unwrap();
    let r = verify_pair(&cfg, 64, 1e-7).unwrap();
    assert!(r.pass, "{:?}", r.failed_checks());
    for (i, c) in clan.curves.iter().enumerate() {
        for j in 0..32 {
            let t = TAU * j as f64 / 32.0;
            let g0 = clan.g[i].lift(t);
            let g1 = clan.g[i + 1].lift(t);
            let y = c.point(t);
            assert_abs_diff_eq!(y.dot(poncelet_core::frame(g0).0), 1.0, epsilon = 1e-10);
            assert_abs_diff_eq!(y.dot(poncelet_core::frame(g1).0), 1.0, epsilon = 1e-10);
        }
    }
}

#[test]
fn equiangular_clan_figure() {
    let p = SupportFunction::new(1.0, vec![TrigTerm::new(Rational::new(1, 2).unwrap(), 0.5, 0.0)], 2).unwrap();
    let clan = equiangular_clan(&p, &[angle(5, 6), angle(5, 12), angle(3, 4)], &[0, 0, 0]).unwrap();
    assert_eq!(clan.vertex_count, 6);
    let r = verify_pair(&clan.configuration().unwrap(), 64, 1e-7).unwrap();
    assert!(r.pass, "{:?}", r.failed_checks());
}

#[test]
fn fifty_three_over_forty_five_sequence_checks() {
    let l = Rational::new(4, 3).unwrap();
    let p = SupportFunction::cosine(53.0 / 45.0, l, 1.0).unwrap();
    let y = curve_from_support(&p);
    let sys = VertexStepSystem::new(Arc::new(y), TorsionMap::rotation(p.period(), 1, 4).unwrap()).unwrap();
    let c = envelope_from_vertex(&sys).unwrap();
    let cfg = sys.configuration(&c).unwrap();
    let r = verify_pair(&cfg, 64, 1e-7).unwrap();
    assert!(r.pass, "{:?}", r.failed_checks());
    assert!(r.s_range[0] < 0.0 && r.s_range[1] > 1.0);
}

#[test]
fn cusp_example_is_detected() {
    let p = SupportFunction::new(-2.0 / 3.0, vec![TrigTerm::new(Rational::new(2, 3).unwrap(), 1.0, 0.0)], 3).unwrap();
    let mut found = Vec::new();
    for branch in 0..6 {
        let spec = EquiangularSpec::new(p.clone(), angle(1, 2), branch).unwrap();
        let k = poncelet_core::equiangular_vertex_curve(&spec).unwrap();
        let scan = regularity_scan(&k, 4096).unwrap();
        if !scan.near_zeros.is_empty() {
            found.push(branch);
        }
    }
    assert_eq!(found, vec![1, 4]);
}

#[test]
fn epitrochoid_above_critical_is_regular() {
    let a = poncelet_core::critical_a(1, Rational::integer(2)).unwrap() + 0.5;
    let pair = equilateral_pair(1, Rational::integer(2), a).unwrap();
    assert!(regularity_scan(&pair.vertex_curve, 1024).unwrap().min_speed > 0.1);
}
