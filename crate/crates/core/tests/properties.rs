use std::f64::consts::TAU;
use std::sync::Arc;

use poncelet_core::curve::{fd_derivatives, signed_area, Circle, PlaneCurve};
use poncelet_core::envelope::ReparamCurve;
use poncelet_core::equiangular::vertex_count_brute;
use poncelet_core::roots::golden_min;
use poncelet_core::{
    clan_from_envelope, conjugator_to_rotation, curve_from_support, envelope_from_vertex, equiangular_pair, frame,
    interiority_check, make_torsion, polyline_self_intersects, rotation_number, verify_pair, vertex_count,
    CircleDiffeo, EquiangularSpec, FourierLift, FourierTerm, Rational, RationalAngle, SupportFunction, TorsionMap,
    TrigTerm, Vec2, VertexStepSystem, J,
};
use proptest::prelude::*;

fn vec2() -> impl Strategy<Value = Vec2> {
    (-100.0..100.0f64, -100.0..100.0f64).prop_map(|(x, y)| Vec2::new(x, y))
}

/// Support functions with `p + p'' > 8`.
fn convex_support() -> impl Strategy<Value = SupportFunction> {
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 3).prop_map(|c| {
        let terms = c
            .iter()
            .enumerate()
            .map(|(i, &(a, b))| {
                let j = i as i64 + 2;
                let s = 0.5 / (j * j) as f64;
                TrigTerm::new(Rational::integer(j), s * a, s * b)
            })
            .collect();
        SupportFunction::new(10.0, terms, 1).unwrap()
    })
}

/// Lifts `x + c + sum a_j sin(jx) + b_j cos(jx)` on `[0, L)` with `F' >= 0.5`.
fn monotone_lift(l: f64) -> impl Strategy<Value = CircleDiffeo> {
    (0.0..l, prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 2)).prop_map(move |(c, ab)| {
        let terms = ab
            .iter()
            .enumerate()
            .map(|(i, &(a, b))| {
                let j = i as u32 + 1;
                // |F' - 1| <= sum j (|a|+|b|) 2 pi / L <= 0.4
                let s = 0.1 * l / (TAU * j as f64);
                FourierTerm { j, sin: s * a, cos: s * b }
            })
            .collect();
        FourierLift::new(l, c, terms).unwrap().into()
    })
}

fn torsion(l: f64) -> impl Strategy<Value = TorsionMap> {
    (monotone_lift(l), 3u32..8)
        .prop_flat_map(move |(h, n)| (1..n as i64).prop_filter_map("coprime", move |m| make_torsion(&h, m, n).ok()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn quarter_turn_is_an_isometry(v in vec2(), w in vec2()) {
        prop_assert!(((J * v).dot(J * w) - v.dot(w)).abs() < 1e-12 * (1.0 + v.norm() * w.norm()));
        prop_assert!(v.dot(J * v).abs() < 1e-12);
    }

    #[test]
    fn frame_derivatives(phi in -20.0..20.0f64) {
        let h = 1e-5;
        let (u, up) = frame(phi);
        let du = (frame(phi + h).0 - frame(phi - h).0) / (2.0 * h);
        let dup = (frame(phi + h).1 - frame(phi - h).1) / (2.0 * h);
        prop_assert!((du - up).norm() < 1e-8);
        prop_assert!((dup + u).norm() < 1e-8);
    }

    #[test]
    fn self_intersection_invariant_under_rotation_and_motion(
        radii in prop::collection::vec(0.2..2.0f64, 5..12),
        shift in 0usize..12,
        theta in 0.0..TAU,
        offset in vec2(),
        reverse_star in any::<bool>(),
    ) {
        let n = radii.len();
        let step = if reverse_star { 2 } else { 1 };
        let pts: Vec<Vec2> = (0..n)
            .map(|i| Vec2::from_angle(TAU * ((i * step) % n) as f64 / n as f64) * radii[i])
            .collect();
        let base = polyline_self_intersects(&pts, true).unwrap();
        let mut rotated = pts.clone();
        rotated.rotate_left(shift % n);
        prop_assert_eq!(polyline_self_intersects(&rotated, true).unwrap(), base);
        let moved: Vec<Vec2> = pts.iter().map(|p| p.rotated(theta) + offset).collect();
        prop_assert_eq!(polyline_self_intersects(&moved, true).unwrap(), base);
    }

    #[test]
    fn support_jet_matches_differences(p in convex_support(), phis in prop::collection::vec(0.0..TAU, 100)) {
        let c = curve_from_support(&p);
        let h = 1e-5;
        for phi in phis {
            let j = c.jet(phi);
            let v = (c.point(phi + h) - c.point(phi - h)) / (2.0 * h);
            prop_assert!((j.vel - v).norm() <= 1e-6 * j.vel.norm());
            let (_, a) = fd_derivatives(|t| c.point(t), phi, 1e-3);
            prop_assert!((j.acc - a).norm() <= 1e-6 * j.acc.norm());
            let rho = p.radius_of_curvature(phi);
            prop_assert!((j.curvature() - 1.0 / rho).abs() < 1e-8);
        }
    }

    #[test]
    fn disc_area(a in 0.5..20.0f64) {
        let c = curve_from_support(&SupportFunction::constant(a, 1).unwrap());
        let area = signed_area(&c, 4096);
        let exact = std::f64::consts::PI * a * a;
        prop_assert!((area - exact).abs() < 1e-6 * exact);
    }

    #[test]
    fn rotation_number_is_conjugacy_invariant(h in monotone_lift(TAU), shift in 0.0..TAU) {
        let iterations = 2000;
        let f = CircleDiffeo::rotation(TAU, shift).unwrap();
        let g = h.inverse().compose(&f.compose(&h).unwrap()).unwrap();
        let a = rotation_number(&f, iterations).unwrap();
        let b = rotation_number(&g, iterations).unwrap();
        let d = (a - b).abs();
        prop_assert!(d.min(1.0 - d) <= 2.0 / iterations as f64, "{a} vs {b}");
    }

    #[test]
    fn conjugator_identity_and_monotonicity(f in torsion(TAU)) {
        let c = conjugator_to_rotation(&f).unwrap();
        prop_assert!(c.identity_error(f.map(), 256) < 1e-8);
        prop_assert!(c.min_derivative > 0.0);
        prop_assert!(f.map().min_derivative(1024) > 0.0);
    }

    #[test]
    fn inverse_round_trip(h in monotone_lift(3.0 * TAU)) {
        let l = h.circumference();
        let inv = h.inverse();
        for i in 0..256 {
            let x = l * i as f64 / 256.0;
            prop_assert!((h.lift(inv.lift(x)) - x).abs() < 1e-10 * l);
        }
    }

    #[test]
    fn vertex_count_matches_brute_force(num in 1i64..60, den in 1i64..30, k in 1u32..6) {
        let a = RationalAngle::from_pi_multiple(Rational::new(num, den).unwrap());
        prop_assume!(!a.is_multiple_of_pi());
        prop_assert_eq!(vertex_count(a, k).unwrap(), vertex_count_brute(a, k));
    }

    #[test]
    fn envelope_tangency_and_step_invariance(y in convex_support(), f in torsion(TAU)) {
        let k = curve_from_support(&y);
        let sys = VertexStepSystem::new(Arc::new(k), f.clone()).unwrap();
        let c = envelope_from_vertex(&sys).unwrap();
        for i in 0..64 {
            let t = TAU * i as f64 / 64.0;
            let (x1, _) = fd_derivatives(|s| c.point(s), t, 1e-3);
            let d = c.delta(t);
            prop_assert!(d.perp().dot(x1).abs() < 1e-8 * d.norm() * x1.norm().max(1.0));
            prop_assert!(c.denominator(t) > 0.0);
        }
        // the family of sides is the same starting from f(phi)
        let shifted = ReparamCurve::new(Arc::new(c.clone()), f.map().clone()).unwrap();
        let n = 2048;
        let dense = c.sample(n);
        let step = TAU / n as f64;
        let hausdorff = shifted
            .sample(256)
            .iter()
            .map(|p| {
                let mut near: Vec<(usize, f64)> = dense.iter().map(|q| p.distance(*q)).enumerate().collect();
                near.sort_by(|a, b| a.1.total_cmp(&b.1));
                near.iter()
                    .take(4)
                    .map(|&(i, _)| {
                        let t = step * i as f64;
                        golden_min(|s| p.distance(c.point(s)), t - step, t + step, 1e-12).1
                    })
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(0.0, f64::max);
        prop_assert!(hausdorff < 1e-6, "{hausdorff}");
    }

    #[test]
    fn convex_vertex_curves_have_interior_contacts(y in convex_support(), f in torsion(TAU)) {
        let sys = VertexStepSystem::new(Arc::new(curve_from_support(&y)), f).unwrap();
        let r = interiority_check(&sys, 512).unwrap();
        prop_assert!(r.vertex_curve_simple);
        prop_assert!(r.pass, "{:?}", r.violations);
    }

    #[test]
    fn equiangular_pairs_verify(p in convex_support(), num in 1i64..12, den in 2i64..13) {
        let a = RationalAngle::from_pi_multiple(Rational::new(num, den).unwrap());
        prop_assume!(a.pi_multiple() < Rational::ONE);
        let cfg = equiangular_pair(&EquiangularSpec::new(p, a, 0).unwrap()).unwrap();
        let r = verify_pair(&cfg, 16, 1e-7).unwrap();
        prop_assert!(r.pass, "{:?}", r.failed_checks());
    }

    #[test]
    fn envelope_clan_tangencies(steps in prop::collection::vec(monotone_lift(TAU), 2)) {
        let p = SupportFunction::new(3.0, vec![TrigTerm::new(Rational::integer(2), 0.2, 0.1)], 1).unwrap();
        // shift each step forward by a third of a turn so the chain stays fixed-point free
        let steps: Vec<CircleDiffeo> = steps
            .iter()
            .map(|s| CircleDiffeo::rotation(TAU, TAU / 3.0 - s.lift(0.0)).unwrap().compose(s).unwrap())
            .collect();
        let Ok(clan) = clan_from_envelope(&p, &steps) else { return Ok(()) };
        for (i, c) in clan.curves.iter().enumerate() {
            for j in 0..32 {
                let t = TAU * j as f64 / 32.0;
                let y = c.point(t);
                for g in [&clan.g[i], &clan.g[i + 1]] {
                    let psi = g.lift(t);
                    prop_assert!((y.dot(frame(psi).0) - p.eval(psi)).abs() < 1e-10);
                }
            }
        }
    }
}

#[test]
fn circle_vertex_curve_with_rotation_is_scaled_circle() {
    let sys = VertexStepSystem::new(Arc::new(Circle::new(Vec2::ZERO, 2.0)), TorsionMap::rotation(TAU, 1, 6).unwrap())
        .unwrap();
    let c = envelope_from_vertex(&sys).unwrap();
    for p in c.sample(32) {
        assert!((p.norm() - 2.0 * (TAU / 12.0).cos()).abs() < 1e-12);
    }
}
