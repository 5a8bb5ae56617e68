//! Envelopes of polygon sides over a given vertex curve.
//!
//! With vertex curve `Y`, step `f` and `Delta = Y∘f - Y`, the side line through
//! `Y(t)` and `Y(f(t))` touches its envelope at
//!
//! ```text
//! X = Y + s Delta,    s = -<Y', J Delta> / <Delta', J Delta>.
//! ```

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::circle_map::{conjugator_to_rotation, find_fixed_point, CircleDiffeo, TorsionMap};
use crate::curve::{self_intersects, Jet, PlaneCurve, SharedCurve};
use crate::error::{Error, Result};
use crate::geom::Vec2;
use crate::polygon::{Envelope, Expectations, PonceletConfiguration, Schedule, Transition};
use crate::roots::{bisect, sign_change_brackets};

/// Samples used to scan denominators and fixed points.
pub const SCAN_SAMPLES: usize = 1024;
pub const FIXED_POINT_PROBES: usize = 256;

/// `Y ∘ F` for a lift `F` on the curve's own parameter circle.
#[derive(Debug, Clone)]
pub struct ReparamCurve {
    pub curve: SharedCurve,
    pub map: CircleDiffeo,
}

impl ReparamCurve {
    pub fn new(curve: SharedCurve, map: CircleDiffeo) -> Result<Self> {
        check_circumference(curve.period(), map.circumference())?;
        Ok(Self { curve, map })
    }
}

fn check_circumference(period: f64, l: f64) -> Result<()> {
    if (period - l).abs() > 1e-9 * period.max(l) {
        return Err(Error::Precondition(format!("map circumference {l} differs from curve period {period}")));
    }
    Ok(())
}

impl PlaneCurve for ReparamCurve {
    fn period(&self) -> f64 {
        self.curve.period()
    }

    fn jet(&self, t: f64) -> Jet {
        let f = self.map.lift_jet(t);
        let y = self.curve.jet(f.value);
        Jet { pos: y.pos, vel: y.vel * f.d1, acc: y.acc * (f.d1 * f.d1) + y.vel * f.d2 }
    }

    fn point(&self, t: f64) -> Vec2 {
        self.curve.point(self.map.lift(t))
    }
}

/// A vertex curve with a torsion step of period at least 3.
#[derive(Debug, Clone)]
pub struct VertexStepSystem {
    vertex_curve: SharedCurve,
    step: TorsionMap,
}

impl VertexStepSystem {
    pub fn new(vertex_curve: SharedCurve, step: TorsionMap) -> Result<Self> {
        if step.period() < 3 {
            return Err(Error::Precondition(format!("step period {} < 3: the polygon collapses", step.period())));
        }
        check_circumference(vertex_curve.period(), step.circumference())?;
        Ok(Self { vertex_curve, step })
    }

    pub fn vertex_curve(&self) -> &SharedCurve {
        &self.vertex_curve
    }

    pub fn step(&self) -> &TorsionMap {
        &self.step
    }

    fn shifted(&self) -> Result<SharedCurve> {
        Ok(Arc::new(ReparamCurve::new(self.vertex_curve.clone(), self.step.map().clone())?))
    }

    /// The pair `(Y, C)` with the single step `f`; sides touch `C` at the start parameter.
    pub fn configuration(&self, envelope: &EnvelopeCurve) -> Result<PonceletConfiguration> {
        let l = self.vertex_curve.period();
        Ok(PonceletConfiguration {
            name: "envelope from vertex curve".into(),
            envelopes: vec![Envelope::Curve(Arc::new(envelope.clone()))],
            vertex_curves: vec![self.vertex_curve.clone()],
            schedule: Schedule {
                transitions: vec![Transition {
                    from_curve: 0,
                    to_curve: 0,
                    envelope: 0,
                    step: self.step.map().clone(),
                    contact: CircleDiffeo::identity(l)?,
                }],
                vertex_count: self.step.period() as usize,
            },
            expect: Expectations::default(),
        })
    }
}

/// Envelope of the lines through `first(t)` and `second(t)`.
#[derive(Debug, Clone)]
pub struct EnvelopeCurve {
    pub first: SharedCurve,
    pub second: SharedCurve,
}

struct ChordJet {
    a: Jet,
    delta: Jet,
    n: f64,
    d: f64,
}

impl EnvelopeCurve {
    fn chord(&self, t: f64) -> ChordJet {
        let a = self.first.jet(t);
        let b = self.second.jet(t);
        let delta = Jet { pos: b.pos - a.pos, vel: b.vel - a.vel, acc: b.acc - a.acc };
        // <v, J w> = cross(w, v)
        let n = delta.pos.cross(a.vel);
        let d = delta.pos.cross(delta.vel);
        ChordJet { a, delta, n, d }
    }

    /// `<Delta', J Delta>`; the envelope is undefined where it vanishes.
    pub fn denominator(&self, t: f64) -> f64 {
        self.chord(t).d
    }

    /// Chord parameter `s`: the contact point is `first + s (second - first)`.
    pub fn chord_parameter(&self, t: f64) -> f64 {
        let c = self.chord(t);
        -c.n / c.d
    }

    /// `Delta(t) = second(t) - first(t)`.
    pub fn delta(&self, t: f64) -> Vec2 {
        self.second.point(t) - self.first.point(t)
    }

    fn pos_vel(&self, t: f64) -> (Vec2, Vec2) {
        let ChordJet { a, delta, n, d } = self.chord(t);
        let s = -n / d;
        let dn = delta.vel.cross(a.vel) + delta.pos.cross(a.acc);
        let dd = delta.pos.cross(delta.acc);
        let ds = -(dn * d - n * dd) / (d * d);
        (a.pos + delta.pos * s, a.vel + delta.pos * ds + delta.vel * s)
    }
}

impl PlaneCurve for EnvelopeCurve {
    fn period(&self) -> f64 {
        self.first.period()
    }

    /// Position and velocity are exact; acceleration is a 5-point difference
    /// of the velocity with `h = 1e-4 L`.
    fn jet(&self, t: f64) -> Jet {
        let (pos, vel) = self.pos_vel(t);
        let h = 1e-4 * self.period();
        let v = |k: f64| self.pos_vel(t + k * h).1;
        let acc = (v(-2.0) - v(2.0) + (v(1.0) - v(-1.0)) * 8.0) / (12.0 * h);
        Jet { pos, vel, acc }
    }

    fn point(&self, t: f64) -> Vec2 {
        let c = self.chord(t);
        c.a.pos + c.delta.pos * (-c.n / c.d)
    }
}

fn check_denominator(env: &EnvelopeCurve, samples: usize) -> Result<()> {
    let l = env.period();
    let scale = env.first.sample(64).iter().map(|p| p.norm()).fold(1.0, f64::max);
    let d = |t: f64| env.denominator(t);
    if let Some(&(lo, hi)) = sign_change_brackets(d, 0.0, l, samples, true).first() {
        let param = bisect(d, lo, hi, 1e-13 * l);
        return Err(Error::Singular { what: "chord denominator <Delta', J Delta>", param, lo, hi });
    }
    let h = l / samples as f64;
    for i in 0..samples {
        let t = h * i as f64;
        if env.denominator(t).abs() <= 1e-12 * scale * scale {
            return Err(Error::Singular {
                what: "chord denominator <Delta', J Delta>",
                param: t,
                lo: t - h,
                hi: t + h,
            });
        }
    }
    Ok(())
}

/// Builds the envelope `C` of the sides `Y(t) Y(f(t))`.
///
/// Fails with the offending parameter interval if `<Delta', J Delta>`
/// vanishes on the 1024-point scan.
pub fn envelope_from_vertex(sys: &VertexStepSystem) -> Result<EnvelopeCurve> {
    let env = EnvelopeCurve { first: sys.vertex_curve.clone(), second: sys.shifted()? };
    check_denominator(&env, SCAN_SAMPLES)?;
    Ok(env)
}

/// Regularity of the envelope via the conjugated determinant and via `g`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegularityReport {
    pub samples: usize,
    /// Smallest `|det|` of the conjugated 2x2 criterion.
    pub min_abs_det: f64,
    /// Parameters (conjugated) where the determinant changes sign.
    pub det_sign_changes: Vec<f64>,
    /// Smallest `|g|` with `X' = g Delta`.
    pub min_abs_g: f64,
    /// Parameters (original) where `g` changes sign: cusps of the envelope.
    pub g_sign_changes: Vec<f64>,
    /// Largest relative mismatch of `<X'', J X'> = g^2 <Delta', J Delta>`.
    pub curvature_identity_error: f64,
    /// Both criteria locate the same number of singular points.
    pub consistent: bool,
    pub regular: bool,
}

fn sign_changes(vals: &[(f64, f64)], h: f64, refine: impl Fn(f64) -> f64, xtol: f64) -> Vec<f64> {
    let n = vals.len();
    (0..n)
        .filter_map(|i| {
            let (t, a) = vals[i];
            let b = vals[(i + 1) % n].1;
            ((a < 0.0) != (b < 0.0)).then(|| bisect(&refine, t, t + h, xtol))
        })
        .collect()
}

/// Checks the 2x2 determinant criterion in the conjugated parametrization
/// `Z = Y ∘ H^-1`, `Delta(t) = Z(t + alpha) - Z(t)`, and cross-checks it with
/// sign changes of `g = <X', Delta> / |Delta|^2` of the envelope `c`.
pub fn envelope_regularity(sys: &VertexStepSystem, c: &EnvelopeCurve, samples: usize) -> Result<RegularityReport> {
    let samples = samples.max(64);
    let conj = conjugator_to_rotation(&sys.step)?;
    let z = ReparamCurve::new(sys.vertex_curve.clone(), conj.map.inverse())?;
    let alpha = conj.shift;
    let l = sys.vertex_curve.period();
    let det = |t: f64| {
        let z0 = z.jet(t);
        let z1 = z.jet(t + alpha);
        let d = z1.pos - z0.pos;
        let dv = z1.vel - z0.vel;
        // <v, J w> = cross(w, v)
        let r11 = d.cross(z0.vel);
        let r12 = d.cross(z1.vel);
        let r21 = d.cross(z0.acc) + 2.0 * dv.cross(z0.vel);
        let r22 = d.cross(z1.acc) + 2.0 * dv.cross(z1.vel);
        r11 * r22 - r12 * r21
    };
    let g = |t: f64| {
        let x = c.jet(t);
        let d = c.delta(t);
        x.vel.dot(d) / d.norm_sq()
    };
    let h = l / samples as f64;
    let ts: Vec<f64> = (0..samples).map(|i| h * i as f64).collect();
    let det_vals: Vec<(f64, f64)> = ts.iter().map(|&t| (t, det(t))).collect();
    let g_vals: Vec<(f64, f64)> = ts.iter().map(|&t| (t, g(t))).collect();
    let xtol = 1e-12 * l;
    let det_sign_changes = sign_changes(&det_vals, h, det, xtol);
    let g_sign_changes = sign_changes(&g_vals, h, g, xtol);
    let min_abs_det = det_vals.iter().map(|v| v.1.abs()).fold(f64::INFINITY, f64::min);
    let min_abs_g = g_vals.iter().map(|v| v.1.abs()).fold(f64::INFINITY, f64::min);
    let mut num = 0.0f64;
    let mut den = 0.0f64;
    for (&t, &(_, gv)) in ts.iter().zip(&g_vals) {
        let x = c.jet(t);
        let lhs = x.vel.cross(x.acc);
        let rhs = gv * gv * c.denominator(t);
        num = num.max((lhs - rhs).abs());
        den = den.max(rhs.abs());
    }
    let curvature_identity_error = num / den.max(f64::MIN_POSITIVE);
    let consistent = det_sign_changes.len() == g_sign_changes.len();
    let regular = det_sign_changes.is_empty() && g_sign_changes.is_empty() && min_abs_g > 1e-9;
    Ok(RegularityReport {
        samples,
        min_abs_det,
        det_sign_changes,
        min_abs_g,
        g_sign_changes,
        curvature_identity_error,
        consistent,
        regular,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum InteriorityViolation {
    /// `<Delta, J Z'(t)> <= 0`.
    Leading,
    /// `<-Delta, J Z'(t + alpha)> <= 0`.
    Trailing,
    /// `s` outside `(0, 1)`.
    Chord,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InteriorityReport {
    pub samples: usize,
    pub vertex_curve_simple: bool,
    pub s_min: f64,
    pub s_max: f64,
    pub min_leading: f64,
    pub min_trailing: f64,
    /// First violations found, with their parameters.
    pub violations: Vec<(InteriorityViolation, f64)>,
    pub pass: bool,
}

/// Checks that contacts lie strictly inside the sides, together with the two
/// convexity inequalities in the conjugated parametrization.
pub fn interiority_check(sys: &VertexStepSystem, samples: usize) -> Result<InteriorityReport> {
    let env = EnvelopeCurve { first: sys.vertex_curve.clone(), second: sys.shifted()? };
    let conj = conjugator_to_rotation(&sys.step)?;
    let z = ReparamCurve::new(sys.vertex_curve.clone(), conj.map.inverse())?;
    let alpha = conj.shift;
    let l = sys.vertex_curve.period();
    let h = l / samples as f64;
    let mut r = InteriorityReport {
        samples,
        vertex_curve_simple: !self_intersects(sys.vertex_curve.as_ref(), 1024)?,
        s_min: f64::INFINITY,
        s_max: f64::NEG_INFINITY,
        min_leading: f64::INFINITY,
        min_trailing: f64::INFINITY,
        violations: Vec::new(),
        pass: true,
    };
    let record = |v: InteriorityViolation, t: f64, r: &mut InteriorityReport| {
        r.pass = false;
        if r.violations.len() < 32 {
            r.violations.push((v, t));
        }
    };
    for i in 0..samples {
        let t = h * i as f64;
        let z0 = z.jet(t);
        let z1 = z.jet(t + alpha);
        let d = z1.pos - z0.pos;
        let lead = d.dot(z0.vel.perp());
        let trail = (-d).dot(z1.vel.perp());
        let s = env.chord_parameter(t);
        r.min_leading = r.min_leading.min(lead);
        r.min_trailing = r.min_trailing.min(trail);
        r.s_min = r.s_min.min(s);
        r.s_max = r.s_max.max(s);
        if lead <= 0.0 {
            record(InteriorityViolation::Leading, t, &mut r);
        }
        if trail <= 0.0 {
            record(InteriorityViolation::Trailing, t, &mut r);
        }
        if !(s > 0.0 && s < 1.0) {
            record(InteriorityViolation::Chord, t, &mut r);
        }
    }
    Ok(r)
}

/// One vertex curve and the envelopes `C_1..C_n` of its clan.
#[derive(Debug, Clone)]
pub struct VertexClan {
    pub vertex_curve: SharedCurve,
    /// `f_1, ..., f_n` with `f_n = g_{n-1}^-1`.
    pub steps: Vec<CircleDiffeo>,
    /// `g_0 = id, g_i = f_i ∘ g_{i-1}`, for `i < n`.
    pub g: Vec<CircleDiffeo>,
    pub envelopes: Vec<EnvelopeCurve>,
}

/// Envelopes for the clan through `Y(g_0(phi)), ..., Y(g_{n-1}(phi))`.
///
/// Every `g_j ∘ g_i^-1` with `i < j` must be free of fixed points; the first
/// one found is reported with its parameter.
pub fn clan_from_vertex(y: SharedCurve, steps: &[CircleDiffeo]) -> Result<VertexClan> {
    if steps.is_empty() {
        return Err(Error::Precondition("a clan needs at least one step".into()));
    }
    let l = y.period();
    for f in steps {
        check_circumference(l, f.circumference())?;
    }
    let n = steps.len() + 1;
    let mut g = vec![CircleDiffeo::identity(l)?];
    for f in steps {
        let next = f.compose(g.last().unwrap())?;
        g.push(next);
    }
    for j in 1..n {
        for i in 0..j {
            let h = g[j].compose(&g[i].inverse())?;
            if let Some(param) = find_fixed_point(&h, FIXED_POINT_PROBES) {
                return Err(Error::FixedPoint { i, j, param });
            }
        }
    }
    let mut all_steps = steps.to_vec();
    all_steps.push(g[n - 1].inverse());
    let reparam = |m: &CircleDiffeo| -> Result<SharedCurve> { Ok(Arc::new(ReparamCurve::new(y.clone(), m.clone())?)) };
    let mut envelopes = Vec::with_capacity(n);
    for i in 0..n {
        let first = reparam(&g[i])?;
        let second = if i + 1 < n { reparam(&g[i + 1])? } else { y.clone() };
        let env = EnvelopeCurve { first, second };
        check_denominator(&env, SCAN_SAMPLES)?;
        envelopes.push(env);
    }
    Ok(VertexClan { vertex_curve: y, steps: all_steps, g, envelopes })
}

impl VertexClan {
    /// Transition `i` moves `Y(g_{i-1}(phi))` to `Y(g_i(phi))`; its side touches `C_i` at `phi`.
    pub fn configuration(&self) -> Result<PonceletConfiguration> {
        let n = self.envelopes.len();
        let transitions = (0..n)
            .map(|i| Transition {
                from_curve: 0,
                to_curve: 0,
                envelope: i,
                step: self.steps[i].clone(),
                contact: self.g[i].inverse(),
            })
            .collect();
        Ok(PonceletConfiguration {
            name: format!("clan from vertex curve n={n}"),
            envelopes: self.envelopes.iter().map(|e| Envelope::Curve(Arc::new(e.clone()))).collect(),
            vertex_curves: vec![self.vertex_curve.clone()],
            schedule: Schedule { transitions, vertex_count: n },
            expect: Expectations::default(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circle_map::{make_torsion, FourierLift, FourierTerm};
    use crate::curve::{fd_derivatives, Circle};
    use crate::rational::Rational;
    use crate::support::{curve_from_support, SupportFunction};
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{PI, TAU};

    fn circle_system(n: u32) -> VertexStepSystem {
        let y: SharedCurve = Arc::new(Circle::new(Vec2::ZERO, 1.0));
        VertexStepSystem::new(y, TorsionMap::rotation(TAU, 1, n).unwrap()).unwrap()
    }

    fn cosine_system(a: f64, l: Rational) -> VertexStepSystem {
        let p = SupportFunction::cosine(a, l, 1.0).unwrap();
        let y: SharedCurve = Arc::new(curve_from_support(&p));
        let period = p.period();
        // shift 2 pi / l = L / n
        let step = TorsionMap::rotation(period, 1, l.num() as u32).unwrap();
        VertexStepSystem::new(y, step).unwrap()
    }

    #[test]
    fn circle_and_rotation() {
        let n = 5;
        let sys = circle_system(n);
        let c = envelope_from_vertex(&sys).unwrap();
        let alpha = TAU / n as f64;
        for i in 0..20 {
            let t = 0.3 * i as f64;
            assert_abs_diff_eq!(c.chord_parameter(t), 0.5, epsilon = 1e-14);
            assert_abs_diff_eq!(c.point(t).norm(), (alpha / 2.0).cos(), epsilon = 1e-14);
        }
        let r = envelope_regularity(&sys, &c, 256).unwrap();
        assert!(r.regular && r.consistent, "{r:?}");
        assert!(r.min_abs_det > 1e-3);
        let i = interiority_check(&sys, 512).unwrap();
        assert!(i.pass);
        assert_abs_diff_eq!(i.s_min, 0.5, epsilon = 1e-13);
    }

    #[test]
    fn period_two_is_rejected() {
        let y: SharedCurve = Arc::new(Circle::new(Vec2::ZERO, 1.0));
        let step = TorsionMap::rotation(TAU, 1, 2).unwrap();
        assert!(VertexStepSystem::new(y, step).is_err());
    }

    #[test]
    fn envelope_velocity_matches_fd_and_is_tangent() {
        let h = FourierLift::new(TAU, 0.0, vec![FourierTerm { j: 1, sin: 0.15, cos: 0.05 }]).unwrap();
        let f = make_torsion(&h.into(), 1, 4).unwrap();
        let p = SupportFunction::cosine(3.0, Rational::integer(3), 0.2).unwrap();
        let sys = VertexStepSystem::new(Arc::new(curve_from_support(&p)), f).unwrap();
        let c = envelope_from_vertex(&sys).unwrap();
        for i in 0..16 {
            let t = 0.39 * i as f64;
            let j = c.jet(t);
            let (v, a) = fd_derivatives(|s| c.point(s), t, 1e-3);
            assert!((j.vel - v).norm() < 1e-7 * (1.0 + v.norm()));
            assert!((j.acc - a).norm() < 1e-5 * (1.0 + a.norm()));
            // <X', J Delta> = 0
            let d = c.delta(t);
            assert!(d.cross(v).abs() < 1e-8 * d.norm() * (1.0 + v.norm()));
        }
    }

    #[test]
    fn chord_parameter_closed_form_uses_cot() {
        // For p = a + cos(l phi) and the shift by 2 pi / l:
        // s = (1 + cot(pi / l) p' / p) / 2.
        for (a, l) in [
            (10.0, Rational::integer(3)),
            (30.0, Rational::integer(5)),
            (53.0 / 45.0, Rational::new(4, 3).unwrap()),
            (40.0, Rational::integer(4)),
        ] {
            let sys = cosine_system(a, l);
            let c = envelope_from_vertex(&sys).unwrap();
            let p = SupportFunction::cosine(a, l, 1.0).unwrap();
            let cot = 1.0 / (PI / l.to_f64()).tan();
            for i in 0..64 {
                let t = c.period() * i as f64 / 64.0;
                let pj = p.jet(t);
                let expect = 0.5 * (1.0 + cot * pj.d1 / pj.p);
                assert_abs_diff_eq!(c.chord_parameter(t), expect, epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn curvature_sign_change_below_threshold() {
        // Positive curvature of C needs a > 2 l^2 - 1 = 17 for l = 3.
        let below = cosine_system(16.9, Rational::integer(3));
        let c = envelope_from_vertex(&below).unwrap();
        let r = envelope_regularity(&below, &c, 1024).unwrap();
        assert!(!r.regular);
        assert!(!r.g_sign_changes.is_empty());
        assert!(r.consistent, "{r:?}");

        let above = cosine_system(17.1, Rational::integer(3));
        let c = envelope_from_vertex(&above).unwrap();
        let r = envelope_regularity(&above, &c, 1024).unwrap();
        assert!(r.regular, "{r:?}");
        assert!(r.curvature_identity_error < 1e-6);
    }

    #[test]
    fn fifty_three_over_forty_five_touches_extensions() {
        let sys = cosine_system(53.0 / 45.0, Rational::new(4, 3).unwrap());
        let r = interiority_check(&sys, 512).unwrap();
        assert!(!r.pass);
        assert!(!r.vertex_curve_simple);
        assert!(r.s_min < 0.0 && r.s_max > 1.0);
        assert!(r.violations.iter().any(|v| v.0 == InteriorityViolation::Chord));
    }

    #[test]
    fn singular_denominator_is_located() {
        // Y(f(t)) = Y(t) at t = 0 for this step: Delta vanishes there.
        let y: SharedCurve = Arc::new(Circle::new(Vec2::ZERO, 1.0));
        let h: CircleDiffeo =
            FourierLift::new(TAU, 0.0, vec![FourierTerm { j: 1, sin: 0.9, cos: 0.0 }]).unwrap().into();
        let env = EnvelopeCurve { first: y.clone(), second: Arc::new(ReparamCurve::new(y, h).unwrap()) };
        let err = check_denominator(&env, 1024).unwrap_err();
        assert!(matches!(err, Error::Singular { .. }), "{err:?}");
    }

    #[test]
    fn clan_of_equal_rotations_matches_pair() {
        let y: SharedCurve = Arc::new(Circle::new(Vec2::ZERO, 2.0));
        let r = CircleDiffeo::rotation(TAU, TAU / 3.0).unwrap();
        let clan = clan_from_vertex(y.clone(), &[r.clone(), r.clone()]).unwrap();
        let single = envelope_from_vertex(&circle_system(3)).unwrap();
        assert_eq!(clan.envelopes.len(), 3);
        for e in &clan.envelopes {
            for i in 0..12 {
                let t = 0.5 * i as f64;
                assert_abs_diff_eq!(e.point(t).norm(), 2.0 * single.point(t).norm(), epsilon = 1e-12);
            }
        }
        let cfg = clan.configuration().unwrap();
        cfg.validate().unwrap();
        let poly = cfg.polygon(0.4);
        assert!(poly.closed);
        assert_eq!(poly.vertex_count(), 3);
    }

    #[test]
    fn clan_detects_fixed_point() {
        let y: SharedCurve = Arc::new(Circle::new(Vec2::ZERO, 1.0));
        // f_1 has fixed points where sin vanishes.
        let f1: CircleDiffeo =
            FourierLift::new(TAU, 0.0, vec![FourierTerm { j: 1, sin: 0.3, cos: 0.0 }]).unwrap().into();
        let f2 = CircleDiffeo::rotation(TAU, 2.0).unwrap();
        match clan_from_vertex(y, &[f1, f2]) {
            Err(Error::FixedPoint { i: 0, j: 1, param }) => {
                assert!(param.abs() < 1e-9 || (param - PI).abs() < 1e-9, "{param}")
            }
            other => panic!("expected fixed point, got {other:?}"),
        }
    }
}
