//! Vertex curves from a support-function envelope and a contact step.
//!
//! The vertex `Y(phi)` is the intersection of the tangent lines of the envelope
//! at `A(phi)` and `B(phi)`:
//!
//! ```text
//! Y = P u(A) + q u'(A),   q = (p(B) - P cos(B - A)) / sin(B - A),   P = p(A).
//! ```

use std::sync::Arc;

use crate::circle_map::{find_fixed_point, CircleDiffeo, TorsionMap};
use crate::curve::{Jet, PlaneCurve, SharedCurve};
use crate::error::{Error, Result};
use crate::geom::{frame, Vec2};
use crate::polygon::{Envelope, Expectations, PonceletConfiguration, Schedule, Transition};
use crate::roots::{bisect, sign_change_brackets};
use crate::support::SupportFunction;

pub const TRANSVERSALITY_SAMPLES: usize = 1024;

/// Intersection of the tangents at `a(phi)` and `b(phi)`.
#[derive(Debug, Clone)]
pub struct TangentIntersectionCurve {
    support: SupportFunction,
    a: CircleDiffeo,
    b: CircleDiffeo,
}

impl TangentIntersectionCurve {
    pub fn new(support: SupportFunction, a: CircleDiffeo, b: CircleDiffeo) -> Result<Self> {
        let l = support.period();
        for m in [&a, &b] {
            if (m.circumference() - l).abs() > 1e-9 * l {
                return Err(Error::Precondition(format!(
                    "map circumference {} differs from support period {l}",
                    m.circumference()
                )));
            }
        }
        Ok(Self { support, a, b })
    }

    pub fn support(&self) -> &SupportFunction {
        &self.support
    }

    /// `sin(b(phi) - a(phi))`; the tangents are parallel where it vanishes.
    pub fn transversality(&self, phi: f64) -> f64 {
        (self.b.lift(phi) - self.a.lift(phi)).sin()
    }
}

impl PlaneCurve for TangentIntersectionCurve {
    fn period(&self) -> f64 {
        self.support.period()
    }

    fn jet(&self, phi: f64) -> Jet {
        let a = self.a.lift_jet(phi);
        let b = self.b.lift_jet(phi);
        let pa = self.support.jet(a.value);
        let pb = self.support.jet(b.value);
        let (p0, p1, p2) = (pa.p, pa.d1 * a.d1, pa.d2 * a.d1 * a.d1 + pa.d1 * a.d2);
        let (b0, b1, b2) = (pb.p, pb.d1 * b.d1, pb.d2 * b.d1 * b.d1 + pb.d1 * b.d2);
        let (d0, d1, d2) = (b.value - a.value, b.d1 - a.d1, b.d2 - a.d2);
        let (s, c) = d0.sin_cos();
        let n0 = b0 - p0 * c;
        let n1 = b1 - p1 * c + p0 * s * d1;
        let n2 = b2 - p2 * c + 2.0 * p1 * s * d1 + p0 * (c * d1 * d1 + s * d2);
        let e0 = s;
        let e1 = c * d1;
        let e2 = -s * d1 * d1 + c * d2;
        let q0 = n0 / e0;
        let q1 = (n1 * e0 - n0 * e1) / (e0 * e0);
        let q2 = (n2 - 2.0 * q1 * e1 - q0 * e2) / e0;
        let (u, up) = frame(a.value);
        let (a1, a2) = (a.d1, a.d2);
        Jet {
            pos: u * p0 + up * q0,
            vel: u * (p1 - q0 * a1) + up * (p0 * a1 + q1),
            acc: u * (p2 - 2.0 * q1 * a1 - q0 * a2 - p0 * a1 * a1) + up * (2.0 * p1 * a1 - q0 * a1 * a1 + p0 * a2 + q2),
        }
    }

    fn point(&self, phi: f64) -> Vec2 {
        let a = self.a.lift(phi);
        let b = self.b.lift(phi);
        let p = self.support.eval(a);
        let d = b - a;
        let q = (self.support.eval(b) - p * d.cos()) / d.sin();
        let (u, up) = frame(a);
        u * p + up * q
    }
}

fn check_transversal(curve: &TangentIntersectionCurve, index: usize) -> Result<()> {
    let l = curve.period();
    let f = |t: f64| curve.transversality(t);
    if let Some(&(lo, hi)) = sign_change_brackets(f, 0.0, l, TRANSVERSALITY_SAMPLES, true).first() {
        return Err(Error::Transversality { index, param: bisect(f, lo, hi, 1e-13 * l) });
    }
    let h = l / TRANSVERSALITY_SAMPLES as f64;
    for i in 0..TRANSVERSALITY_SAMPLES {
        let t = h * i as f64;
        if f(t).abs() < 1e-12 {
            return Err(Error::Transversality { index, param: t });
        }
    }
    Ok(())
}

/// An envelope given by its support function with a torsion contact step.
#[derive(Debug, Clone)]
pub struct ContactStepSystem {
    support: SupportFunction,
    step: TorsionMap,
}

impl ContactStepSystem {
    pub fn new(support: SupportFunction, step: TorsionMap) -> Result<Self> {
        if step.period() <= 2 {
            return Err(Error::Precondition(format!("contact step period {} must exceed 2", step.period())));
        }
        let l = support.period();
        if (step.circumference() - l).abs() > 1e-9 * l {
            return Err(Error::Precondition(format!(
                "step circumference {} differs from support period {l}",
                step.circumference()
            )));
        }
        Ok(Self { support, step })
    }

    pub fn support(&self) -> &SupportFunction {
        &self.support
    }

    pub fn step(&self) -> &TorsionMap {
        &self.step
    }

    /// The pair `(K, C)`: step `f`, with the side `Y(t) Y(f(t))` touching `C` at `f(t)`.
    pub fn configuration(&self, vertex: &TangentIntersectionCurve) -> Result<PonceletConfiguration> {
        let f = self.step.map().clone();
        Ok(PonceletConfiguration {
            name: "vertex curve from envelope".into(),
            envelopes: vec![Envelope::support(&self.support)],
            vertex_curves: vec![Arc::new(vertex.clone())],
            schedule: Schedule {
                transitions: vec![Transition { from_curve: 0, to_curve: 0, envelope: 0, step: f.clone(), contact: f }],
                vertex_count: self.step.period() as usize,
            },
            expect: Expectations::default(),
        })
    }
}

/// The vertex curve `K` through the tangents at `phi` and `f(phi)`.
///
/// Fails with [`Error::Transversality`] where `sin(f(phi) - phi)` vanishes.
pub fn vertex_from_envelope(sys: &ContactStepSystem) -> Result<TangentIntersectionCurve> {
    let l = sys.support.period();
    let curve = TangentIntersectionCurve::new(sys.support.clone(), CircleDiffeo::identity(l)?, sys.step.map().clone())?;
    check_transversal(&curve, 0)?;
    Ok(curve)
}

/// Vertex curves `Y_1..Y_n` of a clan over one envelope.
#[derive(Debug, Clone)]
pub struct EnvelopeClan {
    pub support: SupportFunction,
    /// `f_1, ..., f_n` with `f_n = g_{n-1}^-1`.
    pub steps: Vec<CircleDiffeo>,
    /// `g_0 = id, ..., g_n`, where `g_n` is the identity shifted by one turn.
    pub g: Vec<CircleDiffeo>,
    pub curves: Vec<TangentIntersectionCurve>,
}

/// Builds `Y_i` from the tangents at `g_{i-1}(phi)` and `g_i(phi)`.
pub fn clan_from_envelope(support: &SupportFunction, steps: &[CircleDiffeo]) -> Result<EnvelopeClan> {
    if steps.is_empty() {
        return Err(Error::Precondition("a clan needs at least one step".into()));
    }
    let l = support.period();
    for f in steps {
        if (f.circumference() - l).abs() > 1e-9 * l {
            return Err(Error::Precondition("step circumference differs from support period".into()));
        }
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
            if let Some(param) = find_fixed_point(&h, crate::envelope::FIXED_POINT_PROBES) {
                return Err(Error::FixedPoint { i, j, param });
            }
        }
    }
    let mut all_steps = steps.to_vec();
    all_steps.push(g[n - 1].inverse());
    g.push(CircleDiffeo::rotation(l, l)?);
    let mut curves = Vec::with_capacity(n);
    for i in 1..=n {
        let c = TangentIntersectionCurve::new(support.clone(), g[i - 1].clone(), g[i].clone())?;
        check_transversal(&c, i)?;
        curves.push(c);
    }
    Ok(EnvelopeClan { support: support.clone(), steps: all_steps, g, curves })
}

impl EnvelopeClan {
    /// Polygon `Y_1(phi), ..., Y_n(phi)`: the side `Y_i Y_{i+1}` touches at `g_i(phi)`.
    pub fn configuration(&self) -> Result<PonceletConfiguration> {
        let n = self.curves.len();
        let l = self.support.period();
        let transitions = (0..n)
            .map(|i| {
                Ok(Transition {
                    from_curve: i,
                    to_curve: (i + 1) % n,
                    envelope: 0,
                    step: CircleDiffeo::identity(l)?,
                    contact: self.g[i + 1].clone(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PonceletConfiguration {
            name: format!("clan from envelope n={n}"),
            envelopes: vec![Envelope::support(&self.support)],
            vertex_curves: self.curves.iter().map(|c| Arc::new(c.clone()) as SharedCurve).collect(),
            schedule: Schedule { transitions, vertex_count: n },
            expect: Expectations::default(),
        })
    }
}
