//! Poncelet configurations: envelopes, vertex curves and the schedule of
//! transitions that generates polygons from a start parameter.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::circle_map::CircleDiffeo;
use crate::curve::{fd_derivatives, PlaneCurve, SharedCurve};
use crate::error::{Error, Result};
use crate::geom::{frame, Vec2};
use crate::support::{curve_from_support, SupportCurve, SupportFunction};

/// Where a polygon side touches its envelope.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SideContact {
    pub envelope: usize,
    pub param: f64,
    pub point: Vec2,
    /// Chord parameter: the contact is `V_a + s (V_b - V_a)`; inside the side iff `0 < s < 1`.
    pub s: f64,
}

/// Position of `x` along the chord from `a` to `b`.
pub fn chord_parameter(a: Vec2, b: Vec2, x: Vec2) -> f64 {
    let d = b - a;
    (x - a).dot(d) / d.norm_sq()
}

/// A polygon produced by a configuration's schedule.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PonceletPolygon {
    /// `count + 1` vertices; the last one is the return to the start.
    pub vertices: Vec<Vec2>,
    /// Vertex-curve index of each vertex.
    pub curves: Vec<usize>,
    pub parameters: Vec<f64>,
    /// One contact per side.
    pub contacts: Vec<SideContact>,
    pub closed: bool,
}

impl PonceletPolygon {
    pub fn closure_error(&self) -> f64 {
        match (self.vertices.first(), self.vertices.last()) {
            (Some(a), Some(b)) => a.distance(*b),
            _ => f64::INFINITY,
        }
    }

    /// Number of distinct vertices (the closing repeat excluded).
    pub fn vertex_count(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }

    pub fn side_lengths(&self) -> Vec<f64> {
        self.vertices.windows(2).map(|w| w[0].distance(w[1])).collect()
    }

    /// Average of the distinct vertices.
    pub fn vertex_mean(&self) -> Vec2 {
        let n = self.vertex_count();
        self.vertices[..n].iter().copied().sum::<Vec2>() / n as f64
    }
}

/// An envelope curve: either given by a support function or by a parametrized curve.
#[derive(Clone)]
pub enum Envelope {
    Support { support: SupportFunction, curve: SupportCurve },
    Curve(SharedCurve),
}

impl fmt::Debug for Envelope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Envelope::Support { support, .. } => f.debug_tuple("Support").field(support).finish(),
            Envelope::Curve(c) => f.debug_tuple("Curve").field(c).finish(),
        }
    }
}

impl Envelope {
    pub fn support(p: &SupportFunction) -> Self {
        Envelope::Support { support: p.clone(), curve: curve_from_support(p) }
    }

    pub fn curve(&self) -> &dyn PlaneCurve {
        match self {
            Envelope::Support { curve, .. } => curve,
            Envelope::Curve(c) => c.as_ref(),
        }
    }

    pub fn period(&self) -> f64 {
        self.curve().period()
    }

    pub fn point(&self, psi: f64) -> Vec2 {
        self.curve().point(psi)
    }

    /// Unit tangent direction of the envelope's tangent line at `psi`.
    ///
    /// For support envelopes this is `u'(psi)` even at cusps; for curve
    /// envelopes it comes from 5-point differences of positions and is `None`
    /// where the velocity vanishes.
    pub fn tangent_dir(&self, psi: f64) -> Option<Vec2> {
        match self {
            Envelope::Support { .. } => Some(frame(psi).1),
            Envelope::Curve(c) => {
                let h = 1e-5 * c.period();
                let (v, _) = fd_derivatives(|t| c.point(t), psi, h);
                let scale = c.point(psi).norm().max(1.0);
                if v.norm() <= 1e-9 * scale {
                    None
                } else {
                    v.normalized()
                }
            }
        }
    }

    /// Signed residual of "the tangent line at `psi` passes through `q`".
    ///
    /// Support: `<q, u(psi)> - p(psi)`. Curve: `cross(X'(psi), q - X(psi))`
    /// with `X'` from the curve's jet.
    pub fn tangency_residual(&self, q: Vec2, psi: f64) -> f64 {
        match self {
            Envelope::Support { support, .. } => q.dot(frame(psi).0) - support.eval(psi),
            Envelope::Curve(c) => {
                let j = c.jet(psi);
                j.vel.cross(q - j.pos)
            }
        }
    }

    /// Distance from the contact point to the line through `a` and `b`.
    pub fn line_gap(&self, a: Vec2, b: Vec2, psi: f64) -> f64 {
        let d = b - a;
        (self.point(psi) - a).cross(d).abs() / d.norm()
    }

    /// Whether a blind tangent search is unambiguous: one sheet and positive curvature.
    pub fn is_strictly_convex(&self) -> bool {
        match self {
            Envelope::Support { support, curve } => support.sheets() == 1 && curve.convex(),
            Envelope::Curve(_) => false,
        }
    }
}

/// One step of the polygon: from a vertex on `from` to the next vertex on `to`.
#[derive(Debug, Clone)]
pub struct Transition {
    pub from_curve: usize,
    pub to_curve: usize,
    pub envelope: usize,
    /// Parameter on `from_curve` to parameter on `to_curve`.
    pub step: CircleDiffeo,
    /// Parameter on `from_curve` to the contact parameter on the envelope.
    pub contact: CircleDiffeo,
}

/// Cyclic list of transitions and the number of vertices before closure.
#[derive(Debug, Clone)]
pub struct Schedule {
    pub transitions: Vec<Transition>,
    pub vertex_count: usize,
}

/// Properties a configuration is expected to have; checked by the verifier.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Expectations {
    /// Turning angle (mod pi) at a vertex lying on each vertex curve.
    pub exterior_angles: Option<Vec<f64>>,
    pub side_length: Option<f64>,
    /// Vertex average expected to have this norm (equilateral family).
    pub vertex_mean_norm: Option<f64>,
    /// All contacts strictly inside their sides.
    pub interior_contacts: bool,
    /// `Some(true)`: every curve regular; `Some(false)`: cusps must be detected.
    pub regular: Option<bool>,
}

/// Envelopes, vertex curves and the schedule linking them.
#[derive(Debug, Clone)]
pub struct PonceletConfiguration {
    pub name: String,
    pub envelopes: Vec<Envelope>,
    pub vertex_curves: Vec<SharedCurve>,
    pub schedule: Schedule,
    pub expect: Expectations,
}

impl PonceletConfiguration {
    /// Checks indices and circumferences of the schedule.
    pub fn validate(&self) -> Result<()> {
        let s = &self.schedule;
        if s.transitions.is_empty() || s.vertex_count == 0 {
            return Err(Error::Precondition("empty schedule".into()));
        }
        let n = s.transitions.len();
        for (i, t) in s.transitions.iter().enumerate() {
            if t.from_curve >= self.vertex_curves.len()
                || t.to_curve >= self.vertex_curves.len()
                || t.envelope >= self.envelopes.len()
            {
                return Err(Error::Precondition(format!("transition {i} has an index out of range")));
            }
            let next = &s.transitions[(i + 1) % n];
            if t.to_curve != next.from_curve {
                return Err(Error::Precondition(format!(
                    "transition {i} ends on curve {} but the next starts on {}",
                    t.to_curve, next.from_curve
                )));
            }
            let l = self.vertex_curves[t.from_curve].period();
            let close = |a: f64, b: f64| (a - b).abs() <= 1e-9 * a.max(b);
            if !close(t.step.circumference(), l) || !close(t.contact.circumference(), l) {
                return Err(Error::Precondition(format!(
                    "transition {i}: map circumference does not match curve period {l}"
                )));
            }
        }
        Ok(())
    }

    /// Period of the starting vertex curve.
    pub fn start_period(&self) -> f64 {
        self.vertex_curves[self.schedule.transitions[0].from_curve].period()
    }

    /// Largest vertex-curve radius over 256 samples, used to scale tolerances.
    pub fn scale(&self) -> f64 {
        self.vertex_curves.iter().flat_map(|c| c.sample(256)).map(|p| p.norm()).fold(1.0, f64::max)
    }

    /// Runs the schedule for `vertex_count` steps from parameter `t0` on the first curve.
    pub fn polygon(&self, t0: f64) -> PonceletPolygon {
        let s = &self.schedule;
        let n = s.transitions.len();
        let mut t = t0;
        let first = s.transitions[0].from_curve;
        let mut vertices = vec![self.vertex_curves[first].point(t)];
        let mut curves = vec![first];
        let mut parameters = vec![t];
        let mut contacts = Vec::with_capacity(s.vertex_count);
        for j in 0..s.vertex_count {
            let tr = &s.transitions[j % n];
            let psi = tr.contact.lift(t);
            let t_next = tr.step.lift(t);
            let a = *vertices.last().unwrap();
            let b = self.vertex_curves[tr.to_curve].point(t_next);
            let x = self.envelopes[tr.envelope].point(psi);
            contacts.push(SideContact { envelope: tr.envelope, param: psi, point: x, s: chord_parameter(a, b, x) });
            vertices.push(b);
            curves.push(tr.to_curve);
            parameters.push(t_next);
            t = t_next;
        }
        let mut poly = PonceletPolygon { vertices, curves, parameters, contacts, closed: false };
        poly.closed = poly.closure_error() < 1e-9 * self.scale();
        poly
    }
}
