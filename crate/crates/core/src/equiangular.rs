//! Equiangular vertex curves over a support-function envelope, the
//! equilateral epitrochoid family and equiangular clans.
//!
//! For an envelope with support function `p` and an angle `beta`, the point
//!
//! ```text
//! Y(phi) = csc(beta) (p(phi + beta) u'(phi) - p(phi) u'(phi + beta))
//! ```
//!
//! is the intersection of the tangent lines at `phi` and `phi + beta`. The
//! step `phi -> phi + beta` therefore generates polygons whose sides touch the
//! envelope and whose exterior angles all equal `beta`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::circle_map::CircleDiffeo;
use crate::curve::{Jet, PlaneCurve, SharedCurve};
use crate::error::{Error, Result};
use crate::geom::frame;
use crate::polygon::{Envelope, Expectations, PonceletConfiguration, Schedule, Transition};
use crate::rational::{Rational, RationalAngle};
use crate::support::{SupportFunction, TrigTerm};

/// An envelope, a base angle `alpha` in `(0, pi)` and a branch `i` in `[0, 2k)`.
#[derive(Debug, Clone, PartialEq)]
pub struct EquiangularSpec {
    envelope: SupportFunction,
    angle: RationalAngle,
    branch: u32,
}

impl EquiangularSpec {
    pub fn new(envelope: SupportFunction, angle: RationalAngle, branch: u32) -> Result<Self> {
        let r = angle.pi_multiple();
        if !(r > Rational::ZERO && r < Rational::ONE) {
            return Err(Error::InvalidAngle(format!("alpha = {angle} must lie in (0, pi)")));
        }
        if branch >= 2 * envelope.sheets() {
            return Err(Error::InvalidAngle(format!("branch {branch} outside [0, {})", 2 * envelope.sheets())));
        }
        Ok(Self { envelope, angle, branch })
    }

    pub fn envelope(&self) -> &SupportFunction {
        &self.envelope
    }

    pub fn angle(&self) -> RationalAngle {
        self.angle
    }

    pub fn branch(&self) -> u32 {
        self.branch
    }

    /// `alpha_i = alpha + i pi`.
    pub fn branch_angle(&self) -> Result<RationalAngle> {
        self.angle.add_half_turns(self.branch as i64)
    }
}

/// The vertex curve for one angle `beta`; defined on `[0, 2k pi)`.
#[derive(Debug, Clone, PartialEq)]
pub struct EquiangularCurve {
    support: SupportFunction,
    beta: RationalAngle,
    beta_rad: f64,
    csc: f64,
}

impl EquiangularCurve {
    pub fn new(support: SupportFunction, beta: RationalAngle) -> Result<Self> {
        if beta.is_multiple_of_pi() {
            return Err(Error::InvalidAngle(format!("{beta} is a multiple of pi")));
        }
        let beta_rad = beta.radians();
        Ok(Self { support, beta, beta_rad, csc: 1.0 / beta_rad.sin() })
    }

    pub fn support(&self) -> &SupportFunction {
        &self.support
    }

    pub fn beta(&self) -> RationalAngle {
        self.beta
    }

    /// Coordinate of `Y(phi)` along `u'(phi)`: `csc(beta)(p(phi+beta) - cos(beta) p(phi))`.
    pub fn chord_offset(&self, phi: f64) -> f64 {
        let p0 = self.support.eval(phi);
        let p1 = self.support.eval(phi + self.beta_rad);
        self.csc * (p1 - self.beta_rad.cos() * p0)
    }

    /// The vertex step `phi -> phi + beta` on the envelope's circle.
    pub fn step(&self) -> Result<CircleDiffeo> {
        CircleDiffeo::rotation(self.support.period(), self.beta_rad)
    }
}

impl PlaneCurve for EquiangularCurve {
    fn period(&self) -> f64 {
        self.support.period()
    }

    fn jet(&self, phi: f64) -> Jet {
        let b = self.beta_rad;
        let p = self.support.jet(phi);
        let q = self.support.jet(phi + b);
        let (u0, v0) = frame(phi);
        let (u1, v1) = frame(phi + b);
        let pos = v0 * q.p - v1 * p.p;
        let vel = v0 * q.d1 - u0 * q.p - v1 * p.d1 + u1 * p.p;
        let acc = v0 * (q.d2 - q.p) - u0 * (2.0 * q.d1) - v1 * (p.d2 - p.p) + u1 * (2.0 * p.d1);
        Jet { pos: pos * self.csc, vel: vel * self.csc, acc: acc * self.csc }
    }
}

/// The curve `K_i` for branch `i` of `spec`.
pub fn equiangular_vertex_curve(spec: &EquiangularSpec) -> Result<EquiangularCurve> {
    EquiangularCurve::new(spec.envelope.clone(), spec.branch_angle()?)
}

/// Vertices of the Poncelet polygon for angle `angle_i` on `k` sheets:
/// `(2 pi / alpha_i) lcm(alpha_i / 2 pi, k)`.
pub fn vertex_count(angle_i: RationalAngle, k: u32) -> Result<usize> {
    let r = angle_i.pi_multiple();
    if !r.is_positive() {
        return Err(Error::InvalidAngle(format!("{angle_i} must be positive")));
    }
    if k == 0 {
        return Err(Error::Precondition("sheet count must be positive".into()));
    }
    let turns = r.checked_div(Rational::integer(2))?;
    let m = turns.lcm(Rational::integer(k as i64))?.checked_div(turns)?;
    if !m.is_integer() {
        return Err(Error::Overflow("vertex count"));
    }
    usize::try_from(m.num()).map_err(|_| Error::Overflow("vertex count"))
}

/// The single-curve configuration `(K_i, C)` with step `phi -> phi + alpha_i`.
pub fn equiangular_pair(spec: &EquiangularSpec) -> Result<PonceletConfiguration> {
    let curve = equiangular_vertex_curve(spec)?;
    let beta = curve.beta();
    let count = vertex_count(beta, spec.envelope.sheets())?;
    let step = curve.step()?;
    Ok(PonceletConfiguration {
        name: format!("equiangular alpha={} branch={}", spec.angle, spec.branch),
        envelopes: vec![Envelope::support(&spec.envelope)],
        vertex_curves: vec![Arc::new(curve)],
        schedule: Schedule {
            transitions: vec![Transition {
                from_curve: 0,
                to_curve: 0,
                envelope: 0,
                step: step.clone(),
                contact: step,
            }],
            vertex_count: count,
        },
        expect: Expectations { exterior_angles: Some(vec![beta.radians()]), ..Default::default() },
    })
}

/// `Y(phi) = A u(phi) + w u(n phi)` on `[0, period)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Epitrochoid {
    pub radius: f64,
    pub wheel: f64,
    pub frequency: f64,
    pub period: f64,
}

impl PlaneCurve for Epitrochoid {
    fn period(&self) -> f64 {
        self.period
    }

    fn jet(&self, phi: f64) -> Jet {
        let (u0, v0) = frame(phi);
        let n = self.frequency;
        let (u1, v1) = frame(n * phi);
        Jet {
            pos: u0 * self.radius + u1 * self.wheel,
            vel: v0 * self.radius + v1 * (self.wheel * n),
            acc: -(u0 * self.radius + u1 * (self.wheel * n * n)),
        }
    }
}

/// The equilateral pair over `p = a + b cos(l phi)` with `n = l + 1` and `alpha = 2k pi / n`.
#[derive(Debug, Clone)]
pub struct EquilateralPair {
    pub k: u32,
    pub l: Rational,
    pub a: f64,
    pub amplitude: f64,
    pub n: Rational,
    pub alpha: RationalAngle,
    pub support: SupportFunction,
    pub vertex_curve: Epitrochoid,
    pub side_length: f64,
    pub vertex_count: usize,
    /// `a > b |l^2 - 1|`: the envelope has positive radius of curvature.
    pub convex_envelope: bool,
    /// `a` above `cos(alpha/2) n^2`: the vertex curve is strictly convex.
    pub convex_vertex_curve: bool,
}

/// `a = cos(alpha/2) n^2`, where the vertex curve's curvature first touches zero.
pub fn critical_a(k: u32, l: Rational) -> Result<f64> {
    let (n, alpha) = equilateral_angle(k, l)?;
    Ok((alpha.radians() / 2.0).cos() * n.to_f64().powi(2))
}

fn equilateral_angle(k: u32, l: Rational) -> Result<(Rational, RationalAngle)> {
    if k == 0 {
        return Err(Error::Precondition("k must be positive".into()));
    }
    if !l.is_positive() {
        return Err(Error::Precondition(format!("l = {l} must be positive")));
    }
    let n = l.checked_add(Rational::ONE)?;
    let alpha = RationalAngle::from_pi_multiple(Rational::integer(2 * k as i64).checked_div(n)?);
    if alpha.is_multiple_of_pi() {
        return Err(Error::InvalidAngle(format!(
            "l = {l} is excluded: alpha = 2k pi / (l + 1) = {alpha} is a multiple of pi"
        )));
    }
    Ok((n, alpha))
}

/// The unit-amplitude family `p = a + cos(l phi)`.
pub fn equilateral_pair(k: u32, l: Rational, a: f64) -> Result<EquilateralPair> {
    equilateral_pair_scaled(k, l, a, 1.0)
}

/// `p = a + b cos(l phi)`: the vertex curve is the epitrochoid
/// `a sec(alpha/2) u(phi) + (-1)^k b u(n phi)`, every polygon is equilateral
/// with side `2a |tan(alpha/2)|`, and the vertex average moves on the circle of
/// radius `b`.
pub fn equilateral_pair_scaled(k: u32, l: Rational, a: f64, b: f64) -> Result<EquilateralPair> {
    let (n, alpha) = equilateral_angle(k, l)?;
    if !(a.is_finite() && a > 0.0) {
        return Err(Error::Precondition(format!("a = {a} must be positive")));
    }
    if !(b.is_finite() && b > 0.0) {
        return Err(Error::Precondition(format!("amplitude {b} must be positive")));
    }
    let support = SupportFunction::new(a, vec![TrigTerm::new(l, b, 0.0)], SupportFunction::minimal_sheets(&[l])?)?;
    let half = alpha.radians() / 2.0;
    let sigma = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    let radius = a / half.cos();
    let vertex_curve = Epitrochoid { radius, wheel: sigma * b, frequency: n.to_f64(), period: support.period() };
    let l2 = l.to_f64().powi(2);
    let crit = half.cos() * n.to_f64().powi(2) * b;
    Ok(EquilateralPair {
        k,
        l,
        a,
        amplitude: b,
        n,
        alpha,
        vertex_count: vertex_count(alpha, support.sheets())?,
        side_length: 2.0 * a * half.tan().abs(),
        convex_envelope: a > b * (l2 - 1.0).abs(),
        convex_vertex_curve: a > crit,
        support,
        vertex_curve,
    })
}

impl EquilateralPair {
    /// Step `phi -> phi + alpha` with the side touching the envelope at `phi + alpha/2`.
    pub fn configuration(&self) -> Result<PonceletConfiguration> {
        let l = self.support.period();
        let alpha = self.alpha.radians();
        Ok(PonceletConfiguration {
            name: format!("equilateral k={} l={} a={}", self.k, self.l, self.a),
            envelopes: vec![Envelope::support(&self.support)],
            vertex_curves: vec![Arc::new(self.vertex_curve)],
            schedule: Schedule {
                transitions: vec![Transition {
                    from_curve: 0,
                    to_curve: 0,
                    envelope: 0,
                    step: CircleDiffeo::rotation(l, alpha)?,
                    contact: CircleDiffeo::rotation(l, alpha / 2.0)?,
                }],
                vertex_count: self.vertex_count,
            },
            expect: Expectations {
                exterior_angles: Some(vec![alpha]),
                side_length: Some(self.side_length),
                vertex_mean_norm: Some(self.amplitude),
                ..Default::default()
            },
        })
    }

    /// `det(Y', Y'')` of the vertex curve.
    pub fn curvature_determinant(&self, phi: f64) -> f64 {
        let j = self.vertex_curve.jet(phi);
        j.vel.cross(j.acc)
    }
}

/// Curves of an equiangular clan and its vertex count.
#[derive(Debug, Clone)]
pub struct EquiangularClan {
    pub envelope: SupportFunction,
    /// `beta_i = alpha_i + j_i pi`.
    pub betas: Vec<RationalAngle>,
    pub curves: Vec<EquiangularCurve>,
    /// `sum alpha_i = 2 m pi`.
    pub m: i64,
    /// `|j| = sum j_i`.
    pub branch_sum: i64,
    pub vertex_count: usize,
    /// `n lcm(2m + |j|, 2k) / (2m + |j|)`.
    pub upper_bound: usize,
    /// The cyclic angle sequence has a shorter period than `n`, so some curves coincide.
    pub degenerate: bool,
}

/// Curves `K_i` through the tangents at `phi` and `phi + beta_i`.
///
/// The polygon visits `K_1(phi), K_2(phi + beta_1), K_3(phi + beta_1 + beta_2), ...`.
pub fn equiangular_clan(
    envelope: &SupportFunction,
    angles: &[RationalAngle],
    branches: &[u32],
) -> Result<EquiangularClan> {
    let n = angles.len();
    if n < 2 {
        return Err(Error::Precondition(format!("a clan needs at least 2 angles, got {n}")));
    }
    if branches.len() != n {
        return Err(Error::Precondition(format!("{} branch indices for {n} angles", branches.len())));
    }
    let k = envelope.sheets();
    let mut sum = Rational::ZERO;
    for a in angles {
        if !a.pi_multiple().is_positive() {
            return Err(Error::InvalidAngle(format!("angle {a} must be positive")));
        }
        sum = sum.checked_add(a.pi_multiple())?;
    }
    let two = Rational::integer(2);
    let m = sum.checked_div(two)?;
    if !m.is_integer() || m.num() < 1 {
        return Err(Error::InvalidAngle(format!(
            "angle sum {} is not 2m pi with m >= 1",
            RationalAngle::from_pi_multiple(sum)
        )));
    }
    let mut betas = Vec::with_capacity(n);
    let mut curves = Vec::with_capacity(n);
    for (a, &j) in angles.iter().zip(branches) {
        if j >= 2 * k {
            return Err(Error::InvalidAngle(format!("branch {j} outside [0, {})", 2 * k)));
        }
        let beta = a.add_half_turns(j as i64)?;
        if beta.is_multiple_of_pi() {
            return Err(Error::InvalidAngle(format!("alpha + j pi = {beta} is a multiple of pi")));
        }
        curves.push(EquiangularCurve::new(envelope.clone(), beta)?);
        betas.push(beta);
    }
    let branch_sum: i64 = branches.iter().map(|&j| j as i64).sum();
    let (vertex_count, period) = clan_vertex_count(&betas, k)?;
    let total = 2 * m.num() + branch_sum;
    let rows = num_integer::lcm(total, 2 * k as i64) / total;
    Ok(EquiangularClan {
        envelope: envelope.clone(),
        betas,
        curves,
        m: m.num(),
        branch_sum,
        vertex_count,
        upper_bound: n * rows as usize,
        degenerate: period < n,
    })
}

/// Exact vertex count of the clan polygon and the period of the angle word.
///
/// With `d` the shortest period of the cyclic word `beta_i mod 2k pi` and
/// `S_d` the sum of one period, the polygon closes after `c d` vertices where
/// `c` is minimal with `c S_d` in `2k pi Z`.
pub fn clan_vertex_count(betas: &[RationalAngle], k: u32) -> Result<(usize, usize)> {
    let n = betas.len();
    let word = betas.iter().map(|b| b.rem_full_turns(k)).collect::<Result<Vec<_>>>()?;
    let d =
        (1..=n).filter(|d| n.is_multiple_of(*d)).find(|&d| (0..n).all(|i| word[i] == word[(i + d) % n])).unwrap_or(n);
    let mut s = Rational::ZERO;
    for b in &betas[..d] {
        s = s.checked_add(b.pi_multiple())?;
    }
    let s = RationalAngle::from_pi_multiple(s).rem_full_turns(k)?;
    let c = if s.pi_multiple().is_zero() { 1 } else { vertex_count(s, k)? };
    Ok((c * d, d))
}

impl EquiangularClan {
    pub fn configuration(&self) -> Result<PonceletConfiguration> {
        let n = self.curves.len();
        let mut transitions = Vec::with_capacity(n);
        for (i, c) in self.curves.iter().enumerate() {
            let step = c.step()?;
            transitions.push(Transition {
                from_curve: i,
                to_curve: (i + 1) % n,
                envelope: 0,
                step: step.clone(),
                contact: step,
            });
        }
        Ok(PonceletConfiguration {
            name: format!("equiangular clan n={n}"),
            envelopes: vec![Envelope::support(&self.envelope)],
            vertex_curves: self.curves.iter().map(|c| Arc::new(c.clone()) as SharedCurve).collect(),
            schedule: Schedule { transitions, vertex_count: self.vertex_count },
            expect: Expectations {
                exterior_angles: Some(self.betas.iter().map(|b| b.radians()).collect()),
                ..Default::default()
            },
        })
    }
}

/// Brute-force count: add `beta` until a multiple of `2k pi` is reached.
#[doc(hidden)]
pub fn vertex_count_brute(beta: RationalAngle, k: u32) -> usize {
    let mut acc = Rational::ZERO;
    for m in 1..100_000 {
        acc = acc.checked_add(beta.pi_multiple()).expect("overflow");
        let q = acc.checked_div(Rational::integer(2 * k as i64)).unwrap();
        if q.is_integer() {
            return m;
        }
    }
    unreachable!("no closure within 100000 steps")
}
