//! Independent numerical verification of Poncelet configurations.
//!
//! The next vertex is recovered from tangent-line geometry alone: find the
//! tangent from the current vertex to the envelope, then intersect that line
//! with the vertex curve. The recovered step is compared with the generating
//! step map, and the constructed polygons are checked for closure, tangency,
//! angles, side lengths, interiority, minimality and regularity.

use std::f64::consts::PI;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::circle_map::circular_distance;
use crate::curve::{self_intersects, PlaneCurve, SharedCurve, Translated};
use crate::error::{Error, Result};
use crate::geom::{frame, Vec2};
use crate::polygon::{Envelope, PonceletConfiguration, PonceletPolygon, Transition};
use crate::roots::{bisect, golden_min, local_root, sign_change_brackets};
use crate::support::{curve_from_support, SupportFunction};

pub const TANGENT_GRID: usize = 512;
pub const INTERSECTION_GRID: usize = 1024;

/// One oracle step: the next vertex parameter and the tangency point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OracleStep {
    pub t2: f64,
    pub psi: f64,
    pub contact: Vec2,
}

/// Blind next-vertex map for a one-sheeted strictly convex envelope.
///
/// Among the tangents from `K(t1)` to `C`, takes the one whose contact lies
/// ahead along the envelope's orientation, then the first intersection of
/// that line with `K` beyond the contact. `t2` is returned in `[0, L)`.
pub fn next_vertex_oracle(k: &dyn PlaneCurve, c: &SupportFunction, t1: f64) -> Result<OracleStep> {
    if c.sheets() != 1 {
        return Err(Error::Oracle("blind oracle needs a one-sheeted envelope".into()));
    }
    let q = k.point(t1);
    let lc = c.period();
    let g = |psi: f64| q.dot(frame(psi).0) - c.eval(psi);
    let env = curve_from_support(c);
    let psi = sign_change_brackets(g, 0.0, lc, TANGENT_GRID, true)
        .into_iter()
        .map(|(a, b)| bisect(g, a, b, 1e-15 * lc))
        .find(|&psi| (env.point(psi) - q).dot(frame(psi).1) > 0.0)
        .ok_or_else(|| Error::Oracle(format!("no forward tangent from K({t1}); point inside the envelope?")))?;
    let x = env.point(psi);
    let dir = frame(psi).1;
    let lk = k.period();
    let h = |tau: f64| dir.cross(k.point(tau) - q);
    let scale = q.norm().max(1.0);
    let t2 = sign_change_brackets(h, 0.0, lk, INTERSECTION_GRID, true)
        .into_iter()
        .map(|(a, b)| bisect(h, a, b, 1e-15 * lk))
        .map(|tau| (tau, (k.point(tau) - x).dot(dir)))
        .filter(|&(_, ahead)| ahead > 1e-12 * scale)
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .map(|(tau, _)| tau.rem_euclid(lk))
        .ok_or_else(|| Error::Oracle(format!("tangent line from K({t1}) does not meet K again")))?;
    Ok(OracleStep { t2, psi, contact: x })
}

/// Next vertex by local root finding near the schedule's hints.
///
/// The tangency parameter is searched near `contact(t1)` and the next vertex
/// near `step(t1)`; windows start at `L/256` and double up to `L/8`.
pub fn seeded_next_vertex(
    envelope: &Envelope,
    from: &dyn PlaneCurve,
    to: &dyn PlaneCurve,
    tr: &Transition,
    t1: f64,
) -> Result<OracleStep> {
    let q = from.point(t1);
    let lc = envelope.period();
    let psi_hint = tr.contact.lift(t1);
    let psi = local_root(|s| envelope.tangency_residual(q, s), psi_hint, lc / 256.0, lc / 8.0, 1e-15 * lc)
        .ok_or_else(|| Error::Oracle(format!("no tangent near psi = {psi_hint}")))?;
    let dir = envelope.tangent_dir(psi).ok_or_else(|| Error::Oracle(format!("envelope singular at psi = {psi}")))?;
    let lk = to.period();
    let t_hint = tr.step.lift(t1);
    let t2 = local_root(|s| dir.cross(to.point(s) - q), t_hint, lk / 256.0, lk / 8.0, 1e-15 * lk)
        .ok_or_else(|| Error::Oracle(format!("tangent line misses the vertex curve near t = {t_hint}")))?;
    Ok(OracleStep { t2, psi, contact: envelope.point(psi) })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum OracleMode {
    /// Blind when the configuration allows it, seeded otherwise.
    #[default]
    Auto,
    Blind,
    Seeded,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct VerifyOptions {
    pub probes: usize,
    /// Absolute distance between first and returning vertex.
    pub closure_tol: f64,
    /// Oracle step error, relative to the period.
    pub step_tol: f64,
    pub tangency_tol: f64,
    pub angle_tol: f64,
    /// Relative side-length tolerance.
    pub side_tol: f64,
    pub mean_tol: f64,
    /// Earlier vertices must stay this far (relative) from the start.
    pub distinct_tol: f64,
    /// Speeds below this (relative) count as singular.
    pub speed_tol: f64,
    pub regularity_samples: usize,
    pub oracle: OracleMode,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            probes: 64,
            closure_tol: 1e-7,
            step_tol: 1e-7,
            tangency_tol: 1e-8,
            angle_tol: 1e-8,
            side_tol: 1e-9,
            mean_tol: 1e-9,
            distinct_tol: 1e-6,
            speed_tol: 1e-6,
            regularity_samples: 4096,
            oracle: OracleMode::Auto,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub tol: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeRecord {
    pub t0: f64,
    pub closure: f64,
    pub oracle_closure: f64,
    pub max_step_error: f64,
    pub max_tangency_gap: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeFailure {
    pub probe: usize,
    pub t0: f64,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegularityScan {
    pub samples: usize,
    pub min_speed: f64,
    pub min_at: f64,
    /// Parameters where the speed drops below the threshold.
    pub near_zeros: Vec<f64>,
    pub threshold: f64,
    pub self_intersects: bool,
    /// Filled when the curve was built over a known envelope.
    pub envelope_self_intersects: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub name: String,
    pub probes: usize,
    pub oracle: OracleMode,
    pub vertex_count: usize,
    pub closure_error: f64,
    pub max_step_error: f64,
    pub max_tangency_gap: f64,
    pub max_parallel_defect: f64,
    pub max_angle_deviation: Option<f64>,
    pub side_length_spread: f64,
    pub side_length_error: Option<f64>,
    pub vertex_mean_error: Option<f64>,
    pub s_range: [f64; 2],
    pub min_vertex_separation: f64,
    pub regularity_min_speed: f64,
    pub regularity: Vec<RegularityScan>,
    pub monotone: bool,
    pub checks: Vec<Check>,
    pub failures: Vec<ProbeFailure>,
    pub probe_data: Vec<ProbeRecord>,
    pub options: VerifyOptions,
    pub pass: bool,
}

impl VerificationReport {
    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failed_checks(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.pass).collect()
    }
}

/// Speed scan with golden-section refinement of every discrete local minimum.
pub fn regularity_scan(curve: &dyn PlaneCurve, samples: usize) -> Result<RegularityScan> {
    if samples < 64 {
        return Err(Error::Precondition(format!("regularity scan needs at least 64 samples, got {samples}")));
    }
    let l = curve.period();
    let h = l / samples as f64;
    let speed = |t: f64| curve.jet(t).vel.norm();
    let v: Vec<f64> = (0..samples).map(|i| speed(h * i as f64)).collect();
    let scale = curve.sample(256).iter().map(|p| p.norm()).fold(1.0, f64::max);
    let threshold = 1e-6 * scale;
    let mut min_speed = f64::INFINITY;
    let mut min_at = 0.0;
    let mut near_zeros = Vec::new();
    for i in 0..samples {
        let prev = v[(i + samples - 1) % samples];
        let next = v[(i + 1) % samples];
        if v[i] <= prev && v[i] <= next {
            let t0 = h * i as f64;
            let (t, s) = golden_min(speed, t0 - h, t0 + h, 1e-14 * l);
            let (t, s) = if s < v[i] { (t, s) } else { (t0, v[i]) };
            if s < min_speed {
                min_speed = s;
                min_at = t.rem_euclid(l);
            }
            if s < threshold {
                near_zeros.push(t.rem_euclid(l));
            }
        }
    }
    near_zeros.sort_by(f64::total_cmp);
    near_zeros.dedup_by(|a, b| (*a - *b).abs() < 1e-9 * l);
    Ok(RegularityScan {
        samples,
        min_speed,
        min_at,
        near_zeros,
        threshold,
        self_intersects: self_intersects(curve, samples)?,
        envelope_self_intersects: None,
    })
}

/// [`regularity_scan`] plus the self-intersection status of the envelope.
pub fn regularity_scan_with_envelope(
    curve: &dyn PlaneCurve,
    envelope: &dyn PlaneCurve,
    samples: usize,
) -> Result<RegularityScan> {
    let mut r = regularity_scan(curve, samples)?;
    r.envelope_self_intersects = Some(self_intersects(envelope, samples)?);
    Ok(r)
}

/// Moves every vertex curve by `offset`, for negative controls.
pub fn translate_vertex_curves(config: &PonceletConfiguration, offset: Vec2) -> PonceletConfiguration {
    let mut c = config.clone();
    c.name = format!("{} (translated)", config.name);
    c.vertex_curves =
        config.vertex_curves.iter().map(|k| Arc::new(Translated { curve: k.clone(), offset }) as SharedCurve).collect();
    c
}

/// Positive curvature at every sample and no self-intersection.
pub fn is_strictly_convex_curve(c: &dyn PlaneCurve, samples: usize) -> Result<bool> {
    let l = c.period();
    let h = l / samples as f64;
    let turning = (0..samples).all(|i| {
        let j = c.jet(h * i as f64);
        j.vel.cross(j.acc) > 0.0
    });
    Ok(turning && !self_intersects(c, samples)?)
}

/// Blind search needs uniqueness of both the forward tangent and the next hit.
fn blind_allowed(config: &PonceletConfiguration) -> Result<bool> {
    Ok(config.envelopes.len() == 1
        && config.vertex_curves.len() == 1
        && config.envelopes[0].is_strictly_convex()
        && is_strictly_convex_curve(config.vertex_curves[0].as_ref(), INTERSECTION_GRID)?)
}

fn angle_mod_pi(x: f64) -> f64 {
    let r = x.rem_euclid(PI);
    r.min(PI - r)
}

/// [`verify`] with default options except for the probe count and the
/// closure and step tolerances.
pub fn verify_pair(config: &PonceletConfiguration, probes: usize, tol: f64) -> Result<VerificationReport> {
    let opts = VerifyOptions { probes, closure_tol: tol, step_tol: tol, ..Default::default() };
    verify(config, &opts)
}

#[derive(Default)]
struct Acc {
    closure: f64,
    step: f64,
    gap: f64,
    parallel: f64,
    angle: f64,
    spread: f64,
    side_err: f64,
    mean_err: f64,
    s_min: f64,
    s_max: f64,
    separation: f64,
}

pub fn verify(config: &PonceletConfiguration, opts: &VerifyOptions) -> Result<VerificationReport> {
    if opts.probes < 8 {
        return Err(Error::Precondition(format!("at least 8 probes required, got {}", opts.probes)));
    }
    config.validate()?;
    let mode = match opts.oracle {
        OracleMode::Auto if blind_allowed(config)? => OracleMode::Blind,
        OracleMode::Auto => OracleMode::Seeded,
        OracleMode::Blind if !blind_allowed(config)? => {
            return Err(Error::Precondition(
                "blind oracle needs one strictly convex one-sheeted envelope and a simple vertex curve".into(),
            ))
        }
        m => m,
    };
    let sched = &config.schedule;
    let nt = sched.transitions.len();
    let count = sched.vertex_count;
    let scale = config.scale();
    let l0 = config.start_period();
    let expect = &config.expect;

    let mut acc =
        Acc { s_min: f64::INFINITY, s_max: f64::NEG_INFINITY, separation: f64::INFINITY, ..Default::default() };
    let mut failures = Vec::new();
    let mut probe_data = Vec::with_capacity(opts.probes);
    let mut first_steps: Vec<Option<f64>> = Vec::with_capacity(opts.probes);

    for i in 0..opts.probes {
        let t0 = l0 * (i as f64 + 0.5) / opts.probes as f64;
        let poly = config.polygon(t0);
        let mut rec = ProbeRecord {
            t0,
            closure: poly.closure_error(),
            oracle_closure: f64::NAN,
            max_step_error: 0.0,
            max_tangency_gap: 0.0,
        };
        polygon_stats(config, &poly, &mut acc, &mut rec);

        let mut t = t0;
        let mut ok = true;
        for j in 0..count {
            let tr = &sched.transitions[j % nt];
            let to = config.vertex_curves[tr.to_curve].as_ref();
            let from = config.vertex_curves[tr.from_curve].as_ref();
            let step = match mode {
                OracleMode::Blind => match &config.envelopes[0] {
                    Envelope::Support { support, .. } => next_vertex_oracle(to, support, t),
                    Envelope::Curve(_) => unreachable!("blind mode requires a support envelope"),
                },
                _ => seeded_next_vertex(&config.envelopes[tr.envelope], from, to, tr, t),
            };
            match step {
                Ok(s) => {
                    let hint = tr.step.lift(t);
                    let lt = to.period();
                    let err = circular_distance(s.t2, hint, lt) / lt;
                    rec.max_step_error = rec.max_step_error.max(err);
                    if j == 0 {
                        first_steps.push(Some(s.t2));
                    }
                    // keep the lift continuous
                    t = hint + (s.t2 - hint + 0.5 * lt).rem_euclid(lt) - 0.5 * lt;
                }
                Err(e) => {
                    if j == 0 {
                        first_steps.push(None);
                    }
                    failures.push(ProbeFailure { probe: i, t0, message: format!("step {j}: {e}") });
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            let last = sched.transitions[(count - 1) % nt].to_curve;
            let v0 = config.vertex_curves[sched.transitions[0].from_curve].point(t0);
            rec.oracle_closure = config.vertex_curves[last].point(t).distance(v0);
            acc.closure = acc.closure.max(rec.oracle_closure);
        }
        acc.closure = acc.closure.max(rec.closure);
        acc.step = acc.step.max(rec.max_step_error);
        probe_data.push(rec);
    }

    let monotone = monotone_first_step(&first_steps, config.vertex_curves[sched.transitions[0].to_curve].period());

    let mut regularity = Vec::with_capacity(config.vertex_curves.len());
    for k in &config.vertex_curves {
        let scan = match &config.envelopes[..] {
            [e] => regularity_scan_with_envelope(k.as_ref(), e.curve(), opts.regularity_samples)?,
            _ => regularity_scan(k.as_ref(), opts.regularity_samples)?,
        };
        regularity.push(scan);
    }
    let regularity_min_speed = regularity.iter().map(|r| r.min_speed).fold(f64::INFINITY, f64::min);

    let mut checks = Vec::new();
    let mut push = |name: &str, value: f64, tol: f64, pass: bool| {
        checks.push(Check { name: name.into(), value, tol, pass });
    };
    push("oracle", failures.len() as f64, 0.0, failures.is_empty());
    push("closure", acc.closure, opts.closure_tol, acc.closure < opts.closure_tol);
    push("step", acc.step, opts.step_tol, acc.step < opts.step_tol);
    push("tangency", acc.gap, opts.tangency_tol * scale, acc.gap < opts.tangency_tol * scale);
    push("parallel", acc.parallel, opts.tangency_tol, acc.parallel < opts.tangency_tol);
    let max_angle_deviation = expect.exterior_angles.as_ref().map(|_| acc.angle);
    if let Some(a) = max_angle_deviation {
        push("angles", a, opts.angle_tol, a < opts.angle_tol);
    }
    let side_length_error = expect.side_length.map(|_| acc.side_err);
    if let Some(e) = side_length_error {
        push("side_length", e, opts.side_tol, e < opts.side_tol);
        push("side_spread", acc.spread, opts.side_tol, acc.spread < opts.side_tol);
    }
    let vertex_mean_error = expect.vertex_mean_norm.map(|_| acc.mean_err);
    if let Some(e) = vertex_mean_error {
        push("vertex_mean", e, opts.mean_tol, e < opts.mean_tol);
    }
    if expect.interior_contacts {
        let inside = acc.s_min > 0.0 && acc.s_max < 1.0;
        push("interior", acc.s_min.min(1.0 - acc.s_max), 0.0, inside);
    }
    let sep_tol = opts.distinct_tol * scale;
    push("minimality", acc.separation, sep_tol, count == 1 || acc.separation > sep_tol);
    push("monotone", if monotone { 1.0 } else { 0.0 }, 1.0, monotone);
    match expect.regular {
        Some(true) => {
            let tol = opts.speed_tol * scale;
            push("regularity", regularity_min_speed, tol, regularity_min_speed > tol);
        }
        Some(false) => {
            let cusps = regularity.iter().map(|r| r.near_zeros.len()).sum::<usize>();
            push("cusps", cusps as f64, 1.0, cusps > 0);
        }
        None => {}
    }
    let pass = checks.iter().all(|c| c.pass);
    Ok(VerificationReport {
        name: config.name.clone(),
        probes: opts.probes,
        oracle: mode,
        vertex_count: count,
        closure_error: acc.closure,
        max_step_error: acc.step,
        max_tangency_gap: acc.gap,
        max_parallel_defect: acc.parallel,
        max_angle_deviation,
        side_length_spread: acc.spread,
        side_length_error,
        vertex_mean_error,
        s_range: [acc.s_min, acc.s_max],
        min_vertex_separation: acc.separation,
        regularity_min_speed,
        regularity,
        monotone,
        checks,
        failures,
        probe_data,
        options: opts.clone(),
        pass,
    })
}

fn polygon_stats(config: &PonceletConfiguration, poly: &PonceletPolygon, acc: &mut Acc, rec: &mut ProbeRecord) {
    let n = poly.vertex_count();
    let v = &poly.vertices;
    for (j, c) in poly.contacts.iter().enumerate() {
        let env = &config.envelopes[c.envelope];
        let gap = env.line_gap(v[j], v[j + 1], c.param);
        rec.max_tangency_gap = rec.max_tangency_gap.max(gap);
        if let (Some(dir), Some(side)) = (env.tangent_dir(c.param), (v[j + 1] - v[j]).normalized()) {
            acc.parallel = acc.parallel.max(dir.cross(side).abs());
        } else {
            acc.parallel = f64::INFINITY;
        }
        acc.s_min = acc.s_min.min(c.s);
        acc.s_max = acc.s_max.max(c.s);
    }
    acc.gap = acc.gap.max(rec.max_tangency_gap);
    for j in 1..n {
        acc.separation = acc.separation.min(v[j].distance(v[0]));
    }
    if let Some(angles) = &config.expect.exterior_angles {
        for j in 0..n {
            let d_in = v[j] - v[(j + n - 1) % n];
            let d_out = v[j + 1] - v[j];
            let theta = d_in.cross(d_out).atan2(d_in.dot(d_out));
            let expected = angles[poly.curves[j] % angles.len()];
            acc.angle = acc.angle.max(angle_mod_pi(theta - expected));
        }
    }
    let sides = poly.side_lengths();
    let (lo, hi) = sides.iter().fold((f64::INFINITY, 0.0f64), |(lo, hi), &s| (lo.min(s), hi.max(s)));
    acc.spread = acc.spread.max((hi - lo) / hi);
    if let Some(expected) = config.expect.side_length {
        for s in &sides {
            acc.side_err = acc.side_err.max((s - expected).abs() / expected);
        }
    }
    if let Some(expected) = config.expect.vertex_mean_norm {
        acc.mean_err = acc.mean_err.max((poly.vertex_mean().norm() - expected).abs());
    }
}

/// The sampled first-step map is orientation preserving of degree one.
fn monotone_first_step(t2: &[Option<f64>], l: f64) -> bool {
    let Some(vals) = t2.iter().copied().collect::<Option<Vec<f64>>>() else {
        return false;
    };
    let m = vals.len();
    let mut total = 0.0;
    for i in 0..m {
        let inc = (vals[(i + 1) % m] - vals[i]).rem_euclid(l);
        if inc <= 0.0 {
            return false;
        }
        total += inc;
    }
    (total - l).abs() < 1e-6 * l
}
