//! Orientation-preserving circle diffeomorphisms represented by lifts.
//!
//! A circle of circumference `L` is `R / L·Z`. A map is stored as a strictly
//! increasing lift `F` with `F(x + L) = F(x) + L`. Lifts are built from
//! trigonometric polynomials and closed under composition, inversion,
//! iteration and iterate-averaging; first and second derivatives follow the
//! chain rule exactly.

use std::f64::consts::TAU;
use std::sync::Arc;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::roots::{bisect, newton_bisect};

/// Value and first two derivatives of a lift.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct LiftJet {
    pub value: f64,
    pub d1: f64,
    pub d2: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FourierTerm {
    pub j: u32,
    #[serde(default)]
    pub sin: f64,
    #[serde(default)]
    pub cos: f64,
}

/// `F(x) = x + c + sum_j (a_j sin(2 pi j x / L) + b_j cos(2 pi j x / L))`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "FourierDoc", into = "FourierDoc")]
pub struct FourierLift {
    circumference: f64,
    c: f64,
    terms: Vec<FourierTerm>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FourierDoc {
    #[serde(rename = "L")]
    circumference: f64,
    #[serde(default)]
    c: f64,
    #[serde(default)]
    terms: Vec<FourierTerm>,
}

impl TryFrom<FourierDoc> for FourierLift {
    type Error = Error;
    fn try_from(d: FourierDoc) -> Result<Self> {
        FourierLift::new(d.circumference, d.c, d.terms)
    }
}

impl From<FourierLift> for FourierDoc {
    fn from(f: FourierLift) -> Self {
        FourierDoc { circumference: f.circumference, c: f.c, terms: f.terms }
    }
}

impl FourierLift {
    /// Validates `F' > 1e-9` on 1024 samples.
    pub fn new(circumference: f64, c: f64, terms: Vec<FourierTerm>) -> Result<Self> {
        if !(circumference.is_finite() && circumference > 0.0) {
            return Err(Error::InvalidDiffeo(format!("circumference {circumference} must be positive and finite")));
        }
        if !c.is_finite() {
            return Err(Error::InvalidDiffeo("offset is not finite".into()));
        }
        for t in &terms {
            if t.j == 0 {
                return Err(Error::InvalidDiffeo("harmonic index must be >= 1".into()));
            }
            if !t.sin.is_finite() || !t.cos.is_finite() {
                return Err(Error::InvalidDiffeo("coefficient is not finite".into()));
            }
        }
        let lift = Self { circumference, c, terms };
        let n = 1024;
        let h = circumference / n as f64;
        for i in 0..n {
            let x = h * i as f64;
            let d = lift.jet(x).d1;
            if d <= 1e-9 {
                return Err(Error::InvalidDiffeo(format!("lift derivative {d:.3e} at x = {x:.6} is not positive")));
            }
        }
        Ok(lift)
    }

    pub fn circumference(&self) -> f64 {
        self.circumference
    }

    fn jet(&self, x: f64) -> LiftJet {
        let w = TAU / self.circumference;
        let mut j = LiftJet { value: x + self.c, d1: 1.0, d2: 0.0 };
        for t in &self.terms {
            let k = w * t.j as f64;
            let (s, c) = (k * x).sin_cos();
            j.value += t.sin * s + t.cos * c;
            j.d1 += k * (t.sin * c - t.cos * s);
            j.d2 -= k * k * (t.sin * s + t.cos * c);
        }
        j
    }
}

#[derive(Debug)]
enum LiftKind {
    Fourier(FourierLift),
    Compose { outer: CircleDiffeo, inner: CircleDiffeo },
    Inverse(CircleDiffeo),
    Power { map: CircleDiffeo, n: u32 },
    Average { map: CircleDiffeo, n: u32 },
}

/// An orientation-preserving diffeomorphism of the circle of circumference `L`.
#[derive(Debug, Clone)]
pub struct CircleDiffeo {
    circumference: f64,
    kind: Arc<LiftKind>,
}

impl From<FourierLift> for CircleDiffeo {
    fn from(f: FourierLift) -> Self {
        Self { circumference: f.circumference, kind: Arc::new(LiftKind::Fourier(f)) }
    }
}

impl CircleDiffeo {
    pub fn fourier(lift: FourierLift) -> Self {
        lift.into()
    }

    /// The rigid rotation `x -> x + shift`.
    pub fn rotation(circumference: f64, shift: f64) -> Result<Self> {
        Ok(FourierLift::new(circumference, shift, Vec::new())?.into())
    }

    pub fn identity(circumference: f64) -> Result<Self> {
        Self::rotation(circumference, 0.0)
    }

    pub fn circumference(&self) -> f64 {
        self.circumference
    }

    /// `Some(shift)` when the map is a plain rigid rotation.
    pub fn as_rotation(&self) -> Option<f64> {
        match &*self.kind {
            LiftKind::Fourier(f) if f.terms.iter().all(|t| t.sin == 0.0 && t.cos == 0.0) => Some(f.c),
            _ => None,
        }
    }

    pub fn lift(&self, x: f64) -> f64 {
        self.lift_jet(x).value
    }

    /// The induced map on `[0, L)`.
    pub fn apply(&self, x: f64) -> f64 {
        self.lift(x).rem_euclid(self.circumference)
    }

    pub fn derivative(&self, x: f64) -> f64 {
        self.lift_jet(x).d1
    }

    pub fn lift_jet(&self, x: f64) -> LiftJet {
        match &*self.kind {
            LiftKind::Fourier(f) => f.jet(x),
            LiftKind::Compose { outer, inner } => {
                let g = inner.lift_jet(x);
                let f = outer.lift_jet(g.value);
                LiftJet { value: f.value, d1: f.d1 * g.d1, d2: f.d2 * g.d1 * g.d1 + f.d1 * g.d2 }
            }
            LiftKind::Inverse(map) => {
                let y = Self::invert_value(map, x);
                let f = map.lift_jet(y);
                LiftJet { value: y, d1: 1.0 / f.d1, d2: -f.d2 / (f.d1 * f.d1 * f.d1) }
            }
            LiftKind::Power { map, n } => {
                let mut acc = LiftJet { value: x, d1: 1.0, d2: 0.0 };
                for _ in 0..*n {
                    let f = map.lift_jet(acc.value);
                    acc = LiftJet { value: f.value, d1: f.d1 * acc.d1, d2: f.d2 * acc.d1 * acc.d1 + f.d1 * acc.d2 };
                }
                acc
            }
            LiftKind::Average { map, n } => {
                let mut it = LiftJet { value: x, d1: 1.0, d2: 0.0 };
                let mut sum = it;
                for _ in 1..*n {
                    let f = map.lift_jet(it.value);
                    it = LiftJet { value: f.value, d1: f.d1 * it.d1, d2: f.d2 * it.d1 * it.d1 + f.d1 * it.d2 };
                    sum.value += it.value;
                    sum.d1 += it.d1;
                    sum.d2 += it.d2;
                }
                let k = *n as f64;
                LiftJet { value: sum.value / k, d1: sum.d1 / k, d2: sum.d2 / k }
            }
        }
    }

    /// Solves `F(x) = y` for the lift `F` of `map`.
    ///
    /// The root lies within one circumference of `y - (F(y) - y)` because the
    /// displacement `F(x) - x` oscillates by less than `L`.
    fn invert_value(map: &CircleDiffeo, y: f64) -> f64 {
        let l = map.circumference;
        let x0 = y - (map.lift(y) - y);
        let xtol = 1e-15 * (l + y.abs());
        newton_bisect(
            |x| {
                let j = map.lift_jet(x);
                (j.value - y, j.d1)
            },
            x0 - l,
            x0 + l,
            xtol,
        )
    }

    fn same_circle(&self, other: &CircleDiffeo) -> Result<()> {
        let (a, b) = (self.circumference, other.circumference);
        if (a - b).abs() > 1e-12 * a.max(b) {
            return Err(Error::InvalidDiffeo(format!("circumference mismatch: {a} vs {b}")));
        }
        Ok(())
    }

    /// `self ∘ inner`: apply `inner` first.
    pub fn compose(&self, inner: &CircleDiffeo) -> Result<CircleDiffeo> {
        self.same_circle(inner)?;
        Ok(Self {
            circumference: self.circumference,
            kind: Arc::new(LiftKind::Compose { outer: self.clone(), inner: inner.clone() }),
        })
    }

    /// `next ∘ self`: apply `self` first.
    pub fn then(&self, next: &CircleDiffeo) -> Result<CircleDiffeo> {
        next.compose(self)
    }

    pub fn inverse(&self) -> CircleDiffeo {
        if let LiftKind::Inverse(inner) = &*self.kind {
            return inner.clone();
        }
        if let Some(shift) = self.as_rotation() {
            if let Ok(r) = Self::rotation(self.circumference, -shift) {
                return r;
            }
        }
        Self { circumference: self.circumference, kind: Arc::new(LiftKind::Inverse(self.clone())) }
    }

    /// The `n`-th iterate; `n = 0` is the identity.
    pub fn power(&self, n: u32) -> CircleDiffeo {
        Self { circumference: self.circumference, kind: Arc::new(LiftKind::Power { map: self.clone(), n }) }
    }

    /// `H = (1/n) sum_{j<n} F^j`.
    pub fn average_of_iterates(&self, n: u32) -> Result<CircleDiffeo> {
        if n == 0 {
            return Err(Error::Precondition("average of zero iterates".into()));
        }
        Ok(Self { circumference: self.circumference, kind: Arc::new(LiftKind::Average { map: self.clone(), n }) })
    }

    /// Smallest lift derivative on `samples` equispaced points.
    pub fn min_derivative(&self, samples: usize) -> f64 {
        let h = self.circumference / samples as f64;
        (0..samples).map(|i| self.derivative(h * i as f64)).fold(f64::INFINITY, f64::min)
    }
}

/// Distance on the circle of circumference `l`.
pub fn circular_distance(a: f64, b: f64, l: f64) -> f64 {
    let d = (a - b).rem_euclid(l);
    d.min(l - d)
}

/// Orbit average `((F^k(0) / k) mod L) / L`, in `[0, 1)`.
pub fn rotation_number(f: &CircleDiffeo, iterations: u32) -> Result<f64> {
    if iterations == 0 {
        return Err(Error::Precondition("rotation number needs >= 1 iteration".into()));
    }
    let l = f.circumference();
    let mut x = 0.0;
    for _ in 0..iterations {
        x = f.lift(x);
    }
    let tau = (x / iterations as f64).rem_euclid(l) / l;
    Ok(if tau >= 1.0 { 0.0 } else { tau })
}

/// Probe-based certificate for `f^n = id` with no earlier identity iterate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TorsionReport {
    pub period: u32,
    pub probes: usize,
    /// Tolerance relative to the circumference.
    pub tol: f64,
    /// Largest circular displacement of `f^n` from the identity.
    pub max_return: f64,
    /// Minimum over `0 < i < n` of the largest displacement of `f^i`;
    /// infinite when `n = 1`.
    pub min_earlier: f64,
    pub pass: bool,
}

pub const DEFAULT_TORSION_PROBES: usize = 64;

/// Checks `f^n = id` and `f^i != id` for `0 < i < n` on 64 probes.
///
/// Displacements are measured as circular distances and compared against
/// `tol·L`.
pub fn verify_torsion(f: &CircleDiffeo, n: u32, tol: f64) -> Result<TorsionReport> {
    verify_torsion_with(f, n, tol, DEFAULT_TORSION_PROBES)
}

pub fn verify_torsion_with(f: &CircleDiffeo, n: u32, tol: f64, probes: usize) -> Result<TorsionReport> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::Precondition("torsion tolerance must be positive".into()));
    }
    if n == 0 || probes == 0 {
        return Err(Error::Precondition("period and probe count must be positive".into()));
    }
    let l = f.circumference();
    let mut max_disp = vec![0.0f64; n as usize + 1];
    for p in 0..probes {
        let x0 = l * p as f64 / probes as f64;
        let mut x = x0;
        for d in max_disp.iter_mut().skip(1) {
            x = f.lift(x);
            *d = d.max(circular_distance(x, x0, l));
        }
    }
    let max_return = max_disp[n as usize];
    let min_earlier = max_disp[1..n as usize].iter().copied().fold(f64::INFINITY, f64::min);
    let pass = max_return <= tol * l && min_earlier > tol * l;
    Ok(TorsionReport { period: n, probes, tol, max_return, min_earlier, pass })
}

/// A certified torsion map of period `n` and rotation number `m/n`.
#[derive(Debug, Clone)]
pub struct TorsionMap {
    map: CircleDiffeo,
    period: u32,
    winding: i64,
}

/// Default tolerance (relative to `L`) for torsion certification.
pub const TORSION_TOL: f64 = 1e-8;

impl TorsionMap {
    /// Certifies `map` as a torsion map of period `n` and reads the winding
    /// from `F^n(0) = m L`.
    pub fn certify(map: CircleDiffeo, n: u32) -> Result<Self> {
        let report = verify_torsion(&map, n, TORSION_TOL)?;
        if !report.pass {
            let reason = if report.max_return > TORSION_TOL * map.circumference() {
                format!("f^{n} moves a probe by {:.3e}", report.max_return)
            } else {
                format!("an earlier iterate is the identity (min displacement {:.3e})", report.min_earlier)
            };
            return Err(Error::NotTorsion { period: n, reason });
        }
        let winding = (map.power(n).lift(0.0) / map.circumference()).round() as i64;
        Ok(Self { map, period: n, winding })
    }

    /// The rigid rotation by `m L / n`.
    pub fn rotation(circumference: f64, m: i64, n: u32) -> Result<Self> {
        check_coprime(m, n)?;
        let map = CircleDiffeo::rotation(circumference, circumference * m as f64 / n as f64)?;
        Ok(Self { map, period: n, winding: m })
    }

    pub fn map(&self) -> &CircleDiffeo {
        &self.map
    }

    pub fn period(&self) -> u32 {
        self.period
    }

    pub fn winding(&self) -> i64 {
        self.winding
    }

    pub fn circumference(&self) -> f64 {
        self.map.circumference()
    }
}

fn check_coprime(m: i64, n: u32) -> Result<()> {
    if n == 0 {
        return Err(Error::Precondition("torsion period must be positive".into()));
    }
    let g = m.gcd(&(n as i64));
    if g != 1 {
        return Err(Error::NotCoprime { m, n, gcd: g });
    }
    Ok(())
}

/// `f = h^-1 ∘ R_{mL/n} ∘ h`, certified on probes.
pub fn make_torsion(h: &CircleDiffeo, m: i64, n: u32) -> Result<TorsionMap> {
    check_coprime(m, n)?;
    let l = h.circumference();
    let r = CircleDiffeo::rotation(l, l * m as f64 / n as f64)?;
    let map = h.inverse().compose(&r.compose(h)?)?;
    let t = TorsionMap::certify(map, n)?;
    Ok(TorsionMap { winding: m, ..t })
}

/// The averaged conjugator `H` with `H ∘ F = R_shift ∘ H`.
#[derive(Debug, Clone)]
pub struct Conjugator {
    pub map: CircleDiffeo,
    /// Rotation amount `w L / n`, where `F^n(x) = x + w L`.
    pub shift: f64,
    pub min_derivative: f64,
}

impl Conjugator {
    /// Largest `|H(F(x)) - H(x) - shift|` over `probes` points.
    pub fn identity_error(&self, f: &CircleDiffeo, probes: usize) -> f64 {
        let l = f.circumference();
        (0..probes)
            .map(|i| {
                let x = l * i as f64 / probes as f64;
                (self.map.lift(f.lift(x)) - self.map.lift(x) - self.shift).abs()
            })
            .fold(0.0, f64::max)
    }
}

/// `H = (1/n) sum_{j<n} F^j`, after re-certifying the torsion property.
pub fn conjugator_to_rotation(f: &TorsionMap) -> Result<Conjugator> {
    let t = TorsionMap::certify(f.map.clone(), f.period)?;
    let map = t.map.average_of_iterates(t.period)?;
    let shift = t.winding as f64 * t.circumference() / t.period as f64;
    let min_derivative = map.min_derivative(1024);
    Ok(Conjugator { map, shift, min_derivative })
}

/// A point with `h(x) = x` on the circle, located by scanning `(h(x) - x) / L`
/// across integers on `probes` cells and bisecting.
pub fn find_fixed_point(h: &CircleDiffeo, probes: usize) -> Option<f64> {
    let l = h.circumference();
    let q = |x: f64| (h.lift(x) - x) / l;
    let step = l / probes as f64;
    let vals: Vec<f64> = (0..=probes).map(|i| q(step * i as f64)).collect();
    for i in 0..probes {
        let (a, b) = (vals[i], vals[i + 1]);
        if a == a.floor() {
            return Some(step * i as f64);
        }
        if a.floor() != b.floor() {
            let m = a.floor().max(b.floor());
            let x0 = step * i as f64;
            return Some(bisect(|x| q(x) - m, x0, x0 + step, 1e-13 * l));
        }
    }
    None
}
