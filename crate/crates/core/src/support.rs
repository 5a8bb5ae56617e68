//! Support functions with rational frequencies and the curves they define.
//!
//! A support function `p` on the `k`-sheeted circle `[0, 2k·pi)` defines the
//! curve `X(phi) = p(phi) u(phi) + p'(phi) u'(phi)` whose tangent at `phi` has
//! normal `u(phi)`.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::curve::{Jet, PlaneCurve};
use crate::error::{Error, Result};
use crate::geom::frame;
use crate::rational::Rational;

/// One term `cos·cos(l phi) + sin·sin(l phi)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrigTerm {
    pub frequency: Rational,
    pub cos: f64,
    pub sin: f64,
}

impl TrigTerm {
    pub fn new(frequency: Rational, cos: f64, sin: f64) -> Self {
        Self { frequency, cos, sin }
    }
}

/// A trigonometric polynomial `a + sum_j (c_j cos(l_j phi) + s_j sin(l_j phi))`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SupportDoc", into = "SupportDoc")]
pub struct SupportFunction {
    constant: f64,
    terms: Vec<TrigTerm>,
    sheets: u32,
}

/// Values `p, p', p'', p'''` at one angle.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SupportJet {
    pub p: f64,
    pub d1: f64,
    pub d2: f64,
    pub d3: f64,
}

impl SupportFunction {
    /// Validates that every `l_j·k` is an integer so `p` is `2k·pi`-periodic.
    pub fn new(constant: f64, terms: Vec<TrigTerm>, sheets: u32) -> Result<Self> {
        if sheets == 0 {
            return Err(Error::InvalidSupport("sheet count must be positive".into()));
        }
        if !constant.is_finite() {
            return Err(Error::InvalidSupport("constant term is not finite".into()));
        }
        for t in &terms {
            if !t.frequency.is_positive() {
                return Err(Error::InvalidSupport(format!("frequency {} is not positive", t.frequency)));
            }
            if !t.cos.is_finite() || !t.sin.is_finite() {
                return Err(Error::InvalidSupport("coefficient is not finite".into()));
            }
            if !t.frequency.checked_mul_int(sheets as i64)?.is_integer() {
                return Err(Error::InvalidSupport(format!(
                    "frequency {} is not periodic on {} sheet(s)",
                    t.frequency, sheets
                )));
            }
        }
        Ok(Self { constant, terms, sheets })
    }

    /// The constant function `p = a`.
    pub fn constant(a: f64, sheets: u32) -> Result<Self> {
        Self::new(a, Vec::new(), sheets)
    }

    /// `p = a + b cos(l phi)` on the fewest sheets that make it periodic.
    pub fn cosine(a: f64, l: Rational, b: f64) -> Result<Self> {
        let k = Self::minimal_sheets(&[l])?;
        Self::new(a, vec![TrigTerm::new(l, b, 0.0)], k)
    }

    /// Smallest `k` with every `l·k` integral: the lcm of the denominators.
    pub fn minimal_sheets(frequencies: &[Rational]) -> Result<u32> {
        let mut k: i64 = 1;
        for f in frequencies {
            k = num_integer::lcm(k, f.den());
        }
        u32::try_from(k).map_err(|_| Error::Overflow("sheet count"))
    }

    pub fn constant_term(&self) -> f64 {
        self.constant
    }

    pub fn terms(&self) -> &[TrigTerm] {
        &self.terms
    }

    pub fn sheets(&self) -> u32 {
        self.sheets
    }

    /// Domain length `2k·pi`.
    pub fn period(&self) -> f64 {
        TAU * self.sheets as f64
    }

    /// The same function on `m` times as many sheets.
    pub fn with_sheets(&self, sheets: u32) -> Result<Self> {
        Self::new(self.constant, self.terms.clone(), sheets)
    }

    pub fn jet(&self, phi: f64) -> SupportJet {
        let phi = phi.rem_euclid(self.period());
        let mut j = SupportJet { p: self.constant, ..Default::default() };
        for t in &self.terms {
            let l = t.frequency.to_f64();
            let (s, c) = (t.frequency.num() as f64 * phi / t.frequency.den() as f64).sin_cos();
            let v = t.cos * c + t.sin * s;
            let w = t.sin * c - t.cos * s;
            j.p += v;
            j.d1 += l * w;
            j.d2 -= l * l * v;
            j.d3 -= l * l * l * w;
        }
        j
    }

    pub fn eval(&self, phi: f64) -> f64 {
        self.jet(phi).p
    }

    /// Radius of curvature `p + p''` of the induced curve.
    pub fn radius_of_curvature(&self, phi: f64) -> f64 {
        let j = self.jet(phi);
        j.p + j.d2
    }

    /// Minimum of `p + p''` over `n` equispaced samples.
    pub fn min_radius_of_curvature(&self, n: usize) -> f64 {
        let h = self.period() / n as f64;
        (0..n).map(|i| self.radius_of_curvature(h * i as f64)).fold(f64::INFINITY, f64::min)
    }

    /// Positive radius of curvature on a 4096-point sample.
    pub fn is_convex(&self) -> bool {
        self.min_radius_of_curvature(4096) > 0.0
    }

    /// Largest `|p(phi) + p(phi + pi) - 2a|` over `samples` angles. Requires `k = 1`.
    pub fn width_defect(&self, samples: usize) -> Result<f64> {
        if self.sheets != 1 {
            return Err(Error::Precondition(format!("constant width needs k = 1, got k = {}", self.sheets)));
        }
        let h = TAU / samples as f64;
        Ok((0..samples)
            .map(|i| {
                let phi = h * i as f64;
                (self.eval(phi) + self.eval(phi + PI) - 2.0 * self.constant).abs()
            })
            .fold(0.0, f64::max))
    }
}

/// Free-function form of [`SupportFunction::jet`] returning `(p, p', p'')`.
pub fn eval_jet(p: &SupportFunction, phi: f64) -> (f64, f64, f64) {
    let j = p.jet(phi);
    (j.p, j.d1, j.d2)
}

/// True iff `p(phi) + p(phi + pi) = 2a` within `1e-10` on 720 samples.
pub fn constant_width_check(p: &SupportFunction) -> Result<bool> {
    Ok(p.width_defect(720)? < 1e-10)
}

/// The curve `X = p u + p' u'` on `[0, 2k·pi)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SupportCurve {
    support: SupportFunction,
    convex: bool,
}

impl SupportCurve {
    pub fn support(&self) -> &SupportFunction {
        &self.support
    }

    /// False when `p + p''` is non-positive somewhere; the curve may then have cusps.
    pub fn convex(&self) -> bool {
        self.convex
    }
}

pub fn curve_from_support(p: &SupportFunction) -> SupportCurve {
    SupportCurve { convex: p.is_convex(), support: p.clone() }
}

impl PlaneCurve for SupportCurve {
    fn period(&self) -> f64 {
        self.support.period()
    }

    fn jet(&self, phi: f64) -> Jet {
        let j = self.support.jet(phi);
        let (u, up) = frame(phi);
        let rho = j.p + j.d2;
        Jet { pos: u * j.p + up * j.d1, vel: up * rho, acc: up * (j.d1 + j.d3) - u * rho }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermDoc {
    l_num: i64,
    l_den: i64,
    #[serde(default)]
    cos: f64,
    #[serde(default)]
    sin: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SupportDoc {
    a: f64,
    k: u32,
    #[serde(default)]
    terms: Vec<TermDoc>,
}

impl TryFrom<SupportDoc> for SupportFunction {
    type Error = Error;
    fn try_from(d: SupportDoc) -> Result<Self> {
        let terms = d
            .terms
            .into_iter()
            .map(|t| Ok(TrigTerm::new(Rational::new(t.l_num, t.l_den)?, t.cos, t.sin)))
            .collect::<Result<Vec<_>>>()?;
        SupportFunction::new(d.a, terms, d.k)
    }
}

impl From<SupportFunction> for SupportDoc {
    fn from(p: SupportFunction) -> Self {
        SupportDoc {
            a: p.constant,
            k: p.sheets,
            terms: p
                .terms
                .iter()
                .map(|t| TermDoc { l_num: t.frequency.num(), l_den: t.frequency.den(), cos: t.cos, sin: t.sin })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{fd_derivatives, signed_area};
    use approx::assert_abs_diff_eq;

    fn cosine(a: f64, l: i64) -> SupportFunction {
        SupportFunction::cosine(a, Rational::integer(l), 1.0).unwrap()
    }

    #[test]
    fn jet_of_eight_fifths_family() {
        let (p, d1, d2) = eval_jet(&cosine(1.6, 2), 0.0);
        assert_abs_diff_eq!(p, 2.6);
        assert_abs_diff_eq!(d1, 0.0);
        assert_abs_diff_eq!(d2, -4.0);
    }

    #[test]
    fn jet_of_wankel_constant() {
        let a = 2.0 + 3f64.sqrt();
        let (p, d1, d2) = eval_jet(&cosine(a, 2), PI / 4.0);
        assert_abs_diff_eq!(p, a, epsilon = 1e-15);
        assert_abs_diff_eq!(d1, -2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(d2, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn constant_support_is_a_circle() {
        let p = SupportFunction::constant(1.5, 1).unwrap();
        assert_eq!(eval_jet(&p, 2.1), (1.5, 0.0, 0.0));
        let c = curve_from_support(&p);
        assert!(c.convex());
        for i in 0..16 {
            assert_abs_diff_eq!(c.point(i as f64 * 0.4).norm(), 1.5, epsilon = 1e-15);
        }
    }

    #[test]
    fn curve_position_and_curvature_radius() {
        let c = curve_from_support(&cosine(1.6, 2));
        let x = c.point(0.0);
        assert_abs_diff_eq!(x.x, 2.6);
        assert_abs_diff_eq!(x.y, 0.0);
        // a = 8/5 < l^2 - 1: radius of curvature goes negative.
        assert!(!c.convex());
        let p = cosine(8.1, 3);
        assert_abs_diff_eq!(p.radius_of_curvature(0.0), 0.1, epsilon = 1e-13);
        assert!(p.is_convex());
    }

    #[test]
    fn closed_form_jet_matches_fd() {
        let p = SupportFunction::new(
            3.0,
            vec![
                TrigTerm::new(Rational::new(2, 3).unwrap(), 0.4, -0.1),
                TrigTerm::new(Rational::integer(2), 0.05, 0.2),
            ],
            3,
        )
        .unwrap();
        let c = curve_from_support(&p);
        for i in 0..20 {
            let t = 0.3 + i as f64 * 0.9;
            let j = c.jet(t);
            let (v, a) = fd_derivatives(|s| c.point(s), t, 1e-3);
            assert!((v - j.vel).norm() < 1e-8 * (1.0 + j.vel.norm()));
            assert!((a - j.acc).norm() < 1e-5 * (1.0 + j.acc.norm()));
            let rho = p.radius_of_curvature(t);
            assert_abs_diff_eq!(j.curvature(), 1.0 / rho, epsilon = 1e-10);
        }
    }

    #[test]
    fn circle_area() {
        let c = curve_from_support(&SupportFunction::constant(2.0, 1).unwrap());
        let area = signed_area(&c, 4096);
        assert!((area - 4.0 * PI).abs() < 1e-6 * 4.0 * PI);
    }

    #[test]
    fn periodicity_is_validated() {
        let t = TrigTerm::new(Rational::new(2, 3).unwrap(), 1.0, 0.0);
        assert!(SupportFunction::new(1.0, vec![t], 1).is_err());
        assert!(SupportFunction::new(1.0, vec![t], 3).is_ok());
        assert!(SupportFunction::new(1.0, vec![t], 6).is_ok());
        assert!(SupportFunction::new(1.0, vec![], 0).is_err());
        let neg = TrigTerm::new(Rational::integer(-1), 1.0, 0.0);
        assert!(SupportFunction::new(1.0, vec![neg], 1).is_err());
    }

    #[test]
    fn sheet_reduction_is_periodic() {
        let p = SupportFunction::cosine(2.0, Rational::new(2, 3).unwrap(), 0.7).unwrap();
        assert_eq!(p.sheets(), 3);
        assert_abs_diff_eq!(p.eval(1.0), p.eval(1.0 + 6.0 * PI), epsilon = 1e-13);
        assert_abs_diff_eq!(p.eval(-0.5), p.eval(6.0 * PI - 0.5), epsilon = 1e-13);
    }

    #[test]
    fn constant_width() {
        assert!(constant_width_check(&cosine(5.0, 3)).unwrap());
        assert!(!constant_width_check(&cosine(5.0, 2)).unwrap());
        let p = SupportFunction::new(
            30.0,
            vec![TrigTerm::new(Rational::integer(5), 1.0, 0.0), TrigTerm::new(Rational::integer(3), 0.1, 0.0)],
            1,
        )
        .unwrap();
        assert!(constant_width_check(&p).unwrap());
        let two = SupportFunction::constant(1.0, 2).unwrap();
        assert!(constant_width_check(&two).is_err());
    }

    #[test]
    fn serde_document() {
        let json = r#"{"a": 1.0, "k": 2, "terms": [{"l_num": 1, "l_den": 2, "cos": 0.5}]}"#;
        let p: SupportFunction = serde_json::from_str(json).unwrap();
        assert_eq!(p.sheets(), 2);
        assert_eq!(p.terms()[0].frequency, Rational::new(1, 2).unwrap());
        let back: SupportFunction = serde_json::from_str(&serde_json::to_string(&p).unwrap()).unwrap();
        assert_eq!(back, p);
        let bad = r#"{"a": 1.0, "k": 1, "terms": [{"l_num": 1, "l_den": 2}]}"#;
        assert!(serde_json::from_str::<SupportFunction>(bad).is_err());
        let unknown = r#"{"a": 1.0, "k": 1, "b": 3}"#;
        assert!(serde_json::from_str::<SupportFunction>(unknown).is_err());
    }
}
