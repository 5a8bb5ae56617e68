//! Closed parametric plane curves exposing a 2-jet.

use std::f64::consts::TAU;
use std::fmt::Debug;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::geom::{polyline_self_intersects, Vec2};
use crate::roots::golden_min;

/// Position, velocity and acceleration at one parameter.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Jet {
    pub pos: Vec2,
    pub vel: Vec2,
    pub acc: Vec2,
}

impl Jet {
    /// Signed curvature `det(X', X'') / |X'|^3`.
    pub fn curvature(&self) -> f64 {
        self.vel.cross(self.acc) / self.vel.norm().powi(3)
    }
}

/// A closed curve parametrized over `[0, L)`.
pub trait PlaneCurve: Send + Sync + Debug {
    /// The domain length `L`.
    fn period(&self) -> f64;

    fn jet(&self, t: f64) -> Jet;

    fn point(&self, t: f64) -> Vec2 {
        self.jet(t).pos
    }

    fn curvature(&self, t: f64) -> f64 {
        self.jet(t).curvature()
    }

    /// `n` points at equispaced parameters `i·L/n`.
    fn sample(&self, n: usize) -> Vec<Vec2> {
        let h = self.period() / n as f64;
        (0..n).map(|i| self.point(h * i as f64)).collect()
    }
}

pub type SharedCurve = Arc<dyn PlaneCurve>;

impl<C: PlaneCurve + ?Sized> PlaneCurve for Arc<C> {
    fn period(&self) -> f64 {
        (**self).period()
    }
    fn jet(&self, t: f64) -> Jet {
        (**self).jet(t)
    }
    fn point(&self, t: f64) -> Vec2 {
        (**self).point(t)
    }
}

/// Distance between the positions at `0` and just below `L`.
pub fn closure_gap(c: &dyn PlaneCurve) -> f64 {
    let l = c.period();
    c.point(0.0).distance(c.point(l * (1.0 - 1e-12)))
}

/// True if the curve closes up within `1e-9`.
pub fn is_closed(c: &dyn PlaneCurve) -> bool {
    closure_gap(c) < 1e-9
}

/// Smallest speed over `n` samples, refined by golden-section search around
/// the discrete minimum.
pub fn min_speed(c: &dyn PlaneCurve, n: usize) -> (f64, f64) {
    let l = c.period();
    let h = l / n as f64;
    let speed = |t: f64| c.jet(t).vel.norm();
    let (i, _) = (0..n).map(|i| (i, speed(h * i as f64))).min_by(|a, b| a.1.total_cmp(&b.1)).unwrap_or((0, 0.0));
    let t0 = h * i as f64;
    let (t, v) = golden_min(speed, t0 - h, t0 + h, 1e-13 * l.max(1.0));
    (t.rem_euclid(l), v)
}

/// Whether the minimum speed over `n` samples is positive.
pub fn is_regular(c: &dyn PlaneCurve, n: usize) -> bool {
    min_speed(c, n).1 > 1e-9
}

/// Shoelace area of an `n`-point sample, positive for counterclockwise curves.
pub fn signed_area(c: &dyn PlaneCurve, n: usize) -> f64 {
    let pts = c.sample(n);
    let m = pts.len();
    0.5 * (0..m).map(|i| pts[i].cross(pts[(i + 1) % m])).sum::<f64>()
}

/// Self-intersection test on an `n`-point sample.
pub fn self_intersects(c: &dyn PlaneCurve, n: usize) -> Result<bool> {
    polyline_self_intersects(&c.sample(n), true)
}

/// Velocity and acceleration by 5-point central differences of a position map.
pub fn fd_derivatives<F: Fn(f64) -> Vec2>(f: F, t: f64, h: f64) -> (Vec2, Vec2) {
    let (m2, m1, z, p1, p2) = (f(t - 2.0 * h), f(t - h), f(t), f(t + h), f(t + 2.0 * h));
    let vel = (m2 - p2 + (p1 - m1) * 8.0) / (12.0 * h);
    let acc = (-m2 - p2 + (p1 + m1) * 16.0 - z * 30.0) / (12.0 * h * h);
    (vel, acc)
}

/// A circle traversed counterclockwise once per `2·pi`, repeated over `sheets` turns.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Circle {
    pub center: Vec2,
    pub radius: f64,
    pub sheets: u32,
}

impl Circle {
    pub fn new(center: Vec2, radius: f64) -> Self {
        Self { center, radius, sheets: 1 }
    }
}

impl PlaneCurve for Circle {
    fn period(&self) -> f64 {
        TAU * self.sheets as f64
    }

    fn jet(&self, t: f64) -> Jet {
        let u = Vec2::from_angle(t);
        Jet { pos: self.center + u * self.radius, vel: u.perp() * self.radius, acc: -u * self.radius }
    }
}

/// A rigid translate of another curve; used for negative controls.
#[derive(Debug, Clone)]
pub struct Translated {
    pub curve: SharedCurve,
    pub offset: Vec2,
}

impl PlaneCurve for Translated {
    fn period(&self) -> f64 {
        self.curve.period()
    }

    fn jet(&self, t: f64) -> Jet {
        let j = self.curve.jet(t);
        Jet { pos: j.pos + self.offset, ..j }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn circle_metrics() {
        let c = Circle::new(Vec2::new(1.0, -2.0), 3.0);
        assert!(is_closed(&c));
        let (_, v) = min_speed(&c, 64);
        assert!((v - 3.0).abs() < 1e-12);
        assert!((signed_area(&c, 4096) - 9.0 * PI).abs() < 1e-2);
        assert!((c.curvature(0.4) - 1.0 / 3.0).abs() < 1e-14);
        assert!(!self_intersects(&c, 256).unwrap());
    }

    #[test]
    fn fd_matches_circle_jet() {
        let c = Circle::new(Vec2::ZERO, 2.0);
        let (v, a) = fd_derivatives(|t| c.point(t), 0.7, 1e-3);
        let j = c.jet(0.7);
        assert!((v - j.vel).norm() < 1e-10);
        assert!((a - j.acc).norm() < 1e-7);
    }

    #[test]
    fn translated_shifts_positions_only() {
        let c: SharedCurve = Arc::new(Circle::new(Vec2::ZERO, 1.0));
        let t = Translated { curve: c.clone(), offset: Vec2::new(0.5, 0.0) };
        let (a, b) = (t.jet(1.0), c.jet(1.0));
        assert_eq!(a.pos, b.pos + Vec2::new(0.5, 0.0));
        assert_eq!(a.vel, b.vel);
    }
}
