//! Fixtures shared by the criterion benches.

use std::f64::consts::TAU;
use std::sync::Arc;

use poncelet_core::{
    curve_from_support, envelope_from_vertex, equiangular_pair, make_torsion, CircleDiffeo, EnvelopeCurve,
    EquiangularSpec, FourierLift, FourierTerm, PonceletConfiguration, Rational, RationalAngle, SupportFunction,
    TorsionMap, TrigTerm, VertexStepSystem,
};

/// The triangle-figure envelope `9 + 0.9 cos 2phi - (2/9) cos 5phi + (2/7) sin 3phi`.
pub fn triangle_support() -> SupportFunction {
    SupportFunction::new(
        9.0,
        vec![
            TrigTerm::new(Rational::integer(2), 0.9, 0.0),
            TrigTerm::new(Rational::integer(5), -2.0 / 9.0, 0.0),
            TrigTerm::new(Rational::integer(3), 0.0, 2.0 / 7.0),
        ],
        1,
    )
    .expect("valid support")
}

pub fn triangle_pair() -> PonceletConfiguration {
    let spec = EquiangularSpec::new(triangle_support(), RationalAngle::new(2, 3).expect("angle"), 0).expect("spec");
    equiangular_pair(&spec).expect("pair")
}

/// A period-`n` map conjugate to the rotation by `1/n` through a two-term lift.
pub fn conjugated_torsion(n: u32) -> TorsionMap {
    let h: CircleDiffeo = FourierLift::new(
        TAU,
        0.0,
        vec![FourierTerm { j: 1, sin: 0.2, cos: 0.0 }, FourierTerm { j: 2, sin: 0.0, cos: 0.06 }],
    )
    .expect("lift")
    .into();
    make_torsion(&h, 1, n).expect("torsion")
}

pub fn envelope_system() -> (VertexStepSystem, EnvelopeCurve) {
    let y = curve_from_support(&SupportFunction::cosine(20.0, Rational::integer(3), 1.0).expect("support"));
    let sys = VertexStepSystem::new(Arc::new(y), conjugated_torsion(4)).expect("system");
    let c = envelope_from_vertex(&sys).expect("envelope");
    (sys, c)
}
