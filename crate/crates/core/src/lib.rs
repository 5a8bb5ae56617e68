//! Poncelet pairs and clans of closed plane curves built from support
//! functions and torsion maps of the circle, with an independent numerical
//! verifier.

pub mod circle_map;
pub mod curve;
pub mod envelope;
pub mod equiangular;
pub mod error;
pub mod geom;
pub mod polygon;
pub mod rational;
pub mod roots;
pub mod support;
pub mod verify;
pub mod vertex;

pub use circle_map::{
    conjugator_to_rotation, find_fixed_point, make_torsion, rotation_number, verify_torsion, CircleDiffeo, Conjugator,
    FourierLift, FourierTerm, TorsionMap, TorsionReport,
};
pub use curve::{Jet, PlaneCurve, SharedCurve};
pub use envelope::{
    clan_from_vertex, envelope_from_vertex, envelope_regularity, interiority_check, EnvelopeCurve, InteriorityReport,
    InteriorityViolation, RegularityReport, ReparamCurve, VertexClan, VertexStepSystem,
};
pub use equiangular::{
    critical_a, equiangular_clan, equiangular_pair, equiangular_vertex_curve, equilateral_pair,
    equilateral_pair_scaled, vertex_count, Epitrochoid, EquiangularClan, EquiangularCurve, EquiangularSpec,
    EquilateralPair,
};
pub use error::{Error, Result};
pub use geom::{frame, polyline_self_intersects, QuarterTurn, Vec2, J};
pub use polygon::{Envelope, Expectations, PonceletConfiguration, PonceletPolygon, Schedule, SideContact, Transition};
pub use rational::{Rational, RationalAngle};
pub use support::{constant_width_check, curve_from_support, eval_jet, SupportCurve, SupportFunction, TrigTerm};
pub use verify::{
    is_strictly_convex_curve, next_vertex_oracle, regularity_scan, seeded_next_vertex, translate_vertex_curves, verify,
    verify_pair, Check, OracleMode, OracleStep, RegularityScan, VerificationReport, VerifyOptions,
};
pub use vertex::{clan_from_envelope, vertex_from_envelope, ContactStepSystem, EnvelopeClan, TangentIntersectionCurve};
