use thiserror::Error;

/// Errors raised while constructing curves, maps and Poncelet configurations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("degenerate polyline: {0}")]
    DegeneratePolyline(String),

    #[error("zero denominator in rational value")]
    ZeroDenominator,

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("invalid support function: {0}")]
    InvalidSupport(String),

    #[error("invalid circle map: {0}")]
    InvalidDiffeo(String),

    #[error("invalid angle: {0}")]
    InvalidAngle(String),

    #[error("{m}/{n} is not a reduced fraction (gcd = {gcd})")]
    NotCoprime { m: i64, n: u32, gcd: i64 },

    #[error("not a torsion map of period {period}: {reason}")]
    NotTorsion { period: u32, reason: String },

    #[error("{what} vanishes near parameter {param} (bracket [{lo}, {hi}])")]
    Singular { what: &'static str, param: f64, lo: f64, hi: f64 },

    #[error("transversality fails for step {index} near parameter {param}")]
    Transversality { index: usize, param: f64 },

    #[error("g_{j} o g_{i}^-1 has a fixed point near parameter {param}")]
    FixedPoint { i: usize, j: usize, param: f64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("next-vertex oracle failed: {0}")]
    Oracle(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
