//! Scene configuration documents.
//!
//! A document names a construction and carries its parameters in a separate
//! object, so each construction's fields are validated strictly:
//!
//! ```json
//! {
//!   "name": "wankel",
//!   "construction": "equilateral",
//!   "parameters": { "k": 1, "l": [2, 1], "a": 3.7320508075688772 },
//!   "render": { "polygon_starts": [0.3] },
//!   "verify": { "probes": 64, "tol": 1e-7, "interior_contacts": true }
//! }
//! ```
//!
//! Angles are rational multiples of pi written as `[num, den]`.

use std::path::Path;

use poncelet_core::{FourierTerm, OracleMode, Rational, RationalAngle, SupportFunction};
use serde::{de::DeserializeOwned, Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConstructionKind {
    EquiangularPair,
    Equilateral,
    EquiangularClan,
    EnvelopeFromVertex,
    VertexFromEnvelope,
    ClanFromVertex,
    ClanFromEnvelope,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    name: String,
    construction: ConstructionKind,
    parameters: serde_json::Value,
    #[serde(default)]
    render: RenderOptions,
    #[serde(default)]
    verify: VerifySection,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RenderOptions {
    pub samples: usize,
    /// Fraction of the bounding box added on each side.
    pub margin: f64,
    pub polygon_starts: Vec<f64>,
    /// Pixel width; the height follows the aspect ratio.
    pub width: f64,
}

impl Default for RenderOptions {
    fn default() -> Self {
        Self { samples: 1024, margin: 0.05, polygon_starts: Vec::new(), width: 800.0 }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct VerifySection {
    pub probes: Option<usize>,
    pub tol: Option<f64>,
    pub interior_contacts: Option<bool>,
    pub regular: Option<bool>,
    pub oracle: Option<OracleMode>,
}

/// A lift `x -> x + shift + sum sin/cos terms` on the period of the curve it acts on.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LiftDoc {
    pub shift: f64,
    pub terms: Vec<FourierTerm>,
}

/// `h^-1 ∘ R_{mL/n} ∘ h`; without a conjugator the rigid rotation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TorsionDoc {
    pub m: i64,
    pub n: u32,
    #[serde(default)]
    pub conjugator: Option<LiftDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EquiangularPairParams {
    pub support: SupportFunction,
    pub alpha: RationalAngle,
    #[serde(default)]
    pub branch: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NamedAmplitude {
    /// `a = cos(alpha/2) n^2 b`, the smallest `a` with a convex vertex curve.
    Critical,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Amplitude {
    Value(f64),
    Named(NamedAmplitude),
}

fn one() -> f64 {
    1.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EquilateralParams {
    pub k: u32,
    pub l: Rational,
    pub a: Amplitude,
    #[serde(default = "one")]
    pub b: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EquiangularClanParams {
    pub support: SupportFunction,
    pub alphas: Vec<RationalAngle>,
    #[serde(default)]
    pub branches: Option<Vec<u32>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnvelopeFromVertexParams {
    /// Support function of the vertex curve.
    pub vertex: SupportFunction,
    pub step: TorsionDoc,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexFromEnvelopeParams {
    pub support: SupportFunction,
    pub step: TorsionDoc,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClanFromVertexParams {
    pub vertex: SupportFunction,
    pub steps: Vec<LiftDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClanFromEnvelopeParams {
    pub support: SupportFunction,
    pub steps: Vec<LiftDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "construction", content = "parameters", rename_all = "kebab-case")]
pub enum Construction {
    EquiangularPair(EquiangularPairParams),
    Equilateral(EquilateralParams),
    EquiangularClan(EquiangularClanParams),
    EnvelopeFromVertex(EnvelopeFromVertexParams),
    VertexFromEnvelope(VertexFromEnvelopeParams),
    ClanFromVertex(ClanFromVertexParams),
    ClanFromEnvelope(ClanFromEnvelopeParams),
}

impl Construction {
    pub fn kind(&self) -> ConstructionKind {
        match self {
            Construction::EquiangularPair(_) => ConstructionKind::EquiangularPair,
            Construction::Equilateral(_) => ConstructionKind::Equilateral,
            Construction::EquiangularClan(_) => ConstructionKind::EquiangularClan,
            Construction::EnvelopeFromVertex(_) => ConstructionKind::EnvelopeFromVertex,
            Construction::VertexFromEnvelope(_) => ConstructionKind::VertexFromEnvelope,
            Construction::ClanFromVertex(_) => ConstructionKind::ClanFromVertex,
            Construction::ClanFromEnvelope(_) => ConstructionKind::ClanFromEnvelope,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SceneConfig {
    pub name: String,
    #[serde(flatten)]
    pub construction: Construction,
    pub render: RenderOptions,
    pub verify: VerifySection,
}

fn params<T: DeserializeOwned>(kind: ConstructionKind, v: serde_json::Value) -> Result<T, CliError> {
    serde_json::from_value(v).map_err(|e| CliError::Schema(format!("parameters of {kind:?}: {e}")))
}

impl SceneConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let raw: RawConfig = serde_json::from_str(text).map_err(|e| CliError::Schema(e.to_string()))?;
        let k = raw.construction;
        let p = raw.parameters;
        let construction = match k {
            ConstructionKind::EquiangularPair => Construction::EquiangularPair(params(k, p)?),
            ConstructionKind::Equilateral => Construction::Equilateral(params(k, p)?),
            ConstructionKind::EquiangularClan => Construction::EquiangularClan(params(k, p)?),
            ConstructionKind::EnvelopeFromVertex => Construction::EnvelopeFromVertex(params(k, p)?),
            ConstructionKind::VertexFromEnvelope => Construction::VertexFromEnvelope(params(k, p)?),
            ConstructionKind::ClanFromVertex => Construction::ClanFromVertex(params(k, p)?),
            ConstructionKind::ClanFromEnvelope => Construction::ClanFromEnvelope(params(k, p)?),
        };
        let cfg = SceneConfig { name: raw.name, construction, render: raw.render, verify: raw.verify };
        cfg.check()?;
        Ok(cfg)
    }

    pub fn from_path(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("configuration serializes")
    }

    fn check(&self) -> Result<(), CliError> {
        let r = &self.render;
        if r.samples < 16 {
            return Err(CliError::Schema(format!("render.samples = {} must be at least 16", r.samples)));
        }
        if !(r.margin.is_finite() && r.margin >= 0.0) {
            return Err(CliError::Schema("render.margin must be a non-negative number".into()));
        }
        if !(r.width.is_finite() && r.width > 0.0) {
            return Err(CliError::Schema("render.width must be positive".into()));
        }
        if let Some(t) = self.verify.tol {
            if !(t.is_finite() && t > 0.0) {
                return Err(CliError::Schema("verify.tol must be positive".into()));
            }
        }
        Ok(())
    }
}
