//! Turning a configuration document into curves, a schedule and verifier options.

use std::sync::Arc;

use poncelet_core::{
    clan_from_envelope, clan_from_vertex, critical_a, curve_from_support, envelope_from_vertex, equiangular_clan,
    equiangular_pair, equilateral_pair_scaled, interiority_check, is_strictly_convex_curve, make_torsion,
    polyline_self_intersects, regularity_scan, vertex_from_envelope, CircleDiffeo, ContactStepSystem, EquiangularSpec,
    FourierLift, InteriorityReport, PlaneCurve, PonceletConfiguration, SharedCurve, TorsionMap, VerifyOptions,
    VertexStepSystem,
};
use serde::Serialize;

use crate::config::{Amplitude, Construction, LiftDoc, SceneConfig, TorsionDoc};
use crate::CliError;

/// Samples used for the per-curve flags in the build summary.
const SUMMARY_SAMPLES: usize = 1024;
pub const PROBES_ENV: &str = "PONCELET_PROBES";
pub const DEFAULT_PROBES: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Role {
    Envelope,
    Vertex,
}

#[derive(Debug, Clone)]
pub struct NamedCurve {
    pub name: String,
    pub role: Role,
    pub curve: SharedCurve,
}

/// A built scene: the configuration handed to the verifier plus named curves.
#[derive(Debug, Clone)]
pub struct Scene {
    pub config: SceneConfig,
    pub poncelet: PonceletConfiguration,
    pub curves: Vec<NamedCurve>,
    /// Interiority of the contacts, when the envelope was derived from a vertex curve.
    pub interiority: Option<InteriorityReport>,
    /// Side length of equilateral polygons.
    pub side_length: Option<f64>,
    pub amplitude: Option<f64>,
}

fn lift(doc: &LiftDoc, l: f64) -> Result<CircleDiffeo, CliError> {
    if doc.terms.is_empty() {
        return Ok(CircleDiffeo::rotation(l, doc.shift)?);
    }
    Ok(FourierLift::new(l, doc.shift, doc.terms.clone())?.into())
}

fn torsion(doc: &TorsionDoc, l: f64) -> Result<TorsionMap, CliError> {
    match &doc.conjugator {
        None => Ok(TorsionMap::rotation(l, doc.m, doc.n)?),
        Some(h) => Ok(make_torsion(&lift(h, l)?, doc.m, doc.n)?),
    }
}

fn curve_names(prefix: &str, n: usize) -> Vec<String> {
    if n == 1 {
        vec![prefix.to_string()]
    } else {
        (1..=n).map(|i| format!("{prefix}{i}")).collect()
    }
}

fn named_curves(p: &PonceletConfiguration) -> Vec<NamedCurve> {
    let mut out = Vec::new();
    for (name, e) in curve_names("C", p.envelopes.len()).into_iter().zip(&p.envelopes) {
        let curve: SharedCurve = match e {
            poncelet_core::Envelope::Support { curve, .. } => Arc::new(curve.clone()),
            poncelet_core::Envelope::Curve(c) => c.clone(),
        };
        out.push(NamedCurve { name, role: Role::Envelope, curve });
    }
    for (name, c) in curve_names("K", p.vertex_curves.len()).into_iter().zip(&p.vertex_curves) {
        out.push(NamedCurve { name, role: Role::Vertex, curve: c.clone() });
    }
    out
}

impl Scene {
    pub fn build(config: SceneConfig) -> Result<Self, CliError> {
        let mut interiority = None;
        let mut side_length = None;
        let mut amplitude = None;
        let mut poncelet = match &config.construction {
            Construction::EquiangularPair(p) => {
                equiangular_pair(&EquiangularSpec::new(p.support.clone(), p.alpha, p.branch)?)?
            }
            Construction::Equilateral(p) => {
                let a = match p.a {
                    Amplitude::Value(a) => a,
                    Amplitude::Named(_) => critical_a(p.k, p.l)? * p.b,
                };
                let pair = equilateral_pair_scaled(p.k, p.l, a, p.b)?;
                side_length = Some(pair.side_length);
                amplitude = Some(pair.amplitude);
                pair.configuration()?
            }
            Construction::EquiangularClan(p) => {
                let branches = p.branches.clone().unwrap_or_else(|| vec![0; p.alphas.len()]);
                equiangular_clan(&p.support, &p.alphas, &branches)?.configuration()?
            }
            Construction::EnvelopeFromVertex(p) => {
                let y = Arc::new(curve_from_support(&p.vertex));
                let sys = VertexStepSystem::new(y, torsion(&p.step, p.vertex.period())?)?;
                let c = envelope_from_vertex(&sys)?;
                interiority = Some(interiority_check(&sys, 512)?);
                sys.configuration(&c)?
            }
            Construction::VertexFromEnvelope(p) => {
                let sys = ContactStepSystem::new(p.support.clone(), torsion(&p.step, p.support.period())?)?;
                let k = vertex_from_envelope(&sys)?;
                sys.configuration(&k)?
            }
            Construction::ClanFromVertex(p) => {
                let l = p.vertex.period();
                let steps = p.steps.iter().map(|s| lift(s, l)).collect::<Result<Vec<_>, _>>()?;
                clan_from_vertex(Arc::new(curve_from_support(&p.vertex)), &steps)?.configuration()?
            }
            Construction::ClanFromEnvelope(p) => {
                let l = p.support.period();
                let steps = p.steps.iter().map(|s| lift(s, l)).collect::<Result<Vec<_>, _>>()?;
                clan_from_envelope(&p.support, &steps)?.configuration()?
            }
        };
        poncelet.name = config.name.clone();
        if let Some(b) = config.verify.interior_contacts {
            poncelet.expect.interior_contacts = b;
        }
        if let Some(r) = config.verify.regular {
            poncelet.expect.regular = Some(r);
        }
        poncelet.validate()?;
        let curves = named_curves(&poncelet);
        Ok(Scene { config, poncelet, curves, interiority, side_length, amplitude })
    }

    pub fn curve(&self, name: &str) -> Result<&NamedCurve, CliError> {
        self.curves.iter().find(|c| c.name == name).ok_or_else(|| {
            let known: Vec<&str> = self.curves.iter().map(|c| c.name.as_str()).collect();
            CliError::Usage(format!("no curve named {name:?}; this scene has {}", known.join(", ")))
        })
    }

    /// Verifier options: the document's settings over `probes_default`.
    pub fn verify_options(&self, probes_default: usize) -> VerifyOptions {
        let v = &self.config.verify;
        let mut o = VerifyOptions { probes: v.probes.unwrap_or(probes_default), ..Default::default() };
        if let Some(t) = v.tol {
            o.closure_tol = t;
            o.step_tol = t;
        }
        if let Some(m) = v.oracle {
            o.oracle = m;
        }
        o
    }

    pub fn summary(&self) -> Result<BuildSummary, CliError> {
        let curves = self
            .curves
            .iter()
            .map(|c| {
                let scan = regularity_scan(&c.curve, SUMMARY_SAMPLES)?;
                Ok(CurveSummary {
                    name: c.name.clone(),
                    role: c.role,
                    period: c.curve.period(),
                    strictly_convex: is_strictly_convex_curve(&c.curve, SUMMARY_SAMPLES)?,
                    self_intersects: polyline_self_intersects(&c.curve.sample(SUMMARY_SAMPLES), true)?,
                    min_speed: scan.min_speed,
                    near_singular: scan.near_zeros,
                })
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        Ok(BuildSummary {
            name: self.config.name.clone(),
            construction: self.config.construction.kind(),
            vertex_count: self.poncelet.schedule.vertex_count,
            transitions: self.poncelet.schedule.transitions.len(),
            side_length: self.side_length,
            vertex_mean_norm: self.amplitude,
            interiority: self.interiority.as_ref().map(|r| InteriorityBrief {
                s_min: r.s_min,
                s_max: r.s_max,
                vertex_curve_simple: r.vertex_curve_simple,
                pass: r.pass,
            }),
            curves,
        })
    }
}

/// Probe count from the environment, falling back to the built-in default.
pub fn default_probes() -> Result<usize, CliError> {
    match std::env::var(PROBES_ENV) {
        Ok(s) => {
            s.trim().parse().map_err(|_| CliError::Usage(format!("{PROBES_ENV}={s:?} is not a non-negative integer")))
        }
        Err(_) => Ok(DEFAULT_PROBES),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CurveSummary {
    pub name: String,
    pub role: Role,
    pub period: f64,
    pub strictly_convex: bool,
    pub self_intersects: bool,
    pub min_speed: f64,
    pub near_singular: Vec<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct InteriorityBrief {
    pub s_min: f64,
    pub s_max: f64,
    pub vertex_curve_simple: bool,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct BuildSummary {
    pub name: String,
    pub construction: crate::config::ConstructionKind,
    pub vertex_count: usize,
    pub transitions: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub side_length: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vertex_mean_norm: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub interiority: Option<InteriorityBrief>,
    pub curves: Vec<CurveSummary>,
}
