//! Command bodies shared by the binary and the tests.

use std::path::{Path, PathBuf};

use poncelet_core::{verify, VerificationReport};

use crate::config::SceneConfig;
use crate::render::{render_scene, sample_points};
use crate::scene::{default_probes, BuildSummary, Scene};
use crate::CliError;

pub fn load(path: &Path) -> Result<Scene, CliError> {
    Scene::build(SceneConfig::from_path(path)?)
}

pub fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

pub fn build(path: &Path) -> Result<BuildSummary, CliError> {
    load(path)?.summary()
}

#[derive(Debug, Clone, Default)]
pub struct VerifyOverrides {
    pub probes: Option<usize>,
    pub tol: Option<f64>,
}

/// Verification report; the caller decides how to treat a failing report.
pub fn verify_scene(scene: &Scene, overrides: &VerifyOverrides) -> Result<VerificationReport, CliError> {
    let mut opts = scene.verify_options(default_probes()?);
    if let Some(p) = overrides.probes {
        opts.probes = p;
    }
    if let Some(t) = overrides.tol {
        if !(t.is_finite() && t > 0.0) {
            return Err(CliError::Usage(format!("tolerance {t} must be positive")));
        }
        opts.closure_tol = t;
        opts.step_tol = t;
    }
    Ok(verify(&scene.poncelet, &opts)?)
}

pub fn failure_message(r: &VerificationReport) -> String {
    let names: Vec<String> =
        r.failed_checks().iter().map(|c| format!("{} ({:.3e} > {:.3e})", c.name, c.value, c.tol)).collect();
    let mut msg = format!("{}: {}", r.name, names.join(", "));
    if let Some(f) = r.failures.first() {
        msg.push_str(&format!("; probe {} at t0 = {}: {}", f.probe, f.t0, f.message));
    }
    msg
}

pub fn render(path: &Path) -> Result<String, CliError> {
    render_scene(&load(path)?)
}

pub fn sample(path: &Path, curve: &str, n: usize) -> Result<String, CliError> {
    let scene = load(path)?;
    sample_points(scene.curve(curve)?.curve.as_ref(), n)
}

/// Files written by [`run_config`].
#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub report: VerificationReport,
    pub summary: BuildSummary,
    pub svg: PathBuf,
    pub report_path: PathBuf,
}

/// Build, verify and render a document into `out_dir` as `<name>.svg` and
/// `<name>.report.json`. A failing report is returned as an error after
/// the artifacts are written.
pub fn run_config(path: &Path, out_dir: &Path, overrides: &VerifyOverrides) -> Result<RunOutcome, CliError> {
    let scene = load(path)?;
    let summary = scene.summary()?;
    let report = verify_scene(&scene, overrides)?;
    std::fs::create_dir_all(out_dir).map_err(|source| CliError::Io { path: out_dir.to_path_buf(), source })?;
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("scene");
    let svg = out_dir.join(format!("{stem}.svg"));
    write_file(&svg, &render_scene(&scene)?)?;
    let report_path = out_dir.join(format!("{stem}.report.json"));
    write_file(&report_path, &to_json(&report))?;
    if !report.pass {
        return Err(CliError::Verification(failure_message(&report)));
    }
    Ok(RunOutcome { report, summary, svg, report_path })
}

pub fn to_json<T: serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serializes");
    s.push('\n');
    s
}
