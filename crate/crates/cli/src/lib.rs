//! Configuration-driven front end for the Poncelet constructions: scene
//! documents, SVG figures and CSV samples.

pub mod config;
mod error;
pub mod render;
pub mod run;
pub mod scene;

pub use config::{Construction, ConstructionKind, SceneConfig};
pub use error::CliError;
pub use render::{render_scene, render_svg, sample_points, SvgCurve, SvgOptions};
pub use run::{run_config, RunOutcome, VerifyOverrides};
pub use scene::{BuildSummary, Scene};
