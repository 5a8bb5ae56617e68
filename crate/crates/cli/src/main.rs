use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use poncelet_cli::run::{self, VerifyOverrides};
use poncelet_cli::CliError;

/// Build, verify, render and sample Poncelet pairs and clans.
#[derive(Debug, Parser)]
#[command(name = "poncelet", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Construct the scene and print a JSON summary of its curves.
    Build {
        config: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run the verifier; exit status 1 if any check fails.
    Verify {
        config: PathBuf,
        /// Probe count (default: the document, then PONCELET_PROBES, then 64).
        #[arg(long)]
        probes: Option<usize>,
        /// Closure and step tolerance.
        #[arg(long)]
        tol: Option<f64>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Write an SVG figure of the curves and polygons.
    Render {
        config: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Write equispaced samples of one curve as CSV.
    Sample {
        config: PathBuf,
        /// Curve name: C and K, or C1.., K1.. when there are several.
        #[arg(long)]
        curve: String,
        #[arg(short = 'n', long = "samples")]
        n: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Build, verify and render into a directory.
    Run {
        config: PathBuf,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
        #[arg(long)]
        probes: Option<usize>,
        #[arg(long)]
        tol: Option<f64>,
    },
}

fn emit(text: &str, output: Option<&Path>) -> Result<(), CliError> {
    match output {
        Some(p) => run::write_file(p, text),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Io { path: PathBuf::from("<stdout>"), source }),
    }
}

fn execute(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Build { config, output } => emit(&run::to_json(&run::build(&config)?), output.as_deref()),
        Command::Verify { config, probes, tol, output } => {
            let scene = run::load(&config)?;
            let report = run::verify_scene(&scene, &VerifyOverrides { probes, tol })?;
            emit(&run::to_json(&report), output.as_deref())?;
            if report.pass {
                Ok(())
            } else {
                Err(CliError::Verification(run::failure_message(&report)))
            }
        }
        Command::Render { config, output } => run::write_file(&output, &run::render(&config)?),
        Command::Sample { config, curve, n, output } => emit(&run::sample(&config, &curve, n)?, output.as_deref()),
        Command::Run { config, out_dir, probes, tol } => {
            let out = run::run_config(&config, &out_dir, &VerifyOverrides { probes, tol })?;
            eprintln!(
                "{}: pass, {} vertices, closure {:.3e}, wrote {} and {}",
                out.report.name,
                out.report.vertex_count,
                out.report.closure_error,
                out.svg.display(),
                out.report_path.display()
            );
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("poncelet: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
