//! `phtk`: spectral analysis of finite non-Hermitian matrices.
//!
//! Subcommands:
//! - `analyze`: eigen-decompose a matrix (or model bundle), build the metric
//!   and symmetry operator family, and emit a JSON report of every identity
//!   residual. Exit code 0 means every unconditional check passed.
//! - `model`: assemble the oscillator-basis discretization of
//!   `p^2 + x^2 (i x)^nu` and write it as a bundle.
//! - `sweep`: scan `nu`, writing the low real levels and residual summaries
//!   as CSV.
//! - `verify`: run the operator identity suite over seeded random
//!   similarity-transform ensembles.

mod io;
mod report;
mod sweep;
mod verify;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};

use phtk_core::models::{bender_hamiltonian, OscillatorModel};

use crate::io::{
    load_input, write_json, InputFile, MatrixJson, ModelBundle, MODEL_KIND, SCHEMA_VERSION,
};
use crate::report::{analyze, InputDescriptor, ProfileName};

#[derive(Parser)]
#[command(name = "phtk", version, about = "pseudo-Hermitian operator toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Commands,
}

#[derive(Subcommand)]
enum Commands {
    /// Analyze a matrix file or model bundle and emit a JSON report.
    Analyze {
        /// Input file: matrix JSON or model bundle.
        file: String,
        /// Tolerance profile: strict (1e-10) or spectral (1e-6).
        /// Defaults to strict for matrices, spectral for model bundles.
        #[arg(long)]
        profile: Option<ProfileName>,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        output: Option<String>,
    },
    /// Build the oscillator-basis model of p^2 + x^2 (i x)^nu.
    Model {
        #[arg(long)]
        nu: f64,
        /// Basis size N.
        #[arg(long)]
        basis: usize,
        /// Quadrature node count; defaults to 2 * basis.
        #[arg(long)]
        quad: Option<usize>,
        #[arg(long)]
        output: String,
    },
    /// Sweep nu over a range and write low levels + residuals as CSV.
    Sweep {
        #[arg(long)]
        nu_min: f64,
        #[arg(long)]
        nu_max: f64,
        /// Number of rows (nu points), endpoints included.
        #[arg(long)]
        steps: usize,
        #[arg(long)]
        basis: usize,
        /// Quadrature node count; defaults to 2 * basis.
        #[arg(long)]
        quad: Option<usize>,
        /// How many low real levels to record per row.
        #[arg(long, default_value_t = 4)]
        levels: usize,
        #[arg(long)]
        output: String,
    },
    /// Run the identity suite over a seeded random ensemble.
    Verify {
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 25)]
        count: usize,
        #[arg(long, default_value_t = 4)]
        dim: usize,
        #[arg(long, value_parser = ["quasi", "pseudo"])]
        ensemble: String,
    },
}

fn main() {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            1
        }
    };
    std::process::exit(code);
}

fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Commands::Analyze {
            file,
            profile,
            output,
        } => cmd_analyze(&file, profile, output.as_deref()),
        Commands::Model {
            nu,
            basis,
            quad,
            output,
        } => cmd_model(nu, basis, quad, &output),
        Commands::Sweep {
            nu_min,
            nu_max,
            steps,
            basis,
            quad,
            levels,
            output,
        } => sweep::run(nu_min, nu_max, steps, basis, quad, levels, &output),
        Commands::Verify {
            seed,
            count,
            dim,
            ensemble,
        } => verify::run(seed, count, dim, &ensemble),
    }
}

fn cmd_analyze(path: &str, profile: Option<ProfileName>, output: Option<&str>) -> Result<i32> {
    let input = load_input(path)?;
    let (h, model, descriptor, default_profile) = match input {
        InputFile::Matrix(m) => {
            let dim = m.dim();
            (
                m,
                None,
                InputDescriptor {
                    source: path.to_string(),
                    kind: "matrix".into(),
                    dim,
                    nu: None,
                    basis: None,
                    quadrature: None,
                    seed: None,
                },
                ProfileName::Strict,
            )
        }
        InputFile::Model(bundle) => {
            let h = bundle.matrix.to_matrix()?;
            let parity = bundle.parity.to_matrix()?;
            let model = OscillatorModel {
                basis: bundle.basis,
                nu: bundle.nu,
                quadrature_nodes: bundle.quadrature,
                h: h.clone(),
                parity,
                time_reversal: phtk_core::antilinear::AntilinearOperator::conjugation(h.dim()),
            };
            let descriptor = InputDescriptor {
                source: path.to_string(),
                kind: MODEL_KIND.into(),
                dim: h.dim(),
                nu: Some(bundle.nu),
                basis: Some(bundle.basis),
                quadrature: Some(bundle.quadrature),
                seed: None,
            };
            (h, Some(model), descriptor, ProfileName::Spectral)
        }
    };
    let profile = profile.unwrap_or(default_profile);
    let report = analyze(&h, model.as_ref(), descriptor, profile)
        .with_context(|| format!("analyzing {path}"))?;
    let json = serde_json::to_string_pretty(&report)?;
    match output {
        Some(out) => std::fs::write(out, json.as_bytes())?,
        None => println!("{json}"),
    }
    eprintln!(
        "{}: class {}, {} residuals, pass = {}",
        path,
        report.spectral_class,
        report.residuals.len(),
        report.pass
    );
    Ok(if report.pass { 0 } else { 1 })
}

fn cmd_model(nu: f64, basis: usize, quad: Option<usize>, output: &str) -> Result<i32> {
    let quad = quad.unwrap_or(2 * basis);
    let model = bender_hamiltonian(nu, basis, quad)?;
    let bundle = ModelBundle {
        schema_version: SCHEMA_VERSION,
        kind: MODEL_KIND.into(),
        nu,
        basis,
        quadrature: quad,
        matrix: MatrixJson::from_matrix(&model.h),
        parity: MatrixJson::from_matrix(&model.parity),
    };
    write_json(output, &bundle)?;
    eprintln!(
        "wrote {output}: nu = {nu}, basis = {basis}, quadrature = {quad}, pt defect = {:.3e}",
        model.pt_defect()
    );
    Ok(0)
}
