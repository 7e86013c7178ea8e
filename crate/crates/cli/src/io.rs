//! On-disk formats: a bare matrix file and the oscillator model bundle.
//!
//! A matrix is stored as `{ "dim": n, "entries": [[re, im], ...] }` with the
//! entries row-major. A model bundle adds the assembly parameters and the
//! exact parity matrix next to the Hamiltonian.

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};

use phtk_core::{CMatrix, Complex64};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixJson {
    pub dim: usize,
    pub entries: Vec<[f64; 2]>,
}

impl MatrixJson {
    pub fn from_matrix(m: &CMatrix) -> Self {
        let dim = m.dim();
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let z = m[(i, j)];
                entries.push([z.re, z.im]);
            }
        }
        Self { dim, entries }
    }

    pub fn to_matrix(&self) -> Result<CMatrix> {
        if self.entries.len() != self.dim * self.dim {
            bail!(
                "matrix file has {} entries, expected {} for dim {}",
                self.entries.len(),
                self.dim * self.dim,
                self.dim
            );
        }
        let m = CMatrix::from_fn(self.dim, self.dim, |i, j| {
            let e = self.entries[i * self.dim + j];
            Complex64::new(e[0], e[1])
        });
        if !m.all_finite() {
            bail!("matrix file contains non-finite entries");
        }
        Ok(m)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ModelBundle {
    pub schema_version: u32,
    pub kind: String,
    pub nu: f64,
    pub basis: usize,
    pub quadrature: usize,
    pub matrix: MatrixJson,
    pub parity: MatrixJson,
}

pub const MODEL_KIND: &str = "oscillator_model";
pub const SCHEMA_VERSION: u32 = 1;

/// Either input accepted by `analyze`.
pub enum InputFile {
    Matrix(CMatrix),
    Model(ModelBundle),
}

pub fn load_input(path: &str) -> Result<InputFile> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
    let value: serde_json::Value =
        serde_json::from_str(&text).with_context(|| format!("parsing {path}"))?;
    if value.get("kind").is_some() {
        let bundle: ModelBundle =
            serde_json::from_value(value).with_context(|| format!("parsing bundle {path}"))?;
        if bundle.kind != MODEL_KIND {
            bail!("unsupported bundle kind {:?}", bundle.kind);
        }
        Ok(InputFile::Model(bundle))
    } else {
        let mj: MatrixJson =
            serde_json::from_value(value).with_context(|| format!("parsing matrix {path}"))?;
        Ok(InputFile::Matrix(mj.to_matrix()?))
    }
}

pub fn write_json<T: Serialize>(path: &str, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    std::fs::write(path, text.as_bytes()).with_context(|| format!("writing {path}"))?;
    Ok(())
}
