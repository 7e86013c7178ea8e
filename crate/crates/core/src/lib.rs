//! Numerical toolkit for pseudo-Hermitian operator theory on finite complex
//! matrices.
//!
//! Given any diagonalizable complex matrix with a discrete spectrum, the
//! crate builds its complete biorthonormal eigensystem and, on top of that,
//! the whole family of associated operators: positive and indefinite metric
//! operators, antilinear (conjugation-composed) counterparts, canonical
//! linear and antilinear symmetry generators, and generalized parity,
//! time-reversal and charge-conjugation operators together with their
//! composites. Every construction comes with residual-checked identities.
//!
//! The `models` module supplies test beds: exact small matrices, seeded
//! random similarity-transform ensembles, and a spectral discretization of
//! the family `H = p^2 + x^2 (i x)^nu` in the harmonic-oscillator basis.

pub mod antilinear;
pub mod error;
pub mod linalg;
pub mod metrics;
pub mod models;
pub mod ptc;
pub mod spectra;
pub mod symmetries;

pub use error::{Error, Result};
pub use linalg::{CMatrix, CVector};
pub use spectra::{BiorthonormalSystem, EigenGroup, SlotLabel, SpectralClass};

pub use num_complex::Complex64;
