use num_complex::Complex64;
use thiserror::Error;

/// Errors shared by all toolkit operations.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("matrix is not square: {rows}x{cols}")]
    NonSquare { rows: usize, cols: usize },

    #[error("operand shapes do not match: {left} vs {right}")]
    ShapeMismatch { left: String, right: String },

    #[error("matrix is not diagonalizable within working precision (cond(psi) = {cond:.3e})")]
    NotDiagonalizable { cond: f64 },

    #[error("spectrum has an unpaired complex eigenvalue {witness}")]
    UnpairedSpectrum { witness: Complex64 },

    #[error("sign sequence does not cover the real-eigenvalue slots of this system: {detail}")]
    SignDomainMismatch { detail: String },

    #[error("operator is not a metric for this Hamiltonian (residual {residual:.3e})")]
    NotAMetric { residual: f64 },

    #[error("eigenblock {group} is not Hermitian (residual {residual:.3e})")]
    BlockNotHermitian { group: usize, residual: f64 },

    #[error("eigenblock {group} is not symmetric (residual {residual:.3e})")]
    BlockNotSymmetric { group: usize, residual: f64 },

    #[error("operator is not invertible (min singular value {sigma_min:.3e})")]
    NotInvertible { sigma_min: f64 },

    #[error("operator image of eigenvector {slot} is not proportional to any eigenvector")]
    UnrecognizedAction { slot: usize },

    #[error("precondition unmet: {0}")]
    PreconditionUnmet(String),

    #[error("operator does not commute with the Hamiltonian (residual {residual:.3e})")]
    NotASymmetry { residual: f64 },

    #[error("operation requires a real spectrum; found complex eigenvalue {witness}")]
    ComplexSpectrum { witness: Complex64 },

    #[error("nu = {nu} outside the supported range [0, 2)")]
    NuOutOfRange { nu: f64 },

    #[error(
        "quadrature with {nodes} nodes is too coarse for basis size {basis} (need >= 2*basis)"
    )]
    QuadratureTooCoarse { nodes: usize, basis: usize },

    #[error("eigenvector {slot} is not parity-time self-conjugate up to a phase (overlap defect {defect:.3e})")]
    PtPhaseNotFound { slot: usize, defect: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
