//! Antilinear operators and the canonical conjugation-composed counterparts
//! of the metric family.
//!
//! An antilinear operator is stored as a single matrix `M` acting by
//! `x -> M conj(x)` in the computational basis. Under this convention:
//!
//! - Hermiticity as an antilinear operator is symmetry of `M` (`M^T = M`);
//! - the inverse antilinear operator has matrix `conj(M^{-1})`;
//! - an involution satisfies `M conj(M) = I`;
//! - composing two antilinear operators gives the linear `M1 conj(M2)`;
//!   a linear `L` after an antilinear `M` gives the antilinear `L M`, and
//!   before it the antilinear `M conj(L)`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::metrics::SignSequence;
use crate::spectra::{BiorthonormalSystem, SlotLabel};

/// Matrix representation of an antilinear map `x -> M conj(x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct AntilinearOperator {
    pub matrix: CMatrix,
}

impl AntilinearOperator {
    pub fn new(matrix: CMatrix) -> Self {
        Self { matrix }
    }

    /// Plain complex conjugation.
    pub fn conjugation(n: usize) -> Self {
        Self::new(CMatrix::identity(n))
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// `M conj(x)`.
    pub fn apply(&self, x: &[Complex64]) -> Result<Vec<Complex64>> {
        if x.len() != self.matrix.cols() {
            return Err(Error::ShapeMismatch {
                left: format!("vector {}", x.len()),
                right: format!("{}x{}", self.matrix.rows(), self.matrix.cols()),
            });
        }
        Ok(self.matrix.matvec(&linalg::vec_conj(x)))
    }

    /// Composition with another antilinear operator; the result is linear
    /// with matrix `M_self conj(M_other)`.
    pub fn compose_antilinear(&self, other: &Self) -> CMatrix {
        self.matrix.matmul(&other.matrix.conj())
    }

    /// Composition `self . L` with a linear operator applied first:
    /// antilinear with matrix `M conj(L)`.
    pub fn after_linear(&self, l: &CMatrix) -> Self {
        Self::new(self.matrix.matmul(&l.conj()))
    }

    /// Composition `L . self` with a linear operator applied second:
    /// antilinear with matrix `L M`.
    pub fn before_linear(&self, l: &CMatrix) -> Self {
        Self::new(l.matmul(&self.matrix))
    }

    /// `|| M - M^T ||_max`; zero for Hermitian antilinear operators.
    pub fn hermitian_defect(&self) -> f64 {
        self.matrix.symmetric_defect()
    }

    /// `|| M conj(M) - I ||_max`; zero for involutions.
    pub fn involution_defect(&self) -> f64 {
        self.matrix.matmul(&self.matrix.conj()).identity_defect()
    }

    /// Inverse antilinear operator, with matrix `conj(M^{-1})`.
    pub fn inverse(&self) -> Result<Self> {
        Ok(Self::new(linalg::inverse(&self.matrix)?.conj()))
    }
}

/// Canonical antilinear counterpart of the positive metric:
/// `tau_+ = sum_s phi_s phi_s^T` composed with conjugation. Hermitian as an
/// antilinear operator and intertwining (`H^dagger M = M conj(H)`) for every
/// system.
pub fn tau_plus(sys: &BiorthonormalSystem) -> AntilinearOperator {
    AntilinearOperator::new(sys.phi().matmul(&sys.phi().transpose()))
}

/// Sign-weighted family: signs on real slots, +1 on pair slots. Unlike the
/// metric family there are no cross terms; each slot contributes its own
/// `phi phi^T`.
pub fn tau_sigma(sys: &BiorthonormalSystem, sigma: &SignSequence) -> Result<AntilinearOperator> {
    sigma.validate(sys)?;
    let n = sys.dim();
    let mut m = CMatrix::zeros(n, n);
    for (gi, g) in sys.groups().iter().enumerate() {
        for (a, col) in g.cols().enumerate() {
            let w = match g.label {
                SlotLabel::Real => f64::from(sigma.get(gi, a).expect("validated")),
                _ => 1.0,
            };
            let phi = sys.phi_col(col);
            m.add_outer_t(Complex64::new(w, 0.0), &phi, &phi);
        }
    }
    Ok(AntilinearOperator::new(m))
}

/// Inverse of `tau_+`, built from the eigenvector outer products
/// `sum_s psi_s psi_s^T`; composing with `tau_plus` gives the identity map.
pub fn tau_plus_inverse(sys: &BiorthonormalSystem) -> AntilinearOperator {
    AntilinearOperator::new(sys.psi().matmul(&sys.psi().transpose()))
}

/// Intertwining test `H^dagger M = M conj(H)` in cross-multiplied form.
/// Returns the verdict and the scaled residual.
pub fn is_anti_pseudo_hermitian(
    h: &CMatrix,
    t: &AntilinearOperator,
    tol: f64,
) -> Result<(bool, f64)> {
    let n = h.require_square()?;
    if t.matrix.rows() != n || t.matrix.cols() != n {
        return Err(Error::ShapeMismatch {
            left: format!("{n}x{n}"),
            right: format!("{}x{}", t.matrix.rows(), t.matrix.cols()),
        });
    }
    let lhs = h.adjoint().matmul(&t.matrix);
    let rhs = t.matrix.matmul(&h.conj());
    let residual = lhs.sub(&rhs).max_norm() / (h.max_norm() * t.matrix.max_norm()).max(1.0);
    Ok((residual <= tol, residual))
}

/// Factor a Hermitian invertible antilinear intertwiner `tau` of the
/// system's matrix as `A^dagger tau_+ A` (i.e. `A^dagger M_{tau+} conj(A) =
/// M_tau`) with `[A, H] = 0`.
///
/// The linear symmetry `tau_+^{-1} tau` has complex symmetric blocks over the
/// eigenvalue groups; a Takagi factor of each block provides the blocks of
/// `A`.
pub fn decompose_tau(
    sys: &BiorthonormalSystem,
    tau: &AntilinearOperator,
    tol: f64,
) -> Result<CMatrix> {
    let n = sys.dim();
    let h = sys.hamiltonian();
    let scale = tau.matrix.max_norm().max(1.0);

    let (ok, residual) = is_anti_pseudo_hermitian(h, tau, tol)?;
    if !ok {
        return Err(Error::NotAMetric { residual });
    }

    // Coefficient blocks x[a,b] = psi_a^T conj(M_tau) psi_b per group.
    let m_conj = tau.matrix.conj();
    let mut coeff = CMatrix::zeros(n, n);
    for (gi, g) in sys.groups().iter().enumerate() {
        let d = g.multiplicity;
        let cols: Vec<Vec<Complex64>> = g.cols().map(|t| m_conj.matvec(&sys.psi_col(t))).collect();
        let mut x = CMatrix::zeros(d, d);
        for (bi, s) in g.cols().enumerate() {
            let psi_s = sys.psi_col(s);
            for bj in 0..d {
                x[(bi, bj)] = linalg::bilinear(&psi_s, &cols[bj]);
            }
        }
        let sym_defect = x.symmetric_defect();
        if sym_defect > 100.0 * tol * scale {
            return Err(Error::BlockNotSymmetric {
                group: gi,
                residual: sym_defect,
            });
        }
        let x_sym = x.add(&x.transpose()).scale(Complex64::new(0.5, 0.0));
        let (svals, u) = linalg::takagi(&x_sym)?;
        let smin = svals.last().copied().unwrap_or(0.0);
        if smin <= tol * scale {
            return Err(Error::NotInvertible { sigma_min: smin });
        }
        // Block factor a = diag(sqrt(s)) U^T satisfies a^T a = x.
        let root = CMatrix::diag(
            &svals
                .iter()
                .map(|&v| Complex64::new(v.sqrt(), 0.0))
                .collect::<Vec<_>>(),
        );
        let a_block = root.matmul(&u.transpose());
        for (bi, s) in g.cols().enumerate() {
            for (bj, t) in g.cols().enumerate() {
                coeff[(s, t)] = a_block[(bi, bj)];
            }
        }
    }

    Ok(sys.psi().matmul(&coeff).matmul(&sys.phi().adjoint()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::eta_plus;
    use crate::spectra::eig_biorthonormal;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    const TOL: f64 = 1e-9;

    fn shear_system() -> BiorthonormalSystem {
        let h = CMatrix::from_real_rows(&[vec![1.0, 1.0], vec![0.0, 2.0]]);
        eig_biorthonormal(&h, TOL).unwrap()
    }

    fn rotation_system() -> BiorthonormalSystem {
        let h = CMatrix::from_real_rows(&[vec![0.0, 1.0], vec![-1.0, 0.0]]);
        eig_biorthonormal(&h, TOL).unwrap()
    }

    #[test]
    fn apply_is_matrix_times_conjugate() {
        let t = AntilinearOperator::conjugation(2);
        let out = t.apply(&[c(0.0, 1.0), c(0.0, 0.0)]).unwrap();
        assert!((out[0] - c(0.0, -1.0)).norm() < 1e-15);

        let t = AntilinearOperator::new(CMatrix::diag(&[c(1.0, 0.0), c(-1.0, 0.0)]));
        let out = t.apply(&[c(1.0, 0.0), c(0.0, 1.0)]).unwrap();
        assert!((out[0] - c(1.0, 0.0)).norm() < 1e-15);
        assert!((out[1] - c(0.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn conjugation_squares_to_identity() {
        let t = AntilinearOperator::conjugation(3);
        let squared = t.compose_antilinear(&t);
        assert!(squared.identity_defect() < 1e-15);
        assert!(t.involution_defect() < 1e-15);
    }

    #[test]
    fn tau_plus_identity_system() {
        let h = CMatrix::diag(&[c(1.0, 0.0), c(2.0, 0.0)]);
        let sys = eig_biorthonormal(&h, TOL).unwrap();
        let t = tau_plus(&sys);
        assert!(t.matrix.identity_defect() < 1e-13);
    }

    #[test]
    fn tau_plus_shear_matches_metric_matrix() {
        // Phi is real here, so tau_+ coincides with eta_+ entrywise.
        let sys = shear_system();
        let t = tau_plus(&sys);
        let eta = eta_plus(&sys).unwrap();
        assert!(t.matrix.sub(&eta.matrix).max_norm() < 1e-12);
        assert!(t.hermitian_defect() < 1e-13);
        let (ok, res) = is_anti_pseudo_hermitian(sys.hamiltonian(), &t, TOL).unwrap();
        assert!(ok, "residual {res}");
    }

    #[test]
    fn tau_plus_rotation_intertwines() {
        let sys = rotation_system();
        let t = tau_plus(&sys);
        assert!(t.hermitian_defect() < 1e-13);
        let (ok, _) = is_anti_pseudo_hermitian(sys.hamiltonian(), &t, TOL).unwrap();
        assert!(ok);
    }

    #[test]
    fn tau_sigma_all_plus_equals_tau_plus() {
        let sys = shear_system();
        let sigma = SignSequence::all_plus(&sys);
        let a = tau_sigma(&sys, &sigma).unwrap();
        let b = tau_plus(&sys);
        assert!(a.matrix.sub(&b.matrix).max_norm() < 1e-14);
    }

    #[test]
    fn tau_sigma_diagonal_sign_flip() {
        let h = CMatrix::diag(&[c(1.0, 0.0), c(2.0, 0.0)]);
        let sys = eig_biorthonormal(&h, TOL).unwrap();
        let sigma = SignSequence::from_fn(&sys, |gi, _| if gi == 1 { -1 } else { 1 });
        let t = tau_sigma(&sys, &sigma).unwrap();
        let expect = CMatrix::diag(&[c(1.0, 0.0), c(-1.0, 0.0)]);
        assert!(t.matrix.sub(&expect).max_norm() < 1e-13);
        let (ok, _) = is_anti_pseudo_hermitian(sys.hamiltonian(), &t, TOL).unwrap();
        assert!(ok);
    }

    #[test]
    fn tau_sigma_on_pairs_is_slot_diagonal() {
        let sys = rotation_system();
        let sigma = SignSequence::all_plus(&sys); // empty: no real slots
        assert!(sigma.is_empty());
        let t = tau_sigma(&sys, &sigma).unwrap();
        let tp = tau_plus(&sys);
        assert!(t.matrix.sub(&tp.matrix).max_norm() < 1e-13);
        let (ok, _) = is_anti_pseudo_hermitian(sys.hamiltonian(), &t, TOL).unwrap();
        assert!(ok);
    }

    #[test]
    fn tau_plus_inverse_composes_to_identity() {
        for sys in [shear_system(), rotation_system()] {
            let t = tau_plus(&sys);
            let ti = tau_plus_inverse(&sys);
            // antilinear . antilinear = linear M_t conj(M_ti)
            assert!(t.compose_antilinear(&ti).identity_defect() < 1e-12);
            assert!(ti.compose_antilinear(&t).identity_defect() < 1e-12);
        }
    }

    #[test]
    fn conjugation_intertwines_exactly_the_symmetric_matrices() {
        // H^dagger = conj(H) holds iff H = H^T, independently of the
        // spectrum.
        let t = AntilinearOperator::conjugation(2);
        let symmetric = CMatrix::diag(&[c(1.0, 1.0), c(2.0, 0.0)]);
        let (ok, res) = is_anti_pseudo_hermitian(&symmetric, &t, 1e-12).unwrap();
        assert!(ok, "residual {res}");
        let shear = CMatrix::from_real_rows(&[vec![1.0, 1.0], vec![0.0, 2.0]]);
        let (ok, _) = is_anti_pseudo_hermitian(&shear, &t, 1e-9).unwrap();
        assert!(!ok);
    }

    #[test]
    fn decompose_tau_plus_gives_identity() {
        let sys = shear_system();
        let t = tau_plus(&sys);
        let a = decompose_tau(&sys, &t, TOL).unwrap();
        assert!(a.identity_defect() < 1e-10);
    }

    #[test]
    fn decompose_positive_diagonal_tau() {
        let h = CMatrix::diag(&[c(1.0, 0.0), c(2.0, 0.0)]);
        let sys = eig_biorthonormal(&h, TOL).unwrap();
        let t = AntilinearOperator::new(CMatrix::diag(&[c(4.0, 0.0), c(9.0, 0.0)]));
        let a = decompose_tau(&sys, &t, TOL).unwrap();
        assert!((a[(0, 0)].norm() - 2.0).abs() < 1e-12);
        assert!((a[(1, 1)].norm() - 3.0).abs() < 1e-12);
        // roundtrip: A^dagger M_{tau+} conj(A) = M_tau
        let tp = tau_plus(&sys);
        let recon = a.adjoint().matmul(&tp.matrix).matmul(&a.conj());
        assert!(recon.sub(&t.matrix).max_norm() < 1e-12);
    }

    #[test]
    fn decompose_sign_flip_uses_upper_branch() {
        let h = CMatrix::diag(&[c(1.0, 0.0), c(2.0, 0.0)]);
        let sys = eig_biorthonormal(&h, TOL).unwrap();
        let t = AntilinearOperator::new(CMatrix::diag(&[c(-1.0, 0.0), c(1.0, 0.0)]));
        let a = decompose_tau(&sys, &t, TOL).unwrap();
        // 1x1 Takagi of -1 on the first slot gives +i
        assert!((a[(0, 0)] - c(0.0, 1.0)).norm() < 1e-12);
        assert!((a[(1, 1)] - c(1.0, 0.0)).norm() < 1e-12);
        let tp = tau_plus(&sys);
        let recon = a.adjoint().matmul(&tp.matrix).matmul(&a.conj());
        assert!(recon.sub(&t.matrix).max_norm() < 1e-12);
    }

    #[test]
    fn decompose_tau_roundtrip_on_rotation_system() {
        let sys = rotation_system();
        let t = tau_plus(&sys);
        let a = decompose_tau(&sys, &t, TOL).unwrap();
        let recon = a.adjoint().matmul(&t.matrix).matmul(&a.conj());
        assert!(recon.sub(&t.matrix).max_norm() < 1e-11);
        let h = sys.hamiltonian();
        assert!(a.matmul(h).sub(&h.matmul(&a)).max_norm() < 1e-11);
    }

    #[test]
    fn decompose_rejects_nonsymmetric_block() {
        // On a degenerate group an antisymmetric block commutes with H and
        // so passes the intertwining test, but it is not a Hermitian
        // antilinear operator.
        let h = CMatrix::diag(&[c(1.0, 0.0), c(1.0, 0.0), c(2.0, 0.0)]);
        let sys = eig_biorthonormal(&h, TOL).unwrap();
        let m = CMatrix::from_real_rows(&[
            vec![0.0, 1.0, 0.0],
            vec![-1.0, 0.0, 0.0],
            vec![0.0, 0.0, 1.0],
        ]);
        let t = AntilinearOperator::new(m);
        let (ok, _) = is_anti_pseudo_hermitian(sys.hamiltonian(), &t, TOL).unwrap();
        assert!(ok);
        assert!(matches!(
            decompose_tau(&sys, &t, TOL),
            Err(Error::BlockNotSymmetric { .. })
        ));
    }

    #[test]
    fn decompose_rejects_non_intertwiner() {
        let sys = shear_system();
        let mut m = tau_plus(&sys).matrix;
        m[(0, 1)] += c(0.5, 0.0);
        m[(1, 0)] += c(0.5, 0.0);
        let t = AntilinearOperator::new(m);
        assert!(matches!(
            decompose_tau(&sys, &t, TOL),
            Err(Error::NotAMetric { .. })
        ));
    }
}
