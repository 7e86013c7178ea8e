//! Linear metric operators associated with a biorthonormal system.
//!
//! For a system with real spectrum the canonical positive metric is
//! `eta_+ = sum_n phi_n phi_n^dagger`; sign sequences over the real slots
//! generate the indefinite family `eta_sigma`. When the spectrum contains
//! conjugate pairs the pair slots contribute sign-free cross terms
//! `phi_+ phi_-^dagger + phi_- phi_+^dagger` instead, which keeps the
//! operator Hermitian and intertwining (`H^dagger eta = eta H`).
//!
//! `decompose_eta` inverts the construction: any Hermitian invertible metric
//! for the same matrix factors as `A^dagger eta_sigma A` with `A` an
//! invertible symmetry of the matrix.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::spectra::{BiorthonormalSystem, SlotLabel};

/// One sign per real-eigenvalue slot, keyed by (group index, degeneracy
/// index). Complex-pair slots carry no sign.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignSequence {
    signs: BTreeMap<(usize, usize), i8>,
}

impl SignSequence {
    pub fn new(signs: BTreeMap<(usize, usize), i8>) -> Self {
        Self { signs }
    }

    /// All-plus sequence on the real slots of `sys`.
    pub fn all_plus(sys: &BiorthonormalSystem) -> Self {
        Self::from_fn(sys, |_, _| 1)
    }

    /// Build from a per-slot rule; any nonnegative return is +1.
    pub fn from_fn(sys: &BiorthonormalSystem, mut f: impl FnMut(usize, usize) -> i8) -> Self {
        let mut signs = BTreeMap::new();
        for (gi, a, _col) in sys.real_slots() {
            signs.insert((gi, a), if f(gi, a) < 0 { -1 } else { 1 });
        }
        Self { signs }
    }

    /// Alternating signs `(-1)^n` by group index, the parity pattern.
    pub fn alternating(sys: &BiorthonormalSystem) -> Self {
        Self::from_fn(sys, |gi, _| if gi % 2 == 0 { 1 } else { -1 })
    }

    pub fn get(&self, group: usize, a: usize) -> Option<i8> {
        self.signs.get(&(group, a)).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(usize, usize), &i8)> {
        self.signs.iter()
    }

    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }

    /// Check that the sequence covers exactly the real slots of `sys`.
    pub fn validate(&self, sys: &BiorthonormalSystem) -> Result<()> {
        let expected: Vec<(usize, usize)> =
            sys.real_slots().iter().map(|&(g, a, _)| (g, a)).collect();
        if expected.len() != self.signs.len()
            || expected.iter().any(|k| !self.signs.contains_key(k))
        {
            return Err(Error::SignDomainMismatch {
                detail: format!(
                    "expected signs on {} real slots, got {}",
                    expected.len(),
                    self.signs.len()
                ),
            });
        }
        Ok(())
    }
}

/// Positivity class of a metric operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MetricKind {
    Positive,
    Indefinite,
    General,
}

/// Hermitian invertible operator `eta` with `H^dagger = eta H eta^{-1}`.
#[derive(Debug, Clone)]
pub struct MetricOperator {
    pub matrix: CMatrix,
    pub kind: MetricKind,
}

impl MetricOperator {
    /// Smallest eigenvalue of the (Hermitian) matrix.
    pub fn min_eigenvalue(&self) -> f64 {
        let (vals, _) = linalg::self_adjoint_eig(&self.matrix).expect("square Hermitian");
        vals.first().copied().unwrap_or(0.0)
    }

    pub fn is_positive_definite(&self, tol: f64) -> bool {
        self.min_eigenvalue() > tol * self.matrix.max_norm().max(1.0)
    }
}

/// Per-slot weight of the canonical metric family: the sign on real slots,
/// +1 on pair slots (where the weight multiplies a cross term).
fn slot_weights(sys: &BiorthonormalSystem, sigma: Option<&SignSequence>) -> Result<Vec<f64>> {
    if let Some(s) = sigma {
        s.validate(sys)?;
    }
    let mut w = vec![1.0f64; sys.dim()];
    if let Some(s) = sigma {
        for (gi, a, col) in sys.real_slots() {
            w[col] = f64::from(s.get(gi, a).expect("validated sign"));
        }
    }
    Ok(w)
}

/// Canonical metric with signs `sigma` on real slots:
/// `sum sigma phi_0 phi_0^dagger + sum (phi_+ phi_-^dagger + phi_- phi_+^dagger)`.
fn eta_from_signs(sys: &BiorthonormalSystem, sigma: Option<&SignSequence>) -> Result<CMatrix> {
    if sys.has_unpaired() {
        let witness = sys
            .groups()
            .iter()
            .find(|g| g.label == SlotLabel::Unpaired)
            .map(|g| g.value)
            .unwrap_or_default();
        return Err(Error::UnpairedSpectrum { witness });
    }
    let w = slot_weights(sys, sigma)?;
    let n = sys.dim();
    let mut eta = CMatrix::zeros(n, n);
    for g in sys.groups() {
        match g.label {
            SlotLabel::Real => {
                for col in g.cols() {
                    let phi = sys.phi_col(col);
                    eta.add_outer(Complex64::new(w[col], 0.0), &phi, &phi);
                }
            }
            SlotLabel::PairPlus { .. } => {
                for col in g.cols() {
                    let partner = sys.partner_col(col).expect("paired slot");
                    let phi_p = sys.phi_col(col);
                    let phi_m = sys.phi_col(partner);
                    let one = Complex64::new(1.0, 0.0);
                    eta.add_outer(one, &phi_p, &phi_m);
                    eta.add_outer(one, &phi_m, &phi_p);
                }
            }
            SlotLabel::PairMinus { .. } => {} // handled from the plus side
            SlotLabel::Unpaired => unreachable!(),
        }
    }
    Ok(eta)
}

/// Inverse of the canonical metric, built from `psi` outer products:
/// `sum sigma psi_0 psi_0^dagger + sum (psi_+ psi_-^dagger + psi_- psi_+^dagger)`.
fn eta_inverse_from_signs(
    sys: &BiorthonormalSystem,
    sigma: Option<&SignSequence>,
) -> Result<CMatrix> {
    if sys.has_unpaired() {
        let witness = sys
            .groups()
            .iter()
            .find(|g| g.label == SlotLabel::Unpaired)
            .map(|g| g.value)
            .unwrap_or_default();
        return Err(Error::UnpairedSpectrum { witness });
    }
    let w = slot_weights(sys, sigma)?;
    let n = sys.dim();
    let mut inv = CMatrix::zeros(n, n);
    for g in sys.groups() {
        match g.label {
            SlotLabel::Real => {
                for col in g.cols() {
                    let psi = sys.psi_col(col);
                    inv.add_outer(Complex64::new(w[col], 0.0), &psi, &psi);
                }
            }
            SlotLabel::PairPlus { .. } => {
                for col in g.cols() {
                    let partner = sys.partner_col(col).expect("paired slot");
                    let psi_p = sys.psi_col(col);
                    let psi_m = sys.psi_col(partner);
                    let one = Complex64::new(1.0, 0.0);
                    inv.add_outer(one, &psi_p, &psi_m);
                    inv.add_outer(one, &psi_m, &psi_p);
                }
            }
            SlotLabel::PairMinus { .. } => {}
            SlotLabel::Unpaired => unreachable!(),
        }
    }
    Ok(inv)
}

/// The canonical metric `eta_+` (all signs +1). Positive definite exactly
/// when the spectrum is real; Hermitian and intertwining in general.
pub fn eta_plus(sys: &BiorthonormalSystem) -> Result<MetricOperator> {
    let matrix = eta_from_signs(sys, None)?;
    let kind = if sys.groups().iter().all(|g| g.label == SlotLabel::Real) {
        MetricKind::Positive
    } else {
        MetricKind::Indefinite
    };
    Ok(MetricOperator { matrix, kind })
}

/// The sign-weighted canonical metric `eta_sigma`.
pub fn eta_sigma(sys: &BiorthonormalSystem, sigma: &SignSequence) -> Result<MetricOperator> {
    let matrix = eta_from_signs(sys, Some(sigma))?;
    let all_plus = sigma.iter().all(|(_, &s)| s > 0);
    let kind = if all_plus && sys.groups().iter().all(|g| g.label == SlotLabel::Real) {
        MetricKind::Positive
    } else {
        MetricKind::Indefinite
    };
    Ok(MetricOperator { matrix, kind })
}

/// Inverse of `eta_sigma`, from the dual outer-product identity; no linear
/// solve involved.
pub fn eta_sigma_inverse(
    sys: &BiorthonormalSystem,
    sigma: &SignSequence,
) -> Result<MetricOperator> {
    let matrix = eta_inverse_from_signs(sys, Some(sigma))?;
    Ok(MetricOperator {
        matrix,
        kind: MetricKind::General,
    })
}

/// Inverse of `eta_+`.
pub fn eta_plus_inverse(sys: &BiorthonormalSystem) -> Result<MetricOperator> {
    let matrix = eta_inverse_from_signs(sys, None)?;
    Ok(MetricOperator {
        matrix,
        kind: MetricKind::General,
    })
}

/// Intertwining test `H^dagger eta = eta H` in cross-multiplied form.
/// Returns the verdict and the scaled residual
/// `||H^dagger eta - eta H||_max / max(1, ||H||_max ||eta||_max)`.
pub fn is_pseudo_hermitian(h: &CMatrix, eta: &MetricOperator, tol: f64) -> Result<(bool, f64)> {
    let n = h.require_square()?;
    if eta.matrix.rows() != n || eta.matrix.cols() != n {
        return Err(Error::ShapeMismatch {
            left: format!("{}x{}", n, n),
            right: format!("{}x{}", eta.matrix.rows(), eta.matrix.cols()),
        });
    }
    let lhs = h.adjoint().matmul(&eta.matrix);
    let rhs = eta.matrix.matmul(h);
    let residual = lhs.sub(&rhs).max_norm() / (h.max_norm() * eta.matrix.max_norm()).max(1.0);
    Ok((residual <= tol, residual))
}

/// The (pseudo-)inner product `<x | eta y>`.
pub fn pseudo_inner(x: &[Complex64], y: &[Complex64], eta: &MetricOperator) -> Result<Complex64> {
    let n = eta.matrix.require_square()?;
    if x.len() != n || y.len() != n {
        return Err(Error::ShapeMismatch {
            left: format!("vectors {} / {}", x.len(), y.len()),
            right: format!("{n}x{n}"),
        });
    }
    Ok(linalg::inner(x, &eta.matrix.matvec(y)))
}

/// Factor a Hermitian invertible metric `eta` of the system's matrix as
/// `A^dagger eta_sigma A` with `[A, H] = 0`.
///
/// The symmetry `X = eta_+^{-1} eta` is block-diagonal over eigenvalue
/// groups. Real-slot blocks are Hermitian; their spectral decomposition
/// yields the signs and the block factors. Pair blocks are absorbed into `A`
/// directly (their canonical metric carries no signs).
pub fn decompose_eta(
    sys: &BiorthonormalSystem,
    eta: &MetricOperator,
    tol: f64,
) -> Result<(CMatrix, SignSequence)> {
    let n = sys.dim();
    let h = sys.hamiltonian();
    let (ok, residual) = is_pseudo_hermitian(h, eta, tol)?;
    if !ok {
        return Err(Error::NotAMetric { residual });
    }

    // Block coefficients of X = eta_+^{-1} eta in the eigenbasis. Using
    // eta_+^{-1} phi_s = psi_{pi(s)} (pi swaps pair partners) these are
    // x[s,t] = psi_{pi(s)}^dagger eta psi_t, no inversion required.
    let eta_scale = eta.matrix.max_norm().max(1.0);
    let mut signs = BTreeMap::new();
    // Per-group factor blocks of A, indexed by group.
    let mut blocks: Vec<Option<CMatrix>> = vec![None; sys.groups().len()];

    for (gi, g) in sys.groups().iter().enumerate() {
        let d = g.multiplicity;
        match g.label {
            SlotLabel::Real => {
                // x[a,b] = psi_a^dagger eta psi_b over the group's slots.
                let eta_cols: Vec<Vec<Complex64>> = g
                    .cols()
                    .map(|t| eta.matrix.matvec(&sys.psi_col(t)))
                    .collect();
                let mut x = CMatrix::zeros(d, d);
                for (bi, s) in g.cols().enumerate() {
                    let psi_s = sys.psi_col(s);
                    for bj in 0..d {
                        x[(bi, bj)] = linalg::inner(&psi_s, &eta_cols[bj]);
                    }
                }
                let herm_defect = x.hermitian_defect();
                if herm_defect > 100.0 * tol * eta_scale {
                    return Err(Error::BlockNotHermitian {
                        group: gi,
                        residual: herm_defect,
                    });
                }
                // Symmetrize and diagonalize: x = u diag(lam) u^dagger.
                let x_sym = x.add(&x.adjoint()).scale(Complex64::new(0.5, 0.0));
                let (lam, mut u) = linalg::self_adjoint_eig(&x_sym)?;
                linalg::fix_column_phases(&mut u);
                for (a, &l) in lam.iter().enumerate() {
                    if l.abs() <= tol * eta_scale {
                        return Err(Error::NotAMetric { residual: l.abs() });
                    }
                    signs.insert((gi, a), if l < 0.0 { -1i8 } else { 1 });
                }
                // Block factor d^{1/2} u^dagger so that
                // (block)^dagger diag(sign) (block) = x.
                let droot = CMatrix::diag(
                    &lam.iter()
                        .map(|&l| Complex64::new(l.abs().sqrt(), 0.0))
                        .collect::<Vec<_>>(),
                );
                blocks[gi] = Some(droot.matmul(&u.adjoint()));
            }
            SlotLabel::PairPlus { partner } => {
                // Cross block x[a,b] = psi_{minus,a}^dagger eta psi_{plus,b};
                // it becomes the factor on the plus-group slots while the
                // minus group keeps the identity.
                let pg = &sys.groups()[partner];
                let eta_cols: Vec<Vec<Complex64>> = g
                    .cols()
                    .map(|t| eta.matrix.matvec(&sys.psi_col(t)))
                    .collect();
                let mut x = CMatrix::zeros(d, d);
                for (bi, s) in pg.cols().enumerate() {
                    let psi_s = sys.psi_col(s);
                    for bj in 0..d {
                        x[(bi, bj)] = linalg::inner(&psi_s, &eta_cols[bj]);
                    }
                }
                let sv = linalg::singular_values(&x);
                let smin = sv.last().copied().unwrap_or(0.0);
                if smin <= tol * eta_scale {
                    return Err(Error::NotAMetric { residual: smin });
                }
                blocks[gi] = Some(x);
                blocks[partner] = Some(CMatrix::identity(d));
            }
            SlotLabel::PairMinus { .. } => {} // assigned from the plus side
            SlotLabel::Unpaired => {
                return Err(Error::UnpairedSpectrum { witness: g.value });
            }
        }
    }

    // Assemble A = Psi blockdiag(blocks) Phi^dagger.
    let mut coeff = CMatrix::zeros(n, n);
    for (gi, g) in sys.groups().iter().enumerate() {
        let blk = blocks[gi].as_ref().expect("every group assigned");
        for (bi, s) in g.cols().enumerate() {
            for (bj, t) in g.cols().enumerate() {
                coeff[(s, t)] = blk[(bi, bj)];
            }
        }
    }
    let a = sys.psi().matmul(&coeff).matmul(&sys.phi().adjoint());

    Ok((a, SignSequence::new(signs)))
}

#[cfg(test)]
mod tests {
    use super::*;
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
    fn hermitian_diagonal_gives_identity_metric() {
        let h = CMatrix::diag(&[c(1.0, 0.0), c(2.0, 0.0)]);
        let sys = eig_biorthonormal(&h, TOL).unwrap();
        let eta = eta_plus(&sys).unwrap();
        assert!(eta.matrix.identity_defect() < 1e-12);
        assert_eq!(eta.kind, MetricKind::Positive);
        let (ok, res) = is_pseudo_hermitian(&h, &eta, TOL).unwrap();
        assert!(ok, "residual {res}");
    }

    #[test]
    fn shear_metric_from_dual_outer_products() {
        // With unit-norm psi columns the duals are (1,-1) and (0,sqrt 2),
        // so eta_+ = [[1,-1],[-1,3]].
        let sys = shear_system();
        let eta = eta_plus(&sys).unwrap();
        let expect = CMatrix::from_real_rows(&[vec![1.0, -1.0], vec![-1.0, 3.0]]);
        assert!(eta.matrix.sub(&expect).max_norm() < 1e-12);
        assert!(eta.is_positive_definite(1e-12));
        let (ok, _) = is_pseudo_hermitian(sys.hamiltonian(), &eta, TOL).unwrap();
        assert!(ok);
        // H^dagger eta = eta H = [[1,-1],[-1,5]]
        let prod = sys.hamiltonian().adjoint().matmul(&eta.matrix);
        let expect_prod = CMatrix::from_real_rows(&[vec![1.0, -1.0], vec![-1.0, 5.0]]);
        assert!(prod.sub(&expect_prod).max_norm() < 1e-12);
    }

    #[test]
    fn rotation_metric_is_indefinite_diagonal() {
        // Cross terms of the conjugate pair give diag(1,-1) under the
        // unit-norm eigenvector convention.
        let sys = rotation_system();
        let eta = eta_plus(&sys).unwrap();
        let expect = CMatrix::from_real_rows(&[vec![1.0, 0.0], vec![0.0, -1.0]]);
        assert!(eta.matrix.sub(&expect).max_norm() < 1e-12);
        assert!(eta.matrix.hermitian_defect() < 1e-13);
        assert_eq!(eta.kind, MetricKind::Indefinite);
        let (ok, _) = is_pseudo_hermitian(sys.hamiltonian(), &eta, TOL).unwrap();
        assert!(ok);
    }

    #[test]
    fn all_plus_signs_reproduce_eta_plus() {
        let sys = shear_system();
        let sigma = SignSequence::all_plus(&sys);
        let a = eta_sigma(&sys, &sigma).unwrap();
        let b = eta_plus(&sys).unwrap();
        assert!(a.matrix.sub(&b.matrix).max_norm() < 1e-14);
    }

    #[test]
    fn diagonal_sign_flip() {
        let h = CMatrix::diag(&[c(1.0, 0.0), c(2.0, 0.0)]);
        let sys = eig_biorthonormal(&h, TOL).unwrap();
        let sigma = SignSequence::from_fn(&sys, |gi, _| if gi == 1 { -1 } else { 1 });
        let eta = eta_sigma(&sys, &sigma).unwrap();
        let expect = CMatrix::from_real_rows(&[vec![1.0, 0.0], vec![0.0, -1.0]]);
        assert!(eta.matrix.sub(&expect).max_norm() < 1e-13);
        let inv = eta_sigma_inverse(&sys, &sigma).unwrap();
        assert!(eta.matrix.matmul(&inv.matrix).identity_defect() < 1e-13);
    }

    #[test]
    fn shear_sigma_inverse_roundtrip() {
        let sys = shear_system();
        let sigma = SignSequence::from_fn(&sys, |gi, _| if gi == 0 { -1 } else { 1 });
        let eta = eta_sigma(&sys, &sigma).unwrap();
        let inv = eta_sigma_inverse(&sys, &sigma).unwrap();
        assert!(eta.matrix.matmul(&inv.matrix).identity_defect() < 1e-12);
        let (ok, _) = is_pseudo_hermitian(sys.hamiltonian(), &eta, TOL).unwrap();
        assert!(ok);
    }

    #[test]
    fn rotation_inverse_from_cross_identity() {
        let sys = rotation_system();
        let sigma = SignSequence::all_plus(&sys); // empty domain
        assert!(sigma.is_empty());
        let eta = eta_plus(&sys).unwrap();
        let inv = eta_sigma_inverse(&sys, &sigma).unwrap();
        assert!(eta.matrix.matmul(&inv.matrix).identity_defect() < 1e-13);
    }

    #[test]
    fn sign_domain_mismatch_is_rejected() {
        let sys = shear_system();
        let mut map = BTreeMap::new();
        map.insert((0usize, 0usize), 1i8); // missing the second real slot
        let sigma = SignSequence::new(map);
        assert!(matches!(
            eta_sigma(&sys, &sigma),
            Err(Error::SignDomainMismatch { .. })
        ));
    }

    #[test]
    fn unpaired_spectrum_has_no_metric() {
        let h = CMatrix::diag(&[c(1.0, 1.0), c(2.0, 0.0)]);
        let sys = eig_biorthonormal(&h, TOL).unwrap();
        assert!(matches!(
            eta_plus(&sys),
            Err(Error::UnpairedSpectrum { .. })
        ));
    }

    #[test]
    fn non_metric_is_rejected() {
        let sys = shear_system();
        let eta = MetricOperator {
            matrix: CMatrix::identity(2),
            kind: MetricKind::General,
        };
        let (ok, _) = is_pseudo_hermitian(sys.hamiltonian(), &eta, TOL).unwrap();
        assert!(!ok, "shear matrix is not Hermitian");
        assert!(matches!(
            decompose_eta(&sys, &eta, TOL),
            Err(Error::NotAMetric { .. })
        ));
    }

    #[test]
    fn pseudo_inner_basics() {
        let id = MetricOperator {
            matrix: CMatrix::identity(2),
            kind: MetricKind::Positive,
        };
        let x = vec![c(1.0, 0.0), c(0.0, 1.0)];
        let y = vec![c(0.0, 0.0), c(1.0, 0.0)];
        // <x|y> with eta = I
        let v = pseudo_inner(&x, &y, &id).unwrap();
        assert!((v - c(0.0, -1.0)).norm() < 1e-15);

        let eta = MetricOperator {
            matrix: CMatrix::diag(&[c(1.0, 0.0), c(-1.0, 0.0)]),
            kind: MetricKind::Indefinite,
        };
        let z = vec![c(0.0, 0.0), c(1.0, 0.0)];
        let v = pseudo_inner(&z, &z, &eta).unwrap();
        assert!((v - c(-1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn biorthonormality_makes_eta_gram_identity() {
        let sys = shear_system();
        let eta = eta_plus(&sys).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let v = pseudo_inner(&sys.psi_col(i), &sys.psi_col(j), &eta).unwrap();
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((v - c(expect, 0.0)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn decompose_eta_plus_gives_identity() {
        let sys = shear_system();
        let eta = eta_plus(&sys).unwrap();
        let (a, sigma) = decompose_eta(&sys, &eta, TOL).unwrap();
        assert!(a.identity_defect() < 1e-10);
        assert!(sigma.iter().all(|(_, &s)| s == 1));
    }

    #[test]
    fn decompose_diagonal_metric() {
        let h = CMatrix::diag(&[c(1.0, 0.0), c(2.0, 0.0)]);
        let sys = eig_biorthonormal(&h, TOL).unwrap();
        let eta = MetricOperator {
            matrix: CMatrix::diag(&[c(4.0, 0.0), c(-9.0, 0.0)]),
            kind: MetricKind::General,
        };
        let (a, sigma) = decompose_eta(&sys, &eta, TOL).unwrap();
        assert_eq!(sigma.get(0, 0), Some(1));
        assert_eq!(sigma.get(1, 0), Some(-1));
        // A = diag(2, 3) up to per-block phase
        assert!((a[(0, 0)].norm() - 2.0).abs() < 1e-10);
        assert!((a[(1, 1)].norm() - 3.0).abs() < 1e-10);
        assert!(a[(0, 1)].norm() < 1e-10 && a[(1, 0)].norm() < 1e-10);
        // roundtrip
        let eta_s = eta_sigma(&sys, &sigma).unwrap();
        let recon = a.adjoint().matmul(&eta_s.matrix).matmul(&a);
        assert!(recon.sub(&eta.matrix).max_norm() < 1e-10);
    }

    #[test]
    fn decompose_shear_sigma_metric() {
        let sys = shear_system();
        let sigma_in = SignSequence::from_fn(&sys, |gi, _| if gi == 0 { -1 } else { 1 });
        let eta = eta_sigma(&sys, &sigma_in).unwrap();
        let (a, sigma_out) = decompose_eta(&sys, &eta, TOL).unwrap();
        assert_eq!(sigma_out, sigma_in);
        // A = I up to slot phases: check the roundtrip and the symmetry.
        let h = sys.hamiltonian();
        assert!(a.matmul(h).sub(&h.matmul(&a)).max_norm() < 1e-9);
        let eta_s = eta_sigma(&sys, &sigma_out).unwrap();
        let recon = a.adjoint().matmul(&eta_s.matrix).matmul(&a);
        assert!(recon.sub(&eta.matrix).max_norm() < 1e-9);
    }

    #[test]
    fn decompose_mixed_spectrum_metric() {
        let sys = rotation_system();
        // Scale eta_+ by a symmetry: A = diag scaling in the eigenbasis.
        let eta_in = eta_plus(&sys).unwrap();
        let (a, sigma) = decompose_eta(&sys, &eta_in, TOL).unwrap();
        assert!(sigma.is_empty());
        let eta_s = eta_sigma(&sys, &sigma).unwrap();
        let recon = a.adjoint().matmul(&eta_s.matrix).matmul(&a);
        assert!(recon.sub(&eta_in.matrix).max_norm() < 1e-10);
        let h = sys.hamiltonian();
        assert!(a.matmul(h).sub(&h.matmul(&a)).max_norm() < 1e-10);
    }
}
