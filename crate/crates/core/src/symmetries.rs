//! Canonical symmetry generators and involution criteria.
//!
//! Every system carries a family of antilinear symmetry generators
//! `X_sigma = eta_sigma^{-1} tau_+ = eta_+^{-1} tau_sigma` and linear ones
//! `S_sigma = eta_+^{-1} eta_sigma`. Both square to the identity map and
//! commute with the matrix; the antilinear generators act on eigenvectors by
//! a sign (real slots, exact symmetry) or by swapping conjugate partners
//! (pair slots, broken symmetry).
//!
//! The canonical operators `tau_sigma` and `eta_sigma` are involutions only
//! under Gram-matrix conditions relating the two bases; those predicates are
//! evaluated here and cross-checked against direct squaring.

use num_complex::Complex64;

use crate::antilinear::{tau_plus, tau_sigma, AntilinearOperator};
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::metrics::{eta_plus_inverse, eta_sigma_inverse, SignSequence};
use crate::spectra::{BiorthonormalSystem, SlotLabel};

/// How an antilinear symmetry generator acts on one eigenvector slot.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlotAction {
    /// Mapped to `sign * itself`: the symmetry is exact on this slot.
    Exact { sign: i8 },
    /// Mapped to the conjugate-partner slot: the symmetry is broken.
    Swap { partner: usize },
}

fn unpaired_error(sys: &BiorthonormalSystem) -> Option<Error> {
    sys.groups()
        .iter()
        .find(|g| g.label == SlotLabel::Unpaired)
        .map(|g| Error::UnpairedSpectrum { witness: g.value })
}

/// Canonical antilinear symmetry generator
/// `X_sigma = sum sigma psi_0 phi_0^T + sum (psi_+ phi_-^T + psi_- phi_+^T)`
/// (as the matrix of an antilinear map). Commutes with the system's matrix
/// in the antilinear sense `M conj(H) = H M`.
pub fn canonical_antilinear_symmetry(
    sys: &BiorthonormalSystem,
    sigma: &SignSequence,
) -> Result<AntilinearOperator> {
    if let Some(e) = unpaired_error(sys) {
        return Err(e);
    }
    sigma.validate(sys)?;
    let n = sys.dim();
    let mut m = CMatrix::zeros(n, n);
    for (gi, g) in sys.groups().iter().enumerate() {
        match g.label {
            SlotLabel::Real => {
                for (a, col) in g.cols().enumerate() {
                    let w = f64::from(sigma.get(gi, a).expect("validated"));
                    m.add_outer_t(Complex64::new(w, 0.0), &sys.psi_col(col), &sys.phi_col(col));
                }
            }
            SlotLabel::PairPlus { .. } => {
                for col in g.cols() {
                    let partner = sys.partner_col(col).expect("paired");
                    let one = Complex64::new(1.0, 0.0);
                    m.add_outer_t(one, &sys.psi_col(col), &sys.phi_col(partner));
                    m.add_outer_t(one, &sys.psi_col(partner), &sys.phi_col(col));
                }
            }
            SlotLabel::PairMinus { .. } => {}
            SlotLabel::Unpaired => unreachable!(),
        }
    }
    Ok(AntilinearOperator::new(m))
}

/// The two product routes to `X_sigma`: `eta_sigma^{-1} tau_+` and
/// `eta_+^{-1} tau_sigma`, both assembled from outer-product identities
/// (no linear solves). Used to cross-check `canonical_antilinear_symmetry`.
pub fn canonical_antilinear_routes(
    sys: &BiorthonormalSystem,
    sigma: &SignSequence,
) -> Result<(AntilinearOperator, AntilinearOperator)> {
    let eta_sigma_inv = eta_sigma_inverse(sys, sigma)?;
    let route1 = tau_plus(sys).before_linear(&eta_sigma_inv.matrix);
    let eta_plus_inv = eta_plus_inverse(sys)?;
    let route2 = tau_sigma(sys, sigma)?.before_linear(&eta_plus_inv.matrix);
    Ok((route1, route2))
}

/// Canonical linear symmetry generator `S_sigma = eta_+^{-1} eta_sigma`:
/// `sum sigma psi_0 phi_0^dagger + sum (psi_+ phi_+^dagger + psi_- phi_-^dagger)`.
///
/// The pair slots enter diagonally: the cross terms of `eta_+` and
/// `eta_sigma` cancel in the product, which is what makes `S_sigma` commute
/// with the matrix (a swap would not, since conjugate eigenvalues differ).
pub fn canonical_linear_symmetry(
    sys: &BiorthonormalSystem,
    sigma: &SignSequence,
) -> Result<CMatrix> {
    if let Some(e) = unpaired_error(sys) {
        return Err(e);
    }
    sigma.validate(sys)?;
    let n = sys.dim();
    let mut s = CMatrix::zeros(n, n);
    for (gi, g) in sys.groups().iter().enumerate() {
        for (a, col) in g.cols().enumerate() {
            let w = match g.label {
                SlotLabel::Real => f64::from(sigma.get(gi, a).expect("validated")),
                _ => 1.0,
            };
            s.add_outer(Complex64::new(w, 0.0), &sys.psi_col(col), &sys.phi_col(col));
        }
    }
    Ok(s)
}

/// Classify the action of an antilinear symmetry on every eigenvector slot.
///
/// The image `X psi_s` is expanded in the eigenbasis through the duals; the
/// dominant coefficient must point either at the slot itself (exact, with a
/// real sign) or at its conjugate partner (swap). Proportionality is part of
/// the verdict: a cosine similarity below `1 - 10 tol` is an error.
pub fn symmetry_action(
    x: &AntilinearOperator,
    sys: &BiorthonormalSystem,
    tol: f64,
) -> Result<Vec<SlotAction>> {
    let n = sys.dim();
    let h = sys.hamiltonian();
    let commutator = x
        .matrix
        .matmul(&h.conj())
        .sub(&h.matmul(&x.matrix))
        .max_norm()
        / (h.max_norm() * x.matrix.max_norm()).max(1.0);
    if commutator > 10.0 * tol {
        return Err(Error::NotASymmetry {
            residual: commutator,
        });
    }

    let mut actions = Vec::with_capacity(n);
    for s in 0..n {
        let image = x.apply(&sys.psi_col(s))?;
        // Expansion coefficients of the image in the psi basis.
        let coeffs: Vec<Complex64> = (0..n)
            .map(|t| linalg::inner(&sys.phi_col(t), &image))
            .collect();
        let (target, _) = coeffs
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.norm().total_cmp(&b.1.norm()))
            .expect("nonempty");
        let psi_t = sys.psi_col(target);
        let cos = linalg::inner(&psi_t, &image).norm()
            / (linalg::vec_norm(&psi_t) * linalg::vec_norm(&image)).max(f64::MIN_POSITIVE);
        if cos < 1.0 - 10.0 * tol {
            return Err(Error::UnrecognizedAction { slot: s });
        }
        if target == s {
            let factor = coeffs[s];
            if factor.im.abs() > 10.0 * tol * factor.norm().max(1.0) {
                return Err(Error::UnrecognizedAction { slot: s });
            }
            actions.push(SlotAction::Exact {
                sign: if factor.re < 0.0 { -1 } else { 1 },
            });
        } else if sys.partner_col(s) == Some(target) {
            actions.push(SlotAction::Swap { partner: target });
        } else {
            return Err(Error::UnrecognizedAction { slot: s });
        }
    }
    Ok(actions)
}

/// `|| S^2 - I ||_max <= tol`.
pub fn is_involution_linear(s: &CMatrix, tol: f64) -> bool {
    s.is_square() && s.matmul(s).identity_defect() <= tol
}

/// `|| M conj(M) - I ||_max <= tol`.
pub fn is_involution_antilinear(t: &AntilinearOperator, tol: f64) -> bool {
    t.matrix.is_square() && t.involution_defect() <= tol
}

/// Per-slot weight (sign on real slots, +1 elsewhere) and pair-partner
/// permutation of the slot set.
fn weights_and_partner(
    sys: &BiorthonormalSystem,
    sigma: &SignSequence,
) -> Result<(Vec<f64>, Vec<usize>)> {
    sigma.validate(sys)?;
    let n = sys.dim();
    let mut w = vec![1.0f64; n];
    let mut pi: Vec<usize> = (0..n).collect();
    for (gi, g) in sys.groups().iter().enumerate() {
        for (a, col) in g.cols().enumerate() {
            match g.label {
                SlotLabel::Real => {
                    w[col] = f64::from(sigma.get(gi, a).expect("validated"));
                }
                SlotLabel::PairPlus { .. } | SlotLabel::PairMinus { .. } => {
                    pi[col] = sys.partner_col(col).expect("paired");
                }
                SlotLabel::Unpaired => return Err(Error::UnpairedSpectrum { witness: g.value }),
            }
        }
    }
    Ok((w, pi))
}

fn gram(m: &CMatrix) -> CMatrix {
    m.adjoint().matmul(m)
}

/// Scaled worst deviation of the Gram conditions for `tau_sigma` to be an
/// involution: `w_s w_t <phi_t | phi_s> = <psi_s | psi_t>` over all slot
/// pairs.
pub fn tau_involution_defect(sys: &BiorthonormalSystem, sigma: &SignSequence) -> Result<f64> {
    let (w, _) = weights_and_partner(sys, sigma)?;
    let g = gram(sys.phi());
    let k = gram(sys.psi());
    let scale = g.max_norm().max(k.max_norm()).max(1.0);
    let n = sys.dim();
    let mut worst = 0.0f64;
    for s in 0..n {
        for t in 0..n {
            let lhs = Complex64::new(w[s] * w[t], 0.0) * g[(t, s)];
            worst = worst.max((lhs - k[(s, t)]).norm() / scale);
        }
    }
    Ok(worst)
}

/// Gram-matrix conditions for `tau_sigma` to be an involution.
pub fn tau_involution_conditions(
    sys: &BiorthonormalSystem,
    sigma: &SignSequence,
    tol: f64,
) -> Result<bool> {
    Ok(tau_involution_defect(sys, sigma)? <= tol)
}

/// Scaled worst deviation of the Gram conditions for `eta_sigma` to be an
/// involution: `w_s w_t <phi_{pi(s)} | phi_{pi(t)}> = <psi_s | psi_t>` with
/// `pi` the pair-partner permutation.
pub fn eta_involution_defect(sys: &BiorthonormalSystem, sigma: &SignSequence) -> Result<f64> {
    let (w, pi) = weights_and_partner(sys, sigma)?;
    let g = gram(sys.phi());
    let k = gram(sys.psi());
    let scale = g.max_norm().max(k.max_norm()).max(1.0);
    let n = sys.dim();
    let mut worst = 0.0f64;
    for s in 0..n {
        for t in 0..n {
            let lhs = Complex64::new(w[s] * w[t], 0.0) * g[(pi[s], pi[t])];
            worst = worst.max((lhs - k[(s, t)]).norm() / scale);
        }
    }
    Ok(worst)
}

/// Gram-matrix conditions for `eta_sigma` to be an involution.
pub fn eta_involution_conditions(
    sys: &BiorthonormalSystem,
    sigma: &SignSequence,
    tol: f64,
) -> Result<bool> {
    Ok(eta_involution_defect(sys, sigma)? <= tol)
}

/// When both involution condition sets hold, `tau_sigma` and `eta_sigma`
/// commute: `M_tau conj(eta) = eta M_tau`. Returns the residual check.
pub fn check_tau_eta_commutation(
    sys: &BiorthonormalSystem,
    sigma: &SignSequence,
    tol: f64,
) -> Result<bool> {
    if !(tau_involution_conditions(sys, sigma, tol)? && eta_involution_conditions(sys, sigma, tol)?)
    {
        return Err(Error::PreconditionUnmet(
            "involution conditions do not hold for this system".into(),
        ));
    }
    let eta = crate::metrics::eta_sigma(sys, sigma)?;
    let tau = tau_sigma(sys, sigma)?;
    let lhs = tau.matrix.matmul(&eta.matrix.conj());
    let rhs = eta.matrix.matmul(&tau.matrix);
    let scale = (eta.matrix.max_norm() * tau.matrix.max_norm()).max(1.0);
    Ok(lhs.sub(&rhs).max_norm() / scale <= tol)
}

/// Double-sum Gram criterion deciding whether the system rebased by a given
/// invertible symmetry `A` supports a Hermitian antilinear involution:
/// with `U = Psi^dagger (A A^dagger)^{-1} Psi`, the criterion is `U U^T = I`.
pub fn symmetry_involution_criterion(
    sys: &BiorthonormalSystem,
    a: &CMatrix,
    tol: f64,
) -> Result<bool> {
    let n = sys.dim();
    if a.rows() != n || a.cols() != n {
        return Err(Error::ShapeMismatch {
            left: format!("{n}x{n}"),
            right: format!("{}x{}", a.rows(), a.cols()),
        });
    }
    let h = sys.hamiltonian();
    let comm = a.matmul(h).sub(&h.matmul(a)).max_norm() / (a.max_norm() * h.max_norm()).max(1.0);
    if comm > tol {
        return Err(Error::NotASymmetry { residual: comm });
    }
    let sv = linalg::singular_values(a);
    let smin = sv.last().copied().unwrap_or(0.0);
    if smin < 1e-12 * sv.first().copied().unwrap_or(1.0) {
        return Err(Error::NotInvertible { sigma_min: smin });
    }
    let aad = a.matmul(&a.adjoint());
    let b = linalg::solve(&aad, &CMatrix::identity(n))?;
    let u = sys.psi().adjoint().matmul(&b).matmul(sys.psi());
    let defect = u.matmul(&u.transpose()).identity_defect();
    Ok(defect <= tol * u.max_norm().max(1.0).powi(2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::eta_sigma;
    use crate::spectra::eig_biorthonormal;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    const TOL: f64 = 1e-9;

    fn diag_system() -> BiorthonormalSystem {
        let h = CMatrix::diag(&[c(1.0, 0.0), c(2.0, 0.0)]);
        eig_biorthonormal(&h, TOL).unwrap()
    }

    fn shear_system() -> BiorthonormalSystem {
        let h = CMatrix::from_real_rows(&[vec![1.0, 1.0], vec![0.0, 2.0]]);
        eig_biorthonormal(&h, TOL).unwrap()
    }

    fn rotation_system() -> BiorthonormalSystem {
        let h = CMatrix::from_real_rows(&[vec![0.0, 1.0], vec![-1.0, 0.0]]);
        eig_biorthonormal(&h, TOL).unwrap()
    }

    #[test]
    fn plus_generator_on_identity_system_is_conjugation() {
        let sys = diag_system();
        let x = canonical_antilinear_symmetry(&sys, &SignSequence::all_plus(&sys)).unwrap();
        assert!(x.matrix.identity_defect() < 1e-13);
    }

    #[test]
    fn sign_flip_generator_acts_by_signs() {
        let sys = diag_system();
        let sigma = SignSequence::from_fn(&sys, |gi, _| if gi == 1 { -1 } else { 1 });
        let x = canonical_antilinear_symmetry(&sys, &sigma).unwrap();
        let expect = CMatrix::diag(&[c(1.0, 0.0), c(-1.0, 0.0)]);
        assert!(x.matrix.sub(&expect).max_norm() < 1e-13);
        let actions = symmetry_action(&x, &sys, TOL).unwrap();
        assert_eq!(
            actions,
            vec![
                SlotAction::Exact { sign: 1 },
                SlotAction::Exact { sign: -1 }
            ]
        );
    }

    #[test]
    fn routes_agree_on_real_and_mixed_spectra() {
        for sys in [diag_system(), shear_system(), rotation_system()] {
            let sigma = SignSequence::all_plus(&sys);
            let direct = canonical_antilinear_symmetry(&sys, &sigma).unwrap();
            let (r1, r2) = canonical_antilinear_routes(&sys, &sigma).unwrap();
            assert!(direct.matrix.sub(&r1.matrix).max_norm() < 1e-11);
            assert!(direct.matrix.sub(&r2.matrix).max_norm() < 1e-11);
        }
    }

    #[test]
    fn generator_is_involution_and_symmetry() {
        for sys in [shear_system(), rotation_system()] {
            let sigma = SignSequence::from_fn(&sys, |gi, _| if gi % 2 == 0 { 1 } else { -1 });
            let x = canonical_antilinear_symmetry(&sys, &sigma).unwrap();
            assert!(x.involution_defect() < 1e-11);
            let h = sys.hamiltonian();
            let comm = x.matrix.matmul(&h.conj()).sub(&h.matmul(&x.matrix));
            assert!(comm.max_norm() < 1e-11);
        }
    }

    #[test]
    fn broken_symmetry_swaps_pair_slots() {
        let sys = rotation_system();
        let x = canonical_antilinear_symmetry(&sys, &SignSequence::all_plus(&sys)).unwrap();
        // For this real matrix the canonical generator is plain conjugation.
        assert!(x.matrix.identity_defect() < 1e-12);
        let actions = symmetry_action(&x, &sys, TOL).unwrap();
        assert_eq!(
            actions,
            vec![
                SlotAction::Swap { partner: 1 },
                SlotAction::Swap { partner: 0 }
            ]
        );
    }

    #[test]
    fn exactness_iff_real_spectrum() {
        let real_sys = shear_system();
        let x =
            canonical_antilinear_symmetry(&real_sys, &SignSequence::all_plus(&real_sys)).unwrap();
        let actions = symmetry_action(&x, &real_sys, TOL).unwrap();
        assert!(actions
            .iter()
            .all(|a| matches!(a, SlotAction::Exact { sign: 1 })));

        let mixed_sys = rotation_system();
        let x =
            canonical_antilinear_symmetry(&mixed_sys, &SignSequence::all_plus(&mixed_sys)).unwrap();
        let actions = symmetry_action(&x, &mixed_sys, TOL).unwrap();
        assert!(actions.iter().all(|a| matches!(a, SlotAction::Swap { .. })));
    }

    #[test]
    fn linear_generator_squares_to_identity_and_commutes() {
        for sys in [diag_system(), shear_system(), rotation_system()] {
            let sigma = SignSequence::from_fn(&sys, |gi, _| if gi % 2 == 0 { 1 } else { -1 });
            let s = canonical_linear_symmetry(&sys, &sigma).unwrap();
            assert!(is_involution_linear(&s, 1e-11));
            let h = sys.hamiltonian();
            assert!(s.matmul(h).sub(&h.matmul(&s)).max_norm() < 1e-11);
        }
    }

    #[test]
    fn linear_generator_all_plus_is_identity() {
        for sys in [diag_system(), rotation_system()] {
            let s = canonical_linear_symmetry(&sys, &SignSequence::all_plus(&sys)).unwrap();
            assert!(s.identity_defect() < 1e-12);
        }
    }

    #[test]
    fn linear_generator_diagonal_signs() {
        let sys = diag_system();
        let sigma = SignSequence::from_fn(&sys, |gi, _| if gi == 1 { -1 } else { 1 });
        let s = canonical_linear_symmetry(&sys, &sigma).unwrap();
        let expect = CMatrix::diag(&[c(1.0, 0.0), c(-1.0, 0.0)]);
        assert!(s.sub(&expect).max_norm() < 1e-13);
    }

    #[test]
    fn in_group_mixing_is_an_unrecognized_action() {
        // On a degenerate group a rotation commutes with H but maps an
        // eigenvector to a mixture, which is not a slot action.
        let h = CMatrix::diag(&[c(1.0, 0.0), c(1.0, 0.0), c(2.0, 0.0)]);
        let sys = eig_biorthonormal(&h, TOL).unwrap();
        let s = 0.5f64.sqrt();
        let m = CMatrix::from_real_rows(&[vec![s, s, 0.0], vec![s, -s, 0.0], vec![0.0, 0.0, 1.0]]);
        let x = AntilinearOperator::new(m);
        assert!(matches!(
            symmetry_action(&x, &sys, TOL),
            Err(Error::UnrecognizedAction { .. })
        ));
    }

    #[test]
    fn involution_predicates_on_fixed_matrices() {
        assert!(is_involution_linear(&CMatrix::identity(2), 1e-12));
        assert!(is_involution_linear(
            &CMatrix::diag(&[c(1.0, 0.0), c(-1.0, 0.0)]),
            1e-12
        ));
        let shear = CMatrix::from_real_rows(&[vec![1.0, 1.0], vec![0.0, 1.0]]);
        assert!(!is_involution_linear(&shear, 1e-12));

        assert!(is_involution_antilinear(
            &AntilinearOperator::conjugation(2),
            1e-12
        ));
    }

    #[test]
    fn involution_conditions_on_unitary_system_hold_for_any_signs() {
        let sys = diag_system();
        for flip in [1i8, -1] {
            let sigma = SignSequence::from_fn(&sys, |gi, _| if gi == 0 { flip } else { 1 });
            assert!(tau_involution_conditions(&sys, &sigma, TOL).unwrap());
            assert!(eta_involution_conditions(&sys, &sigma, TOL).unwrap());
        }
    }

    #[test]
    fn involution_conditions_fail_on_skewed_system() {
        let sys = shear_system();
        let sigma = SignSequence::all_plus(&sys);
        assert!(!tau_involution_conditions(&sys, &sigma, TOL).unwrap());
        assert!(!eta_involution_conditions(&sys, &sigma, TOL).unwrap());
    }

    #[test]
    fn predicates_agree_with_direct_squaring() {
        for sys in [diag_system(), shear_system(), rotation_system()] {
            for flip in [1i8, -1] {
                let sigma = SignSequence::from_fn(&sys, |gi, _| if gi == 0 { flip } else { 1 });
                let predicted_tau = tau_involution_conditions(&sys, &sigma, TOL).unwrap();
                let direct_tau = is_involution_antilinear(&tau_sigma(&sys, &sigma).unwrap(), 1e-7);
                assert_eq!(predicted_tau, direct_tau);

                let predicted_eta = eta_involution_conditions(&sys, &sigma, TOL).unwrap();
                let direct_eta =
                    is_involution_linear(&eta_sigma(&sys, &sigma).unwrap().matrix, 1e-7);
                assert_eq!(predicted_eta, direct_eta);
            }
        }
    }

    #[test]
    fn commutation_holds_on_unitary_system() {
        let sys = diag_system();
        let sigma = SignSequence::from_fn(&sys, |gi, _| if gi == 1 { -1 } else { 1 });
        assert!(check_tau_eta_commutation(&sys, &sigma, TOL).unwrap());
    }

    #[test]
    fn normalized_oscillator_satisfies_conditions_and_commutation() {
        // With alternating signs the canonical pair coincides with the
        // model parity and conjugation, which commute.
        let model = crate::models::harmonic_oscillator(6).unwrap();
        let sys = eig_biorthonormal(&model.h, TOL).unwrap();
        let normalized = crate::models::pt_normalize(&sys, &model).unwrap();
        let sigma = SignSequence::alternating(&normalized);
        assert!(tau_involution_conditions(&normalized, &sigma, TOL).unwrap());
        assert!(eta_involution_conditions(&normalized, &sigma, TOL).unwrap());
        assert!(check_tau_eta_commutation(&normalized, &sigma, TOL).unwrap());
        // and the eta_sigma instance is the parity matrix itself
        let eta = eta_sigma(&normalized, &sigma).unwrap();
        assert!(eta.matrix.sub(&model.parity).max_norm() < 1e-12);
    }

    #[test]
    fn commutation_refuses_when_conditions_fail() {
        let sys = shear_system();
        let sigma = SignSequence::all_plus(&sys);
        assert!(matches!(
            check_tau_eta_commutation(&sys, &sigma, TOL),
            Err(Error::PreconditionUnmet(_))
        ));
    }

    #[test]
    fn symmetry_criterion_identity_cases() {
        let unitary = diag_system();
        assert!(symmetry_involution_criterion(&unitary, &CMatrix::identity(2), TOL).unwrap());
        let skewed = shear_system();
        assert!(!symmetry_involution_criterion(&skewed, &CMatrix::identity(2), TOL).unwrap());
    }

    #[test]
    fn symmetry_criterion_rejects_non_symmetry() {
        let sys = shear_system();
        // A generic matrix does not commute with the shear.
        let a = CMatrix::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]);
        assert!(matches!(
            symmetry_involution_criterion(&sys, &a, TOL),
            Err(Error::NotASymmetry { .. })
        ));
    }

    #[test]
    fn symmetry_criterion_distinguishes_phase_from_stretch() {
        // Unimodular diagonal symmetries keep A A^dagger = I and the
        // criterion intact; a genuine stretch breaks it.
        let sys = diag_system();
        let phases = CMatrix::diag(&[c(0.0, 1.0), Complex64::from_polar(1.0, 0.3)]);
        assert!(symmetry_involution_criterion(&sys, &phases, TOL).unwrap());
        let stretch = CMatrix::diag(&[c(2.0, 0.0), c(3.0, 0.0)]);
        assert!(!symmetry_involution_criterion(&sys, &stretch, TOL).unwrap());
    }
}
