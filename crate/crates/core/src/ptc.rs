//! Generalized parity, time-reversal and charge-conjugation operators.
//!
//! From a biorthonormal system with real or conjugate-paired spectrum the
//! toolkit builds, with `w_n = (-1)^n` over the ordered eigenvalue groups:
//!
//! - parity `P = sum w phi_0 phi_0^dagger + sum (phi_+ phi_-^dagger + h.c.)`,
//! - time reversal `T` antilinear with
//!   `M = sum w phi_0 phi_0^T + sum (phi_+ phi_-^T + phi_- phi_+^T)`,
//! - charge conjugation `C = eta_+^{-1} P`, assembled from outer products as
//!   `sum w psi_0 phi_0^dagger + sum (psi_+ phi_+^dagger + psi_- phi_-^dagger)`,
//! - the composites `PT` and `CPT` with the pair slots crossed.
//!
//! `C`, `PT` and `CPT` are involutions commuting with the matrix for every
//! spectrum class; `P` and `T` are involutions only under the Gram
//! conditions evaluated in `symmetries`.

use num_complex::Complex64;

use crate::antilinear::{is_anti_pseudo_hermitian, AntilinearOperator};
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::metrics::{eta_plus, is_pseudo_hermitian, MetricKind, MetricOperator, SignSequence};
use crate::spectra::{BiorthonormalSystem, SlotLabel};
use crate::symmetries::{
    eta_involution_conditions, symmetry_action, tau_involution_conditions, SlotAction,
};

/// The full operator set built by `build_ptc`.
#[derive(Debug, Clone)]
pub struct PtcSet {
    pub parity: MetricOperator,
    pub time_reversal: AntilinearOperator,
    pub charge: CMatrix,
    pub pt: AntilinearOperator,
    pub cpt: AntilinearOperator,
    /// `Lambda = sum psi psi^dagger`; Hermitian, invertible, and equal to
    /// `eta_+^{-1}` exactly when the spectrum is real.
    pub lambda: CMatrix,
}

/// Alternating weight of an eigenvalue group: `(-1)^group_index`; all
/// members of a degenerate group share it.
fn alternating_weight(gi: usize) -> f64 {
    if gi.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// Build the generalized operator set. Requires every nonreal eigenvalue to
/// be conjugate-paired.
pub fn build_ptc(sys: &BiorthonormalSystem) -> Result<PtcSet> {
    if sys.has_unpaired() {
        let witness = sys
            .groups()
            .iter()
            .find(|g| g.label == SlotLabel::Unpaired)
            .map(|g| g.value)
            .unwrap_or_default();
        return Err(Error::UnpairedSpectrum { witness });
    }
    let n = sys.dim();
    let one = Complex64::new(1.0, 0.0);

    let mut parity = CMatrix::zeros(n, n);
    let mut trev = CMatrix::zeros(n, n);
    let mut charge = CMatrix::zeros(n, n);
    let mut pt = CMatrix::zeros(n, n);
    let mut cpt = CMatrix::zeros(n, n);
    let mut lambda = CMatrix::zeros(n, n);

    for (gi, g) in sys.groups().iter().enumerate() {
        for col in g.cols() {
            let psi = sys.psi_col(col);
            lambda.add_outer(one, &psi, &psi);
        }
        match g.label {
            SlotLabel::Real => {
                let w = Complex64::new(alternating_weight(gi), 0.0);
                for col in g.cols() {
                    let psi = sys.psi_col(col);
                    let phi = sys.phi_col(col);
                    parity.add_outer(w, &phi, &phi);
                    trev.add_outer_t(w, &phi, &phi);
                    charge.add_outer(w, &psi, &phi);
                    pt.add_outer_t(one, &psi, &phi);
                    cpt.add_outer_t(w, &psi, &phi);
                }
            }
            SlotLabel::PairPlus { .. } => {
                for col in g.cols() {
                    let partner = sys.partner_col(col).expect("paired");
                    let psi_p = sys.psi_col(col);
                    let psi_m = sys.psi_col(partner);
                    let phi_p = sys.phi_col(col);
                    let phi_m = sys.phi_col(partner);
                    parity.add_outer(one, &phi_p, &phi_m);
                    parity.add_outer(one, &phi_m, &phi_p);
                    trev.add_outer_t(one, &phi_p, &phi_m);
                    trev.add_outer_t(one, &phi_m, &phi_p);
                    // eta_+^{-1} P is slot-diagonal on the pair sector.
                    charge.add_outer(one, &psi_p, &phi_p);
                    charge.add_outer(one, &psi_m, &phi_m);
                    pt.add_outer_t(one, &psi_p, &phi_m);
                    pt.add_outer_t(one, &psi_m, &phi_p);
                    cpt.add_outer_t(one, &psi_p, &phi_m);
                    cpt.add_outer_t(one, &psi_m, &phi_p);
                }
            }
            SlotLabel::PairMinus { .. } => {}
            SlotLabel::Unpaired => unreachable!(),
        }
    }

    Ok(PtcSet {
        parity: MetricOperator {
            matrix: parity,
            kind: MetricKind::Indefinite,
        },
        time_reversal: AntilinearOperator::new(trev),
        charge,
        pt: AntilinearOperator::new(pt),
        cpt: AntilinearOperator::new(cpt),
        lambda,
    })
}

/// One verification item: a named residual with its threshold verdict.
#[derive(Debug, Clone)]
pub struct CheckItem {
    pub key: String,
    pub residual: f64,
    pub pass: bool,
    /// Conditional items (parity/time-reversal involutions) may fail on
    /// systems that do not satisfy the Gram conditions; they do not count
    /// against the overall verdict.
    pub conditional: bool,
}

/// Itemized verification of the operator set against its defining
/// identities.
#[derive(Debug, Clone)]
pub struct PtcReport {
    pub items: Vec<CheckItem>,
    pub actions: Vec<SlotAction>,
}

impl PtcReport {
    /// True when every unconditional item passes.
    pub fn pass(&self) -> bool {
        self.items.iter().all(|i| i.conditional || i.pass)
    }

    pub fn worst_unconditional_residual(&self) -> f64 {
        self.items
            .iter()
            .filter(|i| !i.conditional)
            .map(|i| i.residual)
            .fold(0.0, f64::max)
    }

    pub fn get(&self, key: &str) -> Option<&CheckItem> {
        self.items.iter().find(|i| i.key == key)
    }
}

fn push(items: &mut Vec<CheckItem>, key: &str, residual: f64, tol: f64, conditional: bool) {
    items.push(CheckItem {
        key: key.to_string(),
        residual,
        pass: residual <= tol,
        conditional,
    });
}

/// Verify the whole identity suite for a system and its operator set.
///
/// Unconditional items hold for every real or conjugate-paired spectrum:
/// biorthonormality, completeness, reconstruction, metric intertwining,
/// involution laws of `C`, `PT`, `CPT`, commutation with the matrix, the
/// product identities `eta_+ C = P` and `C = (T eta_+ T) P`, Hermiticity of
/// `Lambda` and `Lambda P = C` (real spectra). Conditional items record
/// whether `P` and `T` are involutions, equivalent to the Gram conditions.
pub fn verify_ptc(sys: &BiorthonormalSystem, tol: f64) -> Result<PtcReport> {
    let set = build_ptc(sys)?;
    let h = sys.hamiltonian();
    let h_scale = h.max_norm().max(1.0);
    let mut items = Vec::new();

    let real_spectrum = sys.groups().iter().all(|g| g.label == SlotLabel::Real);

    // 1. system integrity
    push(
        &mut items,
        "bi-ortho",
        sys.biorthonormality_defect(),
        10.0 * tol,
        false,
    );
    push(
        &mut items,
        "complete",
        sys.completeness_defect(),
        10.0 * tol,
        false,
    );
    push(
        &mut items,
        "sr",
        sys.reconstruction_defect() / h_scale,
        10.0 * tol,
        false,
    );

    // 2. metric reconstruction and the conjugated inverse identity
    let eta = eta_plus(sys)?;
    let t_eta_t = set
        .time_reversal
        .matrix
        .matmul(&eta.matrix.conj())
        .matmul(&set.time_reversal.matrix.conj());
    // T eta_+ T = eta_+^{-1} holds when the Gram conditions do (it fails on
    // generic skewed bases), so it is reported as conditional.
    let eta_scale = eta.matrix.max_norm().max(1.0);
    let inv_product = t_eta_t.matmul(&eta.matrix);
    push(
        &mut items,
        "e=TeT",
        inv_product.identity_defect() / (t_eta_t.max_norm() * eta_scale).max(1.0),
        100.0 * tol,
        true,
    );

    // 3. intertwining relations
    let (_, res_p) = is_pseudo_hermitian(h, &set.parity, tol)?;
    push(&mut items, "P-ph", res_p, 10.0 * tol, false);
    let (_, res_t) = is_anti_pseudo_hermitian(h, &set.time_reversal, tol)?;
    // Time reversal intertwines only on real slots; conditional otherwise.
    push(&mut items, "T:anti-ph", res_t, 10.0 * tol, !real_spectrum);

    // 4. symmetry commutators and eigenvector actions
    let comm_c = set.charge.matmul(h).sub(&h.matmul(&set.charge)).max_norm()
        / (h_scale * set.charge.max_norm().max(1.0));
    push(&mut items, "[C,H]", comm_c, 10.0 * tol, false);
    for (key, op) in [("[PT,H]", &set.pt), ("[CPT,H]", &set.cpt)] {
        let r = op
            .matrix
            .matmul(&h.conj())
            .sub(&h.matmul(&op.matrix))
            .max_norm()
            / (h_scale * op.matrix.max_norm().max(1.0));
        push(&mut items, key, r, 10.0 * tol, false);
    }
    let mut action_residual = 0.0f64;
    for (gi, g) in sys.groups().iter().enumerate() {
        for col in g.cols() {
            let psi = sys.psi_col(col);
            let pt_psi = set.pt.apply(&psi)?;
            let c_psi = set.charge.matvec(&psi);
            match g.label {
                SlotLabel::Real => {
                    let w = Complex64::new(alternating_weight(gi), 0.0);
                    action_residual =
                        action_residual.max(linalg::vec_norm(&linalg::vec_sub(&pt_psi, &psi)));
                    let expect = linalg::vec_scale(w, &psi);
                    action_residual =
                        action_residual.max(linalg::vec_norm(&linalg::vec_sub(&c_psi, &expect)));
                }
                _ => {
                    let partner = sys.partner_col(col).expect("paired");
                    let psi_partner = sys.psi_col(partner);
                    action_residual = action_residual
                        .max(linalg::vec_norm(&linalg::vec_sub(&pt_psi, &psi_partner)));
                    action_residual =
                        action_residual.max(linalg::vec_norm(&linalg::vec_sub(&c_psi, &psi)));
                }
            }
        }
    }
    push(&mut items, "actions", action_residual, 10.0 * tol, false);

    // 5. involution laws and the charge product identities
    push(
        &mut items,
        "nilp:PT",
        set.pt.involution_defect(),
        10.0 * tol,
        false,
    );
    push(
        &mut items,
        "nilp:C",
        set.charge.matmul(&set.charge).identity_defect(),
        10.0 * tol,
        false,
    );
    push(
        &mut items,
        "nilp:CPT",
        set.cpt.involution_defect(),
        10.0 * tol,
        false,
    );
    let c_scale = set.charge.max_norm().max(1.0);
    push(
        &mut items,
        "C==",
        eta.matrix
            .matmul(&set.charge)
            .sub(&set.parity.matrix)
            .max_norm()
            / (eta_scale * c_scale),
        10.0 * tol,
        false,
    );
    push(
        &mut items,
        "C==TeTP",
        t_eta_t
            .matmul(&set.parity.matrix)
            .sub(&set.charge)
            .max_norm()
            / c_scale,
        100.0 * tol,
        true,
    );

    // 6. parity / time-reversal involutions (conditional on the Gram laws)
    let sigma = SignSequence::alternating(sys);
    let tau_cond = tau_involution_conditions(sys, &sigma, tol)?;
    let eta_cond = eta_involution_conditions(sys, &sigma, tol)?;
    let p_defect = set
        .parity
        .matrix
        .matmul(&set.parity.matrix)
        .identity_defect();
    let t_defect = set.time_reversal.involution_defect();
    push(&mut items, "inv-condi:P", p_defect, 10.0 * tol, true);
    push(&mut items, "inv-condi:T", t_defect, 10.0 * tol, true);
    // The predicate and the direct square must agree either way.
    let agreement_p = (p_defect <= 10.0 * tol) == eta_cond;
    let agreement_t = (t_defect <= 10.0 * tol) == tau_cond;
    push(
        &mut items,
        "inv-condi:agree",
        if agreement_p && agreement_t { 0.0 } else { 1.0 },
        0.5,
        false,
    );

    // 7. Lambda identities
    push(
        &mut items,
        "Lambda:herm",
        set.lambda.hermitian_defect() / set.lambda.max_norm().max(1.0),
        10.0 * tol,
        false,
    );
    if real_spectrum {
        push(
            &mut items,
            "Lambda:LP=C",
            set.lambda
                .matmul(&set.parity.matrix)
                .sub(&set.charge)
                .max_norm()
                / c_scale,
            10.0 * tol,
            false,
        );
        let basis_defect = sys.phi().sub(sys.psi()).max_norm();
        if basis_defect <= 10.0 * tol {
            push(
                &mut items,
                "C=P",
                set.charge.sub(&set.parity.matrix).max_norm() / c_scale,
                10.0 * tol,
                false,
            );
        }
        if h.hermitian_defect() <= tol * h_scale {
            // C^{-1} = C, so Hermiticity of C^{-1} P reduces to C P.
            push(
                &mut items,
                "CP:herm",
                set.charge.matmul(&set.parity.matrix).hermitian_defect()
                    / (c_scale * set.parity.matrix.max_norm().max(1.0)),
                10.0 * tol,
                false,
            );
        }
    }

    let actions = symmetry_action(&set.cpt, sys, tol)?;
    // CPT acts by (-1)^n on real slots and swaps pair slots.
    let mut expected_ok = true;
    for (gi, g) in sys.groups().iter().enumerate() {
        for col in g.cols() {
            let expect = match g.label {
                SlotLabel::Real => SlotAction::Exact {
                    sign: if gi % 2 == 0 { 1 } else { -1 },
                },
                _ => SlotAction::Swap {
                    partner: sys.partner_col(col).expect("paired"),
                },
            };
            if actions[col] != expect {
                expected_ok = false;
            }
        }
    }
    push(
        &mut items,
        "gen-CPT-psi",
        if expected_ok { 0.0 } else { 1.0 },
        0.5,
        false,
    );

    Ok(PtcReport { items, actions })
}

/// Positive-definite inner product `<x | eta_+ y>`; defined for real
/// spectra, where eigenvectors are orthonormal under it.
pub fn cpt_inner(x: &[Complex64], y: &[Complex64], sys: &BiorthonormalSystem) -> Result<Complex64> {
    if let Some(g) = sys.groups().iter().find(|g| g.label != SlotLabel::Real) {
        return Err(Error::ComplexSpectrum { witness: g.value });
    }
    let eta = eta_plus(sys)?;
    crate::metrics::pseudo_inner(x, y, &eta)
}

/// The same pairing evaluated through the antilinear route
/// `(CPT x)^T y`; coincides with `cpt_inner` on systems whose duals are the
/// alternating-signed conjugates of the eigenvectors (parity-time normalized
/// model systems).
pub fn cpt_inner_via_route(x: &[Complex64], y: &[Complex64], set: &PtcSet) -> Result<Complex64> {
    let image = set.cpt.apply(x)?;
    Ok(linalg::bilinear(&image, y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra::{classify_spectrum, eig_biorthonormal, SpectralClass};

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
    fn hermitian_diagonal_set_collapses_to_parity() {
        let h = CMatrix::diag(&[c(1.0, 0.0), c(2.0, 0.0)]);
        let sys = eig_biorthonormal(&h, TOL).unwrap();
        let set = build_ptc(&sys).unwrap();
        let expect = CMatrix::diag(&[c(1.0, 0.0), c(-1.0, 0.0)]);
        assert!(set.parity.matrix.sub(&expect).max_norm() < 1e-12);
        assert!(set.charge.sub(&expect).max_norm() < 1e-12);
        assert!(set.time_reversal.matrix.sub(&expect).max_norm() < 1e-12);
        assert!(set.lambda.identity_defect() < 1e-12);
        let report = verify_ptc(&sys, TOL).unwrap();
        assert!(report.pass(), "{report:?}");
        // an orthonormal system satisfies the conditional items too
        assert!(report.get("inv-condi:P").unwrap().pass);
        assert!(report.get("inv-condi:T").unwrap().pass);
    }

    #[test]
    fn shear_charge_operator_by_hand() {
        // psi_1 = (1,0), phi_1 = (1,-1); psi_2 = (1,1)/sqrt(2),
        // phi_2 = (0,sqrt(2)):
        // C = psi_1 phi_1^dagger - psi_2 phi_2^dagger = [[1,-2],[0,-1]],
        // which squares to I, commutes with H, and satisfies eta_+ C = P.
        let sys = shear_system();
        let set = build_ptc(&sys).unwrap();
        let expect = CMatrix::from_real_rows(&[vec![1.0, -2.0], vec![0.0, -1.0]]);
        assert!(set.charge.sub(&expect).max_norm() < 1e-11);
        assert!(set.charge.matmul(&set.charge).identity_defect() < 1e-11);
        let h = sys.hamiltonian();
        assert!(set.charge.matmul(h).sub(&h.matmul(&set.charge)).max_norm() < 1e-11);
    }

    #[test]
    fn shear_report_passes_except_conditional_items() {
        let sys = shear_system();
        let report = verify_ptc(&sys, TOL).unwrap();
        assert!(report.pass(), "{report:?}");
        assert!(!report.get("inv-condi:P").unwrap().pass);
        assert!(!report.get("inv-condi:T").unwrap().pass);
        // predicate/direct agreement is unconditional
        assert!(report.get("inv-condi:agree").unwrap().pass);
    }

    #[test]
    fn rotation_set_satisfies_mixed_spectrum_identities() {
        let sys = rotation_system();
        assert!(matches!(
            classify_spectrum(&sys, TOL),
            SpectralClass::ConjugatePaired
        ));
        let set = build_ptc(&sys).unwrap();
        // parity: cross terms; charge: slot-diagonal +1 weights -> identity
        assert!(set.charge.identity_defect() < 1e-11);
        let report = verify_ptc(&sys, TOL).unwrap();
        assert!(report.pass(), "{report:?}");
        // swap actions on both slots
        assert_eq!(
            report.actions,
            vec![
                SlotAction::Swap { partner: 1 },
                SlotAction::Swap { partner: 0 }
            ]
        );
    }

    #[test]
    fn unpaired_spectrum_is_rejected() {
        let h = CMatrix::diag(&[c(1.0, 1.0), c(2.0, 0.0)]);
        let sys = eig_biorthonormal(&h, TOL).unwrap();
        assert!(matches!(
            build_ptc(&sys),
            Err(Error::UnpairedSpectrum { .. })
        ));
    }

    #[test]
    fn cpt_inner_is_positive_definite_gram_identity() {
        let sys = shear_system();
        for i in 0..2 {
            for j in 0..2 {
                let v = cpt_inner(&sys.psi_col(i), &sys.psi_col(j), &sys).unwrap();
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((v - c(expect, 0.0)).norm() < 1e-11);
            }
        }
        // positivity on a generic vector
        let x = vec![c(0.3, -0.4), c(1.1, 0.2)];
        let v = cpt_inner(&x, &x, &sys).unwrap();
        assert!(v.re > 0.0 && v.im.abs() < 1e-12);
        // entry (0,0) of eta_+ via basis vectors
        let e0 = vec![c(1.0, 0.0), c(0.0, 0.0)];
        let v = cpt_inner(&e0, &e0, &sys).unwrap();
        assert!((v - c(1.0, 0.0)).norm() < 1e-11);
    }

    #[test]
    fn cpt_inner_route_agrees_on_normalized_oscillator() {
        let model = crate::models::harmonic_oscillator(5).unwrap();
        let sys = eig_biorthonormal(&model.h, TOL).unwrap();
        let normalized = crate::models::pt_normalize(&sys, &model).unwrap();
        let set = build_ptc(&normalized).unwrap();
        for i in 0..5 {
            for j in 0..5 {
                let direct =
                    cpt_inner(&normalized.psi_col(i), &normalized.psi_col(j), &normalized).unwrap();
                let routed =
                    cpt_inner_via_route(&normalized.psi_col(i), &normalized.psi_col(j), &set)
                        .unwrap();
                assert!((direct - routed).norm() < 1e-12, "({i},{j})");
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((direct - c(expect, 0.0)).norm() < 1e-12);
            }
        }
        // with duals equal to eigenvectors the whole report passes,
        // conditional items included
        let report = verify_ptc(&normalized, TOL).unwrap();
        assert!(report.pass());
        assert!(report.items.iter().all(|i| i.pass), "{report:?}");
    }

    #[test]
    fn cpt_inner_requires_real_spectrum() {
        let sys = rotation_system();
        let x = vec![c(1.0, 0.0), c(0.0, 0.0)];
        assert!(matches!(
            cpt_inner(&x, &x, &sys),
            Err(Error::ComplexSpectrum { .. })
        ));
    }
}
