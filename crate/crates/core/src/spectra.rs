//! Biorthonormal eigensystems of diagonalizable complex matrices.
//!
//! `eig_biorthonormal` produces the pair of bases `{psi, phi}` with
//! `phi^dagger psi = I`: the columns of `psi` are right eigenvectors of `H`,
//! the columns of `phi` are eigenvectors of `H^dagger` obtained as
//! `(psi^{-1})^dagger`. Eigenvalues are clustered into degenerate groups,
//! ordered by ascending real part (ties by imaginary part), and labelled as
//! real slots or members of complex-conjugate pairs. That ordering defines
//! the integer index used by every alternating-sign construction downstream.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};

/// Classification of one eigenvalue group.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlotLabel {
    /// Real eigenvalue (within tolerance).
    Real,
    /// Imaginary part > 0, paired with the group at the given index.
    PairPlus { partner: usize },
    /// Imaginary part < 0, paired with the group at the given index.
    PairMinus { partner: usize },
    /// Nonreal with no conjugate partner of equal multiplicity.
    Unpaired,
}

/// One degenerate eigenvalue group.
#[derive(Debug, Clone)]
pub struct EigenGroup {
    /// Representative eigenvalue (mean of the cluster).
    pub value: Complex64,
    /// First column index of the group inside `psi` / `phi`.
    pub col_start: usize,
    pub multiplicity: usize,
    pub label: SlotLabel,
    /// Distance to the nearest other group; small gaps flag ill-conditioned
    /// degeneracy clusters.
    pub gap: f64,
}

impl EigenGroup {
    pub fn cols(&self) -> std::ops::Range<usize> {
        self.col_start..self.col_start + self.multiplicity
    }
}

/// Overall spectral class of a matrix.
#[derive(Debug, Clone, PartialEq)]
pub enum SpectralClass {
    Real,
    ConjugatePaired,
    Unpaired { witness: Complex64 },
}

/// Complete biorthonormal system of a diagonalizable matrix.
#[derive(Debug, Clone)]
pub struct BiorthonormalSystem {
    h: CMatrix,
    groups: Vec<EigenGroup>,
    psi: CMatrix,
    phi: CMatrix,
    cond_psi: f64,
    tol: f64,
}

impl BiorthonormalSystem {
    pub fn dim(&self) -> usize {
        self.psi.rows()
    }

    /// The matrix this system diagonalizes.
    pub fn hamiltonian(&self) -> &CMatrix {
        &self.h
    }

    pub fn groups(&self) -> &[EigenGroup] {
        &self.groups
    }

    /// Eigenvector columns.
    pub fn psi(&self) -> &CMatrix {
        &self.psi
    }

    /// Dual (left-eigenvector) columns, `phi = (psi^{-1})^dagger`.
    pub fn phi(&self) -> &CMatrix {
        &self.phi
    }

    pub fn psi_col(&self, j: usize) -> Vec<Complex64> {
        self.psi.col(j)
    }

    pub fn phi_col(&self, j: usize) -> Vec<Complex64> {
        self.phi.col(j)
    }

    /// Condition number of the eigenvector matrix.
    pub fn cond_psi(&self) -> f64 {
        self.cond_psi
    }

    /// Clustering/classification tolerance this system was built with.
    pub fn tol(&self) -> f64 {
        self.tol
    }

    /// Eigenvalue of the group owning column `j`.
    pub fn value_of_col(&self, j: usize) -> Complex64 {
        self.groups[self.group_of_col(j)].value
    }

    pub fn group_of_col(&self, j: usize) -> usize {
        self.groups
            .iter()
            .position(|g| g.cols().contains(&j))
            .expect("column outside all groups")
    }

    /// Flat eigenvalue list in column order (one entry per column).
    pub fn eigenvalues(&self) -> Vec<Complex64> {
        let mut out = Vec::with_capacity(self.dim());
        for g in &self.groups {
            for _ in 0..g.multiplicity {
                out.push(g.value);
            }
        }
        out
    }

    /// Column indices of all real-eigenvalue slots, with (group, degeneracy)
    /// labels. This is the index domain of a sign sequence.
    pub fn real_slots(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for (gi, g) in self.groups.iter().enumerate() {
            if g.label == SlotLabel::Real {
                for (a, col) in g.cols().enumerate() {
                    out.push((gi, a, col));
                }
            }
        }
        out
    }

    /// Conjugate-pair groups as (plus-group, minus-group) index pairs, each
    /// listed once.
    pub fn pair_groups(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (gi, g) in self.groups.iter().enumerate() {
            if let SlotLabel::PairPlus { partner } = g.label {
                out.push((gi, partner));
            }
        }
        out
    }

    /// For a column in a paired group, the column of the same degeneracy slot
    /// in the partner group.
    pub fn partner_col(&self, j: usize) -> Option<usize> {
        let gi = self.group_of_col(j);
        let g = &self.groups[gi];
        let partner = match g.label {
            SlotLabel::PairPlus { partner } | SlotLabel::PairMinus { partner } => partner,
            _ => return None,
        };
        let a = j - g.col_start;
        Some(self.groups[partner].col_start + a)
    }

    pub fn has_unpaired(&self) -> bool {
        self.groups.iter().any(|g| g.label == SlotLabel::Unpaired)
    }

    /// Replace the bases, keeping eigenvalues and labels. The caller must
    /// preserve biorthonormality; the residual is re-checked.
    pub(crate) fn with_bases(&self, psi: CMatrix, phi: CMatrix) -> Self {
        let mut out = self.clone();
        out.cond_psi = linalg::cond2(&psi);
        out.psi = psi;
        out.phi = phi;
        out
    }

    /// `|| phi^dagger psi - I ||_max`.
    pub fn biorthonormality_defect(&self) -> f64 {
        self.phi.adjoint().matmul(&self.psi).identity_defect()
    }

    /// `|| psi phi^dagger - I ||_max`.
    pub fn completeness_defect(&self) -> f64 {
        self.psi.matmul(&self.phi.adjoint()).identity_defect()
    }

    /// `|| sum_n E_n psi_n phi_n^dagger - H ||_max`.
    pub fn reconstruction_defect(&self) -> f64 {
        let n = self.dim();
        let mut acc = CMatrix::zeros(n, n);
        for g in &self.groups {
            for jcol in g.cols() {
                acc.add_outer(g.value, &self.psi.col(jcol), &self.phi.col(jcol));
            }
        }
        acc.sub(&self.h).max_norm()
    }
}

/// Condition-number gate for the eigenvector matrix: `1 / (100 eps)`.
fn diagonalizability_limit() -> f64 {
    1.0 / (100.0 * f64::EPSILON)
}

/// Eigen-decompose `h` into a complete biorthonormal system.
///
/// Eigenvalues closer than `tol * max(1, ||h||_max)` are merged into one
/// degenerate group. Groups are ordered by (Re, Im) ascending; each nonreal
/// group is matched to a conjugate partner of equal multiplicity when one
/// exists.
pub fn eig_biorthonormal(h: &CMatrix, tol: f64) -> Result<BiorthonormalSystem> {
    let n = h.require_square()?;
    if !h.all_finite() {
        return Err(Error::PreconditionUnmet(
            "matrix has non-finite entries".into(),
        ));
    }
    let scale = h.max_norm().max(1.0);
    let cluster_tol = tol * scale;

    let (values, mut vectors) = linalg::eig(h)?;

    // Deterministic slot order: ascending (Re, Im).
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        values[a]
            .re
            .total_cmp(&values[b].re)
            .then(values[a].im.total_cmp(&values[b].im))
    });
    let sorted_values: Vec<Complex64> = order.iter().map(|&k| values[k]).collect();
    let permuted = CMatrix::from_fn(n, n, |i, j| vectors[(i, order[j])]);
    vectors = permuted;
    linalg::fix_column_phases(&mut vectors);

    let cond = linalg::cond2(&vectors);
    if cond.is_nan() || cond > diagonalizability_limit() {
        return Err(Error::NotDiagonalizable { cond });
    }

    // Cluster adjacent eigenvalues into degenerate groups.
    let mut groups: Vec<EigenGroup> = Vec::new();
    let mut start = 0usize;
    while start < n {
        let mut end = start + 1;
        while end < n && (sorted_values[end] - sorted_values[end - 1]).norm() <= cluster_tol {
            end += 1;
        }
        let mean = sorted_values[start..end].iter().sum::<Complex64>() / (end - start) as f64;
        groups.push(EigenGroup {
            value: mean,
            col_start: start,
            multiplicity: end - start,
            label: SlotLabel::Unpaired,
            gap: f64::INFINITY,
        });
        start = end;
    }

    // Record inter-group gaps.
    for i in 0..groups.len() {
        let mut gap = f64::INFINITY;
        for j in 0..groups.len() {
            if i != j {
                gap = gap.min((groups[i].value - groups[j].value).norm());
            }
        }
        groups[i].gap = gap;
    }

    // Label real slots and match conjugate pairs.
    let class_tol = cluster_tol;
    let values_snapshot: Vec<Complex64> = groups.iter().map(|g| g.value).collect();
    let mults: Vec<usize> = groups.iter().map(|g| g.multiplicity).collect();
    for i in 0..groups.len() {
        if values_snapshot[i].im.abs() <= class_tol {
            groups[i].label = SlotLabel::Real;
        }
    }
    for i in 0..groups.len() {
        if groups[i].label != SlotLabel::Unpaired || values_snapshot[i].im <= 0.0 {
            continue;
        }
        // Greedy nearest-conjugate match among unclaimed Im<0 groups.
        let target = values_snapshot[i].conj();
        let mut best: Option<(usize, f64)> = None;
        for j in 0..groups.len() {
            if groups[j].label != SlotLabel::Unpaired || values_snapshot[j].im >= 0.0 {
                continue;
            }
            let dist = (values_snapshot[j] - target).norm();
            if dist <= class_tol && mults[j] == mults[i] && best.is_none_or(|(_, d)| dist < d) {
                best = Some((j, dist));
            }
        }
        if let Some((j, _)) = best {
            groups[i].label = SlotLabel::PairPlus { partner: j };
            groups[j].label = SlotLabel::PairMinus { partner: i };
        }
    }

    // Duals: phi = (psi^{-1})^dagger, so that phi^dagger psi = I exactly up
    // to solve rounding.
    let psi_inv = linalg::inverse(&vectors)?;
    let phi = psi_inv.adjoint();

    Ok(BiorthonormalSystem {
        h: h.clone(),
        groups,
        psi: vectors,
        phi,
        cond_psi: cond,
        tol,
    })
}

/// Summarize the slot labels of a system into a spectral class.
pub fn classify_spectrum(sys: &BiorthonormalSystem, tol: f64) -> SpectralClass {
    let scale = sys.hamiltonian().max_norm().max(1.0);
    let mut any_pair = false;
    for g in sys.groups() {
        match g.label {
            SlotLabel::Real => {}
            SlotLabel::Unpaired => {
                return SpectralClass::Unpaired { witness: g.value };
            }
            _ => {
                // A matched pair may still be "real" under a looser tolerance
                // than the one the system was built with.
                if g.value.im.abs() > tol * scale {
                    any_pair = true;
                }
            }
        }
    }
    if any_pair {
        SpectralClass::ConjugatePaired
    } else {
        SpectralClass::Real
    }
}
