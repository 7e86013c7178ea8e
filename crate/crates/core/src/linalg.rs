//! Dense complex matrices and the numerical kernels the rest of the toolkit
//! builds on.
//!
//! The matrix type is a plain row-major buffer with the handful of operations
//! the operator constructions need (products, adjoints, outer products, max
//! norms). Eigendecompositions, singular value decompositions and linear
//! solves are delegated to `faer`; everything else is written out directly so
//! the operator algebra stays readable.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Dense square-or-rectangular complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

pub type CVector = Vec<Complex64>;

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Build from nested rows; panics on ragged input. Test/CLI convenience.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged row {i}");
            for (j, v) in row.iter().enumerate() {
                m[(i, j)] = *v;
            }
        }
        m
    }

    /// Real-entry convenience constructor.
    pub fn from_real_rows(rows: &[Vec<f64>]) -> Self {
        let conv: Vec<Vec<Complex64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&conv)
    }

    pub fn diag(values: &[Complex64]) -> Self {
        let n = values.len();
        let mut m = Self::zeros(n, n);
        for (i, v) in values.iter().enumerate() {
            m[(i, i)] = *v;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Side length of a square matrix; panics if not square.
    pub fn dim(&self) -> usize {
        assert!(self.is_square(), "dim() on non-square matrix");
        self.rows
    }

    pub fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    pub fn col(&self, j: usize) -> CVector {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn set_col(&mut self, j: usize, v: &[Complex64]) {
        assert_eq!(v.len(), self.rows);
        for i in 0..self.rows {
            self[(i, j)] = v[i];
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn conj(&self) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| self[(i, j)].conj())
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, a: Complex64) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| a * self[(i, j)])
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |i, j| self[(i, j)] + other[(i, j)])
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |i, j| self[(i, j)] - other[(i, j)])
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matmul shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn matvec(&self, x: &[Complex64]) -> CVector {
        assert_eq!(self.cols, x.len(), "matvec shape mismatch");
        let mut out = vec![Complex64::new(0.0, 0.0); self.rows];
        for i in 0..self.rows {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..self.cols {
                acc += self[(i, j)] * x[j];
            }
            out[i] = acc;
        }
        out
    }

    /// Largest entry modulus.
    pub fn max_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn all_finite(&self) -> bool {
        self.data
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// `|| M - M^dagger ||_max`.
    pub fn hermitian_defect(&self) -> f64 {
        self.sub(&self.adjoint()).max_norm()
    }

    /// `|| M - M^T ||_max`.
    pub fn symmetric_defect(&self) -> f64 {
        self.sub(&self.transpose()).max_norm()
    }

    /// Rank-one update `self += alpha * x * y^dagger`.
    pub fn add_outer(&mut self, alpha: Complex64, x: &[Complex64], y: &[Complex64]) {
        assert_eq!(x.len(), self.rows);
        assert_eq!(y.len(), self.cols);
        for i in 0..self.rows {
            let xi = alpha * x[i];
            for j in 0..self.cols {
                self[(i, j)] += xi * y[j].conj();
            }
        }
    }

    /// Rank-one update `self += alpha * x * y^T` (no conjugation).
    pub fn add_outer_t(&mut self, alpha: Complex64, x: &[Complex64], y: &[Complex64]) {
        assert_eq!(x.len(), self.rows);
        assert_eq!(y.len(), self.cols);
        for i in 0..self.rows {
            let xi = alpha * x[i];
            for j in 0..self.cols {
                self[(i, j)] += xi * y[j];
            }
        }
    }

    /// `|| self - I ||_max`.
    pub fn identity_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.rows {
            for j in 0..self.cols {
                let expect = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((self[(i, j)] - Complex64::new(expect, 0.0)).norm());
            }
        }
        worst
    }
}

impl std::ops::Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

/// `sum_i conj(x_i) y_i`, the Hilbert-space inner product.
pub fn inner(x: &[Complex64], y: &[Complex64]) -> Complex64 {
    assert_eq!(x.len(), y.len());
    x.iter().zip(y).map(|(a, b)| a.conj() * b).sum()
}

/// `sum_i x_i y_i`, the bilinear (transpose) pairing.
pub fn bilinear(x: &[Complex64], y: &[Complex64]) -> Complex64 {
    assert_eq!(x.len(), y.len());
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

pub fn vec_norm(x: &[Complex64]) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn vec_sub(x: &[Complex64], y: &[Complex64]) -> CVector {
    x.iter().zip(y).map(|(a, b)| a - b).collect()
}

pub fn vec_scale(a: Complex64, x: &[Complex64]) -> CVector {
    x.iter().map(|v| a * v).collect()
}

pub fn vec_conj(x: &[Complex64]) -> CVector {
    x.iter().map(|v| v.conj()).collect()
}

// ---------------------------------------------------------------------------
// faer-backed kernels
// ---------------------------------------------------------------------------

fn to_faer(m: &CMatrix) -> faer::Mat<faer::c64> {
    faer::Mat::from_fn(m.rows(), m.cols(), |i, j| {
        faer::c64::new(m[(i, j)].re, m[(i, j)].im)
    })
}

fn from_faer(m: faer::MatRef<'_, faer::c64>) -> CMatrix {
    CMatrix::from_fn(m.nrows(), m.ncols(), |i, j| {
        Complex64::new(m[(i, j)].re, m[(i, j)].im)
    })
}

/// Eigenvalues and right eigenvectors of a general complex square matrix.
/// Columns of the returned matrix are unit-norm eigenvectors in the order of
/// the returned values. No ordering or phase convention is applied here.
pub fn eig(m: &CMatrix) -> Result<(Vec<Complex64>, CMatrix)> {
    let n = m.require_square()?;
    let evd = to_faer(m).eigen().map_err(|_| Error::NotDiagonalizable {
        cond: f64::INFINITY,
    })?;
    let s = evd.S();
    let u = evd.U();
    let values: Vec<Complex64> = (0..n).map(|k| Complex64::new(s[k].re, s[k].im)).collect();
    let mut vectors = from_faer(u);
    for k in 0..n {
        let col = vectors.col(k);
        let nrm = vec_norm(&col);
        if nrm > 0.0 {
            let scaled = vec_scale(Complex64::new(1.0 / nrm, 0.0), &col);
            vectors.set_col(k, &scaled);
        }
    }
    Ok((values, vectors))
}

/// Eigendecomposition of a Hermitian matrix: ascending real eigenvalues and
/// orthonormal eigenvector columns.
pub fn self_adjoint_eig(m: &CMatrix) -> Result<(Vec<f64>, CMatrix)> {
    let n = m.require_square()?;
    let evd = to_faer(m)
        .self_adjoint_eigen(faer::Side::Lower)
        .map_err(|_| Error::NotDiagonalizable {
            cond: f64::INFINITY,
        })?;
    let s = evd.S();
    let mut pairs: Vec<(f64, usize)> = (0..n).map(|k| (s[k].re, k)).collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    let u = from_faer(evd.U());
    let values: Vec<f64> = pairs.iter().map(|p| p.0).collect();
    let vectors = CMatrix::from_fn(n, n, |i, j| u[(i, pairs[j].1)]);
    Ok((values, vectors))
}

/// Thin SVD `m = U diag(s) V^dagger`, singular values descending.
pub fn svd(m: &CMatrix) -> Result<(CMatrix, Vec<f64>, CMatrix)> {
    let svd = to_faer(m)
        .svd()
        .map_err(|_| Error::NotInvertible { sigma_min: 0.0 })?;
    let k = m.rows().min(m.cols());
    let s: Vec<f64> = (0..k).map(|i| svd.S().column_vector()[i].re).collect();
    Ok((from_faer(svd.U()), s, from_faer(svd.V())))
}

pub fn singular_values(m: &CMatrix) -> Vec<f64> {
    to_faer(m)
        .singular_values()
        .expect("singular value computation failed")
}

/// Two-norm condition number; `inf` when the matrix is numerically singular.
pub fn cond2(m: &CMatrix) -> f64 {
    let s = singular_values(m);
    match (s.first(), s.last()) {
        (Some(&max), Some(&min)) if min > 0.0 => max / min,
        _ => f64::INFINITY,
    }
}

/// Solve `A X = B` by partial-pivot LU.
pub fn solve(a: &CMatrix, b: &CMatrix) -> Result<CMatrix> {
    a.require_square()?;
    if a.rows() != b.rows() {
        return Err(Error::ShapeMismatch {
            left: format!("{}x{}", a.rows(), a.cols()),
            right: format!("{}x{}", b.rows(), b.cols()),
        });
    }
    use faer::prelude::Solve;
    let lu = to_faer(a).partial_piv_lu();
    let x = lu.solve(to_faer(b).as_ref());
    let x = from_faer(x.as_ref());
    if !x.all_finite() {
        return Err(Error::NotInvertible { sigma_min: 0.0 });
    }
    Ok(x)
}

pub fn inverse(a: &CMatrix) -> Result<CMatrix> {
    let n = a.require_square()?;
    solve(a, &CMatrix::identity(n))
}

/// Takagi factorization of a complex symmetric matrix:
/// `m = U diag(s) U^T` with unitary `U` and nonnegative `s` (descending).
///
/// Computed from the SVD `m = W diag(s) V^dagger`: on each group of equal
/// singular values the unitary `B = W^dagger conj(V)` is symmetric, and
/// `U = W B^{1/2}` (principal square root) restores symmetry of the factors.
pub fn takagi(m: &CMatrix) -> Result<(Vec<f64>, CMatrix)> {
    let n = m.require_square()?;
    let sym_defect = m.symmetric_defect();
    let scale = m.max_norm().max(1.0);
    if sym_defect > 1e-10 * scale {
        return Err(Error::BlockNotSymmetric {
            group: 0,
            residual: sym_defect,
        });
    }
    if n == 0 {
        return Ok((vec![], CMatrix::zeros(0, 0)));
    }
    let (w, s, v) = svd(m)?;
    let sigma_max = s.first().copied().unwrap_or(0.0);
    let group_tol = (n as f64) * 1e-14 * sigma_max.max(1.0);

    let mut u = CMatrix::zeros(n, n);
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && (s[start] - s[end]).abs() <= group_tol {
            end += 1;
        }
        let d = end - start;
        // B = W_g^dagger conj(V_g), unitary and symmetric on the group.
        let wg = CMatrix::from_fn(n, d, |i, j| w[(i, start + j)]);
        let vg = CMatrix::from_fn(n, d, |i, j| v[(i, start + j)]);
        let b = wg.adjoint().matmul(&vg.conj());
        let r = if s[start] <= group_tol {
            // Null-space block: factors are free, keep W as-is.
            CMatrix::identity(d)
        } else {
            principal_sqrt_unitary(&b)?
        };
        let ug = wg.matmul(&r);
        for j in 0..d {
            for i in 0..n {
                u[(i, start + j)] = ug[(i, j)];
            }
        }
        start = end;
    }
    // Column signs are free in U diag(s) U^T; pin them so the leading entry
    // of each column points into the right half plane (ties toward +i).
    for j in 0..n {
        let col = u.col(j);
        let mut best = 0usize;
        let mut best_norm = -1.0f64;
        for (i, z) in col.iter().enumerate() {
            if z.norm() > best_norm + 1e-12 * best_norm.max(0.0) {
                best_norm = z.norm();
                best = i;
            }
        }
        let z = col[best];
        let tiny = 1e-12 * z.norm();
        if z.re < -tiny || (z.re.abs() <= tiny && z.im < 0.0) {
            let flipped = vec_scale(Complex64::new(-1.0, 0.0), &col);
            u.set_col(j, &flipped);
        }
    }
    Ok((s, u))
}

/// Principal square root of a (small) unitary matrix via its spectral
/// decomposition. Eigenvalue arguments are taken in (-pi, pi], so the root of
/// -1 is +i.
fn principal_sqrt_unitary(b: &CMatrix) -> Result<CMatrix> {
    let d = b.dim();
    if d == 1 {
        let z = b[(0, 0)];
        let half = Complex64::from_polar(z.norm().sqrt(), 0.5 * z.arg());
        return Ok(CMatrix::from_rows(&[vec![half]]));
    }
    let (vals, q) = eig(b)?;
    let roots: Vec<Complex64> = vals
        .iter()
        .map(|z| Complex64::from_polar(z.norm().sqrt(), 0.5 * z.arg()))
        .collect();
    let qi = inverse(&q)?;
    Ok(q.matmul(&CMatrix::diag(&roots)).matmul(&qi))
}

/// Deterministic phase convention: rotate each column so its largest-modulus
/// entry (lowest index on ties) is real and positive.
pub fn fix_column_phases(m: &mut CMatrix) {
    for j in 0..m.cols() {
        let col = m.col(j);
        let mut best = 0usize;
        let mut best_norm = -1.0f64;
        for (i, z) in col.iter().enumerate() {
            let nn = z.norm();
            if nn > best_norm + 1e-15 * best_norm.abs().max(1.0) {
                best_norm = nn;
                best = i;
            }
        }
        let z = col[best];
        if z.norm() > 0.0 {
            let rot = z.conj() / z.norm();
            let fixed = vec_scale(rot, &col);
            m.set_col(j, &fixed);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn matmul_and_adjoint() {
        let a = CMatrix::from_rows(&[
            vec![c(1.0, 1.0), c(0.0, 2.0)],
            vec![c(3.0, 0.0), c(1.0, -1.0)],
        ]);
        let id = CMatrix::identity(2);
        assert_eq!(a.matmul(&id), a);
        let aa = a.adjoint().adjoint();
        assert_eq!(aa, a);
    }

    #[test]
    fn eig_of_diagonal_is_exact() {
        let h = CMatrix::diag(&[c(1.0, 0.0), c(2.0, 0.0)]);
        let (vals, vecs) = eig(&h).unwrap();
        let mut re: Vec<f64> = vals.iter().map(|z| z.re).collect();
        re.sort_by(f64::total_cmp);
        assert!((re[0] - 1.0).abs() < 1e-14);
        assert!((re[1] - 2.0).abs() < 1e-14);
        // eigenvector residual
        for k in 0..2 {
            let v = vecs.col(k);
            let hv = h.matvec(&v);
            let ev = vec_scale(vals[k], &v);
            assert!(vec_norm(&vec_sub(&hv, &ev)) < 1e-13);
        }
    }

    #[test]
    fn solve_roundtrip() {
        let a = CMatrix::from_rows(&[
            vec![c(2.0, 1.0), c(0.0, 1.0)],
            vec![c(1.0, 0.0), c(3.0, -1.0)],
        ]);
        let x = inverse(&a).unwrap();
        assert!(a.matmul(&x).identity_defect() < 1e-13);
    }

    #[test]
    fn takagi_reconstructs_symmetric_input() {
        let x = CMatrix::from_rows(&[
            vec![c(0.3, -1.2), c(2.0, 0.5)],
            vec![c(2.0, 0.5), c(-0.7, 0.9)],
        ]);
        let (s, u) = takagi(&x).unwrap();
        let recon = u
            .matmul(&CMatrix::diag(
                &s.iter().map(|&v| c(v, 0.0)).collect::<Vec<_>>(),
            ))
            .matmul(&u.transpose());
        assert!(recon.sub(&x).max_norm() < 1e-13 * x.max_norm().max(1.0));
        assert!(u.adjoint().matmul(&u).identity_defect() < 1e-13);
    }

    #[test]
    fn takagi_of_negative_one_uses_upper_branch() {
        let x = CMatrix::from_rows(&[vec![c(-1.0, 0.0)]]);
        let (s, u) = takagi(&x).unwrap();
        assert!((s[0] - 1.0).abs() < 1e-15);
        // principal root of -1 is +i
        assert!((u[(0, 0)] - c(0.0, 1.0)).norm() < 1e-14);
    }

    #[test]
    fn takagi_rejects_unsymmetric() {
        let x = CMatrix::from_rows(&[
            vec![c(0.0, 0.0), c(1.0, 0.0)],
            vec![c(0.0, 0.0), c(0.0, 0.0)],
        ]);
        assert!(matches!(takagi(&x), Err(Error::BlockNotSymmetric { .. })));
    }

    #[test]
    fn takagi_handles_degenerate_singular_values() {
        // -I has both singular values equal to 1.
        let x = CMatrix::diag(&[c(-1.0, 0.0), c(-1.0, 0.0)]);
        let (s, u) = takagi(&x).unwrap();
        assert!((s[0] - 1.0).abs() < 1e-14 && (s[1] - 1.0).abs() < 1e-14);
        let recon = u.matmul(&u.transpose());
        assert!(recon.sub(&x).max_norm() < 1e-13);
    }

    #[test]
    fn cond2_of_identity_is_one() {
        let id = CMatrix::identity(4);
        assert!((cond2(&id) - 1.0).abs() < 1e-12);
    }
}
