//! Small dense helpers for symmetric positive (semi)definite matrices.

use nalgebra::{DMatrix, DVector, SymmetricEigen};

/// Relative eigenvalue floor below which an information matrix is treated as singular.
pub const SINGULAR_RATIO: f64 = 1e-12;

/// Absolute eigenvalue floor for the log-determinant fallback path.
pub const LOGDET_FLOOR: f64 = 1e-300;

/// `log det(m)` for a symmetric positive definite matrix.
///
/// Tries Cholesky first and falls back to the symmetric eigendecomposition,
/// rejecting any eigenvalue at or below [`LOGDET_FLOOR`].
pub fn log_det_spd(m: &DMatrix<f64>) -> Option<f64> {
    if m.is_empty() {
        return Some(0.0);
    }
    if let Some(chol) = m.clone().cholesky() {
        let l = chol.l_dirty();
        let ld: f64 = (0..m.nrows()).map(|i| l[(i, i)].ln()).sum::<f64>() * 2.0;
        if ld.is_finite() {
            return Some(ld);
        }
    }
    let eig = SymmetricEigen::new(m.clone());
    if eig.eigenvalues.iter().any(|&e| !(e > LOGDET_FLOOR)) {
        return None;
    }
    Some(eig.eigenvalues.iter().map(|e| e.ln()).sum())
}

/// True when `min eigenvalue < SINGULAR_RATIO * max eigenvalue`.
pub fn is_numerically_singular(m: &DMatrix<f64>) -> bool {
    if m.iter().any(|v| !v.is_finite()) {
        return true;
    }
    let eig = SymmetricEigen::new(m.clone());
    let max = eig.eigenvalues.max();
    let min = eig.eigenvalues.min();
    !(max > 0.0) || min < SINGULAR_RATIO * max
}

/// Solves `m x = v` for symmetric positive definite `m`.
pub fn solve_spd(m: &DMatrix<f64>, v: &DVector<f64>) -> Option<DVector<f64>> {
    match m.clone().cholesky() {
        Some(chol) => Some(chol.solve(v)),
        None => m.clone().lu().solve(v),
    }
}

pub fn inverse_spd(m: &DMatrix<f64>) -> Option<DMatrix<f64>> {
    match m.clone().cholesky() {
        Some(chol) => Some(chol.inverse()),
        None => m.clone().try_inverse(),
    }
}

/// Extracts the principal submatrix on `idx`.
pub fn principal_submatrix(m: &DMatrix<f64>, idx: &[usize]) -> DMatrix<f64> {
    DMatrix::from_fn(idx.len(), idx.len(), |i, j| m[(idx[i], idx[j])])
}

/// Symmetrizes in place by averaging with the transpose.
pub fn symmetrize(m: &mut DMatrix<f64>) {
    let n = m.nrows();
    for i in 0..n {
        for j in (i + 1)..n {
            let avg = 0.5 * (m[(i, j)] + m[(j, i)]);
            m[(i, j)] = avg;
            m[(j, i)] = avg;
        }
    }
}
