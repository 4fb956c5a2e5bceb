use nalgebra::{DMatrix, SymmetricEigen};

use crate::{Error, Result};

const MAX_SWEEPS: usize = 100_000;

pub(crate) fn symmetrize(m: &DMatrix<f64>) -> DMatrix<f64> {
    (m + m.transpose()) * 0.5
}

pub(crate) fn eigen(m: DMatrix<f64>) -> Result<SymmetricEigen<f64, nalgebra::Dyn>> {
    SymmetricEigen::try_new(m, f64::EPSILON, MAX_SWEEPS)
        .ok_or_else(|| Error::Numerical("symmetric eigendecomposition did not converge".into()))
}

/// Factor `P` with `P P^T` the PSD part of symmetric `m`.
pub(crate) fn psd_factor(m: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let eig = eigen(symmetrize(m))?;
    let keep: Vec<usize> = (0..eig.eigenvalues.len()).filter(|&i| eig.eigenvalues[i] > 0.0).collect();
    let mut p = DMatrix::zeros(m.nrows(), keep.len());
    for (col, &i) in keep.iter().enumerate() {
        p.set_column(col, &(eig.eigenvectors.column(i) * eig.eigenvalues[i].sqrt()));
    }
    Ok(p)
}

/// Nearest positive semidefinite matrix in Frobenius norm, by clamping the
/// negative eigenvalues of the symmetric part to zero.
pub fn project_psd(m: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    if m.nrows() != m.ncols() {
        return Err(Error::invalid(format!("project_psd needs a square matrix, got {}x{}", m.nrows(), m.ncols())));
    }
    let p = psd_factor(m)?;
    Ok(&p * p.transpose())
}

/// Smallest eigenvalue of symmetric `s` and a bound on its error, from the
/// residual of the computed decomposition and the loss of orthogonality.
pub(crate) fn min_eigenvalue_with_error(s: &DMatrix<f64>) -> Result<(f64, f64)> {
    let s = symmetrize(s);
    let n = s.nrows();
    if n == 0 {
        return Ok((0.0, 0.0));
    }
    let eig = eigen(s.clone())?;
    let q = &eig.eigenvectors;
    let residual = (&s * q - q * DMatrix::from_diagonal(&eig.eigenvalues)).norm();
    let orth = (q.transpose() * q - DMatrix::identity(n, n)).norm();
    let err = residual + s.norm() * orth;
    Ok((eig.eigenvalues.min(), err))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clamps_negative_eigenvalue() {
        let m = DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1.0]);
        let p = project_psd(&m).unwrap();
        assert!((p - DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, 0.0])).amax() < 1e-15);
    }

    #[test]
    fn psd_input_is_unchanged() {
        let b = DMatrix::from_row_slice(3, 3, &[1.0, 2.0, 0.0, 0.5, -1.0, 1.0, 0.0, 3.0, 1.0]);
        let m = &b * b.transpose();
        assert!((project_psd(&m).unwrap() - &m).amax() < 1e-12);
    }

    #[test]
    fn rejects_rectangular_input() {
        assert!(project_psd(&DMatrix::zeros(2, 3)).is_err());
    }
}
