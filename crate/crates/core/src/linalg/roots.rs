use super::jacobi::{hermitian_eig, svd, EigenDecomposition};
use super::matrix::{Matrix, Scalar};
use super::Tolerances;
use crate::error::{Error, Result};

/// `V diag(f(lambda)) V*`, symmetrised so the result is exactly Hermitian.
pub fn hermitian_function(eig: &EigenDecomposition, f: impl Fn(f64) -> f64) -> Matrix {
    let v = &eig.vectors;
    let scaled = Matrix::from_fn(v.rows(), v.cols(), |i, j| v[(i, j)] * f(eig.eigenvalues[j]));
    (&scaled * &v.adjoint()).hermitian_part()
}

fn psd_eig(a: &Matrix, tol: &Tolerances) -> Result<EigenDecomposition> {
    let eig = hermitian_eig(a)?;
    let spread = eig
        .eigenvalues
        .iter()
        .fold(0.0f64, |acc, l| acc.max(l.abs()));
    if let Some(&lowest) = eig.eigenvalues.first() {
        if lowest < -tol.rank_rel * spread {
            return Err(Error::NotPsd { eigenvalue: lowest });
        }
    }
    Ok(eig)
}

/// Positive square root of a positive semidefinite matrix.
///
/// Slightly negative eigenvalues (above `-rank_rel * ||a||`) are clamped to 0.
pub fn psd_sqrt(a: &Matrix, tol: &Tolerances) -> Result<Matrix> {
    let eig = psd_eig(a, tol)?;
    Ok(hermitian_function(&eig, |l| l.max(0.0).sqrt()))
}

/// Pseudo-inverse square root: `lambda^{-1/2}` on eigenvalues above
/// `rank_rel * lambda_max`, zero on the rest.
pub fn psd_pinv_sqrt(a: &Matrix, tol: &Tolerances) -> Result<Matrix> {
    let eig = psd_eig(a, tol)?;
    let top = eig.eigenvalues.last().copied().unwrap_or(0.0);
    let cut = tol.rank_rel * top;
    Ok(hermitian_function(&eig, |l| {
        if top > 0.0 && l > cut {
            1.0 / l.sqrt()
        } else {
            0.0
        }
    }))
}

/// Spectral norm.
pub fn op_norm(a: &Matrix) -> Result<f64> {
    Ok(svd(a)?.singulars.first().copied().unwrap_or(0.0))
}

pub fn min_singular_value(a: &Matrix) -> Result<f64> {
    Ok(svd(a)?.singulars.last().copied().unwrap_or(0.0))
}

/// Inverse via SVD. `None` when the smallest singular value is at or below
/// `rank_rel * s_max`.
pub fn inverse(a: &Matrix, tol: &Tolerances) -> Result<Option<Matrix>> {
    let s = svd(a)?;
    let top = s.singulars.first().copied().unwrap_or(0.0);
    let low = s.singulars.last().copied().unwrap_or(0.0);
    if top <= 0.0 || low <= tol.rank_rel * top {
        return Ok(None);
    }
    let scaled = Matrix::from_fn(s.right.rows(), s.right.cols(), |i, j| {
        s.right[(i, j)] / Scalar::new(s.singulars[j], 0.0)
    });
    Ok(Some(&scaled * &s.left.adjoint()))
}
