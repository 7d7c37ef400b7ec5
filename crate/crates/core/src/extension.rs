//! Extension of a bounded bijection on a subspace `V` to the whole space.
//!
//! `Phi~(x1 + x2) = Phi(x1) + ||Phi^{-1}||^{-1} x2` for `x1 in V`, `x2 in V^perp`,
//! with inverse `Phi~^{-1}(x1 + x2) = Phi^{-1}(x1) + ||Phi^{-1}|| x2`. Norms of the
//! operator and its inverse are preserved, and self-adjointness carries over.

use crate::error::{Error, Result};
use crate::frames::{frame_operator, VectorSeq};
use crate::linalg::{inverse, psd_sqrt, svd, Matrix, Scalar, Tolerances};

/// A bijection `Phi: V -> V`, given in coordinates of an orthonormal basis of `V`.
#[derive(Clone, Debug)]
pub struct SubspaceOperator {
    /// `n x k`, orthonormal columns spanning `V`.
    basis: Matrix,
    /// `k x k` matrix of `Phi` in `basis` coordinates.
    action: Matrix,
    action_inverse: Matrix,
    /// `||Phi^{-1}||^{-1}`, the smallest singular value of `action`.
    complement_scale: f64,
}

impl SubspaceOperator {
    pub fn new(basis: Matrix, action: Matrix, tol: &Tolerances) -> Result<Self> {
        let k = basis.cols();
        if k == 0 || k > basis.rows() {
            return Err(Error::SingularAction);
        }
        if action.rows() != k || action.cols() != k {
            return Err(Error::DimensionMismatch {
                expected: k,
                found: action.rows().max(action.cols()),
            });
        }
        basis.ensure_finite()?;
        action.ensure_finite()?;
        let defect = (&basis.adjoint() * &basis).identity_defect();
        if !(defect <= tol.cert_rel) {
            return Err(Error::NotOrthonormal { defect });
        }
        let s = svd(&action)?;
        let low = *s.singulars.last().expect("k >= 1");
        let action_inverse = inverse(&action, tol)?.ok_or(Error::SingularAction)?;
        Ok(Self {
            basis,
            action,
            action_inverse,
            complement_scale: low,
        })
    }

    /// Restricts an operator on `C^n` that leaves `V = span(basis)` invariant.
    pub fn restrict(op: &Matrix, basis: Matrix, tol: &Tolerances) -> Result<Self> {
        let action = &(&basis.adjoint() * op) * &basis;
        Self::new(basis, action, tol)
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn subspace_dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn action(&self) -> &Matrix {
        &self.action
    }

    pub fn complement_scale(&self) -> f64 {
        self.complement_scale
    }

    /// `W M W* + scale (I - W W*)`; the complement term is dropped when `V` is
    /// the whole space.
    fn lift(&self, m: &Matrix, scale: f64) -> Matrix {
        let w = &self.basis;
        let core = &(w * m) * &w.adjoint();
        if self.subspace_dim() == self.ambient_dim() {
            return core;
        }
        let n = self.ambient_dim();
        let proj = w * &w.adjoint();
        let complement = (&Matrix::identity(n) - &proj).scale(Scalar::new(scale, 0.0));
        &core + &complement
    }
}

pub fn extend_operator(phi: &SubspaceOperator) -> Matrix {
    phi.lift(&phi.action, phi.complement_scale)
}

pub fn extended_inverse(phi: &SubspaceOperator) -> Matrix {
    phi.lift(&phi.action_inverse, 1.0 / phi.complement_scale)
}

/// `S^{1/2}` of a sequence, restricted to the span of the sequence.
///
/// The span basis comes from the left singular vectors above the rank
/// threshold. Extending the result gives the positive definite `S~^{1/2}`.
pub fn frame_sqrt_on_span(s: &VectorSeq, tol: &Tolerances) -> Result<SubspaceOperator> {
    let sv = svd(s.synthesis())?;
    let r = sv.rank(tol);
    if r == 0 {
        return Err(Error::ZeroSequence);
    }
    let idx: Vec<usize> = (0..r).collect();
    let basis = sv.left.select_columns(&idx);
    let root = psd_sqrt(&frame_operator(s), tol)?;
    let mut phi = SubspaceOperator::restrict(&root, basis, tol)?;
    phi.action = phi.action.hermitian_part();
    phi.action_inverse = phi.action_inverse.hermitian_part();
    Ok(phi)
}
