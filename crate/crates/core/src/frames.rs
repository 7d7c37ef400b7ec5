//! Frames, frame sequences and Riesz sequences in the square model.
//!
//! A [`VectorSeq`] holds exactly `n` vectors of `C^n`. Its column matrix `T`
//! is the synthesis operator, `S = T T*` the frame operator and `T* T` the
//! Gram matrix. The optimal frame bounds on the span and the optimal Riesz
//! bounds of an independent sequence both equal the extreme nonzero
//! eigenvalues of `S`, so one [`FrameBounds`] serves both roles.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{psd_pinv_sqrt, svd, Matrix, Scalar, Tolerances};

/// `n` vectors in `C^n`, stored as columns.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorSeq {
    vectors: Matrix,
}

impl VectorSeq {
    pub fn new(vectors: Matrix) -> Result<Self> {
        let n = vectors.ensure_square()?;
        if n == 0 {
            return Err(Error::DimensionMismatch {
                expected: 1,
                found: 0,
            });
        }
        vectors.ensure_finite()?;
        Ok(Self { vectors })
    }

    pub fn from_vectors<V: AsRef<[Scalar]>>(vectors: &[V]) -> Result<Self> {
        let n = vectors.len();
        for v in vectors {
            if v.as_ref().len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: v.as_ref().len(),
                });
            }
        }
        Self::new(Matrix::from_columns(n, vectors))
    }

    pub fn standard_basis(n: usize) -> Self {
        Self {
            vectors: Matrix::identity(n),
        }
    }

    pub fn dim(&self) -> usize {
        self.vectors.rows()
    }

    pub fn vector(&self, i: usize) -> &[Scalar] {
        self.vectors.column(i)
    }

    /// Synthesis operator `T`, column `i` = `f_i`.
    pub fn synthesis(&self) -> &Matrix {
        &self.vectors
    }

    pub fn into_matrix(self) -> Matrix {
        self.vectors
    }

    pub(crate) fn ensure_same_dim(&self, other: &VectorSeq) -> Result<()> {
        if self.dim() == other.dim() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            })
        }
    }
}

/// A [`VectorSeq`] whose Gram matrix is the identity within `cert_rel`.
#[derive(Clone, Debug, PartialEq)]
pub struct OrthonormalBasis {
    base: VectorSeq,
}

impl OrthonormalBasis {
    pub fn new(base: VectorSeq, tol: &Tolerances) -> Result<Self> {
        let defect = gram(&base).identity_defect();
        if !(defect <= tol.cert_rel) {
            return Err(Error::NotOrthonormal { defect });
        }
        Ok(Self { base })
    }

    pub fn from_matrix(m: Matrix, tol: &Tolerances) -> Result<Self> {
        Self::new(VectorSeq::new(m)?, tol)
    }

    pub fn standard(n: usize) -> Self {
        Self {
            base: VectorSeq::standard_basis(n),
        }
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    pub fn as_seq(&self) -> &VectorSeq {
        &self.base
    }

    /// Unitary whose columns are the basis vectors.
    pub fn matrix(&self) -> &Matrix {
        self.base.synthesis()
    }

    /// Re-indexes so that element `k` becomes element `0`.
    pub fn rotated(&self, k: usize) -> Self {
        let n = self.dim();
        let idx: Vec<usize> = (0..n).map(|i| (i + k) % n).collect();
        Self {
            base: VectorSeq {
                vectors: self.matrix().select_columns(&idx),
            },
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrameBounds {
    pub lower: f64,
    pub upper: f64,
}

impl FrameBounds {
    /// Both bounds agree relative to the larger one, at `cert_rel`.
    pub fn matches(&self, other: &FrameBounds, tol: &Tolerances) -> bool {
        tol.close(self.lower, other.lower) && tol.close(self.upper, other.upper)
    }

    pub fn as_pair(&self) -> (f64, f64) {
        (self.lower, self.upper)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SequenceKind {
    /// Full rank: a frame for the whole space and a Riesz basis.
    RieszBasis,
    /// A frame for a proper subspace.
    ProperFrameSequence,
    ZeroSequence,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Classification {
    pub rank: usize,
    pub kind: SequenceKind,
    pub bounds: Option<FrameBounds>,
}

/// `S = T T* = sum_i f_i f_i*`.
pub fn frame_operator(s: &VectorSeq) -> Matrix {
    let t = s.synthesis();
    t * &t.adjoint()
}

/// `T* T`, entry `(j, k)` = `<f_k, f_j>`.
pub fn gram(s: &VectorSeq) -> Matrix {
    let t = s.synthesis();
    &t.adjoint() * t
}

/// Singular values of the synthesis operator, descending.
pub fn singular_values(s: &VectorSeq) -> Result<Vec<f64>> {
    Ok(svd(s.synthesis())?.singulars)
}

pub fn rank(s: &VectorSeq, tol: &Tolerances) -> Result<usize> {
    Ok(svd(s.synthesis())?.rank(tol))
}

/// Optimal bounds: extreme nonzero eigenvalues of the frame operator.
pub fn optimal_bounds(s: &VectorSeq, tol: &Tolerances) -> Result<FrameBounds> {
    let sv = svd(s.synthesis())?;
    let r = sv.rank(tol);
    if r == 0 {
        return Err(Error::ZeroSequence);
    }
    Ok(FrameBounds {
        lower: sv.singulars[r - 1].powi(2),
        upper: sv.singulars[0].powi(2),
    })
}

pub fn classify(s: &VectorSeq, tol: &Tolerances) -> Result<Classification> {
    let sv = svd(s.synthesis())?;
    let r = sv.rank(tol);
    let kind = match r {
        0 => SequenceKind::ZeroSequence,
        r if r == s.dim() => SequenceKind::RieszBasis,
        _ => SequenceKind::ProperFrameSequence,
    };
    let bounds = (r > 0).then(|| FrameBounds {
        lower: sv.singulars[r - 1].powi(2),
        upper: sv.singulars[0].powi(2),
    });
    Ok(Classification {
        rank: r,
        kind,
        bounds,
    })
}

fn pinv_sqrt_of_frame_operator(s: &VectorSeq, tol: &Tolerances) -> Result<Matrix> {
    if rank(s, tol)? == 0 {
        return Err(Error::ZeroSequence);
    }
    psd_pinv_sqrt(&frame_operator(s), tol)
}

/// `{S^+ f_i}`, with `S^+` the pseudo-inverse of the frame operator.
pub fn canonical_dual(s: &VectorSeq, tol: &Tolerances) -> Result<VectorSeq> {
    let r = pinv_sqrt_of_frame_operator(s, tol)?;
    let pinv = &r * &r;
    VectorSeq::new(&pinv * s.synthesis())
}

/// `{S^{+1/2} f_i}`: Parseval on the span of `s`.
pub fn parsevalize(s: &VectorSeq, tol: &Tolerances) -> Result<VectorSeq> {
    let r = pinv_sqrt_of_frame_operator(s, tol)?;
    VectorSeq::new(&r * s.synthesis())
}

/// Checks `f = sum <f, f_i> g_i = sum <f, g_i> f_i` on the whole space,
/// i.e. `G F* = I` and `F G* = I` within `cert_rel`.
pub fn verify_dual_pair(f: &VectorSeq, g: &VectorSeq, tol: &Tolerances) -> Result<bool> {
    f.ensure_same_dim(g)?;
    let ff = f.synthesis();
    let gg = g.synthesis();
    let a = (gg * &ff.adjoint()).identity_defect();
    let b = (ff * &gg.adjoint()).identity_defect();
    Ok(a <= tol.cert_rel && b <= tol.cert_rel)
}
