use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (defect {defect:.3e})")]
    NotHermitian { defect: f64 },
    #[error("Jacobi iteration did not converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
    #[error("matrix is not positive semidefinite (eigenvalue {eigenvalue:.3e})")]
    NotPsd { eigenvalue: f64 },
    #[error("vectors are not orthonormal (Gram defect {defect:.3e})")]
    NotOrthonormal { defect: f64 },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix must be square, found {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("non-finite entry")]
    NonFinite,
    #[error("sequence has rank zero")]
    ZeroSequence,
    #[error("subspace action is not invertible")]
    SingularAction,
    #[error("bad generator spec: {0}")]
    BadSpec(String),
    #[error("invalid tolerance: {0}")]
    InvalidTolerance(String),
    #[error("||Q|| = {norm:.6e} exceeds sqrt(||S_f||) = {bound:.6e}")]
    QTooLarge { norm: f64, bound: f64 },
    #[error("||Q^-1|| = {norm:.6e} exceeds sqrt(||S_f^-1||) = {bound:.6e}")]
    QInverseTooLarge { norm: f64, bound: f64 },
    #[error("Q is not invertible")]
    QSingular,
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("optimal bounds differ: ({}, {}) vs ({}, {})", left.0, left.1, right.0, right.1)]
    BoundsMismatch { left: (f64, f64), right: (f64, f64) },
    #[error("certification failed: residual {residual:.3e} exceeds {tolerance:.3e}")]
    CertificationFailed { residual: f64, tolerance: f64 },
}
