//! Finite-dimensional toolkit for Riesz duals (R-duals) of frames.
//!
//! Sequences live in the square model: `n` vectors in `C^n`, stored as the
//! columns of an `n x n` matrix. Frames for the whole space are exactly the
//! Riesz bases; redundancy shows up as rank deficiency. Inner products are
//! linear in the first argument, `<x, y> = sum_k x_k conj(y_k)`.
//!
//! Module map:
//!
//! - [`linalg`]: dense complex matrices, Jacobi eigen/SVD, PSD square roots.
//! - [`frames`]: frame operators, optimal bounds, classification, duals.
//! - [`extension`]: extension of a bijection on a subspace to the whole space.
//! - [`rduals`]: type I and type III R-duals, symmetrical certificates,
//!   recovery formulas, biorthogonal sequences and the type I pair decision.
//! - [`oprep`]: the shift-operator series representation of `S^{-1/2}`.
//! - [`io`] and [`random`]: JSON sequence files and seeded generators.

// `!(x <= limit)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod extension;
pub mod frames;
pub mod io;
pub mod linalg;
pub mod oprep;
pub mod random;
pub mod rduals;

pub use error::{Error, Result};
pub use frames::{Classification, FrameBounds, OrthonormalBasis, SequenceKind, VectorSeq};
pub use linalg::{Matrix, Scalar, Tolerances};
