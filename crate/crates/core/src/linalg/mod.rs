//! Self-contained dense complex linear algebra.
//!
//! Everything spectral goes through cyclic Jacobi rotations: two-sided for
//! Hermitian eigenproblems, one-sided (Hestenes) for the SVD. Both are capped
//! at [`MAX_SWEEPS`] sweeps and report [`Error::NoConvergence`] past that.
//!
//! [`Error::NoConvergence`]: crate::Error::NoConvergence

mod jacobi;
mod matrix;
mod roots;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use jacobi::{complete_to_onb, hermitian_eig, svd, EigenDecomposition, Svd, MAX_SWEEPS};
pub use matrix::{c, inner, norm, Matrix, Scalar};
pub use roots::{
    hermitian_function, inverse, min_singular_value, op_norm, psd_pinv_sqrt, psd_sqrt,
};

/// Relative thresholds shared by every operation.
///
/// * `rank_rel`: a singular value `s` counts as zero iff `s <= rank_rel * s_max`.
/// * `cert_rel`: acceptance level for certificates and bound comparisons.
/// * `exact_rel`: tolerance for identities that hold up to roundoff
///   (Hermitian input checks).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub rank_rel: f64,
    pub cert_rel: f64,
    pub exact_rel: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            rank_rel: 1e-10,
            cert_rel: 1e-9,
            exact_rel: 1e-12,
        }
    }
}

impl Tolerances {
    pub fn new(rank_rel: f64, cert_rel: f64, exact_rel: f64) -> Result<Self> {
        let t = Self {
            rank_rel,
            cert_rel,
            exact_rel,
        };
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("rank_rel", self.rank_rel),
            ("cert_rel", self.cert_rel),
            ("exact_rel", self.exact_rel),
        ] {
            if !(v > 0.0 && v < 1.0) {
                return Err(Error::InvalidTolerance(format!(
                    "{name} must lie in (0, 1), got {v}"
                )));
            }
        }
        Ok(())
    }

    /// `a` and `b` agree relative to the larger magnitude, at `cert_rel`.
    pub fn close(&self, a: f64, b: f64) -> bool {
        (a - b).abs() <= self.cert_rel * a.abs().max(b.abs())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tolerances_must_be_in_unit_interval() {
        assert!(Tolerances::new(1e-10, 1e-9, 1e-12).is_ok());
        assert!(Tolerances::new(0.0, 1e-9, 1e-12).is_err());
        assert!(Tolerances::new(1e-10, 1.0, 1e-12).is_err());
        assert!(Tolerances::new(1e-10, 1e-9, f64::NAN).is_err());
    }
}
