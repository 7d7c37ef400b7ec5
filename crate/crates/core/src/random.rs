//! Seeded generators for test corpora.
//!
//! All randomness comes from `ChaCha8Rng::seed_from_u64(seed)` with complex
//! Gaussian entries (independent standard normal real and imaginary parts).
//! Identical seeds give bit-identical output within this implementation.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frames::{OrthonormalBasis, VectorSeq};
use crate::linalg::{inner, norm, Matrix, Scalar, Tolerances};

pub type SeqRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeqRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian(rng: &mut SeqRng) -> Scalar {
    Scalar::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

pub fn gaussian_matrix(n: usize, rng: &mut SeqRng) -> Matrix {
    Matrix::from_fn(n, n, |_, _| gaussian(rng))
}

pub fn random_hermitian(n: usize, rng: &mut SeqRng) -> Matrix {
    gaussian_matrix(n, rng).hermitian_part()
}

/// Haar-like unitary: Gram-Schmidt (two passes) on a Gaussian matrix.
pub fn random_unitary(n: usize, rng: &mut SeqRng) -> Matrix {
    let g = gaussian_matrix(n, rng);
    let mut cols: Vec<Vec<Scalar>> = Vec::with_capacity(n);
    for j in 0..n {
        let mut x = g.column(j).to_vec();
        for _ in 0..2 {
            for q in &cols {
                let coef = inner(&x, q);
                for (xi, qi) in x.iter_mut().zip(q) {
                    *xi -= coef * qi;
                }
            }
        }
        let r = norm(&x);
        x.iter_mut().for_each(|z| *z /= r);
        cols.push(x);
    }
    Matrix::from_columns(n, &cols)
}

pub fn random_onb(n: usize, rng: &mut SeqRng) -> OrthonormalBasis {
    OrthonormalBasis::from_matrix(random_unitary(n, rng), &Tolerances::default())
        .expect("Gram-Schmidt output is orthonormal")
}

/// `P diag(sv) Q*` with independent random unitaries `P`, `Q`.
pub fn with_singular_values(sv: &[f64], rng: &mut SeqRng) -> VectorSeq {
    let n = sv.len();
    let p = random_unitary(n, rng);
    let q = random_unitary(n, rng);
    let m = &(&p * &Matrix::diag(sv)) * &q.adjoint();
    VectorSeq::new(m).expect("finite square matrix")
}

/// Uniform sample from `[lo, hi)`.
pub fn uniform(rng: &mut SeqRng, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * rng.random::<f64>()
}

/// `n` descending singular values: `rank` nonzero ones from `top` down to
/// `low`, interior values uniform in between, then zeros.
pub fn spectrum_between(rng: &mut SeqRng, n: usize, rank: usize, top: f64, low: f64) -> Vec<f64> {
    let mut sv = vec![0.0; n];
    for (k, s) in sv.iter_mut().enumerate().take(rank) {
        *s = match k {
            0 => top,
            k if k + 1 == rank => low,
            _ => uniform(rng, low, top),
        };
    }
    sv[..rank].sort_by(|a, b| b.total_cmp(a));
    sv
}

/// A pair with equal rank and equal extreme singular values, but independent
/// interior spectra and singular vectors.
pub fn matched_pair(rng: &mut SeqRng, n: usize, rank: usize) -> (VectorSeq, VectorSeq) {
    let top = uniform(rng, 1.0, 3.0);
    let low = uniform(rng, 0.2, 0.9);
    let sf = spectrum_between(rng, n, rank, top, low);
    let sw = spectrum_between(rng, n, rank, top, low);
    (
        with_singular_values(&sf, rng),
        with_singular_values(&sw, rng),
    )
}

/// Full rank with probability 1/2, otherwise uniform on `1..n`.
pub fn random_rank(rng: &mut SeqRng, n: usize) -> usize {
    if n == 1 || uniform(rng, 0.0, 1.0) < 0.5 {
        n
    } else {
        1 + (uniform(rng, 0.0, (n - 1) as f64) as usize).min(n - 2)
    }
}

/// Uniform on `lo..=hi`.
pub fn random_dim(rng: &mut SeqRng, lo: usize, hi: usize) -> usize {
    lo + (uniform(rng, 0.0, (hi - lo + 1) as f64) as usize).min(hi - lo)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum GenerateKind {
    Onb,
    Spectrum { singular_values: Vec<f64> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenerateSpec {
    pub n: usize,
    #[serde(flatten)]
    pub kind: GenerateKind,
    pub seed: u64,
}

pub fn generate_sequence(spec: &GenerateSpec) -> Result<VectorSeq> {
    if spec.n == 0 {
        return Err(Error::BadSpec("n must be positive".into()));
    }
    let mut r = rng(spec.seed);
    match &spec.kind {
        GenerateKind::Onb => Ok(random_onb(spec.n, &mut r).as_seq().clone()),
        GenerateKind::Spectrum { singular_values } => {
            if singular_values.len() != spec.n {
                return Err(Error::BadSpec(format!(
                    "{} singular values for n = {}",
                    singular_values.len(),
                    spec.n
                )));
            }
            if singular_values
                .iter()
                .any(|s| !(s.is_finite() && *s >= 0.0))
            {
                return Err(Error::BadSpec(
                    "singular values must be finite and nonnegative".into(),
                ));
            }
            Ok(with_singular_values(singular_values, &mut r))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frames::{classify, gram, optimal_bounds, SequenceKind};

    #[test]
    fn onb_is_orthonormal() {
        let s = generate_sequence(&GenerateSpec {
            n: 3,
            kind: GenerateKind::Onb,
            seed: 1,
        })
        .unwrap();
        assert!(gram(&s).identity_defect() < 1e-10);
    }

    #[test]
    fn spectrum_sets_bounds() {
        let tol = Tolerances::default();
        let s = generate_sequence(&GenerateSpec {
            n: 2,
            kind: GenerateKind::Spectrum {
                singular_values: vec![2.0, 1.0],
            },
            seed: 2,
        })
        .unwrap();
        let b = optimal_bounds(&s, &tol).unwrap();
        assert!((b.lower - 1.0).abs() < 1e-10 && (b.upper - 4.0).abs() < 1e-10);

        let s = generate_sequence(&GenerateSpec {
            n: 3,
            kind: GenerateKind::Spectrum {
                singular_values: vec![1.0, 1.0, 0.0],
            },
            seed: 3,
        })
        .unwrap();
        let k = classify(&s, &tol).unwrap();
        assert_eq!(k.rank, 2);
        assert_eq!(k.kind, SequenceKind::ProperFrameSequence);
    }

    #[test]
    fn same_seed_same_bits() {
        let spec = GenerateSpec {
            n: 4,
            kind: GenerateKind::Onb,
            seed: 99,
        };
        assert_eq!(
            generate_sequence(&spec).unwrap(),
            generate_sequence(&spec).unwrap()
        );
    }

    #[test]
    fn bad_specs() {
        let spec = GenerateSpec {
            n: 2,
            kind: GenerateKind::Spectrum {
                singular_values: vec![1.0, -1.0],
            },
            seed: 0,
        };
        assert!(generate_sequence(&spec).is_err());
        let spec = GenerateSpec {
            n: 3,
            kind: GenerateKind::Spectrum {
                singular_values: vec![1.0],
            },
            seed: 0,
        };
        assert!(generate_sequence(&spec).is_err());
    }
}
