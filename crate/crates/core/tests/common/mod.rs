#![allow(dead_code, unused_imports)]

use rdual_core::linalg::{inner, norm, Matrix, Scalar};
use rdual_core::random::{self, SeqRng};

pub use rdual_core::random::{matched_pair, random_dim, random_rank, spectrum_between as spectrum};

/// Orthogonal projection onto the column span of `b`, by Gram-Schmidt.
pub fn projection_onto(b: &Matrix) -> Matrix {
    let n = b.rows();
    let mut q: Vec<Vec<Scalar>> = Vec::new();
    for col in b.columns() {
        let mut x = col.to_vec();
        for _ in 0..2 {
            for v in &q {
                let coef = inner(&x, v);
                x.iter_mut().zip(v).for_each(|(a, b)| *a -= coef * b);
            }
        }
        let r = norm(&x);
        if r > 1e-8 * norm(col).max(1e-300) {
            x.iter_mut().for_each(|z| *z /= r);
            q.push(x);
        }
    }
    let mut p = Matrix::zeros(n, n);
    for v in &q {
        for j in 0..n {
            for i in 0..n {
                p[(i, j)] += v[i] * v[j].conj();
            }
        }
    }
    p
}

pub fn rng(seed: u64) -> SeqRng {
    random::rng(seed)
}
