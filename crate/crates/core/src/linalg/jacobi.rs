use super::matrix::{inner, norm, Matrix, Scalar};
use super::Tolerances;
use crate::error::{Error, Result};

/// Hard cap on full Jacobi sweeps.
pub const MAX_SWEEPS: usize = 30;

#[derive(Clone, Debug)]
pub struct EigenDecomposition {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// Orthonormal eigenvectors, column `k` belongs to `eigenvalues[k]`.
    pub vectors: Matrix,
}

impl EigenDecomposition {
    /// `V diag(lambda) V*`.
    pub fn reconstruct(&self) -> Matrix {
        let scaled = Matrix::from_fn(self.vectors.rows(), self.vectors.cols(), |i, j| {
            self.vectors[(i, j)] * self.eigenvalues[j]
        });
        &scaled * &self.vectors.adjoint()
    }
}

#[derive(Clone, Debug)]
pub struct Svd {
    pub left: Matrix,
    /// Descending, nonnegative.
    pub singulars: Vec<f64>,
    pub right: Matrix,
}

impl Svd {
    /// `left diag(singulars) right*`.
    pub fn reconstruct(&self) -> Matrix {
        let scaled = Matrix::from_fn(self.left.rows(), self.left.cols(), |i, j| {
            self.left[(i, j)] * self.singulars[j]
        });
        &scaled * &self.right.adjoint()
    }

    /// Number of singular values above `rank_rel * s_max`.
    pub fn rank(&self, tol: &Tolerances) -> usize {
        let top = self.singulars.first().copied().unwrap_or(0.0);
        if top <= 0.0 {
            return 0;
        }
        self.singulars
            .iter()
            .filter(|&&s| s > tol.rank_rel * top)
            .count()
    }
}

/// Parameters of the unitary plane rotation that diagonalises the Hermitian
/// 2x2 block `[[app, apq], [conj(apq), aqq]]`.
///
/// The rotation `J` is the identity except
/// `J[p,p] = J[q,q] = c`, `J[p,q] = s*phase`, `J[q,p] = -s*conj(phase)`.
struct Rotation {
    c: f64,
    s: f64,
    t: f64,
    phase: Scalar,
}

impl Rotation {
    fn annihilating(app: f64, aqq: f64, apq: Scalar) -> Self {
        let r = apq.norm();
        let phase = apq / r;
        let theta = (aqq - app) / (2.0 * r);
        let t = if theta.is_finite() {
            theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
        } else {
            0.0
        };
        let c = 1.0 / (t * t + 1.0).sqrt();
        Rotation {
            c,
            s: t * c,
            t,
            phase,
        }
    }

    /// `M <- M J` restricted to columns `p`, `q`.
    fn apply_right(&self, m: &mut Matrix, p: usize, q: usize) {
        let a = -self.phase.conj() * self.s;
        let b = self.phase * self.s;
        for k in 0..m.rows() {
            let mp = m[(k, p)];
            let mq = m[(k, q)];
            m[(k, p)] = mp * self.c + mq * a;
            m[(k, q)] = mp * b + mq * self.c;
        }
    }

    /// `M <- J* M` restricted to rows `p`, `q`.
    fn apply_left_adjoint(&self, m: &mut Matrix, p: usize, q: usize) {
        let a = -self.phase * self.s;
        let b = self.phase.conj() * self.s;
        for k in 0..m.cols() {
            let mp = m[(p, k)];
            let mq = m[(q, k)];
            m[(p, k)] = mp * self.c + mq * a;
            m[(q, k)] = mp * b + mq * self.c;
        }
    }
}

fn off_diagonal_norm(m: &Matrix) -> f64 {
    let n = m.rows();
    let mut acc = 0.0;
    for j in 0..n {
        for i in 0..n {
            if i != j {
                acc += m[(i, j)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi sweeps.
pub fn hermitian_eig(a: &Matrix) -> Result<EigenDecomposition> {
    let n = a.ensure_square()?;
    a.ensure_finite()?;
    let exact_rel = Tolerances::default().exact_rel;
    let defect = a.hermitian_defect();
    if defect > exact_rel * a.fro_norm().max(1.0) {
        return Err(Error::NotHermitian { defect });
    }

    let mut m = a.hermitian_part();
    for i in 0..n {
        m[(i, i)].im = 0.0;
    }
    let mut v = Matrix::identity(n);
    let scale = m.fro_norm();
    let target = f64::EPSILON * scale;
    let skip = target * 1e-3 / n as f64;

    let mut converged = scale == 0.0 || off_diagonal_norm(&m) <= target;
    let mut sweeps = 0;
    while !converged {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps });
        }
        sweeps += 1;
        for p in 0..n.saturating_sub(1) {
            for q in p + 1..n {
                let apq = m[(p, q)];
                if apq.norm() <= skip {
                    continue;
                }
                let app = m[(p, p)].re;
                let aqq = m[(q, q)].re;
                let rot = Rotation::annihilating(app, aqq, apq);
                rot.apply_right(&mut m, p, q);
                rot.apply_left_adjoint(&mut m, p, q);
                rot.apply_right(&mut v, p, q);
                let r = apq.norm();
                m[(p, q)] = Scalar::default();
                m[(q, p)] = Scalar::default();
                m[(p, p)] = Scalar::new(app - rot.t * r, 0.0);
                m[(q, q)] = Scalar::new(aqq + rot.t * r, 0.0);
            }
        }
        converged = off_diagonal_norm(&m) <= target;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(i, i)].re.total_cmp(&m[(j, j)].re));
    Ok(EigenDecomposition {
        eigenvalues: order.iter().map(|&i| m[(i, i)].re).collect(),
        vectors: v.select_columns(&order),
    })
}

/// Singular value decomposition by one-sided (Hestenes) Jacobi rotations.
///
/// Columns of `A V` are orthogonalised pairwise; their norms are the singular
/// values. Columns that collapse to roundoff level are treated as exact zeros
/// and their left vectors come from [`complete_to_onb`].
pub fn svd(a: &Matrix) -> Result<Svd> {
    let n = a.ensure_square()?;
    a.ensure_finite()?;
    let mut w = a.clone();
    let mut v = Matrix::identity(n);
    let zero_cut = f64::EPSILON * n as f64 * a.fro_norm();

    let mut sweeps = 0;
    loop {
        let mut rotated = false;
        for p in 0..n.saturating_sub(1) {
            for q in p + 1..n {
                let alpha = norm(w.column(p)).powi(2);
                let beta = norm(w.column(q)).powi(2);
                if alpha.sqrt() <= zero_cut || beta.sqrt() <= zero_cut {
                    continue;
                }
                // (W* W)[p, q]
                let gamma = inner(w.column(q), w.column(p));
                if gamma.norm() <= f64::EPSILON * (alpha * beta).sqrt() {
                    continue;
                }
                let rot = Rotation::annihilating(alpha, beta, gamma);
                rot.apply_right(&mut w, p, q);
                rot.apply_right(&mut v, p, q);
                rotated = true;
            }
        }
        if !rotated {
            break;
        }
        sweeps += 1;
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps });
        }
    }

    let norms: Vec<f64> = (0..n).map(|j| norm(w.column(j))).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| norms[j].total_cmp(&norms[i]));

    let mut singulars = Vec::with_capacity(n);
    let mut left_cols: Vec<Vec<Scalar>> = Vec::with_capacity(n);
    for &j in &order {
        let s = norms[j];
        if s > zero_cut {
            left_cols.push(w.column(j).iter().map(|z| z / s).collect());
            singulars.push(s);
        } else {
            singulars.push(0.0);
        }
    }
    let left = complete_to_onb(n, &left_cols, &Tolerances::default())?;
    Ok(Svd {
        left,
        singulars,
        right: v.select_columns(&order),
    })
}

/// Extends `k <= n` orthonormal vectors of `C^n` to an orthonormal basis.
///
/// The returned matrix keeps the input vectors as its first `k` columns; the
/// rest are standard basis vectors orthogonalised against everything chosen
/// so far, picking the candidate with the largest residual each time.
pub fn complete_to_onb<V: AsRef<[Scalar]>>(
    n: usize,
    partial: &[V],
    tol: &Tolerances,
) -> Result<Matrix> {
    if partial.len() > n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: partial.len(),
        });
    }
    for v in partial {
        if v.as_ref().len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: v.as_ref().len(),
            });
        }
    }
    let mut basis: Vec<Vec<Scalar>> = partial.iter().map(|v| v.as_ref().to_vec()).collect();
    let k = basis.len();
    let mut defect = 0.0f64;
    for i in 0..k {
        for j in 0..k {
            let target = if i == j { 1.0 } else { 0.0 };
            defect += (inner(&basis[j], &basis[i]) - Scalar::new(target, 0.0)).norm_sqr();
        }
    }
    let defect = defect.sqrt();
    if !(defect <= tol.cert_rel) {
        return Err(Error::NotOrthonormal { defect });
    }

    let project_out = |x: &mut Vec<Scalar>, basis: &[Vec<Scalar>]| {
        for b in basis {
            let coef = inner(x, b);
            for (xi, bi) in x.iter_mut().zip(b) {
                *xi -= coef * bi;
            }
        }
    };

    while basis.len() < n {
        let mut best: Option<(f64, Vec<Scalar>)> = None;
        for m in 0..n {
            let mut x = vec![Scalar::default(); n];
            x[m] = Scalar::new(1.0, 0.0);
            project_out(&mut x, &basis);
            let r = norm(&x);
            if best.as_ref().is_none_or(|(b, _)| r > *b) {
                best = Some((r, x));
            }
        }
        let (_, mut x) = best.expect("n > 0");
        // second pass restores orthogonality lost to cancellation
        project_out(&mut x, &basis);
        let r = norm(&x);
        x.iter_mut().for_each(|z| *z /= r);
        basis.push(x);
    }
    Ok(Matrix::from_columns(n, &basis))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::c;

    fn lcg_matrix(n: usize, mut state: u64, hermitian: bool) -> Matrix {
        let mut next = || {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            ((state >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
        };
        let m = Matrix::from_fn(n, n, |_, _| c(next(), next()));
        if hermitian {
            m.hermitian_part()
        } else {
            m
        }
    }

    #[test]
    fn diagonal_eig() {
        let e = hermitian_eig(&Matrix::diag(&[4.0, 1.0])).unwrap();
        assert_eq!(e.eigenvalues, vec![1.0, 4.0]);
        assert!(e.vectors.column(0)[1].norm() > 0.999);
        assert!(e.vectors.column(1)[0].norm() > 0.999);
    }

    #[test]
    fn two_by_two_eig() {
        let e = hermitian_eig(&Matrix::real(&[&[2.0, 1.0], &[1.0, 2.0]])).unwrap();
        assert!((e.eigenvalues[0] - 1.0).abs() < 1e-14);
        assert!((e.eigenvalues[1] - 3.0).abs() < 1e-14);
    }

    #[test]
    fn complex_eig_reconstructs() {
        for n in 1..10 {
            let a = lcg_matrix(n, 17 + n as u64, true);
            let e = hermitian_eig(&a).unwrap();
            assert!((&a - &e.reconstruct()).fro_norm() < 1e-13 * a.fro_norm().max(1.0));
            assert!((&e.vectors.adjoint() * &e.vectors).identity_defect() < 1e-13);
            assert!(e.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    fn rejects_non_hermitian() {
        let a = Matrix::real(&[&[1.0, 2.0], &[0.0, 1.0]]);
        assert!(matches!(hermitian_eig(&a), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn zero_matrix_eig() {
        let e = hermitian_eig(&Matrix::zeros(3, 3)).unwrap();
        assert_eq!(e.eigenvalues, vec![0.0; 3]);
    }

    #[test]
    fn svd_simple_cases() {
        let s = svd(&Matrix::identity(3)).unwrap();
        assert_eq!(s.singulars, vec![1.0; 3]);
        let s = svd(&Matrix::diag(&[0.0, 3.0])).unwrap();
        assert_eq!(s.singulars, vec![3.0, 0.0]);
        assert!((&s.reconstruct() - &Matrix::diag(&[0.0, 3.0])).fro_norm() < 1e-15);
    }

    #[test]
    fn svd_reconstructs_rank_deficient() {
        let b = lcg_matrix(6, 5, false);
        let mut a = b.clone();
        // zero out two directions by duplicating columns
        for i in 0..6 {
            a[(i, 4)] = b[(i, 0)] * 2.0;
            a[(i, 5)] = b[(i, 1)] - b[(i, 0)];
        }
        let s = svd(&a).unwrap();
        assert!((&a - &s.reconstruct()).fro_norm() < 1e-13 * a.fro_norm());
        assert!((&s.left.adjoint() * &s.left).identity_defect() < 1e-13);
        assert!((&s.right.adjoint() * &s.right).identity_defect() < 1e-13);
        assert_eq!(s.rank(&Tolerances::default()), 4);
    }

    #[test]
    fn completion_cases() {
        let tol = Tolerances::default();
        let e1 = vec![c(1.0, 0.0), c(0.0, 0.0)];
        let b = complete_to_onb(2, std::slice::from_ref(&e1), &tol).unwrap();
        assert_eq!(b.column(0), e1.as_slice());
        assert!((&b.adjoint() * &b).identity_defect() < 1e-15);

        let empty: [Vec<Scalar>; 0] = [];
        let b = complete_to_onb(3, &empty, &tol).unwrap();
        assert!((&b.adjoint() * &b).identity_defect() < 1e-15);

        let r = 0.5f64.sqrt();
        let d = vec![c(r, 0.0), c(r, 0.0)];
        let b = complete_to_onb(2, std::slice::from_ref(&d), &tol).unwrap();
        assert!(inner(b.column(0), b.column(1)).norm() < 1e-15);
        assert!((norm(b.column(1)) - 1.0).abs() < 1e-15);

        let bad = vec![c(2.0, 0.0), c(0.0, 0.0)];
        assert!(matches!(
            complete_to_onb(2, &[bad], &tol),
            Err(Error::NotOrthonormal { .. })
        ));
    }
}
