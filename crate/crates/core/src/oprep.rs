//! Shift-operator series representation of `S_omega^{-1/2}`.
//!
//! The index set is the cyclic group `Z/n`, so the shift `U h_i = h_{i+1}`
//! stays unitary and `U^j h_0 = h_j` for every `j`. With
//! `V_j = S~^{-1/2} U^j S~^{1/2}` and `Lambda_k(g) = sum_j <g, h_j> V_j(h_k)`,
//!
//! ```text
//! S~^{-1/2} = sum_i a_i Lambda_i,    a_i = <S~^{-1/2} h_0, h_i>
//! ```
//!
//! holds exactly. Two other coefficient families are reported next to `a`:
//! `c_i = <S_f^{-1/2} f_i, S_f^{-1/2} f_0>` and the projection family
//! `p_i = <P_span(omega) h_0, h_i>`. When `h` is the basis of a symmetrical
//! certificate `c = p`, but `c` only reproduces `S^{-1/2}` when `omega` is
//! Parseval; its representation error is measured, never asserted.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::extension::{extend_operator, extended_inverse, frame_sqrt_on_span};
use crate::frames::{frame_operator, parsevalize, OrthonormalBasis, VectorSeq};
use crate::linalg::{hermitian_eig, inner, op_norm, Matrix, Scalar, Tolerances};

#[derive(Clone, Debug)]
pub struct ShiftFamily {
    pub h: OrthonormalBasis,
    /// `U`, with `U h_i = h_{(i+1) mod n}`.
    pub shift: Matrix,
    /// `V_0, ..., V_{n-1}`.
    pub v_ops: Vec<Matrix>,
    pub s_sqrt_ext: Matrix,
    pub s_inv_sqrt_ext: Matrix,
}

impl ShiftFamily {
    pub fn dim(&self) -> usize {
        self.h.dim()
    }

    /// `max_j ||V_j(S~^{-1/2} h_0) - S~^{-1/2} h_j||`.
    pub fn shift_property_residual(&self) -> f64 {
        let h = self.h.matrix();
        let base = self.s_inv_sqrt_ext.mul_vec(h.column(0));
        self.v_ops
            .iter()
            .enumerate()
            .map(|(j, v)| {
                let lhs = v.mul_vec(&base);
                let rhs = self.s_inv_sqrt_ext.mul_vec(h.column(j));
                lhs.iter()
                    .zip(&rhs)
                    .map(|(a, b)| (a - b).norm_sqr())
                    .sum::<f64>()
                    .sqrt()
            })
            .fold(0.0, f64::max)
    }

    /// The family `{V_j(h_k)}_j` as a sequence.
    pub fn bessel_family(&self, k: usize) -> VectorSeq {
        let hk = self.h.matrix().column(k);
        let cols: Vec<Vec<Scalar>> = self.v_ops.iter().map(|v| v.mul_vec(hk)).collect();
        VectorSeq::new(Matrix::from_columns(self.dim(), &cols)).expect("square and finite")
    }
}

pub fn build_shift_family(
    omega: &VectorSeq,
    h: &OrthonormalBasis,
    tol: &Tolerances,
) -> Result<ShiftFamily> {
    let n = omega.dim();
    if h.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: h.dim(),
        });
    }
    let phi = frame_sqrt_on_span(omega, tol)?;
    let s_sqrt_ext = extend_operator(&phi).hermitian_part();
    let s_inv_sqrt_ext = extended_inverse(&phi).hermitian_part();

    let hm = h.matrix();
    let cyclic = Matrix::from_fn(n, n, |i, j| {
        if i == (j + 1) % n {
            Scalar::new(1.0, 0.0)
        } else {
            Scalar::default()
        }
    });
    let shift = &(hm * &cyclic) * &hm.adjoint();

    let mut v_ops = Vec::with_capacity(n);
    let mut power = Matrix::identity(n);
    for j in 0..n {
        if j == 0 {
            v_ops.push(Matrix::identity(n));
        } else {
            power = &shift * &power;
            v_ops.push(&(&s_inv_sqrt_ext * &power) * &s_sqrt_ext);
        }
    }
    Ok(ShiftFamily {
        h: h.clone(),
        shift,
        v_ops,
        s_sqrt_ext,
        s_inv_sqrt_ext,
    })
}

/// `Lambda_k = sum_j V_j h_k h_j*`, i.e. `Lambda_k(g) = sum_j <g, h_j> V_j(h_k)`.
pub fn lambda_family(fam: &ShiftFamily) -> Vec<Matrix> {
    let h_adj = fam.h.matrix().adjoint();
    (0..fam.dim())
        .map(|k| fam.bessel_family(k).synthesis() * &h_adj)
        .collect()
}

/// Optimal Bessel bound: largest eigenvalue of the frame operator.
pub fn bessel_bound_of_family(vectors: &VectorSeq) -> Result<f64> {
    let eig = hermitian_eig(&frame_operator(vectors))?;
    Ok(eig.eigenvalues.last().copied().unwrap_or(0.0).max(0.0))
}

#[derive(Clone, Debug, Serialize)]
pub struct CoefficientReport {
    /// `a_i = <S~^{-1/2} h_0, h_i>`.
    pub a: Vec<Scalar>,
    /// `c_i = <S_f^{-1/2} f_i, S_f^{-1/2} f_0>`.
    pub c: Vec<Scalar>,
    /// `p_i = <P_span(omega) h_0, h_i>`.
    pub p: Vec<Scalar>,
    pub l1_a: f64,
    pub l1_c: f64,
    /// `max_i ||a_i| - |c_i||`.
    pub modulus_gap: f64,
}

pub fn coefficients(
    f: &VectorSeq,
    omega: &VectorSeq,
    fam: &ShiftFamily,
    tol: &Tolerances,
) -> Result<CoefficientReport> {
    f.ensure_same_dim(omega)?;
    if f.dim() != fam.dim() {
        return Err(Error::DimensionMismatch {
            expected: f.dim(),
            found: fam.dim(),
        });
    }
    let h = fam.h.matrix();
    let n = fam.dim();
    let h0 = h.column(0);

    let inv_h0 = fam.s_inv_sqrt_ext.mul_vec(h0);
    let a: Vec<Scalar> = (0..n).map(|i| inner(&inv_h0, h.column(i))).collect();

    let g = parsevalize(f, tol)?;
    let c: Vec<Scalar> = (0..n).map(|i| inner(g.vector(i), g.vector(0))).collect();

    // P = U U*, U the Parsevalization of omega
    let u = parsevalize(omega, tol)?;
    let proj = u.synthesis() * &u.synthesis().adjoint();
    let proj_h0 = proj.mul_vec(h0);
    let p: Vec<Scalar> = (0..n).map(|i| inner(&proj_h0, h.column(i))).collect();

    let l1 = |v: &[Scalar]| v.iter().map(|z| z.norm()).sum::<f64>();
    let modulus_gap = a
        .iter()
        .zip(&c)
        .map(|(x, y)| (x.norm() - y.norm()).abs())
        .fold(0.0, f64::max);
    Ok(CoefficientReport {
        l1_a: l1(&a),
        l1_c: l1(&c),
        a,
        c,
        p,
        modulus_gap,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct TailRow {
    pub prefix_size: usize,
    /// `||S~^{-1/2} - sum_{i < prefix_size} a_i Lambda_i||`.
    pub partial_error: f64,
    /// `(sum_{i >= prefix_size} |a_i|) sqrt(B)`.
    pub tail_bound: f64,
}

#[derive(Clone, Debug)]
pub struct RepresentationReport {
    pub operator_a: Matrix,
    pub operator_c: Matrix,
    pub error_a: f64,
    pub error_c: f64,
    /// `B = max_k` optimal Bessel bound of `{V_j(h_k)}_j`.
    pub bessel_sup: f64,
    pub lambda_norms: Vec<f64>,
    pub tail_table: Vec<TailRow>,
    pub modulus_gap: f64,
}

impl RepresentationReport {
    /// Every tail row satisfies `partial_error <= tail_bound + slack`.
    pub fn tail_holds(&self, slack: f64) -> bool {
        self.tail_table
            .iter()
            .all(|row| row.partial_error <= row.tail_bound + slack)
    }

    /// `sup_k ||Lambda_k|| <= sqrt(B) + slack`.
    pub fn lambda_norms_bounded(&self, slack: f64) -> bool {
        let root = self.bessel_sup.sqrt();
        self.lambda_norms.iter().all(|&l| l <= root + slack)
    }
}

fn combine(weights: &[Scalar], ops: &[Matrix], n: usize) -> Matrix {
    weights
        .iter()
        .zip(ops)
        .fold(Matrix::zeros(n, n), |acc, (w, op)| &acc + &op.scale(*w))
}

pub fn represent_inv_sqrt(
    fam: &ShiftFamily,
    lambdas: &[Matrix],
    coeffs: &CoefficientReport,
) -> Result<RepresentationReport> {
    let n = fam.dim();
    let target = &fam.s_inv_sqrt_ext;
    let operator_a = combine(&coeffs.a, lambdas, n);
    let operator_c = combine(&coeffs.c, lambdas, n);
    let error_a = op_norm(&(&operator_a - target))?;
    let error_c = op_norm(&(&operator_c - target))?;

    let mut bessel_sup = 0.0f64;
    for k in 0..n {
        bessel_sup = bessel_sup.max(bessel_bound_of_family(&fam.bessel_family(k))?);
    }
    let lambda_norms = lambdas.iter().map(op_norm).collect::<Result<Vec<_>>>()?;

    let root = bessel_sup.sqrt();
    let mut tail_table = Vec::with_capacity(n);
    let mut partial = Matrix::zeros(n, n);
    for (m, lambda) in lambdas.iter().enumerate() {
        partial = &partial + &lambda.scale(coeffs.a[m]);
        let tail: f64 = coeffs.a[m + 1..].iter().map(|z| z.norm()).sum();
        tail_table.push(TailRow {
            prefix_size: m + 1,
            partial_error: op_norm(&(target - &partial))?,
            tail_bound: tail * root,
        });
    }
    Ok(RepresentationReport {
        operator_a,
        operator_c,
        error_a,
        error_c,
        bessel_sup,
        lambda_norms,
        tail_table,
        modulus_gap: coeffs.modulus_gap,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::c;

    fn real_seq(cols: &[&[f64]]) -> VectorSeq {
        let v: Vec<Vec<Scalar>> = cols
            .iter()
            .map(|col| col.iter().map(|&x| c(x, 0.0)).collect())
            .collect();
        VectorSeq::from_vectors(&v).unwrap()
    }

    fn close(a: Scalar, re: f64) -> bool {
        (a - c(re, 0.0)).norm() < 1e-14
    }

    #[test]
    fn identity_case() {
        let tol = Tolerances::default();
        let id = VectorSeq::standard_basis(3);
        let h = OrthonormalBasis::standard(3);
        let fam = build_shift_family(&id, &h, &tol).unwrap();
        assert!((&fam.v_ops[1] - &fam.shift).fro_norm() < 1e-15);
        let lambdas = lambda_family(&fam);
        for l in &lambdas {
            assert!((op_norm(l).unwrap() - 1.0).abs() < 1e-14);
        }
        // Lambda_1(h_0) = V_0(h_1) = h_1
        assert!((lambdas[1].column(0)[1] - c(1.0, 0.0)).norm() < 1e-15);
        let co = coefficients(&id, &id, &fam, &tol).unwrap();
        for fam_coeffs in [&co.a, &co.c, &co.p] {
            assert!(close(fam_coeffs[0], 1.0));
            assert!(fam_coeffs[1..].iter().all(|z| z.norm() < 1e-14));
        }
        assert!((co.l1_a - 1.0).abs() < 1e-14);
        let rep = represent_inv_sqrt(&fam, &lambdas, &co).unwrap();
        assert!(rep.error_a < 1e-14 && rep.error_c < 1e-14);
    }

    #[test]
    fn desk_example() {
        let tol = Tolerances::default();
        let f = real_seq(&[&[2.0, 0.0], &[0.0, 1.0]]);
        let w = real_seq(&[&[0.0, 1.0], &[2.0, 0.0]]);
        let h = OrthonormalBasis::standard(2);
        let fam = build_shift_family(&w, &h, &tol).unwrap();
        let v1 = Matrix::real(&[&[0.0, 0.5], &[2.0, 0.0]]);
        assert!((&fam.v_ops[1] - &v1).fro_norm() < 1e-14);
        assert!(fam.shift_property_residual() < 1e-14);

        let lambdas = lambda_family(&fam);
        assert!((&lambdas[0] - &Matrix::diag(&[1.0, 2.0])).fro_norm() < 1e-14);
        let b0 = bessel_bound_of_family(&fam.bessel_family(0)).unwrap();
        assert!((b0 - 4.0).abs() < 1e-13);

        let co = coefficients(&f, &w, &fam, &tol).unwrap();
        assert!(close(co.a[0], 0.5) && close(co.a[1], 0.0));
        assert!(close(co.c[0], 1.0) && close(co.c[1], 0.0));
        assert!(close(co.p[0], 1.0) && close(co.p[1], 0.0));

        let rep = represent_inv_sqrt(&fam, &lambdas, &co).unwrap();
        assert!((&rep.operator_a - &Matrix::diag(&[0.5, 1.0])).fro_norm() < 1e-14);
        assert!(rep.error_a < 1e-14);
        assert!((&rep.operator_c - &Matrix::diag(&[1.0, 2.0])).fro_norm() < 1e-14);
        assert!((rep.error_c - 1.0).abs() < 1e-12);
        assert!(rep.tail_holds(1e-12));
    }

    #[test]
    fn bessel_bound_examples() {
        assert!(
            (bessel_bound_of_family(&VectorSeq::standard_basis(3)).unwrap() - 1.0).abs() < 1e-15
        );
        let rep = real_seq(&[&[1.0, 0.0], &[1.0, 0.0]]);
        assert!((bessel_bound_of_family(&rep).unwrap() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn zero_sequence_rejected() {
        let tol = Tolerances::default();
        let zero = VectorSeq::new(Matrix::zeros(2, 2)).unwrap();
        let err = build_shift_family(&zero, &OrthonormalBasis::standard(2), &tol).unwrap_err();
        assert_eq!(err, Error::ZeroSequence);
    }
}
