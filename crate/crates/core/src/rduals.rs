//! R-duals of type I and type III, symmetrical type III certificates, the
//! recovery formulas, biorthogonal sequences and the type I pair decision.
//!
//! Notation used throughout (all `n x n`, columns are sequence elements):
//!
//! - `F`: the sequence `{f_i}`, `G = S_f^{+1/2} F` its Parsevalization.
//! - `E`, `H`: unitaries whose columns are the bases `{e_i}`, `{h_i}`.
//!
//! The type I dual `omega_j = sum_i <f_i, e_j> h_i` is the matrix identity
//! `Omega = H F^T conj(E)`, since `<f_i, e_j> = (E* F)[j, i]`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::extension::{extend_operator, frame_sqrt_on_span};
use crate::frames::{
    frame_operator, optimal_bounds, parsevalize, rank, singular_values, FrameBounds,
    OrthonormalBasis, VectorSeq,
};
use crate::linalg::{hermitian_eig, hermitian_function, inverse, svd, Matrix, Tolerances};

fn check_dims(f: &VectorSeq, others: &[usize]) -> Result<()> {
    let n = f.dim();
    for &d in others {
        if d != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: d,
            });
        }
    }
    Ok(())
}

/// `M = H X^T conj(E)`: column `j` is `sum_i <x_i, e_j> h_i`.
fn type_one_matrix(x: &Matrix, e: &OrthonormalBasis, h: &OrthonormalBasis) -> Matrix {
    &(h.matrix() * &x.transpose()) * &e.matrix().conj()
}

/// `omega_j = sum_i <f_i, e_j> h_i`.
pub fn rdual_type_one(
    f: &VectorSeq,
    e: &OrthonormalBasis,
    h: &OrthonormalBasis,
) -> Result<VectorSeq> {
    check_dims(f, &[e.dim(), h.dim()])?;
    VectorSeq::new(type_one_matrix(f.synthesis(), e, h))
}

/// A bijection `Q` satisfying `||Q|| <= sqrt(||S_f||)` and
/// `||Q^{-1}|| <= sqrt(||S_f^{-1}||)` for the frame operator it was checked
/// against.
#[derive(Clone, Debug)]
pub struct QOperator {
    q: Matrix,
    q_inverse: Matrix,
    validated_against: FrameBounds,
}

impl QOperator {
    pub fn matrix(&self) -> &Matrix {
        &self.q
    }

    pub fn inverse(&self) -> &Matrix {
        &self.q_inverse
    }

    pub fn validated_against(&self) -> FrameBounds {
        self.validated_against
    }
}

/// Checks the norm constraints on `Q` against `S_f`, with `||S_f|| = lambda_max`
/// and `||S_f^{-1}|| = 1 / lambda_min` over the nonzero spectrum. Both
/// inequalities get a `(1 + cert_rel)` slack.
pub fn validate_q(q: &Matrix, s_f: &Matrix, tol: &Tolerances) -> Result<QOperator> {
    let n = s_f.ensure_square()?;
    if q.rows() != n || q.cols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: q.rows(),
        });
    }
    let eig = hermitian_eig(s_f)?;
    let top = eig.eigenvalues.last().copied().unwrap_or(0.0);
    if top <= 0.0 {
        return Err(Error::ZeroSequence);
    }
    let low = eig
        .eigenvalues
        .iter()
        .copied()
        .find(|&l| l > tol.rank_rel * top)
        .expect("top eigenvalue passes its own threshold");
    if let Some(&neg) = eig.eigenvalues.first() {
        if neg < -tol.rank_rel * top {
            return Err(Error::NotPsd { eigenvalue: neg });
        }
    }

    let sv = svd(q)?;
    let q_norm = sv.singulars[0];
    let q_low = *sv.singulars.last().expect("n >= 1");
    if q_norm <= 0.0 || q_low <= tol.rank_rel * q_norm {
        return Err(Error::QSingular);
    }
    let slack = 1.0 + tol.cert_rel;
    let bound = top.sqrt();
    if q_norm > bound * slack {
        return Err(Error::QTooLarge {
            norm: q_norm,
            bound,
        });
    }
    let inv_norm = 1.0 / q_low;
    let inv_bound = (1.0 / low).sqrt();
    if inv_norm > inv_bound * slack {
        return Err(Error::QInverseTooLarge {
            norm: inv_norm,
            bound: inv_bound,
        });
    }
    let q_inverse = inverse(q, tol)?.ok_or(Error::QSingular)?;
    Ok(QOperator {
        q: q.clone(),
        q_inverse,
        validated_against: FrameBounds {
            lower: low,
            upper: top,
        },
    })
}

/// `omega_j = sum_i <S_f^{-1/2} f_i, e_j> Q h_i`.
pub fn rdual_type_three(
    f: &VectorSeq,
    e: &OrthonormalBasis,
    h: &OrthonormalBasis,
    q: &QOperator,
    tol: &Tolerances,
) -> Result<VectorSeq> {
    check_dims(f, &[e.dim(), h.dim(), q.q.rows()])?;
    let bounds = optimal_bounds(f, tol)?;
    if !bounds.matches(&q.validated_against, tol) {
        return Err(Error::BoundsMismatch {
            left: bounds.as_pair(),
            right: q.validated_against.as_pair(),
        });
    }
    let g = parsevalize(f, tol)?;
    VectorSeq::new(q.matrix() * &type_one_matrix(g.synthesis(), e, h))
}

/// `f_i = sum_j <omega_j, (Q*)^{-1} h_i> S_f^{1/2} e_j`.
///
/// With `M = H* Q^{-1} Omega` this is `F = S_f^{1/2} E M^T`.
pub fn recover_type_three(
    omega: &VectorSeq,
    e: &OrthonormalBasis,
    h: &OrthonormalBasis,
    q: &QOperator,
    s_f_sqrt: &Matrix,
) -> Result<VectorSeq> {
    check_dims(omega, &[e.dim(), h.dim(), q.q.rows(), s_f_sqrt.rows()])?;
    recover_with_inverse(omega, e, h, q.inverse(), s_f_sqrt)
}

fn recover_with_inverse(
    omega: &VectorSeq,
    e: &OrthonormalBasis,
    h: &OrthonormalBasis,
    q_inverse: &Matrix,
    s_f_sqrt: &Matrix,
) -> Result<VectorSeq> {
    let m = &(&h.matrix().adjoint() * q_inverse) * omega.synthesis();
    VectorSeq::new(&(s_f_sqrt * e.matrix()) * &m.transpose())
}

/// Witness that `omega` is the symmetrical type III R-dual of `f` with respect
/// to `(e, h, S_omega^{1/2})`.
#[derive(Clone, Debug)]
pub struct RDualCertificate {
    pub e_basis: OrthonormalBasis,
    pub h_basis: OrthonormalBasis,
    /// `S~_omega^{1/2}`: `S_omega^{1/2}` on `span(omega)`, scalar on the complement.
    pub s_omega_sqrt_ext: Matrix,
    /// Largest column error of the reconstruction of `omega`.
    pub residual: f64,
}

impl RDualCertificate {
    /// `S~_omega^{-1/2}`, the inverse of the extended square root.
    pub fn s_omega_inv_sqrt_ext(&self, tol: &Tolerances) -> Result<Matrix> {
        let eig = hermitian_eig(&self.s_omega_sqrt_ext)?;
        let top = eig.eigenvalues.last().copied().unwrap_or(0.0);
        let low = eig.eigenvalues.first().copied().unwrap_or(0.0);
        if !(low > tol.rank_rel * top) {
            return Err(Error::CertificationFailed {
                residual: low,
                tolerance: tol.rank_rel * top,
            });
        }
        Ok(hermitian_function(&eig, |l| 1.0 / l))
    }

    fn check(&self, omega: &VectorSeq, tol: &Tolerances) -> Result<()> {
        check_dims(
            omega,
            &[
                self.e_basis.dim(),
                self.h_basis.dim(),
                self.s_omega_sqrt_ext.rows(),
            ],
        )?;
        let limit = certificate_tolerance(omega, tol);
        if !(self.residual <= limit) {
            return Err(Error::CertificationFailed {
                residual: self.residual,
                tolerance: limit,
            });
        }
        Ok(())
    }
}

fn certificate_tolerance(omega: &VectorSeq, tol: &Tolerances) -> f64 {
    tol.cert_rel * omega.synthesis().max_column_norm().max(1.0)
}

/// Largest column error of `omega_j = sum_i <S_f^{-1/2} f_i, e_j> T h_i`, with
/// `T` the supplied extended square root.
pub fn symmetric_residual(
    f: &VectorSeq,
    omega: &VectorSeq,
    e: &OrthonormalBasis,
    h: &OrthonormalBasis,
    sqrt_ext: &Matrix,
    tol: &Tolerances,
) -> Result<f64> {
    check_dims(f, &[omega.dim(), e.dim(), h.dim(), sqrt_ext.rows()])?;
    let g = parsevalize(f, tol)?;
    let rebuilt = sqrt_ext * &type_one_matrix(g.synthesis(), e, h);
    Ok(rebuilt.max_column_distance(omega.synthesis()))
}

/// Bases `(E, H)` with `H X^T conj(E) = Y`, from SVDs `X = P s Q*` and
/// `Y = R s' S*`: `E = P S^T`, `H = R Q^T`. Exact when `s = s'`.
fn align_bases(
    x: &Matrix,
    y: &Matrix,
    tol: &Tolerances,
) -> Result<(OrthonormalBasis, OrthonormalBasis)> {
    let sx = svd(x)?;
    let sy = svd(y)?;
    let e = &sx.left * &sy.right.transpose();
    let h = &sy.left * &sx.right.transpose();
    Ok((
        OrthonormalBasis::from_matrix(e, tol)?,
        OrthonormalBasis::from_matrix(h, tol)?,
    ))
}

/// Builds and verifies bases `(e, h)` and the extension `S~_omega^{1/2}` with
/// `omega_j = sum_i <S_f^{-1/2} f_i, e_j> S~_omega^{1/2} h_i`.
///
/// Requires equal ranks and equal optimal bounds. The bases align the SVDs of
/// the two Parsevalizations, which are partial isometries with the same 0/1
/// singular pattern.
pub fn certify_symmetrical_pair(
    f: &VectorSeq,
    omega: &VectorSeq,
    tol: &Tolerances,
) -> Result<RDualCertificate> {
    f.ensure_same_dim(omega)?;
    let rf = rank(f, tol)?;
    let rw = rank(omega, tol)?;
    if rf != rw {
        return Err(Error::RankMismatch {
            left: rf,
            right: rw,
        });
    }
    if rf == 0 {
        return Err(Error::ZeroSequence);
    }
    let bf = optimal_bounds(f, tol)?;
    let bw = optimal_bounds(omega, tol)?;
    if !bf.matches(&bw, tol) {
        return Err(Error::BoundsMismatch {
            left: bf.as_pair(),
            right: bw.as_pair(),
        });
    }

    let g = parsevalize(f, tol)?;
    let u = parsevalize(omega, tol)?;
    let (e_basis, h_basis) = align_bases(g.synthesis(), u.synthesis(), tol)?;

    let phi = frame_sqrt_on_span(omega, tol)?;
    let s_omega_sqrt_ext = extend_operator(&phi).hermitian_part();

    let residual = symmetric_residual(f, omega, &e_basis, &h_basis, &s_omega_sqrt_ext, tol)?;
    let limit = certificate_tolerance(omega, tol);
    if !(residual <= limit) {
        return Err(Error::CertificationFailed {
            residual,
            tolerance: limit,
        });
    }
    let lowest = hermitian_eig(&s_omega_sqrt_ext)?.eigenvalues[0];
    if !(lowest > 0.0) {
        return Err(Error::CertificationFailed {
            residual: lowest,
            tolerance: 0.0,
        });
    }
    Ok(RDualCertificate {
        e_basis,
        h_basis,
        s_omega_sqrt_ext,
        residual,
    })
}

/// `f_i = sum_j <S~_omega^{-1/2} omega_j, h_i> S_f^{1/2} e_j`.
pub fn recover_symmetrical(
    omega: &VectorSeq,
    cert: &RDualCertificate,
    s_f_sqrt: &Matrix,
    tol: &Tolerances,
) -> Result<VectorSeq> {
    cert.check(omega, tol)?;
    check_dims(omega, &[s_f_sqrt.rows()])?;
    let inv = cert.s_omega_inv_sqrt_ext(tol)?;
    recover_with_inverse(omega, &cert.e_basis, &cert.h_basis, &inv, s_f_sqrt)
}

/// `gamma_j = S~_omega^{-1/2} m_j` with `m_j = sum_i <S_f^{-1/2} f_i, e_j> h_i`.
///
/// `<omega_j, gamma_k> = <m_j, m_k>`, so `{omega_j}` and `{gamma_j}` are
/// biorthogonal whenever `f` is a Riesz basis.
pub fn gamma_sequence(
    f: &VectorSeq,
    cert: &RDualCertificate,
    tol: &Tolerances,
) -> Result<VectorSeq> {
    check_dims(f, &[cert.e_basis.dim(), cert.h_basis.dim()])?;
    // columns of omega are bounded by sqrt(B), B the shared upper bound
    let limit = tol.cert_rel * optimal_bounds(f, tol)?.upper.sqrt().max(1.0);
    if !(cert.residual <= limit) {
        return Err(Error::CertificationFailed {
            residual: cert.residual,
            tolerance: limit,
        });
    }
    let g = parsevalize(f, tol)?;
    let m = type_one_matrix(g.synthesis(), &cert.e_basis, &cert.h_basis);
    VectorSeq::new(&cert.s_omega_inv_sqrt_ext(tol)? * &m)
}

/// `Gram(omega, gamma)`: entry `(k, j)` is `<omega_j, gamma_k>`.
pub fn cross_gram(omega: &VectorSeq, gamma: &VectorSeq) -> Matrix {
    &gamma.synthesis().adjoint() * omega.synthesis()
}

/// `max_{i,j} |<S~_omega^{-1/2} omega_j, h_i> - <S_f^{-1/2} f_i, e_j>|`.
pub fn coefficient_identity_check(
    f: &VectorSeq,
    omega: &VectorSeq,
    cert: &RDualCertificate,
    tol: &Tolerances,
) -> Result<f64> {
    check_dims(f, &[omega.dim(), cert.e_basis.dim(), cert.h_basis.dim()])?;
    let inv = cert.s_omega_inv_sqrt_ext(tol)?;
    // lhs[i, j] = <S~^{-1/2} omega_j, h_i>
    let lhs = &(&cert.h_basis.matrix().adjoint() * &inv) * omega.synthesis();
    // rhs[i, j] = <g_i, e_j> = (E* G)[j, i]
    let g = parsevalize(f, tol)?;
    let rhs = (&cert.e_basis.matrix().adjoint() * g.synthesis()).transpose();
    Ok((&lhs - &rhs).max_abs())
}

/// The conjugate-linear map `x -> unitary_part * conj(x)`.
#[derive(Clone, Debug)]
pub struct AntiunitaryWitness {
    pub unitary_part: Matrix,
}

impl AntiunitaryWitness {
    pub fn apply(&self, x: &[crate::linalg::Scalar]) -> Vec<crate::linalg::Scalar> {
        let conj: Vec<_> = x.iter().map(|z| z.conj()).collect();
        self.unitary_part.mul_vec(&conj)
    }

    /// `max_k ||S_omega L e_k - L S_f e_k||` over the standard basis.
    pub fn intertwining_residual(&self, s_f: &Matrix, s_omega: &Matrix) -> f64 {
        let n = s_f.rows();
        let id = Matrix::identity(n);
        let lhs = Matrix::from_columns(
            n,
            &(0..n)
                .map(|k| s_omega.mul_vec(&self.apply(id.column(k))))
                .collect::<Vec<_>>(),
        );
        let rhs = Matrix::from_columns(
            n,
            &(0..n)
                .map(|k| self.apply(&s_f.mul_vec(id.column(k))))
                .collect::<Vec<_>>(),
        );
        lhs.max_column_distance(&rhs)
    }
}

#[derive(Clone, Debug)]
pub struct PairDecision {
    pub is_pair: bool,
    /// Singular values of `f`, descending.
    pub spectra_f: Vec<f64>,
    /// Singular values of `omega`, descending.
    pub spectra_omega: Vec<f64>,
    pub witness: Option<AntiunitaryWitness>,
    /// `(e, h)` with `omega = rdual_type_one(f, e, h)`.
    pub bases: Option<(OrthonormalBasis, OrthonormalBasis)>,
    pub reproduction_residual: Option<f64>,
    pub witness_residual: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PairDecisionSummary {
    pub is_pair: bool,
    pub spectra_f: Vec<f64>,
    pub spectra_omega: Vec<f64>,
    pub reproduction_residual: Option<f64>,
    pub witness_residual: Option<f64>,
}

impl PairDecision {
    pub fn summary(&self) -> PairDecisionSummary {
        PairDecisionSummary {
            is_pair: self.is_pair,
            spectra_f: self.spectra_f.clone(),
            spectra_omega: self.spectra_omega.clone(),
            reproduction_residual: self.reproduction_residual,
            witness_residual: self.witness_residual,
        }
    }
}

/// Decides whether `omega` is a type I R-dual of `f`.
///
/// In the square model this holds iff the singular value multisets agree,
/// zeros included. On a positive answer the decision carries verified bases
/// and an antiunitary `L` with `S_omega = L S_f L^{-1}`.
pub fn decide_type_one_pair(
    f: &VectorSeq,
    omega: &VectorSeq,
    tol: &Tolerances,
) -> Result<PairDecision> {
    f.ensure_same_dim(omega)?;
    let spectra_f = singular_values(f)?;
    let spectra_omega = singular_values(omega)?;
    let scale = spectra_f[0].max(spectra_omega[0]);
    let is_pair = spectra_f
        .iter()
        .zip(&spectra_omega)
        .all(|(a, b)| (a - b).abs() <= tol.cert_rel * scale);
    let mut decision = PairDecision {
        is_pair,
        spectra_f,
        spectra_omega,
        witness: None,
        bases: None,
        reproduction_residual: None,
        witness_residual: None,
    };
    if !is_pair {
        return Ok(decision);
    }

    let limit = tol.cert_rel * scale.max(1.0);
    let (e, h) = align_bases(f.synthesis(), omega.synthesis(), tol)?;
    let rebuilt = type_one_matrix(f.synthesis(), &e, &h);
    let reproduction = rebuilt.max_column_distance(omega.synthesis());

    let s_f = frame_operator(f);
    let s_omega = frame_operator(omega);
    let vf = hermitian_eig(&s_f)?.vectors;
    let vw = hermitian_eig(&s_omega)?.vectors;
    let witness = AntiunitaryWitness {
        unitary_part: &vw * &vf.transpose(),
    };
    let intertwining = witness.intertwining_residual(&s_f, &s_omega);
    let witness_limit = tol.cert_rel * (scale * scale).max(1.0);

    if !(reproduction <= limit) {
        return Err(Error::CertificationFailed {
            residual: reproduction,
            tolerance: limit,
        });
    }
    if !(intertwining <= witness_limit) {
        return Err(Error::CertificationFailed {
            residual: intertwining,
            tolerance: witness_limit,
        });
    }
    decision.bases = Some((e, h));
    decision.witness = Some(witness);
    decision.reproduction_residual = Some(reproduction);
    decision.witness_residual = Some(intertwining);
    Ok(decision)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frames::{classify, SequenceKind};
    use crate::linalg::{c, psd_sqrt, Scalar};

    fn real_seq(cols: &[&[f64]]) -> VectorSeq {
        let v: Vec<Vec<Scalar>> = cols
            .iter()
            .map(|col| col.iter().map(|&x| c(x, 0.0)).collect())
            .collect();
        VectorSeq::from_vectors(&v).unwrap()
    }

    fn desk_pair() -> (VectorSeq, VectorSeq) {
        (
            real_seq(&[&[2.0, 0.0], &[0.0, 1.0]]),
            real_seq(&[&[0.0, 1.0], &[2.0, 0.0]]),
        )
    }

    #[test]
    fn type_one_examples() {
        let std2 = OrthonormalBasis::standard(2);
        let id = VectorSeq::standard_basis(2);
        assert_eq!(rdual_type_one(&id, &std2, &std2).unwrap(), id);

        let f = real_seq(&[&[1.0, 0.0], &[1.0, 1.0]]);
        let w = rdual_type_one(&f, &std2, &std2).unwrap();
        assert_eq!(w, real_seq(&[&[1.0, 1.0], &[0.0, 1.0]]));

        let f = real_seq(&[&[1.0, 0.0], &[1.0, 0.0]]);
        let w = rdual_type_one(&f, &std2, &std2).unwrap();
        assert_eq!(w, real_seq(&[&[1.0, 1.0], &[0.0, 0.0]]));
        let tol = Tolerances::default();
        assert_eq!(
            classify(&w, &tol).unwrap().kind,
            SequenceKind::ProperFrameSequence
        );
    }

    #[test]
    fn q_validation() {
        let tol = Tolerances::default();
        let s_f = Matrix::diag(&[4.0, 1.0]);
        assert!(validate_q(&Matrix::diag(&[2.0, 1.0]), &s_f, &tol).is_ok());
        assert!(matches!(
            validate_q(&Matrix::diag(&[3.0, 1.0]), &s_f, &tol),
            Err(Error::QTooLarge { .. })
        ));
        assert!(matches!(
            validate_q(&Matrix::diag(&[2.0, 0.5]), &s_f, &tol),
            Err(Error::QInverseTooLarge { .. })
        ));
        assert_eq!(
            validate_q(&Matrix::diag(&[2.0, 0.0]), &s_f, &tol).unwrap_err(),
            Error::QSingular
        );
    }

    #[test]
    fn type_three_examples() {
        let tol = Tolerances::default();
        let std2 = OrthonormalBasis::standard(2);
        let id = VectorSeq::standard_basis(2);
        let q = validate_q(&Matrix::identity(2), &Matrix::identity(2), &tol).unwrap();
        let w = rdual_type_three(&id, &std2, &std2, &q, &tol).unwrap();
        assert!((w.synthesis() - &Matrix::identity(2)).fro_norm() < 1e-15);
        let back = recover_type_three(&w, &std2, &std2, &q, &Matrix::identity(2)).unwrap();
        assert!((back.synthesis() - id.synthesis()).fro_norm() < 1e-15);

        let f = real_seq(&[&[2.0, 0.0], &[0.0, 1.0]]);
        let s_f = frame_operator(&f);
        let q = validate_q(&Matrix::diag(&[2.0, 1.0]), &s_f, &tol).unwrap();
        let w = rdual_type_three(&f, &std2, &std2, &q, &tol).unwrap();
        assert!((w.synthesis() - f.synthesis()).fro_norm() < 1e-14);
        let root = psd_sqrt(&s_f, &tol).unwrap();
        let back = recover_type_three(&w, &std2, &std2, &q, &root).unwrap();
        assert!((back.synthesis() - f.synthesis()).fro_norm() < 1e-14);
    }

    #[test]
    fn type_three_rejects_foreign_q() {
        let tol = Tolerances::default();
        let std2 = OrthonormalBasis::standard(2);
        let q = validate_q(&Matrix::identity(2), &Matrix::identity(2), &tol).unwrap();
        let f = real_seq(&[&[2.0, 0.0], &[0.0, 1.0]]);
        assert!(matches!(
            rdual_type_three(&f, &std2, &std2, &q, &tol),
            Err(Error::BoundsMismatch { .. })
        ));
    }

    #[test]
    fn desk_certificate() {
        let tol = Tolerances::default();
        let (f, w) = desk_pair();
        let cert = certify_symmetrical_pair(&f, &w, &tol).unwrap();
        assert!(cert.residual <= 1e-12, "residual {}", cert.residual);

        // the hand-built witness reproduces omega exactly as well
        let swap =
            OrthonormalBasis::from_matrix(Matrix::real(&[&[0.0, 1.0], &[1.0, 0.0]]), &tol).unwrap();
        let r = symmetric_residual(
            &f,
            &w,
            &OrthonormalBasis::standard(2),
            &swap,
            &Matrix::diag(&[2.0, 1.0]),
            &tol,
        )
        .unwrap();
        assert_eq!(r, 0.0);

        let root = psd_sqrt(&frame_operator(&f), &tol).unwrap();
        let back = recover_symmetrical(&w, &cert, &root, &tol).unwrap();
        assert!(back.synthesis().max_column_distance(f.synthesis()) < 1e-12);

        let gamma = gamma_sequence(&f, &cert, &tol).unwrap();
        let expected = real_seq(&[&[0.0, 1.0], &[0.5, 0.0]]);
        assert!(gamma.synthesis().max_column_distance(expected.synthesis()) < 1e-12);
        assert!(cross_gram(&w, &gamma).identity_defect() < 1e-12);

        assert!(coefficient_identity_check(&f, &w, &cert, &tol).unwrap() <= 1e-12);
    }

    #[test]
    fn identity_certificate() {
        let tol = Tolerances::default();
        let id = VectorSeq::standard_basis(3);
        let cert = certify_symmetrical_pair(&id, &id, &tol).unwrap();
        assert!(cert.residual < 1e-15);
        let gamma = gamma_sequence(&id, &cert, &tol).unwrap();
        assert!(cross_gram(&id, &gamma).identity_defect() < 1e-14);
        assert!(coefficient_identity_check(&id, &id, &cert, &tol).unwrap() < 1e-15);
        let back = recover_symmetrical(&id, &cert, &Matrix::identity(3), &tol).unwrap();
        assert!(back.synthesis().max_column_distance(id.synthesis()) < 1e-15);
    }

    #[test]
    fn certify_preconditions() {
        let tol = Tolerances::default();
        let id = VectorSeq::standard_basis(2);
        let f = real_seq(&[&[2.0, 0.0], &[0.0, 1.0]]);
        assert!(matches!(
            certify_symmetrical_pair(&id, &f, &tol),
            Err(Error::BoundsMismatch { .. })
        ));
        let low = real_seq(&[&[1.0, 0.0], &[0.0, 0.0]]);
        assert!(matches!(
            certify_symmetrical_pair(&id, &low, &tol),
            Err(Error::RankMismatch { left: 2, right: 1 })
        ));
    }

    #[test]
    fn decision_examples() {
        let tol = Tolerances::default();
        let id = VectorSeq::standard_basis(2);
        let d = decide_type_one_pair(&id, &id, &tol).unwrap();
        assert!(d.is_pair);
        assert!(d.witness_residual.unwrap() < 1e-14);

        let (f, w) = desk_pair();
        let d = decide_type_one_pair(&f, &w, &tol).unwrap();
        assert!(d.is_pair);
        let (e, h) = d.bases.as_ref().unwrap();
        let rebuilt = rdual_type_one(&f, e, h).unwrap();
        assert!(rebuilt.synthesis().max_column_distance(w.synthesis()) < 1e-12);
        assert!(d.witness_residual.unwrap() < 1e-12);

        let r = 2.0f64.sqrt();
        let flat = real_seq(&[&[r, 0.0], &[0.0, r]]);
        let d = decide_type_one_pair(&f, &flat, &tol).unwrap();
        assert!(!d.is_pair);
        assert!(d.witness.is_none() && d.bases.is_none());
    }
}
