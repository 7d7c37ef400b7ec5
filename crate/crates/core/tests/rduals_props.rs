mod common;

use proptest::prelude::*;
use rdual_core::extension::{
    extend_operator, extended_inverse, frame_sqrt_on_span, SubspaceOperator,
};
use rdual_core::frames::{frame_operator, optimal_bounds, singular_values};
use rdual_core::linalg::{op_norm, psd_sqrt, Matrix, Tolerances};
use rdual_core::random::{random_onb, random_unitary, with_singular_values};
use rdual_core::rduals::{
    certify_symmetrical_pair, decide_type_one_pair, rdual_type_one, rdual_type_three,
    recover_symmetrical, symmetric_residual, validate_q,
};
use rdual_core::{OrthonormalBasis, VectorSeq};

fn tol() -> Tolerances {
    Tolerances::default()
}

#[test]
fn extension_of_swap_scaling_on_plane() {
    let t = tol();
    let basis = Matrix::identity(3).select_columns(&[0, 1]);
    let phi = SubspaceOperator::new(basis, Matrix::real(&[&[0.0, 1.0], &[2.0, 0.0]]), &t).unwrap();
    assert!((phi.complement_scale() - 1.0).abs() <= 1e-12);
    assert!((op_norm(&extend_operator(&phi)).unwrap() - 2.0).abs() <= 1e-12);
    assert!((op_norm(&extended_inverse(&phi)).unwrap() - 1.0).abs() <= 1e-12);
}

#[test]
fn extension_of_positive_operator_on_random_plane() {
    let t = tol();
    let mut r = common::rng(17);
    let basis = random_unitary(4, &mut r).select_columns(&[0, 1]);
    let p = random_unitary(2, &mut r);
    let action = (&(&p * &Matrix::diag(&[3.0, 0.5])) * &p.adjoint()).hermitian_part();
    let phi = SubspaceOperator::new(basis, action, &t).unwrap();
    let prod = &extend_operator(&phi) * &extended_inverse(&phi);
    assert!(prod.identity_defect() <= 1e-11);
}

#[test]
fn type_three_bounds_transfer_seed_13() {
    let t = tol();
    let mut r = common::rng(13);
    let f = with_singular_values(&[1.8, 1.3, 0.9, 0.7], &mut r);
    let e = random_onb(4, &mut r);
    let h = random_onb(4, &mut r);
    let root = psd_sqrt(&frame_operator(&f), &t).unwrap();
    let q = validate_q(&root, &frame_operator(&f), &t).unwrap();
    let omega = rdual_type_three(&f, &e, &h, &q, &t).unwrap();
    let bf = optimal_bounds(&f, &t).unwrap();
    let bw = optimal_bounds(&omega, &t).unwrap();
    assert!((bf.lower - bw.lower).abs() <= 1e-9 && (bf.upper - bw.upper).abs() <= 1e-9);
}

fn matched() -> impl Strategy<Value = (VectorSeq, VectorSeq)> {
    (any::<u64>(), 2usize..=8).prop_map(|(seed, n)| {
        let mut r = common::rng(seed);
        let k = common::random_rank(&mut r, n);
        common::matched_pair(&mut r, n, k)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn certificate_works_in_both_directions((f, omega) in matched()) {
        let t = tol();
        let cert = certify_symmetrical_pair(&f, &omega, &t).unwrap();
        // swapping the roles of the sequences and of the bases
        let sqrt_f = extend_operator(&frame_sqrt_on_span(&f, &t).unwrap());
        let back = symmetric_residual(&omega, &f, &cert.h_basis, &cert.e_basis, &sqrt_f, &t).unwrap();
        prop_assert!(back <= 1e-9);
        let root = psd_sqrt(&frame_operator(&f), &t).unwrap();
        let rec = recover_symmetrical(&omega, &cert, &root, &t).unwrap();
        prop_assert!(rec.synthesis().max_column_distance(f.synthesis()) <= 1e-9);
    }

    #[test]
    fn type_one_duals_are_decided_as_pairs(seed in any::<u64>(), n in 1usize..=6) {
        let t = tol();
        let mut r = common::rng(seed);
        let k = common::random_rank(&mut r, n);
        let sv = common::spectrum(&mut r, n, k, 2.0, 0.4);
        let f = with_singular_values(&sv, &mut r);
        let e = random_onb(n, &mut r);
        let h = random_onb(n, &mut r);
        let omega = rdual_type_one(&f, &e, &h).unwrap();
        let d = decide_type_one_pair(&f, &omega, &t).unwrap();
        prop_assert!(d.is_pair);
        let (e2, h2) = d.bases.unwrap();
        let again = rdual_type_one(&f, &e2, &h2).unwrap();
        prop_assert!(again.synthesis().max_column_distance(omega.synthesis()) <= 1e-9);
        // the witness maps eigenvectors of S_f onto eigenvectors of S_omega
        let w = d.witness.unwrap();
        prop_assert!(w.intertwining_residual(&frame_operator(&f), &frame_operator(&omega)) <= 1e-9);
    }

    #[test]
    fn type_one_with_standard_bases_transposes(seed in any::<u64>(), n in 1usize..=6) {
        let mut r = common::rng(seed);
        let f = VectorSeq::new(rdual_core::random::gaussian_matrix(n, &mut r)).unwrap();
        let std = OrthonormalBasis::standard(n);
        let omega = rdual_type_one(&f, &std, &std).unwrap();
        // (omega_j)_i = <f_i, e_j> = (f_i)_j
        prop_assert!((omega.synthesis() - &f.synthesis().transpose()).max_abs() == 0.0);
        let a = singular_values(&f).unwrap();
        let b = singular_values(&omega).unwrap();
        for (x, y) in a.iter().zip(&b) {
            prop_assert!((x - y).abs() <= 1e-12 * a[0].max(1.0));
        }
    }
}
