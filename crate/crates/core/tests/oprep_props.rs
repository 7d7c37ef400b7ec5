mod common;

use proptest::prelude::*;
use rdual_core::linalg::Tolerances;
use rdual_core::oprep::{build_shift_family, coefficients, lambda_family, represent_inv_sqrt};
use rdual_core::random::{random_onb, with_singular_values};
use rdual_core::rduals::certify_symmetrical_pair;

fn tol() -> Tolerances {
    Tolerances::default()
}

#[test]
fn c_matches_projection_family_on_certificate_basis() {
    let t = tol();
    for seed in 0..100u64 {
        let mut r = common::rng(9000 + seed);
        let n = common::random_dim(&mut r, 2, 8);
        let k = common::random_rank(&mut r, n);
        let (f, omega) = common::matched_pair(&mut r, n, k);
        let cert = certify_symmetrical_pair(&f, &omega, &t).unwrap();
        let fam = build_shift_family(&omega, &cert.h_basis, &t).unwrap();
        let co = coefficients(&f, &omega, &fam, &t).unwrap();
        let gap =
            co.c.iter()
                .zip(&co.p)
                .map(|(x, y)| (x - y).norm())
                .fold(0.0, f64::max);
        assert!(gap <= 1e-9, "seed {seed}: {gap}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn a_family_represents_inverse_root(seed in any::<u64>(), n in 1usize..=12) {
        let t = tol();
        let mut r = common::rng(seed);
        let sv = common::spectrum(&mut r, n, n, 2.5, 0.3);
        let omega = with_singular_values(&sv, &mut r);
        let h = random_onb(n, &mut r);
        let fam = build_shift_family(&omega, &h, &t).unwrap();
        prop_assert!(fam.shift_property_residual() <= 1e-11);
        let lambdas = lambda_family(&fam);
        let co = coefficients(&omega, &omega, &fam, &t).unwrap();
        let rep = represent_inv_sqrt(&fam, &lambdas, &co).unwrap();
        prop_assert!(rep.error_a <= 1e-9);
        prop_assert!(rep.lambda_norms_bounded(1e-10));
        prop_assert!(rep.tail_holds(1e-9));
        // the full prefix is the whole series
        prop_assert!(rep.tail_table.last().unwrap().partial_error <= 1e-9);
    }

    #[test]
    fn rotating_h_keeps_the_a_family_exact(seed in any::<u64>(), n in 2usize..=6, shift in 0usize..6) {
        let t = tol();
        let mut r = common::rng(seed);
        let sv = common::spectrum(&mut r, n, n, 2.0, 0.5);
        let omega = with_singular_values(&sv, &mut r);
        let h = random_onb(n, &mut r).rotated(shift % n);
        let fam = build_shift_family(&omega, &h, &t).unwrap();
        let co = coefficients(&omega, &omega, &fam, &t).unwrap();
        let rep = represent_inv_sqrt(&fam, &lambda_family(&fam), &co).unwrap();
        prop_assert!(rep.error_a <= 1e-9);
    }
}
