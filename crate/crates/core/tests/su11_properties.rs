use lamb_core::oracle::{bch_reconstruct_2x2, matrix_element_bch_sum, Matrix2x2C};
use lamb_core::su11::{
    bch_decompose, compose, rep_matrix_element, BchCoordinates, GroupElement, RepLabel,
};
use num_complex::Complex64;
use proptest::prelude::*;
use std::f64::consts::TAU;

fn element(rho: f64, chi: f64, psi: f64) -> GroupElement {
    BchCoordinates { rho, chi, psi }.to_element()
}

fn arb_element(max_rho: f64) -> impl Strategy<Value = GroupElement> {
    (0.0..max_rho, 0.0..TAU, 0.0..TAU).prop_map(|(r, c, p)| element(r, c, p))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn columns_are_normalized(u in arb_element(1.2), m0 in 1i64..4, offset in 0i64..6) {
        let label = RepLabel::new(m0).unwrap();
        let col = m0 + offset;
        let mut partial = 0.0;
        for m in m0..m0 + 800 {
            partial += rep_matrix_element(label, m, col, &u).unwrap().norm_sqr();
        }
        prop_assert!((1.0 - partial).abs() <= 1e-10, "1 - Σ = {}", 1.0 - partial);
    }

    #[test]
    fn composition_is_a_homomorphism(
        u1 in arb_element(0.8),
        u2 in arb_element(0.8),
        m0 in 1i64..3,
        row in 0i64..4,
        col in 0i64..4,
    ) {
        let label = RepLabel::new(m0).unwrap();
        let u12 = compose(&u1, &u2).unwrap();
        let (row, col) = (m0 + row, m0 + col);
        let direct = rep_matrix_element(label, row, col, &u12).unwrap();
        let mut product = Complex64::new(0.0, 0.0);
        for k in m0..m0 + 400 {
            product += rep_matrix_element(label, row, k, &u1).unwrap()
                * rep_matrix_element(label, k, col, &u2).unwrap();
        }
        prop_assert!((direct - product).norm() <= 1e-9, "{direct} vs {product}");
    }

    #[test]
    fn mirrored_label_gives_same_elements(u in arb_element(1.5), m0 in 1i64..5, a in 0i64..8, b in 0i64..8) {
        let label = RepLabel::new(m0).unwrap();
        let mirror = label.mirrored();
        prop_assert_eq!(mirror.casimir(), label.casimir());
        prop_assert_eq!(mirror.lowest(), m0);
        let d = rep_matrix_element(label, m0 + a, m0 + b, &u).unwrap();
        let e = rep_matrix_element(mirror, m0 + a, m0 + b, &u).unwrap();
        prop_assert!((d - e).norm() <= 1e-12 * d.norm().max(1.0));
    }

    #[test]
    fn psi_is_irrelevant_without_boost(chi in 0.0..TAU, psi in 0.0..TAU, m0 in 1i64..4, a in 0i64..4) {
        let label = RepLabel::new(m0).unwrap();
        let u = element(0.0, chi, psi);
        let v = element(0.0, chi, 0.0);
        let m = m0 + a;
        prop_assert_eq!(rep_matrix_element(label, m, m, &u).unwrap(), rep_matrix_element(label, m, m, &v).unwrap());
        let recon = bch_reconstruct_2x2(&BchCoordinates { rho: 0.0, chi, psi });
        prop_assert!(recon.max_abs_diff(&Matrix2x2C::from_element(&v)) <= 1e-13);
        prop_assert_eq!(bch_decompose(&u).psi, 0.0);
    }

    #[test]
    fn bch_reconstruction(u in arb_element(2.0)) {
        let m = bch_reconstruct_2x2(&bch_decompose(&u));
        prop_assert!(m.max_abs_diff(&Matrix2x2C::from_element(&u)) <= 1e-12);
    }

    #[test]
    fn closed_form_matches_bch_sum(rho in 0.0..1.5f64, chi in 0.0..TAU, psi in 0.0..TAU, m0 in 1i64..4, a in 0i64..6, b in 0i64..6) {
        let b_coords = BchCoordinates { rho, chi, psi };
        let u = b_coords.to_element();
        let label = RepLabel::new(m0).unwrap();
        let closed = rep_matrix_element(label, m0 + a, m0 + b, &u).unwrap();
        let sum = matrix_element_bch_sum(m0, m0 + a, m0 + b, &b_coords);
        prop_assert!((closed - sum).norm() <= 1e-11 * closed.norm().max(1.0), "{closed} vs {sum}");
    }

    #[test]
    fn inverse_is_adjoint(u in arb_element(1.5), m0 in 1i64..4, a in 0i64..6, b in 0i64..6) {
        let label = RepLabel::new(m0).unwrap();
        let d = rep_matrix_element(label, m0 + a, m0 + b, &u).unwrap();
        let e = rep_matrix_element(label, m0 + b, m0 + a, &u.inverse()).unwrap();
        prop_assert!((d - e.conj()).norm() <= 1e-12 * d.norm().max(1.0));
    }
}

#[test]
fn rejects_elements_off_the_group() {
    let bad = GroupElement {
        alpha: Complex64::new(1.0, 0.0),
        beta: Complex64::new(0.5, 0.0),
    };
    assert!(rep_matrix_element(RepLabel::new(1).unwrap(), 1, 1, &bad).is_err());
    assert!(GroupElement::new(bad.alpha, bad.beta).is_err());
}
