use lamb_core::kernel::{
    kernel_q, kernel_q_complex_time, kernel_q_hypergeometric, kernel_q_rotated, kernel_remainder,
    kernel_remainder_dtau, residue_coeffs, spectral_weight, Contour,
};
use lamb_core::oracle::{
    kernel_via_spectral_series, remainder_via_spectral_series, spectral_weight_bch,
};
use num_complex::Complex64;
use proptest::prelude::*;
use std::f64::consts::TAU;

fn arb_state() -> impl Strategy<Value = (u32, u32)> {
    (1u32..=6).prop_flat_map(|n| (Just(n), 0..n))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn real_time_kernel_matches_spectral_series((n, l) in arb_state(), t in 0.05..TAU - 0.05, phi in 0.0..1.5f64) {
        let q = kernel_q(n, l, t, phi).unwrap();
        let s = kernel_via_spectral_series(n, l, Contour::RealTime(t), phi, 400).unwrap();
        prop_assert!((q - s.value).norm() <= 1e-10 * q.norm(), "{q} vs {}", s.value);
    }

    #[test]
    fn rotated_kernel_matches_spectral_series((n, l) in arb_state(), tau in 0.05..3.0f64, phi in 0.0..3.0f64) {
        let q = kernel_q_rotated(n, l, tau, phi).unwrap();
        let s = kernel_via_spectral_series(n, l, Contour::ImaginaryTime(tau), phi, 400).unwrap();
        prop_assert!((q - s.value.re).abs() <= 1e-10 * q.abs(), "{q} vs {}", s.value.re);
    }

    #[test]
    fn jacobi_and_hypergeometric_routes_agree((n, l) in arb_state(), t in 0.05..TAU - 0.05, phi in 0.0..4.0f64) {
        let a = kernel_q(n, l, t, phi).unwrap();
        let b = kernel_q_hypergeometric(n, l, t, phi).unwrap();
        prop_assert!((a - b).norm() <= 1e-11 * a.norm());
    }

    #[test]
    fn rotated_kernel_is_complex_time_kernel((n, l) in arb_state(), tau in 0.05..3.0f64, phi in 0.0..3.0f64) {
        let a = kernel_q_rotated(n, l, tau, phi).unwrap();
        let b = kernel_q_complex_time(n, l, Complex64::new(0.0, -tau), phi).unwrap();
        prop_assert!((b.re - a).abs() <= 1e-10 * a.abs());
        prop_assert!(b.im.abs() <= 1e-10 * a.abs());
    }

    #[test]
    fn remainder_matches_spectral_tail((n, l) in arb_state(), tau in 0.02..4.0f64, phi in 0.0..3.0f64) {
        let r = kernel_remainder(n, l, tau, phi).unwrap();
        let s = remainder_via_spectral_series(n, l, tau, phi, 600).unwrap().value.re;
        let scale = r.abs().max(1e-300);
        prop_assert!((r - s).abs() <= 1e-9 * scale, "{r} vs {s}");
    }

    #[test]
    fn remainder_derivative_matches_central_differences((n, l) in arb_state(), tau in 0.05..4.0f64, phi in 0.0..3.0f64) {
        let d = kernel_remainder_dtau(n, l, tau, phi).unwrap();
        let h = 1e-5;
        let fd = (kernel_remainder(n, l, tau + h, phi).unwrap() - kernel_remainder(n, l, tau - h, phi).unwrap()) / (2.0 * h);
        prop_assert!((d - fd).abs() <= 1e-6 * d.abs(), "{d} vs {fd}");
    }

    #[test]
    fn spectral_weights_match_bch_weights((n, l) in arb_state(), k in 0i64..40, phi in 0.0..3.0f64) {
        let a = spectral_weight(n, l, k, phi).unwrap();
        let b = spectral_weight_bch(n, l, k, phi);
        prop_assert!((a - b).abs() <= 1e-11 * a.abs().max(1e-300) + 1e-300, "{a} vs {b}");
    }

    #[test]
    fn kernel_is_periodic((n, l) in arb_state(), t in 0.05..TAU, phi in 0.0..3.0f64) {
        let a = kernel_q(n, l, t, phi).unwrap();
        let b = kernel_q(n, l, t + TAU, phi).unwrap();
        prop_assert!((a - b).norm() <= 1e-11 * a.norm().max(1e-12));
    }
}

#[test]
fn coefficients_are_complete() {
    for n in 1..=6 {
        for l in 0..n {
            for phi in [0.0, 0.5, 1.0, 2.0, 3.0] {
                let residues = residue_coeffs(n, l, phi).unwrap().sum();
                let tail = remainder_via_spectral_series(n, l, 0.0, phi, 400).unwrap();
                assert!(
                    (residues + tail.value.re).abs() <= 1e-10 + 400.0 * tail.last_term,
                    "N={n} L={l} Φ={phi}: {residues} + {}",
                    tail.value.re
                );
            }
        }
    }
}

#[test]
fn spectral_weights_are_a_probability_distribution() {
    for n in 1..=6 {
        for l in 0..n {
            let phi = 1.3;
            let total: f64 = (0..600)
                .map(|k| spectral_weight(n, l, k, phi).unwrap())
                .sum();
            assert!((total - 1.0).abs() < 1e-12, "N={n} L={l}: {total}");
            assert!((0..=l as i64).all(|k| spectral_weight(n, l, k, phi).unwrap() == 0.0));
        }
    }
}

#[test]
fn oracle_rejects_short_series() {
    assert!(kernel_via_spectral_series(3, 1, Contour::RealTime(1.0), 0.5, 12).is_err());
}
