use lamb_core::quadrature::{
    integrate, integrate_principal_value, integrate_semi_infinite, try_integrate,
    try_integrate_principal_value, QuadratureSpec,
};
use lamb_core::Error;
use proptest::prelude::*;
use std::f64::consts::PI;

fn spec() -> QuadratureSpec {
    QuadratureSpec::default()
}

fn check(value: f64, error: f64, exact: f64, tol: f64) {
    assert!(
        (value - exact).abs() <= tol * exact.abs().max(1.0),
        "{value} vs {exact}"
    );
    assert!(
        (value - exact).abs() <= error.max(1e-15 * exact.abs().max(1.0)) * 10.0,
        "estimate {error} too small"
    );
}

#[test]
fn semi_infinite_examples() {
    let r = integrate_semi_infinite(|x| (-x).exp(), &spec()).unwrap();
    check(r.value, r.error_estimate, 1.0, 1e-12);
    assert!(r.converged);
    let r = integrate_semi_infinite(|x| x * (-x).exp(), &spec()).unwrap();
    check(r.value, r.error_estimate, 1.0, 1e-12);
    let r = integrate_semi_infinite(|x| (-x * x).exp(), &spec()).unwrap();
    check(r.value, r.error_estimate, 0.5 * PI.sqrt(), 1e-12);
    let r = integrate_semi_infinite(|x| 1.0 / (1.0 + x * x), &spec()).unwrap();
    assert!((r.value - 0.5 * PI).abs() < 1e-6);
}

#[test]
fn finite_examples() {
    let r = integrate(f64::sin, 0.0, PI, &spec()).unwrap();
    check(r.value, r.error_estimate, 2.0, 1e-13);
    let r = integrate(f64::sqrt, 0.0, 1.0, &spec()).unwrap();
    check(r.value, r.error_estimate, 2.0 / 3.0, 1e-10);
    let r = integrate(|x| x.ln(), 0.0, 1.0, &spec()).unwrap();
    check(r.value, r.error_estimate, -1.0, 1e-9);
}

#[test]
fn principal_value_examples() {
    let r = try_integrate_principal_value(|_| Ok(1.0), 0.0, 2.0, 1.0, &spec()).unwrap();
    assert!(r.value.abs() < 1e-14);
    let r = try_integrate_principal_value(Ok, 0.0, 3.0, 1.0, &spec()).unwrap();
    check(r.value, r.error_estimate, 3.0 + 2f64.ln(), 1e-12);
    let r = integrate_principal_value(|x| (-x).exp(), 1.0, &spec()).unwrap();
    check(r.value, r.error_estimate, -0.697174883235066, 1e-10);
}

#[test]
fn rejects_bad_input() {
    assert!(matches!(
        try_integrate(
            |x| Ok(if x > 0.5 { f64::NAN } else { 1.0 }),
            0.0,
            1.0,
            &spec()
        ),
        Err(Error::NonFinite(_))
    ));
    let bad = QuadratureSpec {
        rel_tol: -1.0,
        ..spec()
    };
    assert!(integrate(|x| x, 0.0, 1.0, &bad).is_err());
    assert!(integrate(|x| x, 1.0, 0.0, &spec()).is_err());
    assert!(integrate_principal_value(|x| x, -1.0, &spec()).is_err());
    assert!(try_integrate_principal_value(Ok, 0.0, 1.0, 2.0, &spec()).is_err());
}

#[test]
fn budget_exhaustion_is_reported() {
    let tight = QuadratureSpec {
        rel_tol: 1e-15,
        abs_tol: 1e-300,
        max_subdivisions: 4,
        ..spec()
    };
    let r = integrate(|x| x.sqrt(), 0.0, 1.0, &tight).unwrap();
    assert!(!r.converged);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn exponential_moments(k in 0u32..8, a in 0.2..5.0f64) {
        let r = integrate_semi_infinite(|x| x.powi(k as i32) * (-a * x).exp(), &spec()).unwrap();
        let exact = (1..=k).map(f64::from).product::<f64>() / a.powi(k as i32 + 1);
        prop_assert!((r.value - exact).abs() <= 1e-9 * exact);
    }

    #[test]
    fn principal_value_of_linear_numerator(p in 0.1..5.0f64, b in 0.5..3.0f64) {
        let hi = p + b;
        let r = try_integrate_principal_value(|x| Ok(2.0 * x + 1.0), 0.0, hi, p, &spec()).unwrap();
        let exact = 2.0 * hi + (2.0 * p + 1.0) * (b / p).ln();
        prop_assert!((r.value - exact).abs() <= 1e-10 * exact.abs().max(1.0), "{} vs {exact}", r.value);
    }

    #[test]
    fn halving_tolerance_stays_within_estimate(a in 0.5..3.0f64) {
        let f = |x: f64| (a * x).sin() / (1.0 + x * x);
        let coarse = integrate(f, 0.0, 10.0, &QuadratureSpec { rel_tol: 1e-6, ..spec() }).unwrap();
        let fine = integrate(f, 0.0, 10.0, &QuadratureSpec { rel_tol: 1e-12, ..spec() }).unwrap();
        prop_assert!((coarse.value - fine.value).abs() <= coarse.error_estimate.max(1e-15));
    }
}
