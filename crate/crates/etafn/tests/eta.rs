use std::f64::consts::PI;

use etcs_etafn::{eta_log, functional_equation_check, EtaError};
use num_complex::Complex64;
use proptest::prelude::*;

/// `L(tau)` from the product formula `pi i tau/12 + sum log(1 - q^n)`,
/// without any reduction of `tau`; accurate when `Im tau` is not small.
fn product_oracle(tau: Complex64) -> Complex64 {
    let q = (Complex64::i() * 2.0 * PI * tau).exp();
    let mut sum = Complex64::i() * PI * tau / 12.0;
    let mut qn = q;
    while qn.norm() > 1e-18 {
        sum += (Complex64::new(1.0, 0.0) - qn).ln();
        qn *= q;
    }
    sum
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn value_at_i() {
    let v = eta_log(c(0.0, 1.0), 1e-12).unwrap();
    assert_eq!(v.value.im, 0.0);
    assert!(v.tail_bound < 1e-12);
    let gamma_quarter = 3.625_609_908_221_908_f64;
    let expected = (gamma_quarter / (2.0 * PI.powf(0.75))).ln();
    assert!((v.value.re - expected).abs() < 1e-12);
}

#[test]
fn real_on_imaginary_axis() {
    for y in [0.01, 0.1, 0.37, 1.0, 2.5, 40.0] {
        let v = eta_log(c(0.0, y), 1e-10).unwrap();
        assert!(v.value.im.abs() < 1e-12, "y = {y}: {}", v.value.im);
    }
}

#[test]
fn agrees_with_product_formula() {
    for tau in [
        c(0.0, 1.0),
        c(0.3, 0.8),
        c(-2.7, 0.6),
        c(0.5, 0.5),
        c(13.2, 1.7),
    ] {
        let v = eta_log(tau, 1e-12).unwrap();
        assert!(
            (v.value - product_oracle(tau)).norm() < 1e-11,
            "tau = {tau}"
        );
    }
}

#[test]
fn translation_and_inversion() {
    let tau = c(0.21, 0.43);
    let l = eta_log(tau, 1e-12).unwrap().value;
    let shifted = eta_log(tau + 1.0, 1e-12).unwrap().value;
    assert!((shifted - l - Complex64::i() * PI / 12.0).norm() < 1e-11);
    let inverted = eta_log(-tau.inv(), 1e-12).unwrap().value;
    assert!((inverted - l - (-tau * tau).ln() / 4.0).norm() < 1e-11);
}

#[test]
fn rejects_lower_half_plane_and_bad_tolerance() {
    assert!(matches!(
        eta_log(c(0.5, 0.0), 1e-9),
        Err(EtaError::NotInUpperHalfPlane { .. })
    ));
    assert!(matches!(
        eta_log(c(0.5, -1.0), 1e-9),
        Err(EtaError::NotInUpperHalfPlane { .. })
    ));
    assert_eq!(
        eta_log(c(0.0, 1.0), 0.0),
        Err(EtaError::NonPositiveTolerance(0.0))
    );
}

#[test]
fn functional_equation_examples() {
    assert!(functional_equation_check(c(0.3, 0.9), 1, 0, 0, 1, 1e-9).unwrap());
    assert!(functional_equation_check(c(0.0, 2.0), 0, -1, 1, 0, 1e-9).unwrap());
    assert!(functional_equation_check(c(0.1, 0.2), 1, 1, 0, 1, 1e-9).unwrap());
    assert!(functional_equation_check(c(0.1, 0.2), -1, 0, 0, -1, 1e-9).unwrap());
    assert!(functional_equation_check(c(0.4, 0.7), 2, 1, -7, -3, 1e-9).unwrap());
    assert_eq!(
        functional_equation_check(c(0.0, 1.0), 1, 1, 1, 1, 1e-9),
        Err(EtaError::NotUnimodular {
            a: 1,
            b: 1,
            c: 1,
            d: 1
        })
    );
}

#[test]
fn works_in_single_precision() {
    let v = eta_log(num_complex::Complex32::new(0.0, 1.0), 1e-5).unwrap();
    let expected = (3.625_609_9_f32 / (2.0 * std::f32::consts::PI.powf(0.75))).ln();
    assert!((v.value.re - expected).abs() < 1e-5);
}

fn word(letters: &[u8]) -> (i64, i64, i64, i64) {
    let mut m = (1i64, 0i64, 0i64, 1i64);
    for &l in letters {
        let (a, b, c, d) = m;
        m = match l % 3 {
            0 => (a + c, b + d, c, d),
            1 => (a - c, b - d, c, d),
            _ => (-c, -d, a, b),
        };
    }
    m
}

proptest! {
    #[test]
    fn functional_equation_on_words(letters in prop::collection::vec(0u8..3, 0..=5)) {
        let (a, b, c_, d) = word(&letters);
        prop_assert!(functional_equation_check(c(0.5, 1.5), a, b, c_, d, 1e-9).unwrap());
    }

    #[test]
    fn tail_bound_is_below_tolerance(re in -5.0f64..5.0, im in 0.05f64..5.0, exp in 3i32..13) {
        let tol = 10f64.powi(-exp);
        let v = eta_log(c(re, im), tol).unwrap();
        prop_assert!(v.tail_bound < tol);
        prop_assert!(v.truncation_n <= 25);
    }

    #[test]
    fn certified_truncation(re in -3.0f64..3.0, im in 0.05f64..3.0) {
        let tol = 1e-8;
        let coarse = eta_log(c(re, im), tol).unwrap().value;
        let fine = eta_log(c(re, im), tol / 100.0).unwrap().value;
        prop_assert!((coarse - fine).norm() < tol);
    }

    #[test]
    fn agrees_with_product_formula_off_axis(re in -3.0f64..3.0, im in 0.5f64..3.0) {
        let tau = c(re, im);
        let v = eta_log(tau, 1e-12).unwrap();
        prop_assert!((v.value - product_oracle(tau)).norm() < 1e-10);
    }
}
