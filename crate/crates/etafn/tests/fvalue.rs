use std::f64::consts::PI;

use etcs_etafn::{
    f_value, f_value_alternative, special_family_corrected, special_family_printed, table3_check,
    table3_rows, theta_oracle, CosineSource, EtaError, SEXTIC_P, SEXTIC_Q,
};
use etcs_ratarith::{dedekind_sum, to_f64};
use proptest::prelude::*;

const TOL: f64 = 1e-9;

fn f(k: i64, eps: i64, s: f64) -> f64 {
    f_value(k, eps, s, TOL).unwrap()
}

fn dedekind(e: i64, k: i64) -> f64 {
    to_f64(&dedekind_sum(&e, &k).unwrap())
}

fn units(k: i64) -> Vec<i64> {
    (1..k.max(2)).filter(|e| num_gcd(*e, k) == 1).collect()
}

fn num_gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        num_gcd(b, a % b)
    }
}

#[test]
fn tabulated_value_at_sqrt2() {
    let expected = PI * (1.0 / 18.0 - 1.0 / 6.0) + 0.5 * (1.0f64 / 3.0).acos();
    assert!((f(3, 1, 2f64.sqrt()) - expected).abs() < TOL);
}

#[test]
fn vanishes_at_zero() {
    for k in 2..=6 {
        for e in units(k) {
            assert!(f(k, e, 1e-3).abs() < 1e-6, "k = {k}, eps = {e}");
        }
    }
}

#[test]
fn trivial_group_gives_zero() {
    for s in [0.3, 1.0, 7.0] {
        assert!(f(1, 0, s).abs() < TOL);
        assert!(f(2, 1, s).abs() < TOL);
    }
}

#[test]
fn input_errors() {
    assert_eq!(
        f_value(4, 2, 1.0, TOL),
        Err(EtaError::NotAUnit { eps: 2, k: 4 })
    );
    assert_eq!(f_value(3, 1, 0.0, TOL), Err(EtaError::NonPositiveS(0.0)));
    assert_eq!(f_value(0, 1, 1.0, TOL), Err(EtaError::NonPositiveOrder(0)));
    assert_eq!(
        theta_oracle(3, 1, 0.05, 1e-4),
        Err(EtaError::OracleDomain(0.05))
    );
}

#[test]
fn theta_oracle_samples() {
    let samples = [
        (
            3,
            1,
            2f64.sqrt(),
            PI * (1.0 / 18.0 - 1.0 / 6.0) + 0.5 * (1.0f64 / 3.0).acos(),
        ),
        (5, 2, 1.0, PI * 0.1 - 0.5 * 0.6f64.acos()),
        (4, 1, 1.0, PI / 8.0),
    ];
    for (k, e, s, expected) in samples {
        let oracle = theta_oracle(k, e, s, 1e-4).unwrap();
        assert!((oracle - f(k, e, s)).abs() < 1e-4, "({k}, {e}, {s})");
        assert!((oracle - expected).abs() < 1e-4, "({k}, {e}, {s})");
    }
}

#[test]
fn table3_rows_verify() {
    let rows = table3_rows();
    assert_eq!(rows.len(), 36);
    let report = table3_check(TOL).unwrap();
    for r in &report.results {
        assert!(r.dedekind_matches, "row {}: printed S differs", r.index);
        assert!(r.residual <= TOL, "row {}: {}", r.index, r.residual);
        assert!(
            r.companion_residual <= TOL,
            "row {}: {}",
            r.index,
            r.companion_residual
        );
        assert!(
            r.pair_residual <= TOL,
            "row {}: {}",
            r.index,
            r.pair_residual
        );
    }
    assert!(report.all_pass());
    assert_eq!(report.failures().count(), 0);
}

#[test]
fn first_tabulated_row() {
    let row = table3_rows()[0];
    assert_eq!((row.k, row.eps), (3, 1));
    assert!((row.expected().unwrap() - PI / 18.0).abs() < 1e-15);
}

#[test]
fn sextic_roots_match_printed_decimals() {
    let horner = |p: &[i64; 7], x: f64| p.iter().fold(0.0, |a, &c| a * x + c as f64);
    let roots: Vec<(f64, f64)> = table3_rows()
        .iter()
        .filter_map(|r| match r.c {
            CosineSource::SexticRoot { poly, scale, seed } => {
                let c = r.c.value().unwrap();
                assert!(horner(poly, scale * c).abs() < 1e-6);
                Some((c, seed))
            }
            CosineSource::Closed(_) => None,
        })
        .collect();
    assert_eq!(roots.len(), 4);
    for (c, seed) in roots {
        assert!((c - seed).abs() < 1e-3, "{c} vs {seed}");
    }
    assert!(horner(&SEXTIC_P, 3.0 * 0.766).abs() < horner(&SEXTIC_P, 3.0 * 0.7).abs());
    assert!(horner(&SEXTIC_Q, 0.861).abs() < horner(&SEXTIC_Q, 0.8).abs());
}

#[test]
fn special_family_sign() {
    for k in 2..=6 {
        let fixed = special_family_corrected(k, TOL).unwrap();
        assert!(fixed.pass, "k = {k}: {}", fixed.residual);
        let printed = special_family_printed(k, TOL).unwrap();
        assert_eq!(printed.pass, k == 2, "k = {k}");
        assert!((printed.value + printed.expected).abs() < TOL);
    }
    assert!(special_family_printed(1, TOL).is_err());
}

#[test]
fn special_family_agrees_with_oracle() {
    for k in 3..=6 {
        let check = special_family_corrected(k, TOL).unwrap();
        let s = 1.0 / ((k * k - 1) as f64).sqrt();
        if s >= 0.1 {
            let oracle = theta_oracle(k, 1, s, 1e-4).unwrap();
            assert!((oracle - check.expected).abs() < 1e-4, "k = {k}");
        }
    }
}

fn sample() -> impl Strategy<Value = (i64, i64, f64)> {
    (2i64..=6).prop_flat_map(|k| (Just(k), prop::sample::select(units(k)), 0.1f64..10.0))
}

proptest! {
    #[test]
    fn odd_in_eps((k, e, s) in sample()) {
        prop_assert!((f(k, -e, s) + f(k, e, s)).abs() < 2.0 * TOL);
    }

    #[test]
    fn inversion((k, e, s) in sample()) {
        let inv = (1..k).find(|x| (x * e).rem_euclid(k) == 1).unwrap();
        let sum = f(k, inv, 1.0 / s) + f(k, e, s);
        prop_assert!((sum - 2.0 * PI * dedekind(e, k)).abs() < 2.0 * TOL);
    }

    #[test]
    fn two_eta_forms_agree((k, e, s) in sample()) {
        let alt = f_value_alternative(k, e, s, TOL).unwrap();
        prop_assert!((alt - f(k, e, s)).abs() < 2.0 * TOL);
    }

    #[test]
    fn representative_independent((k, e, s) in sample(), t in -3i64..3) {
        prop_assert!((f(k, e + t * k, s) - f(k, e, s)).abs() < 2.0 * TOL);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn theta_oracle_agrees((k, e, s) in sample()) {
        let s = s.min(4.0);
        let oracle = theta_oracle(k, e, s, 1e-4).unwrap();
        prop_assert!((oracle - f(k, e, s)).abs() < 1e-4);
    }
}
