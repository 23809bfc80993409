use etcs_blocks::Catalog;
use etcs_etafn::{calf_rationality, calf_rhs, nu_bar_analytic, EtaError};
use etcs_gluing::{GluingData, Matrix};
use etcs_matching::{enumerate_examples, EtcsExample};
use etcs_ratarith::{rat, to_f64};

fn table() -> Vec<EtcsExample> {
    enumerate_examples(&Catalog::builtin(), 4).unwrap()
}

fn analytic(ex: &EtcsExample) -> f64 {
    let b = &ex.breakdown;
    nu_bar_analytic(&ex.gluing, &b.d_plus, &b.d_minus, ex.m_rho, 1e-9).unwrap()
}

#[test]
fn analytic_route_matches_exact_route_on_every_row() {
    let rows = table();
    let mut worst: f64 = 0.0;
    for ex in &rows {
        assert!(ex.gluing.matrix.n > 0);
        let delta = (analytic(ex) - ex.nu_bar() as f64).abs();
        assert!(delta < 1e-6, "row {}: delta {delta}", ex.row_id);
        worst = worst.max(delta);
    }
    assert!(worst < 1e-6);
}

#[test]
fn analytic_spot_values() {
    let rows = table();
    for (row, expected) in [(228, -11.0), (1, -39.0), (208, 13.0)] {
        let value = analytic(&rows[row - 1]);
        assert!((value - expected).abs() < 1e-6, "row {row}: {value}");
    }
}

#[test]
fn analytic_rejects_non_positive_n() {
    let g = GluingData::new(3, 3, 1, 1, Matrix::new(1, 2, -4, -1)).unwrap();
    let err = nu_bar_analytic(&g, &rat(0, 1), &rat(0, 1), 0, 1e-9).unwrap_err();
    assert_eq!(err, EtaError::NonPositiveN(-4));
}

#[test]
fn calf_exact_side_examples() {
    let rows = table();
    let g228 = &rows[227].gluing;
    assert_eq!(g228.matrix, Matrix::new(1, 1, 10, -5));
    assert_eq!(calf_rhs(g228).unwrap(), rat(1, 45));
    let g = GluingData::new_valid(1, 2, 0, 1, Matrix::new(1, 1, 1, -1)).unwrap();
    assert_eq!(calf_rhs(&g).unwrap(), rat(1, 4));
    let check = calf_rationality(&g, 1e-8).unwrap();
    assert!(check.pass, "{check:?}");
}

#[test]
fn calf_rationality_on_every_row() {
    for ex in table() {
        let check = calf_rationality(&ex.gluing, 1e-8).unwrap();
        assert!(
            check.pass,
            "row {}: lhs {} rhs {}",
            ex.row_id,
            check.lhs,
            to_f64(&check.rhs)
        );
    }
}
