//! The extended nu-invariant and the rational combination of `F` values,
//! computed from eta values.

use std::f64::consts::PI;

use etcs_gluing::GluingData;
use etcs_ratarith::{dedekind_sum, rat, to_f64, Rational};
use num_bigint::BigInt;
use num_complex::Complex;

use crate::{eta_log, f_value, unit_inverse, EtaError};

/// `(s+, s-)` for data with `n > 0`; at a right angle `s+ = 1` is chosen and
/// `s- = 1/s+`.
fn circle_ratios(g: &GluingData) -> Result<(f64, f64), EtaError> {
    if g.matrix.n <= 0 {
        return Err(EtaError::NonPositiveN(g.matrix.n));
    }
    let geo = g.geometry();
    Ok(match (geo.s_plus(), geo.s_minus()) {
        (Some(sp), Some(sm)) => (sp, sm),
        _ => (1.0, 1.0),
    })
}

/// One half's contribution
/// `D - (288/pi) Im L((i/s - eps*)/k) - 24 eps*/k`.
fn half_contribution(k: i64, eps: i64, s: f64, d: f64, tol: f64) -> Result<f64, EtaError> {
    let inv = unit_inverse(eps, k)? as f64;
    let kf = k as f64;
    let tau = Complex::new(-inv / kf, 1.0 / (s * kf));
    let l = eta_log(tau, tol * PI / 288.0 / 4.0)?;
    Ok(d - 288.0 / PI * l.value.im - 24.0 * inv / kf)
}

/// The extended nu-invariant from eta values:
/// the two half contributions, plus `-72 rho/pi + 3 m_rho`.
///
/// For integral inputs the result lies within `tol` of the exact integer.
pub fn nu_bar_analytic(
    g: &GluingData,
    d_plus: &Rational,
    d_minus: &Rational,
    m_rho: i64,
    tol: f64,
) -> Result<f64, EtaError> {
    if !(tol > 0.0) {
        return Err(EtaError::NonPositiveTolerance(tol));
    }
    let (s_plus, s_minus) = circle_ratios(g)?;
    let geo = g.geometry();
    let plus = half_contribution(g.k_plus, g.eps_plus, s_plus, to_f64(d_plus), tol)?;
    let minus = half_contribution(g.k_minus, g.eps_minus, s_minus, to_f64(d_minus), tol)?;
    Ok(plus + minus - 72.0 * geo.rho_over_pi + 3.0 * m_rho as f64)
}

/// The exact value `(1/6)(m/(k+ n) - q/(k- n) - 12 S(A, n))` with
/// `A = (m - eps+* n)/k+`.
pub fn calf_rhs(g: &GluingData) -> Result<Rational, EtaError> {
    let mat = g.matrix;
    if mat.n <= 0 {
        return Err(EtaError::NonPositiveN(mat.n));
    }
    let inv = unit_inverse(g.eps_plus, g.k_plus)?;
    let a = (mat.m - inv * mat.n) / g.k_plus;
    let s = dedekind_sum(&BigInt::from(a), &BigInt::from(mat.n))
        .map_err(|_| EtaError::NonPositiveN(mat.n))?;
    let sum = rat(mat.m, g.k_plus * mat.n)
        - rat(mat.q, g.k_minus * mat.n)
        - s * Rational::from_integer(12.into());
    Ok(sum / Rational::from_integer(6.into()))
}

/// Comparison of `(1/pi)(F_{k+,eps+}(s+) + F_{k-,eps-}(s-) + rho/2)` with
/// its exact rational value.
#[derive(Debug, Clone, PartialEq)]
pub struct CalFCheck {
    pub lhs: f64,
    pub rhs: Rational,
    pub pass: bool,
}

/// Evaluates both sides of the rationality identity for `F` values.
pub fn calf_rationality(g: &GluingData, tol: f64) -> Result<CalFCheck, EtaError> {
    let (s_plus, s_minus) = circle_ratios(g)?;
    let rhs = calf_rhs(g)?;
    let eval_tol = tol * PI / 4.0;
    let f_plus = f_value(g.k_plus, g.eps_plus, s_plus, eval_tol)?;
    let f_minus = f_value(g.k_minus, g.eps_minus, s_minus, eval_tol)?;
    let lhs = (f_plus + f_minus + g.geometry().rho() / 2.0) / PI;
    let pass = (lhs - to_f64(&rhs)).abs() <= tol;
    Ok(CalFCheck { lhs, rhs, pass })
}
