//! The logarithm of the Dedekind eta function and the values derived from it.
//!
//! [`eta_log`] evaluates `L(tau) = pi i tau/12 - sum sigma(n)/n q^n` with a
//! certified truncation bound after moving `tau` into the standard
//! fundamental domain. [`f_value`] builds the function `F_{k,eps}(s)` from
//! it, and [`nu_bar_analytic`] assembles the extended nu-invariant from eta
//! values, as an independent check of the exact Dedekind-sum formula.
//!
//! The numerical kernels are generic over [`Real`]; `f64` is the default
//! scalar throughout.

mod eta;
mod fvalue;
mod nubar;
mod table3;

use std::fmt::Debug;

use num_traits::{Float, FloatConst, FromPrimitive};
use thiserror::Error;

pub use eta::{eta_log, functional_equation_check, EtaLogValue};
pub use fvalue::{f_value, f_value_alternative, f_value_derivative, theta_oracle};
pub use nubar::{calf_rationality, calf_rhs, nu_bar_analytic, CalFCheck};
pub use table3::{
    special_family_corrected, special_family_printed, table3_check, table3_rows, CosineSource,
    SpecialFamilyCheck, Table3Report, Table3Result, Table3Row, SEXTIC_P, SEXTIC_Q,
};

/// Floating-point scalars accepted by the numerical kernels.
pub trait Real: Float + FloatConst + FromPrimitive + Debug {}

impl<T: Float + FloatConst + FromPrimitive + Debug> Real for T {}

/// Errors raised by the eta-function routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum EtaError {
    #[error("tau = {re} + {im}i is not in the upper half-plane")]
    NotInUpperHalfPlane { re: f64, im: f64 },
    #[error("tolerance {0} must be positive")]
    NonPositiveTolerance(f64),
    #[error("order k = {0} must be positive")]
    NonPositiveOrder(i64),
    #[error("eps = {eps} is not a unit modulo k = {k}")]
    NotAUnit { eps: i64, k: i64 },
    #[error("s = {0} must be positive")]
    NonPositiveS(f64),
    #[error("the theta oracle needs s >= 1/10, got {0}")]
    OracleDomain(f64),
    #[error("({a} {b}; {c} {d}) does not have determinant 1")]
    NotUnimodular { a: i64, b: i64, c: i64, d: i64 },
    #[error("gluing angle is undefined for n = {0} <= 0")]
    NonPositiveN(i64),
    #[error("no sign change of the sextic on [{lo}, {hi}]")]
    NoBracket { lo: f64, hi: f64 },
}

pub(crate) fn cast<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("every Real represents f64 values")
}

pub(crate) fn to_f64<T: Real>(x: T) -> f64 {
    x.to_f64().expect("every Real converts to f64")
}

/// The divisor sum `sigma(n)`.
pub(crate) fn divisor_sum(n: usize) -> usize {
    (1..=n).filter(|d| n % d == 0).sum()
}

/// The canonical inverse of `eps` modulo `k`, in `[0, k)`.
pub(crate) fn unit_inverse(eps: i64, k: i64) -> Result<i64, EtaError> {
    if k <= 0 {
        return Err(EtaError::NonPositiveOrder(k));
    }
    etcs_ratarith::mod_inverse(&eps, &k).map_err(|_| EtaError::NotAUnit { eps, k })
}
