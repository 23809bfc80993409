//! The extended nu-invariant of an extra-twisted connected sum.
//!
//! [`nu_bar_exact`] evaluates
//!
//! `nu_bar = D+ + D- + 3 m_rho + 24 (q/(k- n) - m/(k+ n) + 12 S(A, n))`,
//! `A = (m - eps+* n)/k+`,
//!
//! in exact rational arithmetic. [`nu_mod48`] reduces the result to the
//! `Z/48` invariant and decides nullbordism, and [`congruence_check`] tests
//! the independent mod-24 congruence.

use etcs_gluing::{GluingData, Matrix};
use etcs_ratarith::{dedekind_sum, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use thiserror::Error;

/// Errors raised by [`nu_bar_exact`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NuError {
    /// The formula needs `n > 0`.
    #[error("the gluing matrix must have n > 0, got n = {0}")]
    NonPositiveN(i64),
    /// `m - eps+* n` is not divisible by `k+`.
    #[error("A = (m - eps+* n)/k+ is not an integer for {0}")]
    NonIntegralA(String),
    /// The assembled value is not an integer, so the inputs are inconsistent.
    #[error("nu_bar = {0} is not an integer")]
    NonIntegralNuBar(Rational),
}

/// All terms of the exact formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NuBreakdown {
    pub d_plus: Rational,
    pub d_minus: Rational,
    /// `3 m_rho`.
    pub m_rho_term: i64,
    /// `24 (q/(k- n) - m/(k+ n) + 12 S(A, n))`.
    pub dedekind_term: Rational,
    /// `A = (m - eps+* n)/k+`.
    pub a: i64,
    /// `S(A, n)`.
    pub dedekind_sum: Rational,
    pub nu_bar: Rational,
}

impl NuBreakdown {
    /// `nu_bar` as an integer.
    pub fn nu_bar_int(&self) -> i64 {
        self.nu_bar
            .to_integer()
            .to_i64()
            .expect("nu_bar fits in i64")
    }
}

fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Evaluates the exact formula with the canonical `eps+*` in `[0, k+)`.
///
/// The formula is equivariant under the orientation-reversing composite of
/// the flip and the rotation, which maps `m` to `-m`; data with `m < 0` are
/// therefore evaluated directly, with `m_rho` computed for the datum itself.
pub fn nu_bar_exact(
    g: &GluingData,
    d_plus: &Rational,
    d_minus: &Rational,
    m_rho: i64,
) -> Result<NuBreakdown, NuError> {
    nu_bar_exact_with_inverse(g, d_plus, d_minus, m_rho, g.eps_plus_inv())
}

/// Evaluates the exact formula with a caller-chosen representative
/// `eps_plus_star` of the inverse of `eps+` modulo `k+`.
pub fn nu_bar_exact_with_inverse(
    g: &GluingData,
    d_plus: &Rational,
    d_minus: &Rational,
    m_rho: i64,
    eps_plus_star: i64,
) -> Result<NuBreakdown, NuError> {
    let Matrix { m, n, q, .. } = g.matrix;
    let (kp, km) = (g.k_plus, g.k_minus);
    if n <= 0 {
        return Err(NuError::NonPositiveN(n));
    }
    let num = m - eps_plus_star * n;
    if num % kp != 0 {
        return Err(NuError::NonIntegralA(g.to_string()));
    }
    let a = num / kp;
    let s = dedekind_sum(&BigInt::from(a), &BigInt::from(n)).expect("n is positive");
    let dedekind_term = (frac(q, km * n) - frac(m, kp * n) + s.clone() * frac(12, 1)) * frac(24, 1);
    let nu_bar = d_plus + d_minus + frac(3 * m_rho, 1) + &dedekind_term;
    if !nu_bar.is_integer() {
        return Err(NuError::NonIntegralNuBar(nu_bar));
    }
    Ok(NuBreakdown {
        d_plus: d_plus.clone(),
        d_minus: d_minus.clone(),
        m_rho_term: 3 * m_rho,
        dedekind_term,
        a,
        dedekind_sum: s,
        nu_bar,
    })
}

/// The `Z/48` invariant and the nullbordism flag.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NuMod48 {
    /// `nu` in `[0, 48)`.
    pub residue: i64,
    /// Whether `3` divides `nu`.
    pub nullbordant: bool,
}

/// Reduces `nu_bar - 24 (1 + b1)` modulo 48.
pub fn nu_mod48(nu_bar: i64, b1: i64) -> NuMod48 {
    let residue = (nu_bar - 24 * (1 + b1)).mod_floor(&48);
    NuMod48 {
        residue,
        nullbordant: residue % 3 == 0,
    }
}

/// Whether `nu_bar - (D+ + D- + 3 m_rho - 24 (eps+*/k+ + eps-*/k-))` lies in
/// `24 Z`.
pub fn congruence_check(
    g: &GluingData,
    d_plus: &Rational,
    d_minus: &Rational,
    m_rho: i64,
    nu_bar: &Rational,
) -> bool {
    let shift =
        (frac(g.eps_plus_inv(), g.k_plus) + frac(g.eps_minus_inv(), g.k_minus)) * frac(24, 1);
    let rhs = d_plus + d_minus + frac(3 * m_rho, 1) - shift;
    let diff: Rational = (nu_bar - rhs) / frac(24, 1);
    diff.is_integer()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mod48_examples() {
        assert_eq!(
            nu_mod48(-11, 0),
            NuMod48 {
                residue: 13,
                nullbordant: false
            }
        );
        assert_eq!(
            nu_mod48(-39, 0),
            NuMod48 {
                residue: 33,
                nullbordant: true
            }
        );
        assert_eq!(
            nu_mod48(0, 0),
            NuMod48 {
                residue: 24,
                nullbordant: true
            }
        );
    }
}
