//! Exact number-theoretic kernels.
//!
//! Everything here is generic over the integer type so that the same code runs
//! on machine integers (fast exhaustive tests) and on [`BigInt`] (the exact
//! currency used by the rest of the workspace). The crate-root aliases
//! [`Rational`], [`HjExpansionBig`] and [`ConvergentPairBig`] fix the
//! arbitrary-precision instantiation.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Integer types accepted by the kernels in this crate.
pub trait Int:
    Integer + Signed + Clone + FromPrimitive + ToPrimitive + fmt::Debug + fmt::Display
{
}

impl<T> Int for T where
    T: Integer + Signed + Clone + FromPrimitive + ToPrimitive + fmt::Debug + fmt::Display
{
}

/// Exact fraction over arbitrary-precision integers, always stored reduced
/// with a positive denominator.
pub type Rational = Ratio<BigInt>;

/// Hirzebruch-Jung expansion over arbitrary-precision integers.
pub type HjExpansionBig = HjExpansion<BigInt>;

/// Convergents over arbitrary-precision integers.
pub type ConvergentPairBig = ConvergentPair<BigInt>;

/// Errors raised by the arithmetic kernels.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    /// A modulus or Dedekind-sum denominator was zero or negative.
    #[error("modulus must be positive, got {0}")]
    NonPositiveModulus(String),
    /// The residue has no inverse modulo the given modulus.
    #[error("{value} is not invertible modulo {modulus}")]
    NotInvertible { value: String, modulus: String },
    /// The integer matrix passed to [`zagier_n`] is not in SL(2, Z).
    #[error("matrix ({a} {b}; {c} {d}) does not have determinant 1")]
    NotUnimodular {
        a: String,
        b: String,
        c: String,
        d: String,
    },
}

/// Builds the reduced fraction `num/den` over [`BigInt`].
///
/// # Panics
///
/// Panics if `den` is zero.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Builds the integer `n` as a [`Rational`].
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Converts an exact fraction to the nearest `f64` (both parts are converted
/// separately, which is accurate for the moderate sizes used here).
pub fn to_f64<T: Int>(x: &Ratio<T>) -> f64 {
    let n = x.numer().to_f64().unwrap_or(f64::NAN);
    let d = x.denom().to_f64().unwrap_or(f64::NAN);
    n / d
}

/// The sawtooth function: `0` on integers, otherwise `x - floor(x) - 1/2`.
pub fn sawtooth<T: Int>(x: &Ratio<T>) -> Ratio<T> {
    if x.is_integer() {
        return Ratio::zero();
    }
    let two = T::one() + T::one();
    x - x.floor() - Ratio::new(T::one(), two)
}

/// The Dedekind sum `S(k, n) = sum_{j=1}^{n-1} ((j/n)) ((jk/n))`.
///
/// The summation is carried out on integers: with `r = jk mod n` each nonzero
/// term equals `(2j - n)(2r - n) / (4n^2)`, so only one division happens at
/// the end.
pub fn dedekind_sum<T: Int>(k: &T, n: &T) -> Result<Ratio<T>, ArithError> {
    if !n.is_positive() {
        return Err(ArithError::NonPositiveModulus(n.to_string()));
    }
    let two = T::one() + T::one();
    let k = k.mod_floor(n);
    let mut acc = T::zero();
    let mut j = T::one();
    let mut r = k.clone();
    while &j < n {
        if !r.is_zero() {
            acc =
                acc + (two.clone() * j.clone() - n.clone()) * (two.clone() * r.clone() - n.clone());
        }
        j = j + T::one();
        r = (r + k.clone()).mod_floor(n);
    }
    let four = two.clone() * two;
    Ok(Ratio::new(acc, four * n.clone() * n.clone()))
}

/// The canonical inverse of `e` modulo `k`, in `[0, k)`; `0` when `k = 1`.
pub fn mod_inverse<T: Int>(e: &T, k: &T) -> Result<T, ArithError> {
    if !k.is_positive() {
        return Err(ArithError::NonPositiveModulus(k.to_string()));
    }
    if k.is_one() {
        return Ok(T::zero());
    }
    let e_red = e.mod_floor(k);
    let eg = e_red.extended_gcd(k);
    if !eg.gcd.is_one() {
        return Err(ArithError::NotInvertible {
            value: e.to_string(),
            modulus: k.to_string(),
        });
    }
    Ok(eg.x.mod_floor(k))
}

/// A minus-sign continued fraction `c_1 - 1/(c_2 - 1/(... - 1/c_l))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HjExpansion<T: Int> {
    /// The digits `c_1, ..., c_l`; every digit after the first is at least 2.
    pub digits: Vec<T>,
    /// The expanded value.
    pub value: Ratio<T>,
}

impl<T: Int> HjExpansion<T> {
    /// Number of digits `l`.
    pub fn len(&self) -> usize {
        self.digits.len()
    }

    /// Whether there are no digits (never the case for expansions produced by
    /// [`hj_expand`]).
    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    /// Folds the digits back into a fraction.
    pub fn evaluate(&self) -> Ratio<T> {
        let mut iter = self.digits.iter().rev();
        let Some(last) = iter.next() else {
            return Ratio::zero();
        };
        let mut acc = Ratio::from_integer(last.clone());
        for c in iter {
            acc = Ratio::from_integer(c.clone()) - acc.recip();
        }
        acc
    }
}

/// Expands `x` with `c_1 = ceil(x)` and recursion on `1/(c_1 - x)`.
///
/// Denominators strictly decrease along the recursion, so the expansion is
/// finite; an integer input yields a single digit.
pub fn hj_expand<T: Int>(x: &Ratio<T>) -> HjExpansion<T> {
    let mut digits = Vec::new();
    let mut cur = x.clone();
    loop {
        let c = cur.ceil();
        digits.push(c.to_integer());
        if cur == c {
            break;
        }
        cur = (c - cur).recip();
    }
    HjExpansion {
        digits,
        value: x.clone(),
    }
}

/// The columns `(a'_j, b'_j)`, `j = 0, ..., l`, of the partial products
/// `(c_1 -1; 1 0) ... (c_{l-j} -1; 1 0)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvergentPair<T: Int> {
    /// Numerators `a'_0, ..., a'_l`.
    pub a_prime: Vec<T>,
    /// Denominators `b'_0, ..., b'_l`.
    pub b_prime: Vec<T>,
}

impl<T: Int> ConvergentPair<T> {
    /// The number of steps `l` (one less than the number of entries).
    pub fn ell(&self) -> usize {
        self.a_prime.len() - 1
    }

    /// `a'_j / b'_j`, or `None` for the point at infinity (`b'_j = 0`).
    pub fn fraction(&self, j: usize) -> Option<Ratio<T>> {
        if self.b_prime[j].is_zero() {
            None
        } else {
            Some(Ratio::new(self.a_prime[j].clone(), self.b_prime[j].clone()))
        }
    }
}

/// Computes the convergent columns of an expansion.
pub fn hj_convergents<T: Int>(exp: &HjExpansion<T>) -> ConvergentPair<T> {
    let ell = exp.digits.len();
    let mut a_prime = vec![T::zero(); ell + 1];
    let mut b_prime = vec![T::zero(); ell + 1];
    a_prime[ell] = T::one();
    b_prime[ell] = T::zero();
    // Running product P = (p00 p01; p10 p11), starting from the identity.
    let (mut p00, mut p01, mut p10, mut p11) = (T::one(), T::zero(), T::zero(), T::one());
    for (i, c) in exp.digits.iter().enumerate() {
        let n00 = p00.clone() * c.clone() + p01.clone();
        let n01 = -p00.clone();
        let n10 = p10.clone() * c.clone() + p11.clone();
        let n11 = -p10.clone();
        p00 = n00;
        p01 = n01;
        p10 = n10;
        p11 = n11;
        a_prime[ell - i - 1] = p00.clone();
        b_prime[ell - i - 1] = p10.clone();
    }
    ConvergentPair { a_prime, b_prime }
}

/// The integer invariant `N(a, b, c, d)` of a matrix in SL(2, Z): `b/d` when
/// `c = 0`, otherwise `(a + d)/c - 12 S(d, c)`.
///
/// `N` only depends on the matrix up to sign, so inputs with `c < 0` are
/// negated first.
pub fn zagier_n<T: Int>(a: &T, b: &T, c: &T, d: &T) -> Result<Ratio<T>, ArithError> {
    if !(a.clone() * d.clone() - b.clone() * c.clone()).is_one() {
        return Err(ArithError::NotUnimodular {
            a: a.to_string(),
            b: b.to_string(),
            c: c.to_string(),
            d: d.to_string(),
        });
    }
    if c.is_negative() {
        return zagier_n(&-a.clone(), &-b.clone(), &-c.clone(), &-d.clone());
    }
    if c.is_zero() {
        return Ok(Ratio::new(b.clone(), d.clone()));
    }
    let twelve = T::from_u8(12).expect("12 fits every integer type");
    let s = dedekind_sum(d, c)?;
    Ok(Ratio::new(a.clone() + d.clone(), c.clone()) - s * Ratio::from_integer(twelve))
}
