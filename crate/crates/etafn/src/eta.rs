//! Certified evaluation of the eta logarithm and its transformation law.

use etcs_ratarith::{to_f64 as rat_to_f64, zagier_n};
use num_complex::Complex;

use crate::{cast, divisor_sum, to_f64, EtaError, Real};

/// A value of `L(tau)` together with the truncation that produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EtaLogValue<T> {
    /// The argument, as given.
    pub tau: Complex<T>,
    /// `L(tau)`.
    pub value: Complex<T>,
    /// Number of q-series terms summed after reduction.
    pub truncation_n: usize,
    /// Upper bound for the discarded tail of the q-series.
    pub tail_bound: T,
}

/// `sum_{n > big_n} n r^n = r^(N+1) ((N+1) - N r)/(1-r)^2`.
fn tail<T: Real>(r: T, big_n: usize) -> T {
    let n = cast::<T>(big_n as f64);
    r.powi(big_n as i32 + 1) * ((n + T::one()) - n * r) / (T::one() - r).powi(2)
}

/// The principal logarithm of the Dedekind eta function,
/// `L(tau) = pi i tau/12 - sum_{n >= 1} sigma(n)/n q^n` with
/// `q = exp(2 pi i tau)`.
///
/// `tau` is first moved into `|Re tau| <= 1/2, |tau| >= 1` by translations
/// and inversions, using `L(tau + 1) = L(tau) + pi i/12` and
/// `L(-1/tau) = L(tau) + Log(-i tau)/2`. The series is then cut off at the
/// first `N` whose tail bound (from `sigma(n) <= n^2`) is below `tol`.
pub fn eta_log<T: Real>(tau: Complex<T>, tol: T) -> Result<EtaLogValue<T>, EtaError> {
    if !(tau.im > T::zero()) {
        return Err(EtaError::NotInUpperHalfPlane {
            re: to_f64(tau.re),
            im: to_f64(tau.im),
        });
    }
    if !(tol > T::zero()) {
        return Err(EtaError::NonPositiveTolerance(to_f64(tol)));
    }
    let pi = T::PI();
    let twelve = cast::<T>(12.0);
    let half = cast::<T>(0.5);
    let i = Complex::new(T::zero(), T::one());
    let mut z = tau;
    let mut correction = Complex::new(T::zero(), T::zero());
    loop {
        let b = z.re.round();
        z.re = z.re - b;
        correction = correction + i * (pi * b / twelve);
        if z.norm_sqr() < T::one() {
            correction = correction - (-i * z).ln() * half;
            z = -z.inv();
        } else {
            break;
        }
    }
    let q = (i * z * (pi + pi)).exp();
    let r = q.norm();
    let mut big_n = 0;
    while tail(r, big_n) >= tol {
        big_n += 1;
    }
    let mut series = Complex::new(T::zero(), T::zero());
    let mut qn = Complex::new(T::one(), T::zero());
    for n in 1..=big_n {
        qn = qn * q;
        let coeff = cast::<T>(divisor_sum(n) as f64 / n as f64);
        series = series + qn * coeff;
    }
    let value = correction + i * z * (pi / twelve) - series;
    Ok(EtaLogValue {
        tau,
        value,
        truncation_n: big_n,
        tail_bound: tail(r, big_n),
    })
}

/// Checks the transformation law
/// `L(g tau) = L(tau) + Log(-(c tau + d)^2)/4 + (pi i/12) N(a, b, c, d)`
/// for `g = (a b; c d)` in SL(2, Z).
///
/// The matrix is first multiplied by `-1` if needed so that `c > 0`, or
/// `c = 0` and `d > 0`; the logarithmic term is `0` when `c = 0`.
pub fn functional_equation_check<T: Real>(
    tau: Complex<T>,
    a: i64,
    b: i64,
    c: i64,
    d: i64,
    tol: T,
) -> Result<bool, EtaError> {
    if a * d - b * c != 1 {
        return Err(EtaError::NotUnimodular { a, b, c, d });
    }
    let (a, b, c, d) = if c < 0 || (c == 0 && d < 0) {
        (-a, -b, -c, -d)
    } else {
        (a, b, c, d)
    };
    let big_n = zagier_n(&a, &b, &c, &d).map_err(|_| EtaError::NotUnimodular { a, b, c, d })?;
    let eval_tol = tol / cast(4.0);
    let f = |x: i64| cast::<T>(x as f64);
    let denom = tau * f(c) + f(d);
    let image = (tau * f(a) + f(b)) / denom;
    let lhs = eta_log(image, eval_tol)?.value;
    let base = eta_log(tau, eval_tol)?.value;
    let log_term = if c == 0 {
        Complex::new(T::zero(), T::zero())
    } else {
        (-(denom * denom)).ln() / cast::<T>(4.0)
    };
    let n_term = Complex::new(
        T::zero(),
        T::PI() * cast::<T>(rat_to_f64(&big_n)) / cast(12.0),
    );
    Ok((lhs - base - log_term - n_term).norm() <= tol)
}
