//! The function `F_{k,eps}(s)` and an independent quadrature oracle for it.

use etcs_ratarith::{dedekind_sum, to_f64 as rat_to_f64};
use num_complex::Complex;

use crate::{cast, divisor_sum, eta_log, to_f64, unit_inverse, EtaError, Real};

fn check_s<T: Real>(s: T) -> Result<(), EtaError> {
    if s > T::zero() && s.is_finite() {
        Ok(())
    } else {
        Err(EtaError::NonPositiveS(to_f64(s)))
    }
}

/// `F_{k,eps}(s) = 2 Im L((-eps* + i/s)/k) + pi eps*/(6k)`, where `eps*` is
/// the inverse of `eps` modulo `k` in `[0, k)`.
///
/// The result is within `tol` of the exact value, up to rounding.
pub fn f_value<T: Real>(k: i64, eps: i64, s: T, tol: T) -> Result<T, EtaError> {
    check_s(s)?;
    let inv = unit_inverse(eps, k)?;
    let kf = cast::<T>(k as f64);
    let invf = cast::<T>(inv as f64);
    let tau = Complex::new(-invf / kf, T::one() / (s * kf));
    let l = eta_log(tau, tol / cast(2.0))?;
    Ok(cast::<T>(2.0) * l.value.im + T::PI() * invf / (cast::<T>(6.0) * kf))
}

/// The same function evaluated as
/// `2 Im L((eps + i s)/k) + 2 pi S(eps, k) - pi eps/(6k)`.
pub fn f_value_alternative<T: Real>(k: i64, eps: i64, s: T, tol: T) -> Result<T, EtaError> {
    check_s(s)?;
    unit_inverse(eps, k)?;
    let e = eps.rem_euclid(k);
    let kf = cast::<T>(k as f64);
    let ef = cast::<T>(e as f64);
    let tau = Complex::new(ef / kf, s / kf);
    let l = eta_log(tau, tol / cast(2.0))?;
    let dedekind = dedekind_sum(&e, &k).map_err(|_| EtaError::NonPositiveOrder(k))?;
    let two = cast::<T>(2.0);
    Ok(
        two * l.value.im + two * T::PI() * cast(rat_to_f64(&dedekind))
            - T::PI() * ef / (cast::<T>(6.0) * kf),
    )
}

/// The derivative
/// `F'_{k,eps}(s) = (4 pi/k) sum_n sigma(n) sin(2 pi eps n/k) exp(-2 pi n s/k)`,
/// summed until the terms drop below machine precision.
pub fn f_value_derivative<T: Real>(k: i64, eps: i64, s: T) -> T {
    let kf = cast::<T>(k as f64);
    let two_pi = T::PI() + T::PI();
    let r = (-two_pi * s / kf).exp();
    let mut total = T::zero();
    let mut rn = T::one();
    let mut n = 1usize;
    loop {
        rn = rn * r;
        let nf = cast::<T>(n as f64);
        let bound = nf * nf * rn;
        let angle = two_pi * cast::<T>((eps * n as i64).rem_euclid(k) as f64) / kf;
        total = total + cast::<T>(divisor_sum(n) as f64) * angle.sin() * rn;
        if bound < T::epsilon() * cast(1e-3) || rn.is_zero() {
            break;
        }
        n += 1;
    }
    cast::<T>(4.0) * T::PI() / kf * total
}

/// Nodes and weights of the 8-point Gauss-Legendre rule on `[-1, 1]`.
const GAUSS_LEGENDRE_8: [(f64, f64); 8] = [
    (-0.960_289_856_497_536_3, 0.101_228_536_290_376_26),
    (-0.796_666_477_413_626_7, 0.222_381_034_453_374_47),
    (-0.525_532_409_916_329_0, 0.313_706_645_877_887_3),
    (-0.183_434_642_495_649_8, 0.362_683_783_378_362_0),
    (0.183_434_642_495_649_8, 0.362_683_783_378_362_0),
    (0.525_532_409_916_329_0, 0.313_706_645_877_887_3),
    (0.796_666_477_413_626_7, 0.222_381_034_453_374_47),
    (0.960_289_856_497_536_3, 0.101_228_536_290_376_26),
];

fn integrate<T: Real>(f: &impl Fn(T) -> T, a: T, b: T, panels: usize) -> T {
    let width = (b - a) / cast(panels as f64);
    let half = width / cast(2.0);
    let mut total = T::zero();
    for j in 0..panels {
        let mid = a + width * cast(j as f64) + half;
        for &(x, w) in &GAUSS_LEGENDRE_8 {
            total = total + cast::<T>(w) * f(mid + half * cast(x));
        }
    }
    total * half
}

/// Evaluates `F_{k,eps}(s)` without the eta function, by integrating the
/// derivative series from `F(0) = 0`.
///
/// Below `u = 1` the integrand is taken as `F'_{k,eps*}(1/u)/u^2`, so both
/// series decay at least like `exp(-2 pi n/k)`. The number of quadrature
/// panels is doubled until successive estimates agree to `coarse_tol/100`.
pub fn theta_oracle<T: Real>(k: i64, eps: i64, s: T, coarse_tol: T) -> Result<T, EtaError> {
    if !(s >= cast(0.1)) || !s.is_finite() {
        return Err(EtaError::OracleDomain(to_f64(s)));
    }
    if !(coarse_tol > T::zero()) {
        return Err(EtaError::NonPositiveTolerance(to_f64(coarse_tol)));
    }
    let inv = unit_inverse(eps, k)?;
    let derivative = |u: T| {
        if u < T::one() {
            f_value_derivative(k, inv, u.recip()) / (u * u)
        } else {
            f_value_derivative(k, eps, u)
        }
    };
    let split = s.min(T::one());
    let estimate = |panels: usize| {
        let lower = integrate(&derivative, T::zero(), split, panels);
        let upper = if s > T::one() {
            integrate(&derivative, T::one(), s, panels)
        } else {
            T::zero()
        };
        lower + upper
    };
    let mut panels = 8;
    let mut previous = estimate(panels);
    loop {
        panels *= 2;
        let current = estimate(panels);
        if (current - previous).abs() < coarse_tol / cast(100.0) || panels >= 1 << 14 {
            return Ok(current);
        }
        previous = current;
    }
}
