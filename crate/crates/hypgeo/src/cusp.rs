//! Cusp points of the upper half-plane and cuspidal angles.

use std::fmt;

use etcs_ratarith::{rat, Rational};
use num_integer::Integer;

use crate::HypError;

/// A reduced fraction `e/f` with `f >= 0`; `1/0` is the point at infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CuspPoint {
    e: i64,
    f: i64,
}

impl CuspPoint {
    /// Reduces `e/f`, moving the sign into the numerator. `f = 0` gives the
    /// point at infinity whenever `e != 0`.
    pub fn new(e: i64, f: i64) -> Result<Self, HypError> {
        if e == 0 && f == 0 {
            return Err(HypError::InvalidCusp { e, f });
        }
        if f == 0 {
            return Ok(Self::infinity());
        }
        let g = e.gcd(&f) * f.signum();
        Ok(CuspPoint { e: e / g, f: f / g })
    }

    /// The point at infinity.
    pub fn infinity() -> Self {
        CuspPoint { e: 1, f: 0 }
    }

    /// The integer `n`.
    pub fn integer(n: i64) -> Self {
        CuspPoint { e: n, f: 1 }
    }

    pub fn numerator(&self) -> i64 {
        self.e
    }

    pub fn denominator(&self) -> i64 {
        self.f
    }

    pub fn is_infinity(&self) -> bool {
        self.f == 0
    }

    /// The value as a rational, or `None` at infinity.
    pub fn to_rational(&self) -> Option<Rational> {
        (!self.is_infinity()).then(|| rat(self.e, self.f))
    }

    /// The value as a float, infinite at the point at infinity.
    pub fn to_f64(&self) -> f64 {
        if self.is_infinity() {
            f64::INFINITY
        } else {
            self.e as f64 / self.f as f64
        }
    }

    /// `e1 f2 - f1 e2`.
    pub fn cross(&self, other: &CuspPoint) -> i64 {
        self.e * other.f - self.f * other.e
    }
}

impl fmt::Display for CuspPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinity() {
            write!(f, "inf")
        } else if self.f == 1 {
            write!(f, "{}", self.e)
        } else {
            write!(f, "{}/{}", self.e, self.f)
        }
    }
}

/// `f x - e` for a finite `x`.
fn offset(cusp: &CuspPoint, x: &CuspPoint) -> Rational {
    rat(cusp.f * x.e - cusp.e * x.f, x.f)
}

/// The cuspidal angle `(x - y)/((f x - e)(f y - e))` at the cusp `e/f`.
///
/// At infinity this is `x - y`; with `x` or `y` at infinity the limits
/// `-1/(f (f x - e))` and `1/(f (f y - e))` are used.
pub fn cusp_angle(cusp: &CuspPoint, x: &CuspPoint, y: &CuspPoint) -> Result<Rational, HypError> {
    for point in [x, y] {
        if point == cusp {
            return Err(HypError::ArgumentAtCusp {
                cusp: *cusp,
                point: *point,
            });
        }
    }
    if x == y {
        return Ok(rat(0, 1));
    }
    let f = rat(cusp.f, 1);
    Ok(match (x.to_rational(), y.to_rational()) {
        (Some(xr), Some(yr)) if cusp.is_infinity() => xr - yr,
        (Some(xr), Some(yr)) => (xr - yr) / (offset(cusp, x) * offset(cusp, y)),
        (Some(_), None) => -(f * offset(cusp, x)).recip(),
        (None, Some(_)) => (f * offset(cusp, y)).recip(),
        (None, None) => unreachable!("x == y handled above"),
    })
}

/// The reflection criterion for the geodesic joining two cusps:
/// `|e1 f2 - f1 e2|` is 1 or 2.
pub fn reflection_fixed(a: &CuspPoint, b: &CuspPoint) -> bool {
    matches!(a.cross(b).abs(), 1 | 2)
}
