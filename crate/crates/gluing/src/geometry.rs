//! Gluing angle and circle-length ratios.

use std::f64::consts::PI;

use etcs_ratarith::{to_f64, Rational};
use num_bigint::BigInt;
use num_traits::Zero;

use crate::{GluingData, Matrix};

/// Geometry determined by valid gluing data.
#[derive(Debug, Clone, PartialEq)]
pub struct GluingGeometry {
    /// `cos^2 theta = -mq/(k+ k-)`.
    pub cos2_theta: Rational,
    /// `s+^2 = -nq/(mp)`; `None` when the ratio is not determined by the
    /// matrix (some entry vanishes).
    pub s_plus_sq: Option<Rational>,
    /// `s-^2 = -mn/(pq)`; `None` under the same condition as `s_plus_sq`.
    pub s_minus_sq: Option<Rational>,
    /// The gluing angle `theta = arg(m s+ + i n)`.
    pub theta: f64,
    /// `rho / pi` with `rho = pi - 2 theta`.
    pub rho_over_pi: f64,
}

impl GluingGeometry {
    /// Whether `theta = pi/2`.
    pub fn is_right_angle(&self) -> bool {
        self.cos2_theta.is_zero()
    }

    /// `rho = pi - 2 theta`.
    pub fn rho(&self) -> f64 {
        self.rho_over_pi * PI
    }

    /// `s+` as a float, when determined.
    pub fn s_plus(&self) -> Option<f64> {
        self.s_plus_sq.as_ref().map(|x| to_f64(x).sqrt())
    }

    /// `s-` as a float, when determined.
    pub fn s_minus(&self) -> Option<f64> {
        self.s_minus_sq.as_ref().map(|x| to_f64(x).sqrt())
    }
}

fn big(x: i64) -> BigInt {
    BigInt::from(x)
}

impl GluingData {
    /// Derives the gluing angle and the circle-length ratios.
    ///
    /// The angle satisfies `cos theta = sign(m) sqrt(cos^2 theta)` and
    /// `sign(sin theta) = sign(n)`, so it lies in `(0, pi)` exactly when
    /// `n > 0`. For `m = q = 0` the angle is `pi/2` (for `n > 0`) and the
    /// ratios are free, subject only to `s- = 1/s+`.
    pub fn geometry(&self) -> GluingGeometry {
        let Matrix { m, p, n, q } = self.matrix;
        let cos2_theta = Rational::new(big(-m * q), big(self.k_plus * self.k_minus));
        let (s_plus_sq, s_minus_sq) = if m != 0 && p != 0 && n != 0 && q != 0 {
            (
                Some(Rational::new(big(-n * q), big(m * p))),
                Some(Rational::new(big(-m * n), big(p * q))),
            )
        } else {
            (None, None)
        };
        let c = to_f64(&cos2_theta).abs().sqrt();
        let s = (1.0 - c * c).max(0.0).sqrt();
        let cos = if m < 0 { -c } else { c };
        let sin = if n < 0 { -s } else { s };
        let theta = sin.atan2(cos);
        GluingGeometry {
            cos2_theta,
            s_plus_sq,
            s_minus_sq,
            theta,
            rho_over_pi: 1.0 - 2.0 * theta / PI,
        }
    }
}
