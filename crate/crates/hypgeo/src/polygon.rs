//! The geodesics of a gluing and the ideal polygon built from them.

use etcs_gluing::GluingData;
use etcs_ratarith::{dedekind_sum, hj_convergents, hj_expand, int, rat, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::{cusp_angle, CuspPoint, HypError};

/// `gamma+` is the vertical line over `plus_foot`; `gamma-` joins
/// `minus_start` to `minus_end`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Geodesics {
    /// `eps+/k+`.
    pub plus_foot: Rational,
    /// `eps+/k+ - n/(k+ m)`, at infinity when `m = 0`.
    pub minus_start: CuspPoint,
    /// `eps+/k+ - q/(k+ p)`, at infinity when `p = 0`.
    pub minus_end: CuspPoint,
}

fn check_n(g: &GluingData) -> Result<(), HypError> {
    if g.matrix.n <= 0 {
        return Err(HypError::NonPositiveN(g.matrix.n));
    }
    Ok(())
}

fn check_m(g: &GluingData) -> Result<(), HypError> {
    if g.matrix.m <= 0 {
        return Err(HypError::NonPositiveM(g.matrix.m));
    }
    Ok(())
}

/// The endpoints of both geodesics, for data with `n > 0`.
pub fn geodesic_endpoints(g: &GluingData) -> Result<Geodesics, HypError> {
    check_n(g)?;
    let mat = g.matrix;
    let (e, k) = (g.eps_plus, g.k_plus);
    Ok(Geodesics {
        plus_foot: rat(e, k),
        minus_start: CuspPoint::new(e * mat.m - mat.n, k * mat.m)?,
        minus_end: CuspPoint::new(e * mat.p - mat.q, k * mat.p)?,
    })
}

/// The angle at which `gamma+` (pointing up) meets `gamma-` (from its start
/// to its end) at `(eps+ + i s+)/k+`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntersectionAngle {
    pub angle: f64,
    /// `2 theta`.
    pub expected: f64,
    /// Distance of the intersection point from the circle of `gamma-`.
    pub off_circle: f64,
    pub pass: bool,
}

/// Checks that the geodesics meet at `(eps+ + i s+)/k+` with angle
/// `2 theta`, for data with `m > 0` and `n > 0`.
pub fn intersection_angle_check(g: &GluingData, tol: f64) -> Result<IntersectionAngle, HypError> {
    check_n(g)?;
    check_m(g)?;
    let geo = g.geometry();
    let ends = geodesic_endpoints(g)?;
    let (x1, x2) = (ends.minus_start.to_f64(), ends.minus_end.to_f64());
    let center = 0.5 * (x1 + x2);
    let radius = 0.5 * (x2 - x1).abs();
    let k = g.k_plus as f64;
    let s_plus = geo.s_plus().unwrap_or(1.0);
    let (zx, zy) = (g.eps_plus as f64 / k, s_plus / k);
    let (dx, dy) = (zx - center, zy);
    let off_circle = (dx.hypot(dy) - radius).abs();
    // gamma- runs from the smaller endpoint to the larger one over the top,
    // so its tangent is the radius turned clockwise.
    let (tx, ty) = (dy / radius, -dx / radius);
    let angle = tx.abs().atan2(ty);
    let expected = 2.0 * geo.theta;
    Ok(IntersectionAngle {
        angle,
        expected,
        off_circle,
        pass: off_circle <= tol && (angle - expected).abs() <= tol,
    })
}

/// Applies `(a b; c d)` to a cusp point.
fn mobius(t: [i64; 4], x: &CuspPoint) -> CuspPoint {
    let (e, f) = (x.numerator(), x.denominator());
    CuspPoint::new(t[0] * e + t[1] * f, t[2] * e + t[3] * f).expect("unimodular image")
}

/// One picture of the polygon: its ideal corners in boundary order and the
/// far endpoints of the two sides through the finite corner.
#[derive(Debug, Clone, PartialEq)]
pub struct PolygonPicture {
    /// Corners `0, ..., l`.
    pub corners: Vec<CuspPoint>,
    /// The other endpoint of the geodesic through the finite corner and
    /// corner `0`.
    pub before_first: CuspPoint,
    /// The other endpoint of the geodesic through the finite corner and
    /// corner `l`.
    pub after_last: CuspPoint,
    /// The finite corner `(re, im)`.
    pub finite_vertex: (f64, f64),
}

impl PolygonPicture {
    /// The cuspidal angle at every ideal corner, measured from the preceding
    /// side to the following one.
    pub fn cusp_angles(&self) -> Vec<Rational> {
        let c = &self.corners;
        let last = c.len() - 1;
        (0..=last)
            .map(|j| {
                let prev = if j == 0 { self.before_first } else { c[j - 1] };
                let next = if j == last { self.after_last } else { c[j + 1] };
                cusp_angle(&c[j], &prev, &next).expect("corners are distinct")
            })
            .collect()
    }

    /// Sum of [`cusp_angles`](Self::cusp_angles).
    pub fn cusp_angle_sum(&self) -> Rational {
        self.cusp_angles()
            .into_iter()
            .fold(Rational::zero(), |a, b| a + b)
    }
}

/// The ideal polygon of a gluing, in the original picture `P` and in the
/// picture `P'` where the corners are the convergents of a continued
/// fraction.
#[derive(Debug, Clone, PartialEq)]
pub struct IdealPolygon {
    /// Digits `c_1, ..., c_l` of the expansion of `(m - eps+* n)/(k+ n)`.
    pub digits: Vec<i64>,
    /// Convergent numerators `a'_0, ..., a'_l`.
    pub a_prime: Vec<i64>,
    /// Convergent denominators `b'_0, ..., b'_l`.
    pub b_prime: Vec<i64>,
    /// The transformation `C = (eps+* -r; -k+ eps+)` from `P` to `P'`.
    pub transform: [i64; 4],
    pub picture: PolygonPicture,
    pub picture_prime: PolygonPicture,
}

impl IdealPolygon {
    /// The number of ideal sides `l`.
    pub fn ell(&self) -> usize {
        self.digits.len()
    }

    /// Number of vertices, the finite one included.
    pub fn vertex_count(&self) -> usize {
        self.ell() + 2
    }
}

fn to_i64(x: &BigInt) -> i64 {
    use num_traits::ToPrimitive;
    x.to_i64().expect("polygon data fit in i64")
}

/// Builds the polygon for data with `m > 0` and `n > 0`.
///
/// The corners of `P'` are the convergents `a'_j/b'_j` of
/// `a'_0/b'_0 = (m - eps+* n)/(k+ n)`, ending with `a'_l/b'_l = 1/0`. They
/// are carried to `P` by `C^{-1}`, where `C = (eps+* -r; -k+ eps+)` with
/// `eps+ eps+* = k+ r + 1` sends `eps+/k+` to infinity.
pub fn build_polygon(g: &GluingData) -> Result<IdealPolygon, HypError> {
    check_n(g)?;
    check_m(g)?;
    let mat = g.matrix;
    let (e, k) = (g.eps_plus, g.k_plus);
    let inv = g.eps_plus_inv();
    let shifted = mat.m - inv * mat.n;
    let a = shifted / k;
    if shifted % k != 0 || a.gcd(&mat.n) != 1 {
        return Err(HypError::NotCoprime { a, n: mat.n });
    }
    let expansion = hj_expand(&rat(a, mat.n));
    let conv = hj_convergents(&expansion);
    let digits: Vec<i64> = expansion.digits.iter().map(to_i64).collect();
    let a_prime: Vec<i64> = conv.a_prime.iter().map(to_i64).collect();
    let b_prime: Vec<i64> = conv.b_prime.iter().map(to_i64).collect();
    let r = (e * inv - 1) / k;
    let transform = [inv, -r, -k, e];
    let inverse = [e, r, k, inv];
    let corners_prime: Vec<CuspPoint> = a_prime
        .iter()
        .zip(&b_prime)
        .map(|(&x, &y)| CuspPoint::new(x, y))
        .collect::<Result<_, _>>()?;
    let corners: Vec<CuspPoint> = corners_prime.iter().map(|c| mobius(inverse, c)).collect();
    let ends = geodesic_endpoints(g)?;
    let s_plus = g.geometry().s_plus().unwrap_or(1.0);
    let z = (e as f64 / k as f64, s_plus / k as f64);
    let z_prime = {
        let (num_re, num_im) = (inv as f64 * z.0 - r as f64, inv as f64 * z.1);
        let (den_re, den_im) = (-(k as f64) * z.0 + e as f64, -(k as f64) * z.1);
        let norm = den_re * den_re + den_im * den_im;
        (
            (num_re * den_re + num_im * den_im) / norm,
            (num_im * den_re - num_re * den_im) / norm,
        )
    };
    let picture = PolygonPicture {
        corners,
        before_first: ends.minus_end,
        after_last: CuspPoint::infinity(),
        finite_vertex: z,
    };
    let picture_prime = PolygonPicture {
        corners: corners_prime,
        before_first: mobius(transform, &ends.minus_end),
        after_last: mobius(transform, &CuspPoint::infinity()),
        finite_vertex: z_prime,
    };
    Ok(IdealPolygon {
        digits,
        a_prime,
        b_prime,
        transform,
        picture,
        picture_prime,
    })
}

/// Both sides of the cusp-angle identity, with the congruence for `b'_1`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolygonIdentity {
    pub ell: usize,
    /// `(-q/(k- n) + b'_1/b'_0) + (eps+*/k+ + c_1) + sum_{j >= 2} c_j`.
    pub lhs: Rational,
    /// The cusp angles of `P'` added up directly.
    pub cusp_angle_sum: Rational,
    /// `3(l - 1) + m/(k+ n) - q/(k- n) - 12 S(-b'_1, n)`.
    pub rhs: Rational,
    pub b1_prime: i64,
    /// `(q + eps-* n)/k- mod n`.
    pub congruence_target: i64,
    pub congruence_holds: bool,
    pub pass: bool,
}

/// Evaluates the cusp-angle identity of the polygon in exact arithmetic.
pub fn polygon_identity_check(g: &GluingData) -> Result<PolygonIdentity, HypError> {
    let poly = build_polygon(g)?;
    let mat = g.matrix;
    let (kp, km, n) = (g.k_plus, g.k_minus, mat.n);
    let ell = poly.ell();
    let b0 = poly.b_prime[0];
    let b1 = poly.b_prime[1];
    let c1 = poly.digits[0];
    let tail: i64 = poly.digits[1..].iter().sum();
    let lhs =
        (rat(-mat.q, km * n) + rat(b1, b0)) + (rat(g.eps_plus_inv(), kp) + int(c1)) + int(tail);
    let s = dedekind_sum(&BigInt::from(-b1), &BigInt::from(n)).expect("n > 0");
    let rhs = int(3 * (ell as i64 - 1)) + rat(mat.m, kp * n) - rat(mat.q, km * n) - s * int(12);
    let cusp_angle_sum = poly.picture_prime.cusp_angle_sum();
    let congruence_target = ((mat.q + g.eps_minus_inv() * n) / km).mod_floor(&n);
    let congruence_holds = b1.mod_floor(&n) == congruence_target;
    let pass = lhs == rhs && cusp_angle_sum == lhs && b0 == n;
    Ok(PolygonIdentity {
        ell,
        lhs,
        cusp_angle_sum,
        rhs,
        b1_prime: b1,
        congruence_target,
        congruence_holds,
        pass,
    })
}

/// The area and cusp-angle aggregate, split into its rational part and the
/// coefficient of `theta/pi`.
#[derive(Debug, Clone, PartialEq)]
pub struct AggregateCheck {
    /// `288 area/(4 pi) - 24 (cusp angle sum)`, rational part.
    pub lhs_rational: Rational,
    /// The same, coefficient of `theta/pi`.
    pub lhs_theta: Rational,
    /// `72 rho/pi + 24(q/(k- n) - m/(k+ n) + 12 S(A, n))`, rational part.
    pub rhs_rational: Rational,
    /// The same, coefficient of `theta/pi`.
    pub rhs_theta: Rational,
    pub pass: bool,
}

/// Compares `288 area/(4 pi) - 24 (cusp angle sum)` with the Dedekind-sum
/// expression, where the area `(vertices - 2) pi - 2 theta` comes from
/// Gauss-Bonnet with a single nonzero interior angle `2 theta`.
pub fn aggregate_check(g: &GluingData) -> Result<AggregateCheck, HypError> {
    let poly = build_polygon(g)?;
    let mat = g.matrix;
    let (kp, km, n) = (g.k_plus, g.k_minus, mat.n);
    let area_pi = int(poly.vertex_count() as i64 - 2);
    let area_theta = int(-2);
    let cusps = poly.picture_prime.cusp_angle_sum();
    let lhs_rational = area_pi * rat(288, 4) - cusps * int(24);
    let lhs_theta = area_theta * rat(288, 4);
    let a = (mat.m - g.eps_plus_inv() * n) / kp;
    let s = dedekind_sum(&BigInt::from(a), &BigInt::from(n)).expect("n > 0");
    let rhs_rational = int(72) + (rat(mat.q, km * n) - rat(mat.m, kp * n) + s * int(12)) * int(24);
    let rhs_theta = int(-144);
    let pass = lhs_rational == rhs_rational && lhs_theta == rhs_theta;
    Ok(AggregateCheck {
        lhs_rational,
        lhs_theta,
        rhs_rational,
        rhs_theta,
        pass,
    })
}

/// The ideal triangle with corners `0, 1, infinity`.
#[derive(Debug, Clone, PartialEq)]
pub struct TriangleSanity {
    pub cusp_angle_sum: Rational,
    /// `area/(4 pi)` from Gauss-Bonnet.
    pub area_over_4pi: Rational,
    pub pass: bool,
}

/// Checks that the cusp angles of the ideal triangle add up to 3 and that
/// one twelfth of this equals `area/(4 pi) = 1/4`.
pub fn triangle_sanity() -> TriangleSanity {
    let zero = CuspPoint::integer(0);
    let one = CuspPoint::integer(1);
    let inf = CuspPoint::infinity();
    let picture = PolygonPicture {
        corners: vec![zero, one, inf],
        before_first: inf,
        after_last: zero,
        finite_vertex: (0.0, 0.0),
    };
    let cusp_angle_sum = picture.cusp_angle_sum();
    let area_over_4pi = rat(3 - 2, 4);
    let pass = cusp_angle_sum == int(3) && cusp_angle_sum.clone() / int(12) == area_over_4pi;
    TriangleSanity {
        cusp_angle_sum,
        area_over_4pi,
        pass,
    }
}
