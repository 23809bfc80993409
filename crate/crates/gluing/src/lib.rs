//! Gluing data of extra-twisted connected sums.
//!
//! A datum consists of the orders `k+`, `k-` of the two cyclic groups, the
//! residues `eps+`, `eps-` describing how they act, and the integer gluing
//! matrix `(m p; n q)` identifying the two boundary tori. This crate checks
//! the arithmetic conditions such a datum has to satisfy, derives the gluing
//! angle and circle-length ratios, implements the symmetry group and the
//! covering and duality maps, and enumerates all data for given orders.

mod enumerate;
mod geometry;
mod symmetry;

use std::fmt;

use num_integer::Integer;
use thiserror::Error;

pub use enumerate::{enumerate_gluings, enumerate_oriented_gluings};
pub use geometry::GluingGeometry;
pub use symmetry::{AngleChangingData, HElement};

/// Errors raised by operations on gluing data.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GluingError {
    /// A group order was zero or negative.
    #[error("group orders must be positive, got k+ = {k_plus}, k- = {k_minus}")]
    NonPositiveOrder { k_plus: i64, k_minus: i64 },
    /// One or more defining conditions fail.
    #[error("invalid gluing data: {}", list_conditions(.0))]
    Violated(Vec<Condition>),
    /// The covering degree does not divide `p`.
    #[error("covering degree {ell} does not divide p = {p}")]
    DegreeNotDividing { ell: i64, p: i64 },
    /// The quarter turn is undefined at right gluing angles.
    #[error("the quarter turn is undefined for gluing angle pi/2")]
    RightAngle,
}

fn list_conditions(cs: &[Condition]) -> String {
    cs.iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

/// The individual conditions checked by [`GluingData::validate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Condition {
    /// `k+` and `k-` are positive.
    PositiveOrders,
    /// `mq - np = -k+ k-`.
    Determinant,
    /// `k+` divides `eps+ m - n` and `eps+ p - q`.
    PlusCongruence,
    /// `k-` divides `eps- p + m` and `eps- q + n`.
    MinusCongruence,
    /// `gcd((n - eps+ m)/k+, m) = gcd((q - eps+ p)/k+, p) = gcd(eps+, k+) = 1`.
    PlusPrimitivity,
    /// `gcd((m + eps- p)/k-, p) = gcd((n + eps- q)/k-, q) = gcd(eps-, k-) = 1`.
    MinusPrimitivity,
    /// `np mq <= 0`, and `np mq = 0` forces `n = p = 0` or `m = q = 0`.
    SignProduct,
    /// `eps-` is the residue determined by `(k+, eps+, matrix)`.
    ResidueCompatibility,
    /// `gcd(m, n) = gcd(m, k+) = gcd(n, k+)` and `gcd(p, q) = gcd(p, k+) = gcd(q, k+)`.
    PlusGcdConsequence,
    /// `gcd(m, p) = gcd(m, k-) = gcd(p, k-)` and `gcd(n, q) = gcd(n, k-) = gcd(q, k-)`.
    MinusGcdConsequence,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Condition::PositiveOrders => "positive group orders",
            Condition::Determinant => "determinant mq - np = -k+k-",
            Condition::PlusCongruence => "plus-side congruence",
            Condition::MinusCongruence => "minus-side congruence",
            Condition::PlusPrimitivity => "plus-side primitivity",
            Condition::MinusPrimitivity => "minus-side primitivity",
            Condition::SignProduct => "sign product np*mq",
            Condition::ResidueCompatibility => "residue compatibility",
            Condition::PlusGcdConsequence => "plus-side gcd consequence",
            Condition::MinusGcdConsequence => "minus-side gcd consequence",
        };
        f.write_str(s)
    }
}

/// Outcome of [`GluingData::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    /// Every condition that fails, in declaration order.
    pub violated: Vec<Condition>,
}

impl Verdict {
    /// Whether all conditions hold.
    pub fn is_valid(&self) -> bool {
        self.violated.is_empty()
    }

    /// Converts the verdict into a `Result`.
    pub fn into_result(self) -> Result<(), GluingError> {
        if self.is_valid() {
            Ok(())
        } else {
            Err(GluingError::Violated(self.violated))
        }
    }
}

/// An integer gluing matrix `(m p; n q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Matrix {
    pub m: i64,
    pub p: i64,
    pub n: i64,
    pub q: i64,
}

impl Matrix {
    /// Builds `(m p; n q)`.
    pub const fn new(m: i64, p: i64, n: i64, q: i64) -> Self {
        Matrix { m, p, n, q }
    }

    /// The determinant `mq - np`.
    pub fn det(&self) -> i64 {
        self.m * self.q - self.n * self.p
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} {}; {} {})", self.m, self.p, self.n, self.q)
    }
}

/// One torus matching.
///
/// The residues are stored as canonical representatives in `[0, k)`; the
/// constructor accepts any integer and reduces it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GluingData {
    pub k_plus: i64,
    pub k_minus: i64,
    pub eps_plus: i64,
    pub eps_minus: i64,
    pub matrix: Matrix,
}

/// The representative of `e mod k` in `(-k/2, k/2]`, and `0` when `k = 1`.
pub fn signed_residue(e: i64, k: i64) -> i64 {
    let r = e.mod_floor(&k);
    if 2 * r > k {
        r - k
    } else {
        r
    }
}

/// The inverse of `e` modulo `k` in `[0, k)`, or `None` if it does not exist.
pub(crate) fn inverse(e: i64, k: i64) -> Option<i64> {
    etcs_ratarith::mod_inverse(&e, &k).ok()
}

impl GluingData {
    /// Builds a datum, reducing both residues modulo their orders.
    pub fn new(
        k_plus: i64,
        k_minus: i64,
        eps_plus: i64,
        eps_minus: i64,
        matrix: Matrix,
    ) -> Result<Self, GluingError> {
        if k_plus < 1 || k_minus < 1 {
            return Err(GluingError::NonPositiveOrder { k_plus, k_minus });
        }
        Ok(GluingData {
            k_plus,
            k_minus,
            eps_plus: eps_plus.mod_floor(&k_plus),
            eps_minus: eps_minus.mod_floor(&k_minus),
            matrix,
        })
    }

    /// Builds a datum and rejects it unless it validates.
    pub fn new_valid(
        k_plus: i64,
        k_minus: i64,
        eps_plus: i64,
        eps_minus: i64,
        matrix: Matrix,
    ) -> Result<Self, GluingError> {
        let g = Self::new(k_plus, k_minus, eps_plus, eps_minus, matrix)?;
        g.validate().into_result()?;
        Ok(g)
    }

    /// `eps+` as the representative in `(-k+/2, k+/2]`.
    pub fn signed_eps_plus(&self) -> i64 {
        signed_residue(self.eps_plus, self.k_plus)
    }

    /// `eps-` as the representative in `(-k-/2, k-/2]`.
    pub fn signed_eps_minus(&self) -> i64 {
        signed_residue(self.eps_minus, self.k_minus)
    }

    /// The inverse `eps+*` in `[0, k+)`; `0` when `k+ = 1`.
    ///
    /// # Panics
    ///
    /// Panics if `eps+` is not a unit, which cannot happen for valid data.
    pub fn eps_plus_inv(&self) -> i64 {
        inverse(self.eps_plus, self.k_plus).expect("eps+ is a unit modulo k+")
    }

    /// The inverse `eps-*` in `[0, k-)`; `0` when `k- = 1`.
    ///
    /// # Panics
    ///
    /// Panics if `eps-` is not a unit, which cannot happen for valid data.
    pub fn eps_minus_inv(&self) -> i64 {
        inverse(self.eps_minus, self.k_minus).expect("eps- is a unit modulo k-")
    }

    /// Checks every defining condition and reports all failures.
    pub fn validate(&self) -> Verdict {
        let (kp, km) = (self.k_plus, self.k_minus);
        if kp < 1 || km < 1 {
            return Verdict {
                violated: vec![Condition::PositiveOrders],
            };
        }
        let Matrix { m, p, n, q } = self.matrix;
        let (ep, em) = (self.eps_plus, self.eps_minus);
        let mut violated = Vec::new();

        if self.matrix.det() != -kp * km {
            violated.push(Condition::Determinant);
        }
        let plus_cong = (ep * m - n) % kp == 0 && (ep * p - q) % kp == 0;
        if !plus_cong {
            violated.push(Condition::PlusCongruence);
        }
        let minus_cong = (em * p + m) % km == 0 && (em * q + n) % km == 0;
        if !minus_cong {
            violated.push(Condition::MinusCongruence);
        }
        let plus_prim = plus_cong
            && ((n - ep * m) / kp).gcd(&m) == 1
            && ((q - ep * p) / kp).gcd(&p) == 1
            && ep.gcd(&kp) == 1;
        if !plus_prim {
            violated.push(Condition::PlusPrimitivity);
        }
        let minus_prim = minus_cong
            && ((m + em * p) / km).gcd(&p) == 1
            && ((n + em * q) / km).gcd(&q) == 1
            && em.gcd(&km) == 1;
        if !minus_prim {
            violated.push(Condition::MinusPrimitivity);
        }
        if !sign_product_ok(&self.matrix) {
            violated.push(Condition::SignProduct);
        }
        if plus_prim && violated.is_empty() {
            let derived = derive_eps_minus(kp, ep, self.matrix);
            if derived != Ok((km, em)) {
                violated.push(Condition::ResidueCompatibility);
            }
        }
        let plus_gcd = m.gcd(&n) == m.gcd(&kp)
            && m.gcd(&kp) == n.gcd(&kp)
            && p.gcd(&q) == p.gcd(&kp)
            && p.gcd(&kp) == q.gcd(&kp);
        if !plus_gcd {
            violated.push(Condition::PlusGcdConsequence);
        }
        let minus_gcd = m.gcd(&p) == m.gcd(&km)
            && m.gcd(&km) == p.gcd(&km)
            && n.gcd(&q) == n.gcd(&km)
            && n.gcd(&km) == q.gcd(&km);
        if !minus_gcd {
            violated.push(Condition::MinusGcdConsequence);
        }
        Verdict { violated }
    }

    /// Whether [`validate`](Self::validate) reports no failures.
    pub fn is_valid(&self) -> bool {
        self.validate().is_valid()
    }

    /// Whether the gluing angle is a right angle (`m = q = 0`).
    pub fn is_right_angle(&self) -> bool {
        self.matrix.m == 0 && self.matrix.q == 0
    }

    /// Order of the fundamental group, `|p|`; `0` stands for the infinite
    /// cyclic group.
    pub fn fundamental_group(&self) -> u64 {
        self.matrix.p.unsigned_abs()
    }

    /// The unique connected `ell`-fold covering space.
    pub fn covering(&self, ell: i64) -> Result<GluingData, GluingError> {
        let Matrix { m, p, n, q } = self.matrix;
        if ell < 1 || p % ell != 0 {
            return Err(GluingError::DegreeNotDividing { ell, p });
        }
        let gp = ell.gcd(&self.k_plus);
        let gm = ell.gcd(&self.k_minus);
        let kp = self.k_plus / gp;
        let km = self.k_minus / gm;
        let matrix = Matrix::new(m / gm, p / ell, n * ell / (gp * gm), q / gp);
        GluingData::new(
            kp,
            km,
            ell * self.eps_plus / gp,
            ell * self.eps_minus / gm,
            matrix,
        )
    }

    /// The t-dual datum `(-q n; p -m)` with both residues replaced by
    /// `-eps*`; the gluing angle is unchanged.
    pub fn t_dual(&self) -> GluingData {
        let Matrix { m, p, n, q } = self.matrix;
        GluingData {
            k_plus: self.k_plus,
            k_minus: self.k_minus,
            eps_plus: (-self.eps_plus_inv()).mod_floor(&self.k_plus),
            eps_minus: (-self.eps_minus_inv()).mod_floor(&self.k_minus),
            matrix: Matrix::new(-q, n, p, -m),
        }
    }
}

impl fmt::Display for GluingData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} k=({},{}) eps=({},{})",
            self.matrix,
            self.k_plus,
            self.k_minus,
            self.signed_eps_plus(),
            self.signed_eps_minus()
        )
    }
}

fn sign_product_ok(mat: &Matrix) -> bool {
    let Matrix { m, p, n, q } = *mat;
    let np = (n as i128) * (p as i128);
    let mq = (m as i128) * (q as i128);
    let prod = np * mq;
    if prod > 0 {
        return false;
    }
    if prod == 0 {
        return (n == 0 && p == 0) || (m == 0 && q == 0);
    }
    true
}

/// Completes `(k+, eps+, matrix)` to a full datum by computing `k-` and the
/// unique compatible `eps-`.
///
/// Preconditions are the negative determinant divisible by `k+`, the
/// plus-side congruence and primitivity, and the sign-product condition;
/// the first one that fails is reported.
pub fn derive_eps_minus(
    k_plus: i64,
    eps_plus: i64,
    matrix: Matrix,
) -> Result<(i64, i64), GluingError> {
    if k_plus < 1 {
        return Err(GluingError::NonPositiveOrder { k_plus, k_minus: 1 });
    }
    let Matrix { m, p, n, q } = matrix;
    let det = matrix.det();
    if det >= 0 || det % k_plus != 0 {
        return Err(GluingError::Violated(vec![Condition::Determinant]));
    }
    let ep = eps_plus.mod_floor(&k_plus);
    if (ep * m - n) % k_plus != 0 || (ep * p - q) % k_plus != 0 {
        return Err(GluingError::Violated(vec![Condition::PlusCongruence]));
    }
    let u = (q - ep * p) / k_plus;
    let v = (n - ep * m) / k_plus;
    if u.gcd(&p) != 1 || v.gcd(&m) != 1 || ep.gcd(&k_plus) != 1 {
        return Err(GluingError::Violated(vec![Condition::PlusPrimitivity]));
    }
    if !sign_product_ok(&matrix) {
        return Err(GluingError::Violated(vec![Condition::SignProduct]));
    }
    let k_minus = -det / k_plus;
    // Bezout pair with 1 = b p - a u.
    let eg = p.extended_gcd(&-u);
    let (b, a) = (eg.x * eg.gcd, eg.y * eg.gcd);
    debug_assert_eq!(b * p - a * u, 1);
    let eps_minus = (a * v - b * m).mod_floor(&k_minus);
    Ok((k_minus, eps_minus))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signed_residue_range() {
        assert_eq!(signed_residue(4, 5), -1);
        assert_eq!(signed_residue(3, 5), -2);
        assert_eq!(signed_residue(2, 5), 2);
        assert_eq!(signed_residue(1, 2), 1);
        assert_eq!(signed_residue(3, 6), 3);
        assert_eq!(signed_residue(7, 1), 0);
    }

    #[test]
    fn verdict_lists_failures() {
        let g = GluingData::new(4, 4, 1, -1, Matrix::new(0, 4, 4, -8)).unwrap();
        let v = g.validate();
        assert!(v.violated.contains(&Condition::SignProduct));
        let err = v.into_result().unwrap_err();
        assert!(err.to_string().contains("sign product"));
    }

    #[test]
    fn derive_rejects_bad_determinant() {
        assert!(derive_eps_minus(3, 1, Matrix::new(1, 0, 0, 1)).is_err());
    }
}
