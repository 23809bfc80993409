//! Closed-form values of `F_{k,eps}` at algebraic arguments, and the
//! special family at `s = 1/sqrt(k^2 - 1)`.

use std::f64::consts::PI;

use etcs_ratarith::{dedekind_sum, rat, to_f64, Rational};
use num_bigint::BigInt;

use crate::{f_value, unit_inverse, EtaError};

/// Coefficients of the sextic `P`, leading coefficient first.
pub const SEXTIC_P: [i64; 7] = [16, -416, 2440, 4880, -12615, -1826, -32159];
/// Coefficients of the sextic `Q`, leading coefficient first.
pub const SEXTIC_Q: [i64; 7] = [16, -32, 200, 560, 105, -402, -191];

/// Half-width of the bisection bracket around a printed root.
const BRACKET: f64 = 0.05;

/// How the cosine `c` of a row is obtained.
#[derive(Debug, Clone, Copy)]
pub enum CosineSource {
    /// An explicit algebraic expression.
    Closed(fn() -> f64),
    /// The root near `seed` of `c -> poly(scale c)`.
    SexticRoot {
        poly: &'static [i64; 7],
        scale: f64,
        seed: f64,
    },
}

fn horner(poly: &[i64; 7], x: f64) -> f64 {
    poly.iter().fold(0.0, |acc, &a| acc * x + a as f64)
}

fn bisect(f: impl Fn(f64) -> f64, lo: f64, hi: f64) -> Result<f64, EtaError> {
    let (mut a, mut b) = (lo, hi);
    let (mut fa, fb) = (f(a), f(b));
    if fa * fb > 0.0 {
        return Err(EtaError::NoBracket { lo, hi });
    }
    while b - a > 1e-15 {
        let mid = 0.5 * (a + b);
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if (fm < 0.0) == (fa < 0.0) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    Ok(0.5 * (a + b))
}

impl CosineSource {
    pub fn value(&self) -> Result<f64, EtaError> {
        match *self {
            CosineSource::Closed(f) => Ok(f()),
            CosineSource::SexticRoot { poly, scale, seed } => {
                bisect(|c| horner(poly, scale * c), seed - BRACKET, seed + BRACKET)
            }
        }
    }
}

/// A row `(k, eps, s, S, b, sigma, c)` asserting
/// `F_{k,eps}(s) = pi (S + b) + (sigma/2) arccos c` with `S = S(eps, k)`.
#[derive(Debug, Clone, Copy)]
pub struct Table3Row {
    pub k: i64,
    pub eps: i64,
    pub s_label: &'static str,
    pub s: fn() -> f64,
    /// The printed Dedekind sum, as `(numerator, denominator)`.
    pub dedekind: (i64, i64),
    pub b: (i64, i64),
    pub sigma: i64,
    pub c_label: &'static str,
    pub c: CosineSource,
}

impl Table3Row {
    pub fn s_value(&self) -> f64 {
        (self.s)()
    }

    pub fn dedekind_rational(&self) -> Rational {
        rat(self.dedekind.0, self.dedekind.1)
    }

    pub fn b_rational(&self) -> Rational {
        rat(self.b.0, self.b.1)
    }

    /// `pi (S + b) + (sigma/2) arccos c`.
    pub fn expected(&self) -> Result<f64, EtaError> {
        let c = self.c.value()?;
        Ok(PI * to_f64(&(self.dedekind_rational() + self.b_rational()))
            + 0.5 * self.sigma as f64 * c.acos())
    }

    /// `pi (S - b) - (sigma/2) arccos c`, the value of `F_{k,eps*}(1/s)`.
    pub fn expected_companion(&self) -> Result<f64, EtaError> {
        let c = self.c.value()?;
        Ok(PI * to_f64(&(self.dedekind_rational() - self.b_rational()))
            - 0.5 * self.sigma as f64 * c.acos())
    }
}

macro_rules! row {
    ($k:expr, $e:expr, $sl:expr, $s:expr, $sn:expr, $sd:expr, $bn:expr, $bd:expr, $sg:expr, $cl:expr, $c:expr) => {
        Table3Row {
            k: $k,
            eps: $e,
            s_label: $sl,
            s: $s,
            dedekind: ($sn, $sd),
            b: ($bn, $bd),
            sigma: $sg,
            c_label: $cl,
            c: $c,
        }
    };
}

fn closed(f: fn() -> f64) -> CosineSource {
    CosineSource::Closed(f)
}

fn sqrt(x: f64) -> f64 {
    x.sqrt()
}

/// The 36 tabulated rows.
pub fn table3_rows() -> Vec<Table3Row> {
    vec![
        row!(3, 1, "1", || 1.0, 1, 18, 0, 1, 1, "1", closed(|| 1.0)),
        row!(4, 1, "1", || 1.0, 1, 8, 0, 1, 1, "1", closed(|| 1.0)),
        row!(
            4,
            1,
            "sqrt3",
            || sqrt(3.0),
            1,
            8,
            1,
            12,
            1,
            "1",
            closed(|| 1.0)
        ),
        row!(5, 1, "1", || 1.0, 1, 5, 0, 1, 1, "1", closed(|| 1.0)),
        row!(6, 1, "1", || 1.0, 5, 18, 0, 1, 1, "1", closed(|| 1.0)),
        row!(
            6,
            1,
            "sqrt3",
            || sqrt(3.0),
            5,
            18,
            1,
            6,
            1,
            "1",
            closed(|| 1.0)
        ),
        row!(
            3,
            1,
            "sqrt2",
            || sqrt(2.0),
            1,
            18,
            -1,
            6,
            1,
            "1/3",
            closed(|| 1.0 / 3.0)
        ),
        row!(
            3,
            1,
            "sqrt5",
            || sqrt(5.0),
            1,
            18,
            -1,
            12,
            1,
            "2/3",
            closed(|| 2.0 / 3.0)
        ),
        row!(
            3,
            1,
            "2sqrt2",
            || 2.0 * sqrt(2.0),
            1,
            18,
            1,
            4,
            -1,
            "1/3",
            closed(|| 1.0 / 3.0)
        ),
        row!(
            4,
            1,
            "sqrt7",
            || sqrt(7.0),
            1,
            8,
            0,
            1,
            1,
            "3/4",
            closed(|| 0.75)
        ),
        row!(
            4,
            1,
            "sqrt15",
            || sqrt(15.0),
            1,
            8,
            -1,
            6,
            1,
            "-1/4",
            closed(|| -0.25)
        ),
        row!(
            4,
            1,
            "sqrt(5/3)",
            || sqrt(5.0 / 3.0),
            1,
            8,
            -1,
            6,
            1,
            "1/4",
            closed(|| 0.25)
        ),
        row!(5, 1, "2", || 2.0, 1, 5, 0, 1, 1, "3/5", closed(|| 0.6)),
        row!(5, 2, "1", || 1.0, 0, 1, 1, 10, -1, "3/5", closed(|| 0.6)),
        row!(5, 2, "4", || 4.0, 0, 1, 1, 10, -1, "4/5", closed(|| 0.8)),
        row!(
            6,
            1,
            "sqrt2",
            || sqrt(2.0),
            5,
            18,
            -1,
            12,
            1,
            "1/3",
            closed(|| 1.0 / 3.0)
        ),
        row!(
            6,
            1,
            "sqrt5",
            || sqrt(5.0),
            5,
            18,
            1,
            12,
            1,
            "2/3",
            closed(|| 2.0 / 3.0)
        ),
        row!(
            6,
            1,
            "sqrt11",
            || sqrt(11.0),
            5,
            18,
            1,
            6,
            1,
            "5/6",
            closed(|| 5.0 / 6.0)
        ),
        row!(
            3,
            1,
            "2",
            || 2.0,
            1,
            18,
            1,
            6,
            -1,
            "sqrt3-1",
            closed(|| sqrt(3.0) - 1.0)
        ),
        row!(
            4,
            1,
            "sqrt2",
            || sqrt(2.0),
            1,
            8,
            -1,
            8,
            1,
            "sqrt2-1",
            closed(|| sqrt(2.0) - 1.0)
        ),
        row!(
            4,
            1,
            "sqrt5",
            || sqrt(5.0),
            1,
            8,
            -1,
            4,
            1,
            "(1-sqrt5)/2",
            closed(|| (1.0 - sqrt(5.0)) / 2.0)
        ),
        row!(
            4,
            1,
            "3",
            || 3.0,
            1,
            8,
            0,
            1,
            1,
            "sqrt3-1",
            closed(|| sqrt(3.0) - 1.0)
        ),
        row!(
            4,
            1,
            "5",
            || 5.0,
            1,
            8,
            0,
            1,
            1,
            "3sqrt5-6",
            closed(|| 3.0 * sqrt(5.0) - 6.0)
        ),
        row!(
            5,
            2,
            "2",
            || 2.0,
            0,
            1,
            1,
            10,
            -1,
            "3sqrt5-6",
            closed(|| 3.0 * sqrt(5.0) - 6.0)
        ),
        row!(
            6,
            1,
            "sqrt7",
            || sqrt(7.0),
            5,
            18,
            2,
            3,
            -1,
            "(1-sqrt21)/4",
            closed(|| (1.0 - sqrt(21.0)) / 4.0)
        ),
        row!(
            3,
            1,
            "sqrt3",
            || sqrt(3.0),
            1,
            18,
            -1,
            6,
            1,
            "cbrt2-1",
            closed(|| 2f64.cbrt() - 1.0)
        ),
        row!(
            4,
            1,
            "3sqrt3",
            || 3.0 * sqrt(3.0),
            1,
            8,
            -1,
            12,
            1,
            "cbrt2-1",
            closed(|| 2f64.cbrt() - 1.0)
        ),
        row!(
            3,
            1,
            "2sqrt5",
            || 2.0 * sqrt(5.0),
            1,
            18,
            -1,
            6,
            1,
            "(1-sqrt5+sqrt(5(sqrt5-1)/2))/3",
            closed(|| (1.0 - sqrt(5.0) + sqrt(5.0 * (sqrt(5.0) - 1.0) / 2.0)) / 3.0)
        ),
        row!(
            3,
            1,
            "4sqrt2",
            || 4.0 * sqrt(2.0),
            1,
            18,
            -1,
            12,
            1,
            "(6-5sqrt2+(4sqrt2+2)sqrt(sqrt2-1))/6",
            closed(
                || (6.0 - 5.0 * sqrt(2.0) + (4.0 * sqrt(2.0) + 2.0) * sqrt(sqrt(2.0) - 1.0)) / 6.0
            )
        ),
        row!(
            3,
            1,
            "sqrt5/2",
            || sqrt(5.0) / 2.0,
            1,
            18,
            0,
            1,
            1,
            "(sqrt5-1+sqrt(5(sqrt5-1)/2))/3",
            closed(|| (sqrt(5.0) - 1.0 + sqrt(5.0 * (sqrt(5.0) - 1.0) / 2.0)) / 3.0)
        ),
        row!(
            4,
            1,
            "3sqrt7",
            || 3.0 * sqrt(7.0),
            1,
            8,
            0,
            1,
            1,
            "(9+sqrt21-sqrt(26sqrt21-114))/16",
            closed(|| (9.0 + sqrt(21.0) - sqrt(26.0 * sqrt(21.0) - 114.0)) / 16.0)
        ),
        row!(
            4,
            1,
            "3/sqrt7",
            || 3.0 / sqrt(7.0),
            1,
            8,
            0,
            1,
            1,
            "(9+sqrt21+sqrt(26sqrt21-114))/16",
            closed(|| (9.0 + sqrt(21.0) + sqrt(26.0 * sqrt(21.0) - 114.0)) / 16.0)
        ),
        row!(
            3,
            1,
            "5sqrt2",
            || 5.0 * sqrt(2.0),
            1,
            18,
            1,
            6,
            -1,
            "0.766..., P(3c) = 0",
            CosineSource::SexticRoot {
                poly: &SEXTIC_P,
                scale: 3.0,
                seed: 0.766
            }
        ),
        row!(
            3,
            1,
            "5/sqrt2",
            || 5.0 / sqrt(2.0),
            1,
            18,
            0,
            1,
            1,
            "0.940..., P(-3c) = 0",
            CosineSource::SexticRoot {
                poly: &SEXTIC_P,
                scale: -3.0,
                seed: 0.940
            }
        ),
        row!(
            5,
            1,
            "sqrt2",
            || sqrt(2.0),
            1,
            5,
            0,
            1,
            1,
            "0.861..., Q(c) = 0",
            CosineSource::SexticRoot {
                poly: &SEXTIC_Q,
                scale: 1.0,
                seed: 0.861
            }
        ),
        row!(
            5,
            2,
            "sqrt2",
            || sqrt(2.0),
            0,
            1,
            1,
            10,
            -1,
            "0.634..., Q(-c) = 0",
            CosineSource::SexticRoot {
                poly: &SEXTIC_Q,
                scale: -1.0,
                seed: 0.634
            }
        ),
    ]
}

/// The outcome of checking one row.
#[derive(Debug, Clone, PartialEq)]
pub struct Table3Result {
    pub index: usize,
    pub k: i64,
    pub eps: i64,
    pub s_label: &'static str,
    /// Whether the printed `S` equals `S(eps, k)`.
    pub dedekind_matches: bool,
    pub f: f64,
    pub expected: f64,
    /// `|F_{k,eps}(s) - pi (S + b) - (sigma/2) arccos c|`.
    pub residual: f64,
    /// `|F_{k,eps*}(1/s) - pi (S - b) + (sigma/2) arccos c|`.
    pub companion_residual: f64,
    /// `|F_{k,eps}(s) + F_{k,eps*}(1/s) - 2 pi S(eps, k)|`.
    pub pair_residual: f64,
    pub pass: bool,
}

/// Results for every row.
#[derive(Debug, Clone, PartialEq)]
pub struct Table3Report {
    pub results: Vec<Table3Result>,
}

impl Table3Report {
    pub fn all_pass(&self) -> bool {
        self.results.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Table3Result> {
        self.results.iter().filter(|r| !r.pass)
    }
}

/// Checks every tabulated row, its companion value and the pair identity.
pub fn table3_check(tol: f64) -> Result<Table3Report, EtaError> {
    let eval_tol = tol / 4.0;
    let mut results = Vec::new();
    for (index, row) in table3_rows().into_iter().enumerate() {
        let s = row.s_value();
        let exact = dedekind_sum(&BigInt::from(row.eps), &BigInt::from(row.k))
            .map_err(|_| EtaError::NonPositiveOrder(row.k))?;
        let inv = unit_inverse(row.eps, row.k)?;
        let f = f_value(row.k, row.eps, s, eval_tol)?;
        let companion = f_value(row.k, inv, 1.0 / s, eval_tol)?;
        let expected = row.expected()?;
        let residual = (f - expected).abs();
        let companion_residual = (companion - row.expected_companion()?).abs();
        let pair_residual = (f + companion - 2.0 * PI * to_f64(&exact)).abs();
        let dedekind_matches = exact == row.dedekind_rational();
        results.push(Table3Result {
            index: index + 1,
            k: row.k,
            eps: row.eps,
            s_label: row.s_label,
            dedekind_matches,
            f,
            expected,
            residual,
            companion_residual,
            pair_residual,
            pass: dedekind_matches
                && residual <= tol
                && companion_residual <= tol
                && pair_residual <= tol,
        });
    }
    Ok(Table3Report { results })
}

/// A value of `F_{k,1}(1/sqrt(k^2 - 1))` against a closed form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpecialFamilyCheck {
    pub k: i64,
    pub value: f64,
    pub expected: f64,
    pub residual: f64,
    pub pass: bool,
}

fn special_family(k: i64, sign: f64, tol: f64) -> Result<SpecialFamilyCheck, EtaError> {
    if k < 2 {
        return Err(EtaError::NonPositiveOrder(k));
    }
    let kf = k as f64;
    let value = f_value(k, 1, 1.0 / (kf * kf - 1.0).sqrt(), tol / 4.0)?;
    let closed = ((kf + 1.0) / (kf - 1.0)).sqrt().atan() - (3.0 * kf + 2.0) * PI / (12.0 * kf);
    let expected = sign * closed;
    let residual = (value - expected).abs();
    Ok(SpecialFamilyCheck {
        k,
        value,
        expected,
        residual,
        pass: residual <= tol,
    })
}

/// `F_{k,1}(1/sqrt(k^2-1))` against
/// `arctan sqrt((k+1)/(k-1)) - (3k+2) pi/(12k)`.
pub fn special_family_printed(k: i64, tol: f64) -> Result<SpecialFamilyCheck, EtaError> {
    special_family(k, 1.0, tol)
}

/// `F_{k,1}(1/sqrt(k^2-1))` against
/// `(3k+2) pi/(12k) - arctan sqrt((k+1)/(k-1))`.
pub fn special_family_corrected(k: i64, tol: f64) -> Result<SpecialFamilyCheck, EtaError> {
    special_family(k, -1.0, tol)
}
