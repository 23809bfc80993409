//! Building blocks of Picard rank 1 and their fixpoint contributions.
//!
//! The catalog lists each block with its Fano data, the order `k` of its
//! automorphism group and the isolated fixpoints of the powers of the
//! generator. [`d_gamma`] evaluates the generalised Dedekind sum of those
//! fixpoints, which enters the extended nu-invariant.

mod catalog;

use std::f64::consts::PI;

use etcs_ratarith::{mod_inverse, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use thiserror::Error;

pub use catalog::{load_catalog, BlockRecord, Catalog, FixpointOrbit};

/// Errors raised while loading blocks or evaluating their invariants.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum BlockError {
    /// A catalog line could not be parsed.
    #[error("catalog line {line}: {message}")]
    Parse { line: usize, message: String },
    /// A parsed record violates a catalog invariant.
    #[error("block {id}: {message}")]
    Invalid { id: u32, message: String },
    /// The residue is not a unit modulo the group order.
    #[error("eps = {eps} is not coprime to k = {k}")]
    NotAUnit { eps: i64, k: i64 },
    /// The floating-point sum is not close to a rational with small
    /// denominator.
    #[error("generalised Dedekind sum {value} of block {id} is not a rational with denominator <= {bound}")]
    NotRational { id: u32, value: f64, bound: i64 },
}

/// Largest residual accepted by the rational reconstruction in [`d_gamma`].
pub const RECONSTRUCTION_TOLERANCE: f64 = 1e-9;

/// Best rational approximation of `x` with denominator at most `max_den`,
/// from the continued-fraction convergents and the last semiconvergent.
fn best_rational(x: f64, max_den: i64) -> (i64, i64) {
    let (mut p0, mut q0, mut p1, mut q1) = (0i64, 1i64, 1i64, 0i64);
    let mut r = x;
    loop {
        let a = r.floor();
        let ai = a as i64;
        let q2 = q0 + ai * q1;
        if q2 > max_den {
            break;
        }
        let p2 = p0 + ai * p1;
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        let frac = r - a;
        if frac.abs() < 1e-15 {
            return (p1, q1);
        }
        r = 1.0 / frac;
    }
    let t = (max_den - q0) / q1;
    let (ps, qs) = (p0 + t * p1, q0 + t * q1);
    let err_conv = (x - p1 as f64 / q1 as f64).abs();
    let err_semi = (x - ps as f64 / qs as f64).abs();
    if err_semi < err_conv {
        (ps, qs)
    } else {
        (p1, q1)
    }
}

/// The generalised Dedekind sum of the isolated fixpoints of `gamma = tau^eps`:
///
/// `(3/k) sum_{j=1}^{k-1} cot(pi j/k) sum_p (prod cos(a_l/2) - 1) / prod sin(a_l/2)`,
///
/// where `p` runs over the isolated fixpoints of `gamma^j = tau^t` with
/// `t = eps j mod k`, and `a_l = 2 pi t b_l / k` for the zero-sum weights
/// `b` of the orbit.
///
/// The sum is evaluated in `f64` and reconstructed as the nearest rational
/// with denominator at most `6k^2`; a residual above
/// [`RECONSTRUCTION_TOLERANCE`] is reported as an error.
pub fn d_gamma(block: &BlockRecord, eps: i64) -> Result<Rational, BlockError> {
    let k = block.k;
    if eps.gcd(&k) != 1 {
        return Err(BlockError::NotAUnit { eps, k });
    }
    let mut total = 0.0f64;
    for j in 1..k {
        let t = (eps * j).mod_floor(&k);
        let cot = 1.0 / (PI * j as f64 / k as f64).tan();
        for orbit in block.fixpoints.iter().filter(|o| o.j_set.contains(&t)) {
            let mut cos_prod = 1.0;
            let mut sin_prod = 1.0;
            for &b in &orbit.exponents {
                let half = PI * (t * b) as f64 / k as f64;
                cos_prod *= half.cos();
                sin_prod *= half.sin();
            }
            total += orbit.point_count as f64 * cot * (cos_prod - 1.0) / sin_prod;
        }
    }
    let value = 3.0 / k as f64 * total;
    let bound = 6 * k * k;
    let (num, den) = best_rational(value, bound);
    if (value - num as f64 / den as f64).abs() > RECONSTRUCTION_TOLERANCE {
        return Err(BlockError::NotRational {
            id: block.id,
            value,
            bound,
        });
    }
    Ok(Rational::new(BigInt::from(num), BigInt::from(den)))
}

/// Whether `d_gamma(block, eps) - 24 eps*/k` is an integer.
pub fn integrality_check(block: &BlockRecord, eps: i64) -> Result<bool, BlockError> {
    let d = d_gamma(block, eps)?;
    let inv = mod_inverse(&eps, &block.k).map_err(|_| BlockError::NotAUnit { eps, k: block.k })?;
    let shift = Rational::new(BigInt::from(24 * inv), BigInt::from(block.k));
    Ok((d - shift).is_integer())
}
