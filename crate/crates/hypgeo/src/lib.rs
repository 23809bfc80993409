//! Hyperbolic geometry of the gluing data in the upper half-plane.
//!
//! The two geodesics `gamma+` and `gamma-` of a gluing meet at
//! `(eps+ + i s+)/k+` with angle `2 theta`. Together with the
//! Hirzebruch-Jung expansion of `(m - eps+* n)/(k+ n)` they bound an ideal
//! polygon with one finite corner, whose cusp angles add up to an exact
//! expression in Dedekind sums. Every identity here is checked in exact
//! rational arithmetic; only [`intersection_angle_check`] uses floats.

mod cusp;
mod polygon;
mod svg;

use thiserror::Error;

pub use cusp::{cusp_angle, reflection_fixed, CuspPoint};
pub use polygon::{
    aggregate_check, build_polygon, geodesic_endpoints, intersection_angle_check,
    polygon_identity_check, triangle_sanity, AggregateCheck, Geodesics, IdealPolygon,
    IntersectionAngle, PolygonIdentity, PolygonPicture, TriangleSanity,
};
pub use svg::{polygon_svg, write_polygon_svg};

/// Errors raised by the geometric constructions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HypError {
    /// A cusp point was given with `f = 0` and `|e| != 1`, or with
    /// `e = f = 0`.
    #[error("{e}/{f} is not a valid cusp point")]
    InvalidCusp { e: i64, f: i64 },
    /// A cusp angle was requested with an argument equal to the cusp.
    #[error("argument {point} coincides with the cusp {cusp}")]
    ArgumentAtCusp { cusp: CuspPoint, point: CuspPoint },
    /// The construction needs `n > 0`.
    #[error("gluing matrix has n = {0} <= 0")]
    NonPositiveN(i64),
    /// The construction needs `m > 0`, so that `gamma-` is a semicircle.
    #[error("gluing matrix has m = {0}; the construction needs m > 0")]
    NonPositiveM(i64),
    /// `(m - eps+* n)/k+` is not coprime to `n`.
    #[error("A = {a} is not coprime to n = {n}")]
    NotCoprime { a: i64, n: i64 },
}
