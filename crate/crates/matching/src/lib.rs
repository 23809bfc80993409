//! Rank-1 configurations and assembly of extra-twisted connected sums.
//!
//! A pair of building blocks with polarising lattices of norms `n+`, `n-`
//! is matched through a Gram matrix `(n+ h; h n-)`. The matching is
//! compatible with gluing data exactly when `cos^2 theta = h^2/(n+ n-)`.
//! [`enumerate_examples`] runs over all blocks, Gram matrices and gluing
//! data and computes the invariants of every resulting example.

mod covering;

use std::collections::BTreeSet;
use std::f64::consts::PI;
use std::thread;

use etcs_blocks::{d_gamma, BlockError, BlockRecord, Catalog};
use etcs_gluing::{enumerate_oriented_gluings, GluingData, Matrix};
use etcs_nu::{nu_bar_exact, nu_mod48, NuBreakdown, NuError, NuMod48};
use etcs_ratarith::Rational;
use num_bigint::BigInt;
use num_integer::Integer;
use thiserror::Error;

pub use covering::{cover_row, covering_edges, find_row, CoverEdge, RowMatch};

/// Errors raised while assembling examples.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum MatchingError {
    #[error(transparent)]
    Block(#[from] BlockError),
    #[error(transparent)]
    Nu(#[from] NuError),
    /// The Gram matrix is not positive definite or not even.
    #[error("invalid configuration ({n_plus} {h}; {h} {n_minus}): {reason}")]
    InvalidConfiguration {
        n_plus: i64,
        n_minus: i64,
        h: i64,
        reason: &'static str,
    },
}

/// A rank-1 configuration, given by the Gram matrix `(n+ h; h n-)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Configuration {
    pub n_plus: i64,
    pub n_minus: i64,
    pub h: i64,
}

impl Configuration {
    /// Builds a configuration, checking that the Gram matrix is even and
    /// positive definite and that `h >= 0`.
    pub fn new(n_plus: i64, n_minus: i64, h: i64) -> Result<Self, MatchingError> {
        let invalid = |reason| MatchingError::InvalidConfiguration {
            n_plus,
            n_minus,
            h,
            reason,
        };
        if n_plus <= 0 || n_minus <= 0 || h * h >= n_plus * n_minus {
            return Err(invalid("not positive definite"));
        }
        if n_plus.is_odd() || n_minus.is_odd() {
            return Err(invalid("not even"));
        }
        if h < 0 {
            return Err(invalid("h must be non-negative"));
        }
        Ok(Configuration { n_plus, n_minus, h })
    }

    /// `cos^2 theta = h^2/(n+ n-)`.
    pub fn cos2_theta(&self) -> Rational {
        Rational::new(
            BigInt::from(self.h * self.h),
            BigInt::from(self.n_plus * self.n_minus),
        )
    }

    /// The angle `theta = arccos(h/sqrt(n+ n-))` in `(0, pi/2]`.
    pub fn theta(&self) -> f64 {
        (self.h as f64 / ((self.n_plus * self.n_minus) as f64).sqrt()).acos()
    }
}

/// Configuration angles of a rank-1 configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigAngles {
    /// `(2 theta, -2 theta, 0)`.
    pub alpha_plus: [f64; 3],
    /// Nineteen zeros.
    pub alpha_minus: Vec<f64>,
}

/// The configuration angles of a rank-1 configuration.
pub fn config_angles_rank1(c: &Configuration) -> ConfigAngles {
    let two_theta = 2.0 * c.theta();
    ConfigAngles {
        alpha_plus: [two_theta, -two_theta, 0.0],
        alpha_minus: vec![0.0; 19],
    }
}

/// Angles closer than this are treated as equal in [`m_rho`].
pub const ANGLE_TOLERANCE: f64 = 1e-12;

/// The correction term
///
/// `m_rho = sign(rho) (#{a in {pi - |rho|, pi}} - 1) + 2 sign(rho) #{a in (pi - |rho|, pi)}`
///
/// over the angles `a` of `alpha_minus`; zero when `rho = 0`.
pub fn m_rho(rho_sign: i64, rho_abs: f64, alpha_minus: &[f64]) -> i64 {
    if rho_sign == 0 {
        return 0;
    }
    let lower = PI - rho_abs;
    let near = |a: f64, b: f64| (a - b).abs() <= ANGLE_TOLERANCE;
    let endpoints = alpha_minus
        .iter()
        .filter(|&&a| near(a, lower) || near(a, PI))
        .count() as i64;
    let interior = alpha_minus
        .iter()
        .filter(|&&a| a > lower + ANGLE_TOLERANCE && a < PI - ANGLE_TOLERANCE)
        .count() as i64;
    rho_sign.signum() * (endpoints - 1) + 2 * rho_sign.signum() * interior
}

/// `m_rho` for rank-1 data with gluing angle given by `g`.
pub fn m_rho_rank1(g: &GluingData) -> i64 {
    let geo = g.geometry();
    let sign = g.matrix.m.signum();
    let angles = vec![0.0; 19];
    m_rho(sign, geo.rho().abs(), &angles)
}

/// The third Betti number: `22 + b3^G(Z+) + b3^G(Z-)`, plus one at right
/// gluing angles.
pub fn b3(z_plus: &BlockRecord, z_minus: &BlockRecord, theta_is_right_angle: bool) -> i64 {
    let base = if theta_is_right_angle { 23 } else { 22 };
    base + z_plus.b3_gamma + z_minus.b3_gamma
}

/// The torsion of `H^3` of an example.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Cotorsion {
    /// Order of the group (always 1 under the assumption below).
    pub order: u64,
    /// Whether the answer relies on the lattice `N+ + N-` being primitively
    /// embedded in the K3 lattice.
    pub primitive_embedding_assumed: bool,
}

/// Torsion in `H^3` for a rank-1 configuration, which is trivial when
/// `N+ + N-` embeds primitively; the flag records that assumption.
pub fn cotorsion_h3(_c: &Configuration) -> Cotorsion {
    Cotorsion {
        order: 1,
        primitive_embedding_assumed: true,
    }
}

/// One assembled extra-twisted connected sum.
#[derive(Debug, Clone, PartialEq)]
pub struct EtcsExample {
    /// Position in the sorted table, starting at 1.
    pub row_id: usize,
    pub gluing: GluingData,
    pub config: Configuration,
    pub z_plus: u32,
    pub z_minus: u32,
    pub b3: i64,
    pub pi1_order: u64,
    pub m_rho: i64,
    pub breakdown: NuBreakdown,
    pub nu: NuMod48,
}

impl EtcsExample {
    /// `nu_bar` as an integer.
    pub fn nu_bar(&self) -> i64 {
        self.breakdown.nu_bar_int()
    }

    /// Whether the example is null-bordant.
    pub fn nullbordant(&self) -> bool {
        self.nu.nullbordant
    }

    fn sort_key(&self) -> (i64, i64, i64, i64, i64, i64, i64, i64, u32, u32) {
        let g = &self.gluing;
        (
            g.k_plus,
            g.k_minus,
            self.config.n_plus,
            self.config.n_minus,
            self.config.h,
            g.matrix.p,
            g.matrix.m,
            g.eps_plus,
            self.z_minus,
            self.z_plus,
        )
    }
}

/// Computes every invariant of the example given by data, blocks and Gram
/// matrix.
pub fn assemble(
    gluing: &GluingData,
    config: Configuration,
    z_plus: &BlockRecord,
    z_minus: &BlockRecord,
) -> Result<EtcsExample, MatchingError> {
    let d_plus = d_gamma(z_plus, gluing.eps_plus)?;
    let d_minus = d_gamma(z_minus, gluing.eps_minus)?;
    let mr = m_rho_rank1(gluing);
    let breakdown = nu_bar_exact(gluing, &d_plus, &d_minus, mr)?;
    let nu = nu_mod48(breakdown.nu_bar_int(), 0);
    Ok(EtcsExample {
        row_id: 0,
        gluing: *gluing,
        config,
        z_plus: z_plus.id,
        z_minus: z_minus.id,
        b3: b3(z_plus, z_minus, gluing.is_right_angle()),
        pi1_order: gluing.fundamental_group(),
        m_rho: mr,
        breakdown,
        nu,
    })
}

/// Whether a sign-normalized datum is listed for the given norms.
///
/// Right angles are listed only for equal orders with `1 <= eps+ <= k/2`;
/// when both sides have the same order and the same norm only `m + q <= 0`
/// is listed.
fn listed(g: &GluingData, n_plus: i64, n_minus: i64) -> bool {
    let Matrix { m, q, .. } = g.matrix;
    if g.is_right_angle() {
        g.k_plus == g.k_minus && g.eps_plus >= 1 && 2 * g.eps_plus <= g.k_plus
    } else {
        !(g.k_plus == g.k_minus && n_plus == n_minus && m + q > 0)
    }
}

/// One unit of work: fixed orders and norms.
struct Cell<'a> {
    gluings: &'a [GluingData],
    n_plus: i64,
    n_minus: i64,
    z_plus: Vec<&'a BlockRecord>,
    z_minus: Vec<&'a BlockRecord>,
}

fn run_cell(cell: &Cell<'_>) -> Result<Vec<EtcsExample>, MatchingError> {
    let mut out = Vec::new();
    let mut h = 0;
    while h * h < cell.n_plus * cell.n_minus {
        let config = Configuration::new(cell.n_plus, cell.n_minus, h)?;
        let c2 = config.cos2_theta();
        for g in cell.gluings {
            if g.geometry().cos2_theta != c2 || !listed(g, cell.n_plus, cell.n_minus) {
                continue;
            }
            for zm in &cell.z_minus {
                for zp in &cell.z_plus {
                    out.push(assemble(g, config, zp, zm)?);
                }
            }
        }
        h += 1;
    }
    Ok(out)
}

/// Largest automorphism order considered when pairing blocks.
fn max_order(catalog: &Catalog) -> i64 {
    catalog.blocks().iter().map(|b| b.k).max().unwrap_or(1)
}

/// Assembles all examples from the catalog, using `workers` threads
/// (at least one). The output is sorted by
/// `(k+, k-, n+, n-, h, p, m, eps+, Z-, Z+)` and numbered from 1, and does
/// not depend on the number of workers.
pub fn enumerate_examples(
    catalog: &Catalog,
    workers: usize,
) -> Result<Vec<EtcsExample>, MatchingError> {
    let kmax = max_order(catalog);
    let mut gluing_lists = Vec::new();
    for kp in 1..=kmax {
        for km in kp..=kmax {
            if kp == 1 && km == 1 {
                continue;
            }
            if catalog.with_order(kp).next().is_none() || catalog.with_order(km).next().is_none() {
                continue;
            }
            gluing_lists.push((kp, km, enumerate_oriented_gluings(kp, km)));
        }
    }
    let mut cells = Vec::new();
    for (kp, km, gluings) in &gluing_lists {
        let norms = |k: i64| -> BTreeSet<i64> { catalog.with_order(k).map(|b| b.n_norm).collect() };
        for &np in &norms(*kp) {
            for &nm in &norms(*km) {
                if kp == km && np > nm {
                    continue;
                }
                cells.push(Cell {
                    gluings,
                    n_plus: np,
                    n_minus: nm,
                    z_plus: catalog.with_order(*kp).filter(|b| b.n_norm == np).collect(),
                    z_minus: catalog.with_order(*km).filter(|b| b.n_norm == nm).collect(),
                });
            }
        }
    }
    let workers = workers.max(1);
    let chunk = cells.len().div_ceil(workers).max(1);
    let results: Vec<Result<Vec<EtcsExample>, MatchingError>> = thread::scope(|s| {
        let handles: Vec<_> = cells
            .chunks(chunk)
            .map(|part| {
                s.spawn(move || {
                    let mut acc = Vec::new();
                    for cell in part {
                        acc.extend(run_cell(cell)?);
                    }
                    Ok(acc)
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("worker panicked"))
            .collect()
    });
    let mut all = Vec::new();
    for r in results {
        all.extend(r?);
    }
    all.sort_by_key(EtcsExample::sort_key);
    for (i, ex) in all.iter_mut().enumerate() {
        ex.row_id = i + 1;
    }
    Ok(all)
}

/// Counts of examples with even `b3` and, among them, those with odd
/// `nu_bar`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParityReport {
    pub even_b3: usize,
    pub even_b3_odd_nu: usize,
}

/// Tallies the parity of `nu_bar` against that of `b3`.
pub fn parity_report(examples: &[EtcsExample]) -> ParityReport {
    let even: Vec<&EtcsExample> = examples.iter().filter(|e| e.b3.is_even()).collect();
    ParityReport {
        even_b3: even.len(),
        even_b3_odd_nu: even.iter().filter(|e| e.nu_bar().is_odd()).count(),
    }
}

/// The residues of `nu` modulo 48 realised by the examples together with
/// their orientation reversals.
pub fn nu_residues_with_reversal(examples: &[EtcsExample]) -> BTreeSet<i64> {
    let mut out = BTreeSet::new();
    for e in examples {
        out.insert(nu_mod48(e.nu_bar(), 0).residue);
        out.insert(nu_mod48(-e.nu_bar(), 0).residue);
    }
    out
}
