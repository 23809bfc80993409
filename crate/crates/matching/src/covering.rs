//! Cross-references between table rows given by coverings.

use etcs_blocks::Catalog;
use etcs_gluing::{GluingData, HElement};

use crate::EtcsExample;

/// A table row matching some data up to the symmetry group.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RowMatch {
    pub row_id: usize,
    /// Whether the match exchanges the two halves.
    pub swapped: bool,
}

/// Finds the row whose data and blocks agree with `(data, z_plus, z_minus)`
/// after applying some element of the symmetry group. Matches that keep the
/// halves in place are preferred.
pub fn find_row(
    examples: &[EtcsExample],
    data: &GluingData,
    z_plus: u32,
    z_minus: u32,
) -> Option<RowMatch> {
    let mut best: Option<RowMatch> = None;
    for ex in examples {
        for h in HElement::all() {
            if h.apply(&ex.gluing) != *data {
                continue;
            }
            let blocks = if h.swap {
                (ex.z_minus, ex.z_plus)
            } else {
                (ex.z_plus, ex.z_minus)
            };
            if blocks != (z_plus, z_minus) {
                continue;
            }
            let cand = RowMatch {
                row_id: ex.row_id,
                swapped: h.swap,
            };
            if !cand.swapped {
                return Some(cand);
            }
            best.get_or_insert(cand);
        }
    }
    best
}

/// A covering of one row, with the row of the cover if the table has it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverEdge {
    pub from_row: usize,
    pub ell: i64,
    pub data: GluingData,
    /// Blocks of the cover, when the catalog contains them.
    pub blocks: Option<(u32, u32)>,
    pub to: Option<RowMatch>,
}

/// The `ell`-fold cover of a row: its data, the blocks with the smaller
/// automorphism groups taken from the same Fano families, and the matching
/// row.
pub fn cover_row(
    examples: &[EtcsExample],
    catalog: &Catalog,
    ex: &EtcsExample,
    ell: i64,
) -> Result<CoverEdge, etcs_gluing::GluingError> {
    let data = ex.gluing.covering(ell)?;
    let blocks = match (catalog.get(ex.z_plus), catalog.get(ex.z_minus)) {
        (Some(zp), Some(zm)) => catalog
            .family_member(zp, data.k_plus)
            .zip(catalog.family_member(zm, data.k_minus))
            .map(|(a, b)| (a.id, b.id)),
        _ => None,
    };
    let to = blocks.and_then(|(zp, zm)| find_row(examples, &data, zp, zm));
    Ok(CoverEdge {
        from_row: ex.row_id,
        ell,
        data,
        blocks,
        to,
    })
}

/// Every nontrivial covering of every row with `p > 1`.
pub fn covering_edges(examples: &[EtcsExample], catalog: &Catalog) -> Vec<CoverEdge> {
    let mut out = Vec::new();
    for ex in examples {
        let p = ex.gluing.matrix.p;
        for ell in 2..=p {
            if p % ell == 0 {
                out.push(cover_row(examples, catalog, ex, ell).expect("ell divides p"));
            }
        }
    }
    out
}
