//! Catalog records and the text format they are stored in.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;

use crate::BlockError;

/// Isolated fixpoints shared by a set of powers of the generator `tau`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixpointOrbit {
    /// The exponents `j` (residues mod `k`) for which `tau^j` has these
    /// isolated fixpoints.
    pub j_set: BTreeSet<i64>,
    /// Number of points.
    pub point_count: i64,
    /// Tangent weights `(b1, b2, b3)` of `tau` at each point, with zero sum.
    pub exponents: [i64; 3],
}

impl fmt::Display for FixpointOrbit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let js: Vec<String> = self.j_set.iter().map(|j| j.to_string()).collect();
        let [b1, b2, b3] = self.exponents;
        write!(
            f,
            "{}:{}:({},{},{})",
            js.join("|"),
            self.point_count,
            b1,
            b2,
            b3
        )
    }
}

/// One building block of Picard rank 1, possibly with a cyclic automorphism
/// group of order `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockRecord {
    pub id: u32,
    pub fano_label: String,
    /// Fano index `r`.
    pub index_r: i64,
    /// Anticanonical degree `-K_Y^3`.
    pub degree: i64,
    /// Square norm of the generator of the polarising lattice.
    pub n_norm: i64,
    pub b3_y: i64,
    pub c2h: i64,
    /// Order of the automorphism group (1 for none).
    pub k: i64,
    /// Invariant part of the third Betti number of the block.
    pub b3_gamma: i64,
    pub example_ref: String,
    pub fixpoints: Vec<FixpointOrbit>,
}

impl BlockRecord {
    /// Data shared by all blocks built from the same Fano threefold.
    pub fn family_key(&self) -> (i64, i64, i64, i64, i64) {
        (self.index_r, self.degree, self.n_norm, self.b3_y, self.c2h)
    }

    fn check(&self) -> Result<(), BlockError> {
        let invalid = |message: String| BlockError::Invalid {
            id: self.id,
            message,
        };
        if self.k < 1 || self.index_r < 1 || self.n_norm < 1 {
            return Err(invalid("k, r and N must be positive".into()));
        }
        if self.n_norm * self.index_r * self.index_r != self.degree {
            return Err(invalid(format!(
                "N = {} differs from degree/r^2 = {}/{}",
                self.n_norm,
                self.degree,
                self.index_r * self.index_r
            )));
        }
        if self.k <= 2 && !self.fixpoints.is_empty() {
            return Err(invalid(
                "blocks with k <= 2 have no isolated fixpoints".into(),
            ));
        }
        for orbit in &self.fixpoints {
            if orbit.exponents.iter().sum::<i64>() != 0 {
                return Err(invalid(format!("exponents of {orbit} do not sum to zero")));
            }
            if orbit.point_count < 1 {
                return Err(invalid(format!("orbit {orbit} has no points")));
            }
            for &j in &orbit.j_set {
                if j <= 0 || j >= self.k {
                    return Err(invalid(format!("power {j} is not in 1..{}", self.k)));
                }
                if orbit
                    .exponents
                    .iter()
                    .any(|b| (j * b).mod_floor(&self.k) == 0)
                {
                    return Err(invalid(format!("tau^{j} has a unit eigenvalue in {orbit}")));
                }
            }
        }
        Ok(())
    }
}

/// Splits at commas that are not inside parentheses.
fn split_top_level(line: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in line.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&line[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&line[start..]);
    out
}

fn parse_orbit(s: &str) -> Result<FixpointOrbit, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [js, count, exps] = parts.as_slice() else {
        return Err(format!(
            "orbit `{s}` must have the form j1|j2:count:(b1,b2,b3)"
        ));
    };
    let j_set = js
        .split('|')
        .map(|j| {
            j.trim()
                .parse::<i64>()
                .map_err(|e| format!("power `{j}`: {e}"))
        })
        .collect::<Result<BTreeSet<_>, _>>()?;
    let point_count = count
        .trim()
        .parse::<i64>()
        .map_err(|e| format!("count `{count}`: {e}"))?;
    let inner = exps
        .trim()
        .strip_prefix('(')
        .and_then(|x| x.strip_suffix(')'))
        .ok_or_else(|| format!("exponents `{exps}` must be parenthesised"))?;
    let bs = inner
        .split(',')
        .map(|b| {
            b.trim()
                .parse::<i64>()
                .map_err(|e| format!("exponent `{b}`: {e}"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let exponents: [i64; 3] = bs
        .try_into()
        .map_err(|_| format!("exponents `{exps}` must be a triple"))?;
    Ok(FixpointOrbit {
        j_set,
        point_count,
        exponents,
    })
}

fn parse_line(line: &str) -> Result<BlockRecord, String> {
    let fields = split_top_level(line);
    if fields.len() != 11 {
        return Err(format!("expected 11 fields, found {}", fields.len()));
    }
    let int = |i: usize, name: &str| -> Result<i64, String> {
        fields[i]
            .trim()
            .parse::<i64>()
            .map_err(|e| format!("field {name} = `{}`: {e}", fields[i].trim()))
    };
    let id = fields[0]
        .trim()
        .parse::<u32>()
        .map_err(|e| format!("field id = `{}`: {e}", fields[0].trim()))?;
    let fix = fields[10].trim();
    let fixpoints = if fix.is_empty() {
        Vec::new()
    } else {
        fix.split(';')
            .map(parse_orbit)
            .collect::<Result<Vec<_>, _>>()?
    };
    Ok(BlockRecord {
        id,
        fano_label: fields[1].trim().to_string(),
        index_r: int(2, "r")?,
        degree: int(3, "degree")?,
        n_norm: int(4, "n_norm")?,
        b3_y: int(5, "b3_Y")?,
        c2h: int(6, "c2H")?,
        k: int(7, "k")?,
        b3_gamma: int(8, "b3_gamma")?,
        example_ref: fields[9].trim().to_string(),
        fixpoints,
    })
}

/// An ordered collection of blocks with unique ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Catalog {
    blocks: Vec<BlockRecord>,
}

const DEFAULT_CATALOG: &str = include_str!("../data/catalog.csv");

impl Catalog {
    /// Parses the text format and validates every record.
    pub fn parse(source: &str) -> Result<Catalog, BlockError> {
        let mut blocks: Vec<BlockRecord> = Vec::new();
        for (idx, raw) in source.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let record = parse_line(line).map_err(|message| BlockError::Parse {
                line: idx + 1,
                message,
            })?;
            record.check()?;
            if blocks.iter().any(|b| b.id == record.id) {
                return Err(BlockError::Invalid {
                    id: record.id,
                    message: "duplicate id".into(),
                });
            }
            blocks.push(record);
        }
        Ok(Catalog { blocks })
    }

    /// The built-in catalog of 29 blocks.
    pub fn builtin() -> Catalog {
        Catalog::parse(DEFAULT_CATALOG).expect("built-in catalog is valid")
    }

    /// The text of the built-in catalog.
    pub fn builtin_source() -> &'static str {
        DEFAULT_CATALOG
    }

    /// All blocks in file order.
    pub fn blocks(&self) -> &[BlockRecord] {
        &self.blocks
    }

    /// Looks a block up by id.
    pub fn get(&self, id: u32) -> Option<&BlockRecord> {
        self.blocks.iter().find(|b| b.id == id)
    }

    /// Blocks whose automorphism group has order `k`.
    pub fn with_order(&self, k: i64) -> impl Iterator<Item = &BlockRecord> {
        self.blocks.iter().filter(move |b| b.k == k)
    }

    /// The block of the same Fano family as `block` with automorphism order
    /// `k`, if the catalog contains one.
    pub fn family_member(&self, block: &BlockRecord, k: i64) -> Option<&BlockRecord> {
        let key = block.family_key();
        self.blocks
            .iter()
            .find(|b| b.k == k && b.family_key() == key)
    }
}

/// Parses a catalog from text; equivalent to [`Catalog::parse`].
pub fn load_catalog(source: &str) -> Result<Catalog, BlockError> {
    Catalog::parse(source)
}
