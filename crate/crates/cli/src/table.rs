//! The serialized table row and row filters.

use std::str::FromStr;

use etcs_matching::EtcsExample;
use etcs_ratarith::Rational;
use serde::{Deserialize, Serialize};

use crate::CliError;

/// Version of the column layout below; bumped whenever a column is added,
/// removed, renamed or reordered.
pub const TABLE_SCHEMA_VERSION: u32 = 1;

/// Column names of the CSV output, in order.
pub const TABLE_COLUMNS: [&str; 20] = [
    "row_id",
    "k_plus",
    "k_minus",
    "n_plus",
    "h",
    "n_minus",
    "cos2_theta",
    "z_plus",
    "z_minus",
    "b3",
    "m",
    "p",
    "n",
    "q",
    "eps_plus",
    "eps_minus",
    "pi1",
    "nu_bar",
    "nu_mod48",
    "nullbordant",
];

/// Formats a rational as `num/den`, with the denominator always present.
pub fn fraction_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `num/den` or a bare integer.
pub fn parse_fraction(s: &str) -> Result<Rational, String> {
    Rational::from_str(s.trim()).map_err(|e| format!("`{s}` is not a fraction: {e}"))
}

/// One line of the generated table. Residues are signed representatives in
/// `(-k/2, k/2]`; `pi1` is the order of the fundamental group, `0` meaning
/// infinite.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub row_id: usize,
    pub k_plus: i64,
    pub k_minus: i64,
    pub n_plus: i64,
    pub h: i64,
    pub n_minus: i64,
    pub cos2_theta: String,
    pub z_plus: u32,
    pub z_minus: u32,
    pub b3: i64,
    pub m: i64,
    pub p: i64,
    pub n: i64,
    pub q: i64,
    pub eps_plus: i64,
    pub eps_minus: i64,
    pub pi1: u64,
    pub nu_bar: i64,
    pub nu_mod48: i64,
    pub nullbordant: bool,
}

impl From<&EtcsExample> for TableRow {
    fn from(ex: &EtcsExample) -> Self {
        let g = &ex.gluing;
        TableRow {
            row_id: ex.row_id,
            k_plus: g.k_plus,
            k_minus: g.k_minus,
            n_plus: ex.config.n_plus,
            h: ex.config.h,
            n_minus: ex.config.n_minus,
            cos2_theta: fraction_string(&ex.config.cos2_theta()),
            z_plus: ex.z_plus,
            z_minus: ex.z_minus,
            b3: ex.b3,
            m: g.matrix.m,
            p: g.matrix.p,
            n: g.matrix.n,
            q: g.matrix.q,
            eps_plus: g.signed_eps_plus(),
            eps_minus: g.signed_eps_minus(),
            pi1: ex.pi1_order,
            nu_bar: ex.nu_bar(),
            nu_mod48: ex.nu.residue,
            nullbordant: ex.nullbordant(),
        }
    }
}

/// A conjunction of `key=value` equalities on integer columns.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RowFilter {
    terms: Vec<(String, i64)>,
}

const FILTER_KEYS: [&str; 8] = [
    "kplus", "kminus", "nplus", "nminus", "h", "zplus", "zminus", "pi1",
];

impl FromStr for RowFilter {
    type Err = CliError;

    /// Parses `key=value[,key=value...]` with keys `kplus`, `kminus`,
    /// `nplus`, `nminus`, `h`, `zplus`, `zminus`, `pi1`.
    fn from_str(s: &str) -> Result<Self, CliError> {
        let mut terms = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| CliError::Config(format!("filter term `{part}` needs key=value")))?;
            let key = key.trim().to_ascii_lowercase().replace(['_', '-'], "");
            if !FILTER_KEYS.contains(&key.as_str()) {
                return Err(CliError::Config(format!(
                    "unknown filter key `{key}`; expected one of {}",
                    FILTER_KEYS.join(", ")
                )));
            }
            let value = value
                .trim()
                .parse::<i64>()
                .map_err(|e| CliError::Config(format!("filter value `{value}`: {e}")))?;
            terms.push((key, value));
        }
        Ok(RowFilter { terms })
    }
}

impl RowFilter {
    pub fn matches(&self, row: &TableRow) -> bool {
        self.terms.iter().all(|(key, value)| {
            let actual = match key.as_str() {
                "kplus" => row.k_plus,
                "kminus" => row.k_minus,
                "nplus" => row.n_plus,
                "nminus" => row.n_minus,
                "h" => row.h,
                "zplus" => i64::from(row.z_plus),
                "zminus" => i64::from(row.z_minus),
                "pi1" => row.pi1 as i64,
                _ => unreachable!("keys are checked when parsing"),
            };
            actual == *value
        })
    }
}
