//! Exhaustive enumeration of gluing data for fixed group orders.

use num_integer::Integer;

use crate::{derive_eps_minus, GluingData, Matrix};

fn sort_key(g: &GluingData) -> (i64, i64, i64, i64, i64, i64) {
    let Matrix { m, p, n, q } = g.matrix;
    (m, p, n, q, g.eps_plus, g.eps_minus)
}

/// All valid data with orders `(k+, k-)` satisfying `n > 0`, `p > 0`,
/// `m >= 0` and `q <= 0`, sorted by `(m, p, n, q, eps+, eps-)`.
///
/// These are the normal forms under the side-preserving part of the
/// symmetry group, except that at right angles both `eps+` and `-eps+`
/// appear.
pub fn enumerate_oriented_gluings(k_plus: i64, k_minus: i64) -> Vec<GluingData> {
    if k_plus < 1 || k_minus < 1 {
        return Vec::new();
    }
    let big_k = k_plus * k_minus;
    let mut out = Vec::new();
    for n in 1..=big_k {
        for p in 1..=big_k / n {
            let t = n * p - big_k;
            for m in 0..=big_k {
                let q = if m == 0 {
                    if t != 0 {
                        continue;
                    }
                    0
                } else {
                    if t % m != 0 {
                        continue;
                    }
                    t / m
                };
                if q > 0 {
                    continue;
                }
                let matrix = Matrix::new(m, p, n, q);
                for eps_plus in 0..k_plus {
                    if eps_plus.gcd(&k_plus) != 1 {
                        continue;
                    }
                    let Ok((km, eps_minus)) = derive_eps_minus(k_plus, eps_plus, matrix) else {
                        continue;
                    };
                    debug_assert_eq!(km, k_minus);
                    let g = GluingData {
                        k_plus,
                        k_minus,
                        eps_plus,
                        eps_minus,
                        matrix,
                    };
                    if g.is_valid() {
                        out.push(g);
                    }
                }
            }
        }
    }
    out.sort_by_key(sort_key);
    out
}

/// All symmetry-inequivalent valid data with orders `(k+, k-)`, each in the
/// normal form of [`GluingData::normalize`], sorted by
/// `(m, p, n, q, eps+, eps-)`.
pub fn enumerate_gluings(k_plus: i64, k_minus: i64) -> Vec<GluingData> {
    let mut out: Vec<GluingData> = enumerate_oriented_gluings(k_plus, k_minus)
        .iter()
        .map(GluingData::normalize)
        .collect();
    out.sort_by_key(sort_key);
    out.dedup();
    out
}
