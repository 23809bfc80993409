//! The symmetry group `H = (Z/2)^3` acting on gluing data, normal forms and
//! the angle-changing quarter turn.

use num_integer::Integer;

use crate::{inverse, GluingData, GluingError, Matrix};

/// An element of `H`, written as a product of the three commuting
/// generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct HElement {
    /// Exchange the two halves: `(-q p; n -m)`, `(k, eps)` sides exchanged.
    pub swap: bool,
    /// Reverse orientation: `(m -p; -n q)`, both residues negated.
    pub flip: bool,
    /// Rotate one half by `pi`: the matrix is negated, residues unchanged.
    pub rotate: bool,
}

impl HElement {
    /// All eight elements.
    pub fn all() -> impl Iterator<Item = HElement> {
        (0u8..8).map(|b| HElement {
            swap: b & 1 != 0,
            flip: b & 2 != 0,
            rotate: b & 4 != 0,
        })
    }

    /// The four elements that keep the two halves in place.
    pub fn side_preserving() -> impl Iterator<Item = HElement> {
        Self::all().filter(|h| !h.swap)
    }

    /// Applies the element to a datum.
    pub fn apply(&self, g: &GluingData) -> GluingData {
        let mut out = *g;
        if self.swap {
            out = swap(&out);
        }
        if self.flip {
            out = flip(&out);
        }
        if self.rotate {
            out = rotate(&out);
        }
        out
    }
}

fn swap(g: &GluingData) -> GluingData {
    let Matrix { m, p, n, q } = g.matrix;
    GluingData {
        k_plus: g.k_minus,
        k_minus: g.k_plus,
        eps_plus: g.eps_minus,
        eps_minus: g.eps_plus,
        matrix: Matrix::new(-q, p, n, -m),
    }
}

fn flip(g: &GluingData) -> GluingData {
    let Matrix { m, p, n, q } = g.matrix;
    GluingData {
        k_plus: g.k_plus,
        k_minus: g.k_minus,
        eps_plus: (-g.eps_plus).mod_floor(&g.k_plus),
        eps_minus: (-g.eps_minus).mod_floor(&g.k_minus),
        matrix: Matrix::new(m, -p, -n, q),
    }
}

fn rotate(g: &GluingData) -> GluingData {
    let Matrix { m, p, n, q } = g.matrix;
    GluingData {
        matrix: Matrix::new(-m, -p, -n, -q),
        ..*g
    }
}

/// Result of the quarter turn. The gluing angle changes to `pi/2 - theta`
/// (up to sign), so the datum is generally incompatible with the K3
/// matching of the original example and must not be used to assemble
/// examples without checking the angle again.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AngleChangingData {
    pub data: GluingData,
}

impl GluingData {
    /// The orbit under `H`, sorted and without repetitions.
    pub fn symmetry_orbit(&self) -> Vec<GluingData> {
        let mut out: Vec<GluingData> = HElement::all().map(|h| h.apply(self)).collect();
        out.sort();
        out.dedup();
        out
    }

    /// Whether `self` satisfies the sign conventions `n > 0`, `p > 0`,
    /// `m >= 0`, `q <= 0`.
    pub fn is_sign_normalized(&self) -> bool {
        let Matrix { m, p, n, q } = self.matrix;
        n > 0 && p > 0 && m >= 0 && q <= 0
    }

    /// The canonical representative of the orbit.
    ///
    /// Candidates are the orbit elements with `n > 0`, `p > 0`, `m >= 0`,
    /// `q <= 0`. When `k+ = k-` the whole group is used and `m + q <= 0` is
    /// required as well; otherwise only the side-preserving subgroup is used,
    /// so that the ordered pair `(k+, k-)` is kept. For right gluing angles
    /// with `k > 2` the residue `eps+` is further restricted to
    /// `[1, k/2]`. The lexicographically smallest candidate in
    /// `(m, p, n, q, eps+, eps-)` is returned.
    pub fn normalize(&self) -> GluingData {
        let same_sides = self.k_plus == self.k_minus;
        let pool: Vec<GluingData> = if same_sides {
            HElement::all().map(|h| h.apply(self)).collect()
        } else {
            HElement::side_preserving().map(|h| h.apply(self)).collect()
        };
        let key = |g: &GluingData| {
            let Matrix { m, p, n, q } = g.matrix;
            (m, p, n, q, g.eps_plus, g.eps_minus)
        };
        let best = pool
            .iter()
            .filter(|g| g.is_sign_normalized())
            .filter(|g| !same_sides || g.matrix.m + g.matrix.q <= 0)
            .filter(|g| !g.is_right_angle() || g.k_plus <= 2 || 2 * g.eps_plus <= g.k_plus)
            .min_by_key(|g| key(g));
        match best {
            Some(g) => *g,
            // Data outside the conventions (for example n = p = 0) keep the
            // smallest orbit element instead.
            None => *pool
                .iter()
                .min_by_key(|g| key(g))
                .expect("orbit is non-empty"),
        }
    }

    /// The quarter turn `(p m; -q -n)` with `eps+ -> -eps+` and
    /// `eps- -> eps-*`.
    pub fn quarter_turn(&self) -> Result<AngleChangingData, GluingError> {
        if self.is_right_angle() {
            return Err(GluingError::RightAngle);
        }
        let Matrix { m, p, n, q } = self.matrix;
        let em_inv = inverse(self.eps_minus, self.k_minus)
            .ok_or_else(|| GluingError::Violated(vec![crate::Condition::MinusPrimitivity]))?;
        Ok(AngleChangingData {
            data: GluingData {
                k_plus: self.k_plus,
                k_minus: self.k_minus,
                eps_plus: (-self.eps_plus).mod_floor(&self.k_plus),
                eps_minus: em_inv,
                matrix: Matrix::new(p, m, -q, -n),
            },
        })
    }
}
