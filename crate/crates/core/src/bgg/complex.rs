//! The BGG complex restricted to a convex subset of `S_n`.

use std::collections::{BTreeMap, HashMap};

use crate::bgg::signs::SignAssignment;
use crate::bruhat::{leq_same_degree, principal_ideal, DEFAULT_IDEAL_CAP};
use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::perm::Permutation;

/// Basis elements grouped by depth `i`, placed at homological position `-i`,
/// where depth is `anchor_length - l(x)`.
///
/// `differentials[i]` maps depth `i+1` to depth `i` (shorter elements to
/// longer ones); rows index `levels[i]`, columns index `levels[i+1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictedComplex {
    pub anchor_length: usize,
    pub levels: Vec<Vec<Permutation>>,
    pub differentials: Vec<IntMatrix>,
}

impl RestrictedComplex {
    /// Builds the complex on `elements`, which must be convex so that covers
    /// inside it are covers of `S_n`.
    pub fn on(elements: &[Permutation], anchor_length: usize, signs: &SignAssignment) -> Result<Self> {
        let mut levels: Vec<Vec<Permutation>> = vec![Vec::new(); anchor_length + 1];
        for x in elements {
            if x.degree() != signs.degree() {
                return Err(Error::DegreeMismatch { left: signs.degree(), right: x.degree() });
            }
            let l = x.length();
            if l > anchor_length {
                return Err(Error::Invariant(format!("{x} is longer than the anchor")));
            }
            levels[anchor_length - l].push(x.clone());
        }
        for level in levels.iter_mut() {
            level.sort();
        }
        let index: Vec<HashMap<usize, usize>> = levels
            .iter()
            .map(|lv| lv.iter().enumerate().map(|(i, x)| (x.rank(), i)).collect())
            .collect();
        let mut differentials = Vec::with_capacity(anchor_length);
        for i in 0..anchor_length {
            let mut m = IntMatrix::zeros(levels[i].len(), levels[i + 1].len());
            for (row, y) in levels[i].iter().enumerate() {
                for (x, s) in signs.down_signed(y.rank()) {
                    if let Some(&col) = index[i + 1].get(&x) {
                        m.set(row, col, s as i64);
                    }
                }
            }
            differentials.push(m);
        }
        Ok(RestrictedComplex { anchor_length, levels, differentials })
    }

    pub fn dims(&self) -> Vec<usize> {
        self.levels.iter().map(Vec::len).collect()
    }

    /// Whether every composite of consecutive differentials vanishes.
    pub fn d_squared_is_zero(&self) -> bool {
        self.differentials
            .windows(2)
            .all(|pair| pair[0].mul(&pair[1]).is_zero())
    }

    /// Rational homology dimension at each depth.
    pub fn homology_by_depth(&self) -> Vec<usize> {
        let ranks: Vec<usize> = self.differentials.iter().map(IntMatrix::rank).collect();
        (0..self.levels.len())
            .map(|i| {
                let out_rank = if i > 0 { ranks[i - 1] } else { 0 };
                let in_rank = ranks.get(i).copied().unwrap_or(0);
                self.levels[i].len() - out_rank - in_rank
            })
            .collect()
    }

    /// The smallest depth `i <= bound` with nonzero homology, computing ranks
    /// only as far as needed.
    pub fn first_nonzero_depth(&self, bound: usize) -> Option<usize> {
        let mut out_rank = 0;
        for i in 0..=bound.min(self.anchor_length) {
            let in_rank = if self.levels[i].is_empty() {
                0
            } else {
                self.differentials.get(i).map_or(0, IntMatrix::rank)
            };
            if self.levels[i].len() > out_rank + in_rank {
                return Some(i);
            }
            out_rank = in_rank;
        }
        None
    }
}

/// The complex on `B(w) ∩ B(u)` anchored at `w`.
pub fn restricted_complex(w: &Permutation, u: &Permutation, signs: &SignAssignment) -> Result<RestrictedComplex> {
    if w.degree() != u.degree() {
        return Err(Error::DegreeMismatch { left: w.degree(), right: u.degree() });
    }
    let elements: Vec<Permutation> = principal_ideal(w, DEFAULT_IDEAL_CAP)?
        .elements()
        .iter()
        .filter(|x| leq_same_degree(x.raw(), u.raw()))
        .cloned()
        .collect();
    RestrictedComplex::on(&elements, w.length(), signs)
}

/// The unrestricted complex on all of `S_n`, anchored at the longest element.
pub fn full_complex(signs: &SignAssignment) -> Result<RestrictedComplex> {
    let n = signs.degree();
    let all: Vec<Permutation> = Permutation::all(n).collect();
    RestrictedComplex::on(&all, n * (n - 1) / 2, signs)
}

/// Homology dimension at each position `-i`, for every depth `i`.
pub fn homology_ranks(c: &RestrictedComplex) -> BTreeMap<i64, usize> {
    c.homology_by_depth()
        .into_iter()
        .enumerate()
        .map(|(i, h)| (-(i as i64), h))
        .collect()
}
