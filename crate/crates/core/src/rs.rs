//! Robinson–Schensted shapes and Lusztig's a-function in type A.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::support::SupportSet;

/// A partition, parts weakly decreasing and positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct YoungShape {
    parts: Vec<usize>,
}

impl YoungShape {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("{parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(YoungShape { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// `lambda_i`, 1-based; 0 past the last row.
    pub fn row(&self, i: usize) -> usize {
        self.parts.get(i.wrapping_sub(1)).copied().unwrap_or(0)
    }

    pub fn num_rows(&self) -> usize {
        self.parts.len()
    }

    pub fn transpose(&self) -> YoungShape {
        let cols = self.row(1);
        YoungShape {
            parts: (1..=cols).map(|j| self.parts.iter().filter(|&&p| p >= j).count()).collect(),
        }
    }

    /// All partitions of `n`, in reverse lexicographic order.
    pub fn all(n: usize) -> Vec<YoungShape> {
        fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<YoungShape>) {
            if rest == 0 {
                out.push(YoungShape { parts: cur.clone() });
                return;
            }
            for p in (1..=rest.min(max)).rev() {
                cur.push(p);
                go(rest - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(n, n, &mut Vec::new(), &mut out);
        out
    }
}

impl TryFrom<Vec<usize>> for YoungShape {
    type Error = Error;

    fn try_from(parts: Vec<usize>) -> Result<Self> {
        YoungShape::new(parts)
    }
}

impl From<YoungShape> for Vec<usize> {
    fn from(s: YoungShape) -> Self {
        s.parts
    }
}

impl fmt::Display for YoungShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for YoungShape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad part `{t}`"))))
            .collect::<Result<Vec<_>>>()?;
        YoungShape::new(parts)
    }
}

/// Shape of the insertion tableau under Schensted row insertion.
pub fn rs_shape(w: &Permutation) -> YoungShape {
    let mut rows: Vec<Vec<usize>> = Vec::new();
    for x in w.images() {
        let mut bumped = x;
        let mut placed = false;
        for row in rows.iter_mut() {
            match row.iter().position(|&y| y > bumped) {
                Some(p) => bumped = std::mem::replace(&mut row[p], bumped),
                None => {
                    row.push(bumped);
                    placed = true;
                    break;
                }
            }
        }
        if !placed {
            rows.push(vec![bumped]);
        }
    }
    YoungShape {
        parts: rows.iter().map(Vec::len).collect(),
    }
}

/// `a(w) = sum mu_i (mu_i - 1) / 2` where `mu` is the transposed RS shape.
pub fn a_function(w: &Permutation) -> usize {
    rs_shape(w)
        .transpose()
        .parts()
        .iter()
        .map(|m| m * (m - 1) / 2)
        .sum()
}

/// The longest element of `S_{mu_1} x S_{mu_2} x ...`: each block of
/// consecutive positions reversed.
pub fn longest_parabolic_element(mu: &YoungShape, n: usize) -> Result<Permutation> {
    if mu.size() != n {
        return Err(Error::InvalidPartition(format!("{mu} does not partition {n}")));
    }
    longest_for_blocks(mu.parts(), n)
}

/// As [`longest_parabolic_element`] for blocks in any order.
pub fn longest_for_blocks(blocks: &[usize], n: usize) -> Result<Permutation> {
    if blocks.iter().sum::<usize>() != n || blocks.contains(&0) {
        return Err(Error::InvalidPartition(format!("{blocks:?} is not a composition of {n}")));
    }
    let mut images = Vec::with_capacity(n);
    let mut start = 0;
    for &b in blocks {
        images.extend((start + 1..=start + b).rev());
        start += b;
    }
    Permutation::new(images)
}

/// Whether `w` is the longest element of a standard parabolic subgroup:
/// every letter of its support is both a left and a right descent.
pub fn is_longest_parabolic(w: &Permutation) -> bool {
    let supp: SupportSet = w.support();
    w.right_descents() == supp && w.left_descents() == supp
}

/// Second row of the RS shape against the run count of a boolean `v`.
pub fn second_row_equals_runs_check(v: &Permutation) -> Result<bool> {
    let runs = crate::runs::greedy_runs(v)?;
    Ok(rs_shape(v).row(2) == runs.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn shape(parts: &[usize]) -> YoungShape {
        YoungShape::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn shapes() {
        assert_eq!(rs_shape(&Permutation::identity(4)), shape(&[4]));
        assert_eq!(rs_shape(&p("24153")), shape(&[3, 2]));
        assert_eq!(rs_shape(&Permutation::longest(3)), shape(&[1, 1, 1]));
        assert_eq!(rs_shape(&p("2143")), shape(&[2, 2]));
        assert_eq!(shape(&[3, 1]).transpose(), shape(&[2, 1, 1]));
        assert!(YoungShape::new(vec![1, 2]).is_err());
        assert_eq!("3,2".parse::<YoungShape>().unwrap(), shape(&[3, 2]));
    }

    #[test]
    fn a_values() {
        assert_eq!(a_function(&Permutation::identity(3)), 0);
        for i in 1..3 {
            assert_eq!(a_function(&Permutation::simple(3, i).unwrap()), 1);
        }
        assert_eq!(a_function(&p("231")), 1);
        assert_eq!(a_function(&p("312")), 1);
        assert_eq!(a_function(&Permutation::longest(3)), 3);
        assert_eq!(a_function(&p("24153")), 2);
    }

    #[test]
    fn parabolic() {
        assert_eq!(longest_parabolic_element(&shape(&[4]), 4).unwrap(), Permutation::longest(4));
        assert_eq!(
            longest_parabolic_element(&shape(&[1, 1, 1, 1]), 4).unwrap(),
            Permutation::identity(4)
        );
        assert_eq!(longest_parabolic_element(&shape(&[2, 2]), 4).unwrap(), p("2143"));
        assert!(longest_parabolic_element(&shape(&[2, 1]), 4).is_err());
        assert!(is_longest_parabolic(&p("1432")));
        assert!(!is_longest_parabolic(&p("231")));
        assert_eq!(YoungShape::all(4).len(), 5);
        assert_eq!(YoungShape::all(8).len(), 22);
    }

    #[test]
    fn second_row() {
        assert!(second_row_equals_runs_check(&p("24153")).unwrap());
        assert!(second_row_equals_runs_check(&p("21")).unwrap());
        assert!(second_row_equals_runs_check(&p("214365")).unwrap());
        assert_eq!(rs_shape(&p("214365")), shape(&[3, 3]));
    }
}
