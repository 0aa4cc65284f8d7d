//! Permutations of `[1, n]` in one-line notation.
//!
//! Maps compose right to left: `(a * b)(i) = a(b(i))`. Right multiplication by
//! the simple transposition `s_i` swaps the entries in positions `i` and `i+1`;
//! left multiplication swaps the values `i` and `i+1`.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::support::SupportSet;

pub const MAX_DEGREE: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// A permutation of `[1, n]`, stored as its one-line notation.
///
/// Ordering is lexicographic on the one-line notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    /// Builds a permutation from 1-based images `w(1), ..., w(n)`.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if n == 0 || n > MAX_DEGREE {
            return Err(Error::UnsupportedDegree(n));
        }
        let mut seen = vec![false; n + 1];
        for &x in &images {
            if x == 0 || x > n || seen[x] {
                return Err(Error::InvalidPermutation(format!("{images:?}")));
            }
            seen[x] = true;
        }
        Ok(Permutation {
            images: images.into_iter().map(|x| x as u8).collect(),
        })
    }

    pub(crate) fn from_raw(images: Vec<u8>) -> Self {
        debug_assert!(Permutation::new(images.iter().map(|&x| x as usize).collect()).is_ok());
        Permutation { images }
    }

    pub fn identity(n: usize) -> Self {
        assert!((1..=MAX_DEGREE).contains(&n), "degree {n} out of range");
        Permutation {
            images: (1..=n as u8).collect(),
        }
    }

    /// The simple transposition `s_i = (i, i+1)` in `S_n`.
    pub fn simple(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i >= n {
            return Err(Error::LetterOutOfRange { letter: i, max: n.saturating_sub(1) });
        }
        let mut p = Permutation::identity(n);
        p.images.swap(i - 1, i);
        Ok(p)
    }

    /// The longest element `n (n-1) ... 1`.
    pub fn longest(n: usize) -> Self {
        assert!((1..=MAX_DEGREE).contains(&n), "degree {n} out of range");
        Permutation {
            images: (1..=n as u8).rev().collect(),
        }
    }

    /// Evaluates a word in the simple transpositions, reduced or not.
    pub fn from_word(n: usize, letters: &[usize]) -> Result<Self> {
        if n == 0 || n > MAX_DEGREE {
            return Err(Error::UnsupportedDegree(n));
        }
        let mut p = Permutation::identity(n);
        for &i in letters {
            if i == 0 || i >= n {
                return Err(Error::LetterOutOfRange { letter: i, max: n - 1 });
            }
            p.images.swap(i - 1, i);
        }
        Ok(p)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// `w(i)` for `i` in `[1, n]`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize).collect()
    }

    pub(crate) fn raw(&self) -> &[u8] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| x as usize == i + 1)
    }

    fn check_degree(&self, other: &Permutation) -> Result<()> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(())
    }

    /// `self * other`, i.e. `i -> self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Self> {
        self.check_degree(other)?;
        Ok(Permutation {
            images: other.images.iter().map(|&j| self.images[j as usize - 1]).collect(),
        })
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u8; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize - 1] = (i + 1) as u8;
        }
        Permutation { images: inv }
    }

    /// `self * s_i`: swaps positions `i` and `i+1`.
    pub fn mul_simple_right(&self, i: usize) -> Self {
        let mut p = self.clone();
        p.images.swap(i - 1, i);
        p
    }

    /// `s_i * self`: swaps values `i` and `i+1`.
    pub fn mul_simple_left(&self, i: usize) -> Self {
        let mut p = self.clone();
        for x in p.images.iter_mut() {
            if *x as usize == i {
                *x += 1;
            } else if *x as usize == i + 1 {
                *x -= 1;
            }
        }
        p
    }

    /// `self * (i j)`: swaps the entries in positions `i` and `j`.
    pub fn swap_positions(&self, i: usize, j: usize) -> Self {
        let mut p = self.clone();
        p.images.swap(i - 1, j - 1);
        p
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let w = &self.images;
        let mut count = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] > w[j] {
                    count += 1;
                }
            }
        }
        count
    }

    pub fn right_descents(&self) -> SupportSet {
        self.images
            .windows(2)
            .enumerate()
            .filter(|(_, p)| p[0] > p[1])
            .map(|(i, _)| i + 1)
            .collect()
    }

    pub fn left_descents(&self) -> SupportSet {
        self.inverse().right_descents()
    }

    pub fn descents(&self, side: Side) -> SupportSet {
        match side {
            Side::Left => self.left_descents(),
            Side::Right => self.right_descents(),
        }
    }

    /// Letters of any reduced word: `k` is in the support iff
    /// `{w(1), ..., w(k)} != {1, ..., k}`.
    pub fn support(&self) -> SupportSet {
        let mut running_max = 0;
        let mut s = SupportSet::EMPTY;
        for (k, &x) in self.images.iter().enumerate().take(self.degree() - 1) {
            running_max = running_max.max(x as usize);
            if running_max > k + 1 {
                s.insert(k + 1);
            }
        }
        s
    }

    /// Whether `B(w)` is a boolean lattice, tested as `l(w) = |supp(w)|`.
    pub fn is_boolean(&self) -> bool {
        self.length() == self.support().len()
    }

    /// Pattern-avoidance test: boolean iff `w` avoids both 321 and 3412.
    pub fn is_boolean_by_patterns(&self) -> bool {
        let p321 = Permutation::from_raw(vec![3, 2, 1]);
        let p3412 = Permutation::from_raw(vec![3, 4, 1, 2]);
        !self.pattern_contains(&p321) && !self.pattern_contains(&p3412)
    }

    /// Whether some subsequence of `self` is order-isomorphic to `pattern`.
    pub fn pattern_contains(&self, pattern: &Permutation) -> bool {
        let k = pattern.degree();
        if k > self.degree() {
            return false;
        }
        let p = &pattern.images;
        (0..self.degree()).combinations(k).any(|idx| {
            (0..k).all(|a| {
                (a + 1..k).all(|b| (self.images[idx[a]] < self.images[idx[b]]) == (p[a] < p[b]))
            })
        })
    }

    /// Index of `self` among the permutations of its degree in lexicographic order.
    pub fn rank(&self) -> usize {
        let n = self.degree();
        let mut rank = 0usize;
        for i in 0..n {
            let smaller = self.images[i + 1..].iter().filter(|&&x| x < self.images[i]).count();
            rank = rank * (n - i) + smaller;
        }
        rank
    }

    /// Inverse of [`Permutation::rank`].
    pub fn unrank(n: usize, mut rank: usize) -> Self {
        let mut digits = vec![0; n];
        for i in (0..n).rev() {
            let base = n - i;
            digits[i] = rank % base;
            rank /= base;
        }
        let mut pool: Vec<u8> = (1..=n as u8).collect();
        let images = digits.into_iter().map(|d| pool.remove(d)).collect();
        Permutation { images }
    }

    /// All of `S_n` in lexicographic order.
    pub fn all(n: usize) -> impl Iterator<Item = Permutation> {
        (1..=n as u8)
            .permutations(n)
            .map(|images| Permutation { images })
    }

    /// One-line notation without separators; entries above 9 are parenthesized.
    pub fn compact(&self) -> String {
        self.images
            .iter()
            .map(|&x| if x < 10 { x.to_string() } else { format!("({x})") })
            .collect()
    }

    /// Parses comma-separated one-line notation, or the compact form when no
    /// comma is present (`312`, `5123678(12)49(10)(11)`).
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let entries = if s.contains(',') {
            s.split(',')
                .map(|t| parse_entry(t.trim().trim_matches(|c| c == '(' || c == ')')))
                .collect::<Result<Vec<_>>>()?
        } else if s.contains(char::is_whitespace) {
            s.split_whitespace().map(parse_entry).collect::<Result<Vec<_>>>()?
        } else {
            parse_compact(s)?
        };
        Permutation::new(entries)
    }
}

fn parse_entry(t: &str) -> Result<usize> {
    t.parse::<usize>()
        .map_err(|_| Error::Parse(format!("bad entry `{t}`")))
}

/// Digits stand for themselves; `(12)` is a single multi-digit entry.
pub(crate) fn parse_compact(s: &str) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    let mut chars = s.chars();
    while let Some(c) = chars.next() {
        match c {
            '(' => {
                let inner: String = chars.by_ref().take_while(|&c| c != ')').collect();
                out.push(parse_entry(&inner)?);
            }
            d if d.is_ascii_digit() => out.push(d as usize - '0' as usize),
            other => return Err(Error::Parse(format!("unexpected character `{other}` in `{s}`"))),
        }
    }
    Ok(out)
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.images.iter().join(","))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.compact())
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Permutation::parse(s)
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Permutation::parse(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn compose_convention() {
        let e = Permutation::identity(3);
        let s1 = Permutation::simple(3, 1).unwrap();
        let s2 = Permutation::simple(3, 2).unwrap();
        assert_eq!(s1.compose(&s1).unwrap(), e);
        assert_eq!(e.compose(&s2).unwrap(), s2);
        assert_eq!(s2.compose(&s1).unwrap(), p("3,1,2"));
        assert_eq!(Permutation::from_word(3, &[2, 1]).unwrap(), p("312"));
        assert!(matches!(
            s1.compose(&Permutation::identity(4)),
            Err(Error::DegreeMismatch { left: 3, right: 4 })
        ));
    }

    #[test]
    fn lengths() {
        assert_eq!(Permutation::identity(5).length(), 0);
        assert_eq!(p("4132").length(), 4);
        assert_eq!(Permutation::longest(4).length(), 6);
    }

    #[test]
    fn supports() {
        assert_eq!(p("312647895").support().to_vec(), vec![1, 2, 4, 5, 6, 7, 8]);
        assert_eq!(p("325184769").support().to_vec(), vec![1, 2, 3, 4, 5, 6, 7]);
        assert!(Permutation::identity(6).support().is_empty());
    }

    #[test]
    fn booleans() {
        assert!(!p("4132").is_boolean());
        assert!(p("312647895").is_boolean());
        assert!(Permutation::identity(3).is_boolean());
        assert!(p("4132").pattern_contains(&p("321")));
        assert!(!Permutation::identity(5).pattern_contains(&p("321")));
        assert!(p("3412").pattern_contains(&p("3412")));
    }

    #[test]
    fn descent_sets() {
        assert_eq!(p("4132").right_descents().to_vec(), vec![1, 3]);
        assert!(Permutation::identity(4).right_descents().is_empty());
        assert_eq!(Permutation::longest(3).left_descents().to_vec(), vec![1, 2]);
    }

    #[test]
    fn text_round_trip() {
        let w = p("5123678(12)49(10)(11)");
        assert_eq!(w.degree(), 12);
        assert_eq!(w.to_string(), "5,1,2,3,6,7,8,12,4,9,10,11");
        assert_eq!(p(&w.to_string()), w);
        assert_eq!(p(&w.compact()), w);
        assert_eq!(p("(3),1,2"), p("312"));
        assert!(Permutation::parse("1,1,2").is_err());
        assert!(Permutation::parse("").is_err());
        let json = serde_json::to_string(&w).unwrap();
        assert_eq!(serde_json::from_str::<Permutation>(&json).unwrap(), w);
    }

    #[test]
    fn rank_unrank() {
        for (r, w) in Permutation::all(4).enumerate() {
            assert_eq!(w.rank(), r);
            assert_eq!(Permutation::unrank(4, r), w);
        }
    }

    #[test]
    fn multiplication_sides() {
        let w = p("4132");
        let s = Permutation::simple(4, 2).unwrap();
        assert_eq!(w.mul_simple_right(2), w.compose(&s).unwrap());
        assert_eq!(w.mul_simple_left(2), s.compose(&w).unwrap());
    }
}
