//! Reduced words.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::perm::{parse_compact, Permutation};
use crate::support::SupportSet;

pub const DEFAULT_LENGTH_GUARD: usize = 16;
pub const DEFAULT_WORD_CAP: usize = 1_000_000;

/// A reduced word `s_{i_1} s_{i_2} ... s_{i_l}` in `S_n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ReducedWord {
    degree: usize,
    letters: Vec<usize>,
}

impl ReducedWord {
    /// Validates letter range and reducedness.
    pub fn new(degree: usize, letters: Vec<usize>) -> Result<Self> {
        let w = Permutation::from_word(degree, &letters)?;
        if w.length() != letters.len() {
            return Err(Error::NotReduced(letters.iter().join(" ")));
        }
        Ok(ReducedWord { degree, letters })
    }

    pub fn empty(degree: usize) -> Self {
        ReducedWord { degree, letters: Vec::new() }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn eval(&self) -> Permutation {
        Permutation::from_word(self.degree, &self.letters).expect("validated on construction")
    }

    pub fn support(&self) -> SupportSet {
        self.letters.iter().copied().collect()
    }

    /// Letters without separators; letters above 9 are parenthesized.
    pub fn compact(&self) -> String {
        if self.letters.is_empty() {
            return "e".into();
        }
        self.letters
            .iter()
            .map(|&x| if x < 10 { x.to_string() } else { format!("({x})") })
            .collect()
    }

    /// Space-separated letters, or the compact form when there is no
    /// whitespace. `e` and the empty string denote the empty word.
    pub fn parse(degree: usize, s: &str) -> Result<Self> {
        let s = s.trim();
        let letters = if s.is_empty() || s == "e" {
            Vec::new()
        } else if s.contains(char::is_whitespace) {
            s.split_whitespace()
                .map(|t| {
                    t.trim_matches(|c| c == '(' || c == ')')
                        .parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad letter `{t}`")))
                })
                .collect::<Result<Vec<_>>>()?
        } else {
            parse_compact(s)?
        };
        ReducedWord::new(degree, letters)
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letters.iter().join(" "))
    }
}

impl fmt::Debug for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.compact())
    }
}

impl Serialize for ReducedWord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            degree: usize,
            letters: &'a [usize],
        }
        Repr { degree: self.degree, letters: &self.letters }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ReducedWord {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            degree: usize,
            letters: Vec<usize>,
        }
        let r = Repr::deserialize(d)?;
        ReducedWord::new(r.degree, r.letters).map_err(serde::de::Error::custom)
    }
}

/// Bounds on reduced-word enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WordLimits {
    pub max_length: usize,
    pub cap: usize,
}

impl Default for WordLimits {
    fn default() -> Self {
        WordLimits {
            max_length: DEFAULT_LENGTH_GUARD,
            cap: DEFAULT_WORD_CAP,
        }
    }
}

/// All reduced words of `w`, by recursion on right descents.
pub fn enumerate_reduced_words(w: &Permutation, limits: WordLimits) -> Result<BTreeSet<ReducedWord>> {
    let l = w.length();
    if l > limits.max_length {
        return Err(Error::LengthGuard { length: l, bound: limits.max_length });
    }
    let mut out = BTreeSet::new();
    let mut suffix = vec![0; l];
    walk(w.clone(), l, &mut suffix, &mut out, limits.cap)?;
    Ok(out)
}

fn walk(
    w: Permutation,
    remaining: usize,
    suffix: &mut Vec<usize>,
    out: &mut BTreeSet<ReducedWord>,
    cap: usize,
) -> Result<()> {
    if remaining == 0 {
        if out.len() >= cap {
            return Err(Error::CapExceeded { what: "reduced word enumeration", cap });
        }
        out.insert(ReducedWord {
            degree: w.degree(),
            letters: suffix.clone(),
        });
        return Ok(());
    }
    for i in w.right_descents().iter() {
        suffix[remaining - 1] = i;
        walk(w.mul_simple_right(i), remaining - 1, suffix, out, cap)?;
    }
    Ok(())
}

/// The lexicographically smallest reduced word, built by repeatedly stripping
/// the smallest left descent.
pub fn canonical_reduced_word(w: &Permutation) -> ReducedWord {
    let mut letters = Vec::with_capacity(w.length());
    let mut cur = w.clone();
    while let Some(i) = cur.left_descents().min() {
        letters.push(i);
        cur = cur.mul_simple_left(i);
    }
    ReducedWord {
        degree: w.degree(),
        letters,
    }
}
