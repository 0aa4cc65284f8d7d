//! Small sets of generator indices.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A set of generator indices in `[1, 63]`, stored as a bitmask.
///
/// Used for supports, descent sets, selfish subsets and the letter sets of
/// boolean elements (which are determined by their support once a reduced
/// word of the ambient boolean element is fixed).
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SupportSet(u64);

impl SupportSet {
    pub const EMPTY: SupportSet = SupportSet(0);

    pub fn from_bits(bits: u64) -> Self {
        debug_assert_eq!(bits & 1, 0, "letter 0 is not a generator");
        SupportSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn singleton(letter: usize) -> Self {
        let mut s = Self::EMPTY;
        s.insert(letter);
        s
    }

    /// The integer interval `[lo, hi]`; empty when `lo > hi`.
    pub fn interval(lo: usize, hi: usize) -> Self {
        (lo..=hi).collect()
    }

    pub fn insert(&mut self, letter: usize) {
        assert!((1..64).contains(&letter), "generator index {letter} out of range");
        self.0 |= 1 << letter;
    }

    pub fn remove(&mut self, letter: usize) {
        if letter < 64 {
            self.0 &= !(1 << letter);
        }
    }

    pub fn with(mut self, letter: usize) -> Self {
        self.insert(letter);
        self
    }

    pub fn without(mut self, letter: usize) -> Self {
        self.remove(letter);
        self
    }

    pub fn contains(self, letter: usize) -> bool {
        letter < 64 && self.0 & (1 << letter) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        SupportSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        SupportSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        SupportSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn max(self) -> Option<usize> {
        (self.0 != 0).then(|| 63 - self.0.leading_zeros() as usize)
    }

    /// Members in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            (bits != 0).then(|| {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                i
            })
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Maximal integer intervals whose disjoint union is `self`, in increasing order.
    pub fn interval_components(self) -> Vec<SupportSet> {
        let mut out = Vec::new();
        let mut current = SupportSet::EMPTY;
        let mut last = None;
        for i in self.iter() {
            if last.is_some_and(|l| l + 1 != i) {
                out.push(current);
                current = SupportSet::EMPTY;
            }
            current.insert(i);
            last = Some(i);
        }
        if !current.is_empty() {
            out.push(current);
        }
        out
    }

    /// Whether no two members are consecutive integers.
    pub fn is_selfish(self) -> bool {
        self.0 & (self.0 >> 1) == 0
    }
}

impl FromIterator<usize> for SupportSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = SupportSet::EMPTY;
        for i in iter {
            s.insert(i);
        }
        s
    }
}

impl fmt::Debug for SupportSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for SupportSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (j, i) in self.iter().enumerate() {
            if j > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for SupportSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for SupportSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        if let Some(bad) = v.iter().find(|&&i| !(1..64).contains(&i)) {
            return Err(serde::de::Error::custom(format!("generator index {bad} out of range")));
        }
        Ok(v.into_iter().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn components() {
        let s: SupportSet = [1, 2, 4, 5, 6, 7, 8].into_iter().collect();
        assert_eq!(
            s.interval_components(),
            vec![SupportSet::interval(1, 2), SupportSet::interval(4, 8)]
        );
        assert!(SupportSet::EMPTY.interval_components().is_empty());
    }

    #[test]
    fn min_max_iter() {
        let s: SupportSet = [3, 9, 5].into_iter().collect();
        assert_eq!(s.min(), Some(3));
        assert_eq!(s.max(), Some(9));
        assert_eq!(s.to_vec(), vec![3, 5, 9]);
        assert_eq!(s.to_string(), "{3,5,9}");
        assert!(s.is_selfish());
        assert!(!s.with(4).is_selfish());
    }
}
