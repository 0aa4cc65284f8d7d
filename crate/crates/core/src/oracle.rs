//! Slow reference implementations, used to cross-check the fast paths.

use std::collections::HashSet;

use itertools::Itertools;

use crate::error::Result;
use crate::intersect::Orientation;
use crate::perm::Permutation;
use crate::support::SupportSet;
use crate::word::{canonical_reduced_word, enumerate_reduced_words, ReducedWord, WordLimits};

/// Every permutation obtained from a reduced subword of `w`'s canonical word.
pub fn subword_ideal(w: &Permutation) -> HashSet<Permutation> {
    let s = canonical_reduced_word(w);
    subword_products(s.degree(), s.letters(), true)
}

/// Products of subwords of `letters`; only reduced subwords when `reduced_only`.
pub fn subword_products(n: usize, letters: &[usize], reduced_only: bool) -> HashSet<Permutation> {
    let l = letters.len();
    let mut out = HashSet::new();
    for mask in 0u64..1 << l {
        let sub: Vec<usize> = (0..l).filter(|i| mask >> i & 1 == 1).map(|i| letters[i]).collect();
        let p = Permutation::from_word(n, &sub).expect("letters in range");
        if !reduced_only || p.length() == sub.len() {
            out.insert(p);
        }
    }
    out
}

/// `u <= w` iff a reduced word of `u` is a subword of a reduced word of `w`.
pub fn bruhat_leq_subword(u: &Permutation, w: &Permutation) -> bool {
    subword_ideal(w).contains(u)
}

/// Boolean iff no reduced word repeats a letter.
pub fn is_boolean_by_words(w: &Permutation) -> Result<bool> {
    is_boolean_by_words_with(w, WordLimits::default())
}

pub fn is_boolean_by_words_with(w: &Permutation, limits: WordLimits) -> Result<bool> {
    Ok(enumerate_reduced_words(w, limits)?
        .iter()
        .all(|r| r.letters().iter().all_unique()))
}

pub fn support_from_words(w: &Permutation) -> Result<SupportSet> {
    Ok(enumerate_reduced_words(w, WordLimits::default())?
        .iter()
        .fold(SupportSet::EMPTY, |acc, r| acc.union(r.support())))
}

/// Orientation from the definition: increasing if every reduced word puts
/// all `k` before all `k+1`, decreasing if always after, interlaced otherwise.
pub fn orientation_by_words(w: &Permutation, k: usize) -> Result<Orientation> {
    let words = enumerate_reduced_words(w, WordLimits::default())?;
    let classify = |r: &ReducedWord| {
        let pk: Vec<usize> = r.letters().iter().positions(|&x| x == k).collect();
        let pk1: Vec<usize> = r.letters().iter().positions(|&x| x == k + 1).collect();
        if pk.iter().max() < pk1.iter().min() {
            Some(Orientation::Increasing)
        } else if pk1.iter().max() < pk.iter().min() {
            Some(Orientation::Decreasing)
        } else {
            None
        }
    };
    let mut kinds = words.iter().map(classify);
    let first = kinds.next().flatten();
    Ok(match first {
        Some(o) if kinds.all(|x| x == Some(o)) => o,
        _ => Orientation::Interlaced,
    })
}

/// Longest increasing subsequence by checking every subset.
pub fn longest_increasing_subsequence(w: &Permutation) -> usize {
    let x = w.images();
    let n = x.len();
    (0u32..1 << n)
        .filter(|mask| {
            let sub: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| x[i]).collect();
            sub.windows(2).all(|p| p[0] < p[1])
        })
        .map(|mask| mask.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

/// Maximal selfish subsets of a universe by checking every subset.
pub fn maximal_selfish_brute(universe: SupportSet) -> Vec<SupportSet> {
    let letters = universe.to_vec();
    let subsets: Vec<SupportSet> = (0u64..1 << letters.len())
        .map(|mask| {
            (0..letters.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| letters[i])
                .collect::<SupportSet>()
        })
        .filter(|s| s.is_selfish())
        .collect();
    let mut out: Vec<SupportSet> = subsets
        .iter()
        .copied()
        .filter(|s| {
            letters
                .iter()
                .all(|&x| s.contains(x) || !s.with(x).is_selfish())
        })
        .collect();
    out.sort_by_key(|x| x.to_vec());
    out
}

/// Fewest runs over every reduced word.
pub fn min_runs_over_words(v: &Permutation) -> Result<usize> {
    Ok(crate::runs::exhaustive_runs(v, WordLimits::default())?.len())
}

/// Maximal elements of the set of products of subwords of `s` with position
/// `i` (1-based) removed; also returns the whole set.
pub fn slim_brute(s: &ReducedWord, i: usize) -> (Vec<Permutation>, HashSet<Permutation>) {
    let mut letters = s.letters().to_vec();
    letters.remove(i - 1);
    let set = subword_products(s.degree(), &letters, true);
    let maxima: Vec<Permutation> = set
        .iter()
        .filter(|x| {
            !set.iter().any(|y| y != *x && crate::bruhat::leq_same_degree(x.raw(), y.raw()))
        })
        .cloned()
        .sorted()
        .collect();
    (maxima, set)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lis() {
        let w: Permutation = "24153".parse().unwrap();
        assert_eq!(longest_increasing_subsequence(&w), 3);
    }

    #[test]
    fn orientation_definition() {
        let w: Permutation = "4132".parse().unwrap();
        // R(4132) = {3213, 3231, 2321}: 2 and 3 interlace.
        assert_eq!(orientation_by_words(&w, 2).unwrap(), Orientation::Interlaced);
    }
}
