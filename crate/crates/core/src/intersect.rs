//! Maximal elements of `B(v) ∩ B(w)` for boolean `v`, computed from one-line
//! notation without enumerating either ideal.

use serde::{Deserialize, Serialize};

use crate::bruhat::{leq_same_degree, run_word_leq, RunDirection, RunWord};
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::selfish::maximal_selfish;
use crate::support::SupportSet;
use crate::word::{canonical_reduced_word, ReducedWord};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Increasing,
    Decreasing,
    Interlaced,
}

/// Orientation of the letters `k` and `k+1` in `w`, read off the one-line
/// notation.
pub fn orientation(w: &Permutation, k: usize) -> Result<Orientation> {
    let supp = w.support();
    if k == 0 || !supp.contains(k) || !supp.contains(k + 1) {
        return Err(Error::OrientationUndefined { k });
    }
    let n = w.degree();
    let inv = w.inverse();

    // Increasing: the first k values are [1, k+1] minus some x that sits right of k+1.
    let increasing = (1..=k).any(|x| {
        inv.apply(x) > k + 1 && (1..=k).all(|i| w.apply(i) <= k + 1 && w.apply(i) != x)
    });
    // Decreasing: the last n-k-1 values are [k+1, n] minus some y that sits left of k+1.
    let decreasing = (k + 2..=n).any(|y| {
        inv.apply(y) < k + 1 && (k + 2..=n).all(|j| w.apply(j) > k && w.apply(j) != y)
    });
    let interlaced =
        (1..=k).any(|i| w.apply(i) > k + 1) && (k + 2..=n).any(|j| w.apply(j) < k + 1);

    match (increasing, decreasing, interlaced) {
        (true, false, false) => Ok(Orientation::Increasing),
        (false, true, false) => Ok(Orientation::Decreasing),
        (false, false, true) => Ok(Orientation::Interlaced),
        other => Err(Error::Invariant(format!(
            "orientation trichotomy fails for {w} at k = {k}: {other:?}"
        ))),
    }
}

/// Orientations match unless one is increasing and the other decreasing.
pub fn orientations_match(v: &Permutation, w: &Permutation, k: usize) -> Result<bool> {
    if v.degree() != w.degree() {
        return Err(Error::DegreeMismatch { left: v.degree(), right: w.degree() });
    }
    use Orientation::*;
    Ok(!matches!(
        (orientation(v, k)?, orientation(w, k)?),
        (Increasing, Decreasing) | (Decreasing, Increasing)
    ))
}

fn require_boolean(v: &Permutation) -> Result<()> {
    if v.is_boolean() {
        Ok(())
    } else {
        Err(Error::NotBoolean(v.to_string()))
    }
}

/// A fixed reduced word of a boolean `v`. Elements of `B(v)` are exactly the
/// subwords of this word, and each is determined by its set of letters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BooleanFrame {
    word: ReducedWord,
    position: Vec<usize>,
}

impl BooleanFrame {
    pub fn new(v: &Permutation) -> Result<Self> {
        require_boolean(v)?;
        Ok(Self::from_word(canonical_reduced_word(v)))
    }

    /// The word must have distinct letters.
    pub fn from_word(word: ReducedWord) -> Self {
        let mut position = vec![usize::MAX; word.degree()];
        for (p, &x) in word.letters().iter().enumerate() {
            assert_eq!(position[x], usize::MAX, "letters of a boolean word are distinct");
            position[x] = p;
        }
        BooleanFrame { word, position }
    }

    pub fn word(&self) -> &ReducedWord {
        &self.word
    }

    pub fn degree(&self) -> usize {
        self.word.degree()
    }

    pub fn support(&self) -> SupportSet {
        self.word.support()
    }

    /// Position of a letter in the word, 0-based.
    pub fn position(&self, letter: usize) -> Option<usize> {
        self.position.get(letter).copied().filter(|&p| p != usize::MAX)
    }

    /// The subword using exactly the letters in `letters`.
    pub fn subword(&self, letters: SupportSet) -> Vec<usize> {
        debug_assert!(letters.is_subset(self.support()));
        self.word.letters().iter().copied().filter(|&x| letters.contains(x)).collect()
    }

    pub fn element(&self, letters: SupportSet) -> Permutation {
        Permutation::from_word(self.degree(), &self.subword(letters)).expect("letters in range")
    }

    /// Whether the letters of `r` occur in the word in the order `r` lists them.
    pub fn contains_run(&self, r: &RunWord) -> bool {
        let pos: Option<Vec<usize>> = r.letters().into_iter().map(|x| self.position(x)).collect();
        pos.is_some_and(|p| p.windows(2).all(|w| w[0] < w[1]))
    }
}

/// The minimal run obstructions of a boolean `v` against `w`, together with
/// the letters of mismatched consecutive pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionSet {
    /// Sorted.
    pub minimal_runs: Vec<RunWord>,
    pub mismatched_letters: SupportSet,
    /// True when no minimal run has three or more letters; single letters
    /// from outside `supp(w)` are allowed.
    pub all_j_equal_1: bool,
}

pub fn obstructions(v: &Permutation, w: &Permutation) -> Result<ObstructionSet> {
    require_boolean(v)?;
    obstructions_with_word(&canonical_reduced_word(v), w)
}

/// As [`obstructions`], scanning a caller-chosen reduced word of `v`.
pub fn obstructions_with_word(s: &ReducedWord, w: &Permutation) -> Result<ObstructionSet> {
    let frame = BooleanFrame::from_word(s.clone());
    let v = s.eval();
    if v.degree() != w.degree() {
        return Err(Error::DegreeMismatch { left: v.degree(), right: w.degree() });
    }
    let supp = frame.support();
    let mut minimal_runs = Vec::new();
    for comp in supp.interval_components() {
        let (lo, hi) = (comp.min().unwrap(), comp.max().unwrap());
        for i in lo..=hi {
            for top in i..=hi {
                let span = top - i;
                let dirs: &[RunDirection] = if span == 0 {
                    &[RunDirection::Increasing]
                } else {
                    &[RunDirection::Increasing, RunDirection::Decreasing]
                };
                for &d in dirs {
                    let r = RunWord::new(i, span, d);
                    if !frame.contains_run(&r) || run_word_leq(&r, w)? {
                        continue;
                    }
                    let shorter_ok = match r.shorter() {
                        None => true,
                        Some((a, b)) => run_word_leq(&a, w)? && run_word_leq(&b, w)?,
                    };
                    if shorter_ok {
                        minimal_runs.push(r);
                    }
                }
            }
        }
    }
    minimal_runs.sort();
    let common = supp.intersection(w.support());
    let mut mismatched_letters = SupportSet::EMPTY;
    for k in common.iter() {
        if common.contains(k + 1) && !orientations_match(&v, w, k)? {
            mismatched_letters.insert(k);
            mismatched_letters.insert(k + 1);
        }
    }
    let all_j_equal_1 = minimal_runs.iter().all(|r| r.span <= 1);
    Ok(ObstructionSet {
        minimal_runs,
        mismatched_letters,
        all_j_equal_1,
    })
}

/// Maximal elements of `B(v) ∩ B(w)` for boolean `v`, in lexicographic order.
///
/// When every obstruction has at most two letters, the supports of the
/// maximal elements are `(supp v ∩ supp w) \ V` together with a maximal
/// selfish subset of each chain of consecutive mismatched pairs in `V`.
/// Otherwise the maximal obstruction-free letter sets are found by search.
pub fn intersection_maximal_closed_form(v: &Permutation, w: &Permutation) -> Result<Vec<Permutation>> {
    let frame = BooleanFrame::new(v)?;
    let obs = obstructions(v, w)?;
    let supports = if obs.all_j_equal_1 {
        two_letter_supports(v, w, &obs)?
    } else {
        let forbidden: Vec<SupportSet> = obs
            .minimal_runs
            .iter()
            .map(|r| r.letters().into_iter().collect())
            .collect();
        maximal_avoiding(frame.support(), &forbidden)
    };
    let mut out: Vec<Permutation> = supports.into_iter().map(|s| frame.element(s)).collect();
    out.sort();
    out.dedup();
    Ok(out)
}

fn two_letter_supports(v: &Permutation, w: &Permutation, obs: &ObstructionSet) -> Result<Vec<SupportSet>> {
    let common = v.support().intersection(w.support());
    let vset = obs.mismatched_letters;
    // Chains of mismatched pairs: split V wherever an adjacent pair inside V matches.
    let mut chains: Vec<SupportSet> = Vec::new();
    for comp in vset.interval_components() {
        let mut chain = SupportSet::EMPTY;
        for k in comp.iter() {
            chain.insert(k);
            if comp.contains(k + 1) && orientations_match(v, w, k)? {
                chains.push(chain);
                chain = SupportSet::EMPTY;
            }
        }
        chains.push(chain);
    }
    let mut supports = vec![common.difference(vset)];
    for chain in chains {
        let family = maximal_selfish(chain);
        supports = supports
            .iter()
            .flat_map(|s| family.members.iter().map(move |x| s.union(*x)))
            .collect();
    }
    Ok(supports)
}

/// Inclusion-maximal subsets of `universe` containing none of `forbidden`.
pub fn maximal_avoiding(universe: SupportSet, forbidden: &[SupportSet]) -> Vec<SupportSet> {
    let letters = universe.to_vec();
    let mut out = Vec::new();
    extend_avoiding(&letters, 0, SupportSet::EMPTY, forbidden, &mut out);
    out
}

fn extend_avoiding(
    letters: &[usize],
    i: usize,
    chosen: SupportSet,
    forbidden: &[SupportSet],
    out: &mut Vec<SupportSet>,
) {
    let blocked = |s: SupportSet| forbidden.iter().any(|f| f.is_subset(s));
    if i == letters.len() {
        let maximal = letters
            .iter()
            .filter(|&&x| !chosen.contains(x))
            .all(|&x| blocked(chosen.with(x)));
        if maximal {
            out.push(chosen);
        }
        return;
    }
    let x = letters[i];
    if !blocked(chosen.with(x)) {
        extend_avoiding(letters, i + 1, chosen.with(x), forbidden, out);
    }
    extend_avoiding(letters, i + 1, chosen, forbidden, out);
}

/// Maximal interval components of `supp(v)`; `B(v)` is the product of the
/// ideals of the corresponding subwords.
pub fn support_components(v: &Permutation) -> Result<Vec<SupportSet>> {
    require_boolean(v)?;
    Ok(v.support().interval_components())
}

/// Whether `x` lies in `B(v) ∩ B(w)`.
pub fn in_intersection(x: &Permutation, v: &Permutation, w: &Permutation) -> bool {
    leq_same_degree(x.raw(), v.raw()) && leq_same_degree(x.raw(), w.raw())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bruhat::{intersect_ideals, DEFAULT_IDEAL_CAP};
    use Orientation::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn rw(n: usize, s: &str) -> Permutation {
        ReducedWord::parse(n, s).unwrap().eval()
    }

    fn sorted(mut v: Vec<Permutation>) -> Vec<Permutation> {
        v.sort();
        v
    }

    #[test]
    fn orientation_table() {
        let v = p("312647895");
        let w = p("325184769");
        let rows = [(1, Decreasing, Interlaced), (4, Decreasing, Increasing), (5, Increasing, Decreasing), (6, Increasing, Interlaced)];
        for (k, ov, ow) in rows {
            assert_eq!(orientation(&v, k).unwrap(), ov, "v, k = {k}");
            assert_eq!(orientation(&w, k).unwrap(), ow, "w, k = {k}");
        }
        assert_eq!(orientation(&rw(4, "23"), 2).unwrap(), Increasing);
        assert!(matches!(orientation(&v, 3), Err(Error::OrientationUndefined { k: 3 })));
        assert!(orientations_match(&v, &w, 1).unwrap());
        assert!(!orientations_match(&v, &w, 4).unwrap());
        assert!(orientations_match(&rw(4, "23"), &rw(4, "23"), 2).unwrap());
    }

    #[test]
    fn obstruction_examples() {
        let o = obstructions(&rw(4, "321"), &rw(4, "2132")).unwrap();
        assert_eq!(o.minimal_runs, vec![RunWord::decreasing(1, 2)]);
        assert!(!o.all_j_equal_1);

        let o = obstructions(&rw(6, "32145"), &rw(6, "4521324")).unwrap();
        assert_eq!(o.minimal_runs, vec![RunWord::decreasing(1, 2), RunWord::increasing(3, 2)]);

        let o = obstructions(&p("312647895"), &p("325184769")).unwrap();
        assert_eq!(o.mismatched_letters.to_vec(), vec![4, 5, 6]);
        assert!(o.all_j_equal_1);
    }

    #[test]
    fn maximal_examples() {
        let v = p("312647895");
        let w = p("325184769");
        assert_eq!(
            intersection_maximal_closed_form(&v, &w).unwrap(),
            sorted(vec![rw(9, "5217"), rw(9, "21467")])
        );
        assert_eq!(intersection_maximal_closed_form(&v, &v).unwrap(), vec![v.clone()]);

        let v = rw(9, "5214678");
        let got = intersection_maximal_closed_form(&v, &v.inverse()).unwrap();
        let mut expected = Vec::new();
        for a in ["1", "2"] {
            for b in ["468", "47", "57", "58"] {
                let letters: SupportSet = format!("{a}{b}")
                    .chars()
                    .map(|c| c as usize - '0' as usize)
                    .collect();
                expected.push(BooleanFrame::new(&v).unwrap().element(letters));
            }
        }
        assert_eq!(got, sorted(expected));

        let got = intersection_maximal_closed_form(&rw(4, "321"), &rw(4, "2132")).unwrap();
        assert_eq!(got, sorted(vec![rw(4, "21"), rw(4, "31"), rw(4, "32")]));
        let got = intersection_maximal_closed_form(&rw(6, "32145"), &rw(6, "4521324")).unwrap();
        let want = ["2145", "314", "315", "324", "325"].map(|s| rw(6, s)).to_vec();
        assert_eq!(got, sorted(want));
    }

    #[test]
    fn mismatches_separated_by_a_match() {
        let v = p("23451");
        let w = p("31524");
        let enumerated = intersect_ideals(&v, &w, DEFAULT_IDEAL_CAP).unwrap().maximal_elements();
        assert_eq!(intersection_maximal_closed_form(&v, &w).unwrap(), enumerated);
        assert_eq!(enumerated.len(), 4);
    }

    #[test]
    fn components() {
        assert_eq!(
            support_components(&p("312647895")).unwrap(),
            vec![SupportSet::interval(1, 2), SupportSet::interval(4, 8)]
        );
        assert_eq!(support_components(&rw(4, "2")).unwrap(), vec![SupportSet::singleton(2)]);
        assert_eq!(support_components(&rw(6, "135")).unwrap().len(), 3);
        assert!(support_components(&p("321")).is_err());
    }
}
