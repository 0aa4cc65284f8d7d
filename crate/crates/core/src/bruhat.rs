//! Bruhat order, principal ideals and their intersections.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::word::canonical_reduced_word;

pub const DEFAULT_IDEAL_CAP: usize = 2_000_000;

/// `u <= w` in the Bruhat order, by comparing sorted prefix sets.
pub fn bruhat_leq(u: &Permutation, w: &Permutation) -> Result<bool> {
    if u.degree() != w.degree() {
        return Err(Error::DegreeMismatch {
            left: u.degree(),
            right: w.degree(),
        });
    }
    Ok(leq_same_degree(u.raw(), w.raw()))
}

/// Sorted prefix sets compare entrywise iff, for every threshold `j`, the
/// prefix of `u` has no more entries `>= j` than the prefix of `w`.
pub(crate) fn leq_same_degree(u: &[u8], w: &[u8]) -> bool {
    let n = u.len();
    if u == w {
        return true;
    }
    let mut in_u = [false; 65];
    let mut in_w = [false; 65];
    for k in 0..n.saturating_sub(1) {
        in_u[u[k] as usize] = true;
        in_w[w[k] as usize] = true;
        let (mut cu, mut cw) = (0i32, 0i32);
        for j in (1..=n).rev() {
            cu += in_u[j] as i32;
            cw += in_w[j] as i32;
            if cu > cw {
                return false;
            }
        }
    }
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Up,
    Down,
}

/// Bruhat covers of `w`, found by sweeping position transpositions.
pub fn covers_of(w: &Permutation, direction: Direction) -> Vec<Permutation> {
    let x = w.raw();
    let n = x.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let (lo, hi) = match direction {
                Direction::Up if x[i] < x[j] => (x[i], x[j]),
                Direction::Down if x[i] > x[j] => (x[j], x[i]),
                _ => continue,
            };
            if x[i + 1..j].iter().all(|&m| m < lo || m > hi) {
                out.push(w.swap_positions(i + 1, j + 1));
            }
        }
    }
    out.sort();
    out
}

/// A finite order ideal of the Bruhat order of `S_n`, with its Hasse diagram.
///
/// Elements are sorted by length, then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BruhatIdeal {
    degree: usize,
    elements: Vec<Permutation>,
    ranks: Vec<usize>,
    /// `(lower, upper)` index pairs, sorted.
    covers: Vec<(usize, usize)>,
    index: HashMap<Permutation, usize>,
}

impl BruhatIdeal {
    fn assemble(degree: usize, mut elements: Vec<Permutation>) -> (Vec<Permutation>, Vec<usize>, HashMap<Permutation, usize>) {
        elements.sort_by_cached_key(|x| (x.length(), x.clone()));
        let ranks: Vec<usize> = elements.iter().map(|x| x.length()).collect();
        let index = elements.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect();
        debug_assert!(elements.iter().all(|x| x.degree() == degree));
        (elements, ranks, index)
    }

    /// Builds the ideal on a downward-closed set, computing covers as pairs of
    /// adjacent rank with `x <= y`.
    pub fn from_elements(degree: usize, elements: Vec<Permutation>) -> Self {
        let (elements, ranks, index) = Self::assemble(degree, elements);
        let mut covers = Vec::new();
        let mut start = 0;
        while start < elements.len() {
            let r = ranks[start];
            let end = start + ranks[start..].iter().take_while(|&&x| x == r).count();
            let next_end = end + ranks[end..].iter().take_while(|&&x| x == r + 1).count();
            for a in start..end {
                for b in end..next_end {
                    if leq_same_degree(elements[a].raw(), elements[b].raw()) {
                        covers.push((a, b));
                    }
                }
            }
            start = end;
        }
        covers.sort();
        BruhatIdeal {
            degree,
            elements,
            ranks,
            covers,
            index,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn contains(&self, x: &Permutation) -> bool {
        self.index.contains_key(x)
    }

    pub fn index_of(&self, x: &Permutation) -> Option<usize> {
        self.index.get(x).copied()
    }

    pub fn rank_of(&self, x: &Permutation) -> Option<usize> {
        self.index_of(x).map(|i| self.ranks[i])
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn max_rank(&self) -> Option<usize> {
        self.ranks.last().copied()
    }

    /// Cover relations as `(lower, upper)` element-index pairs.
    pub fn cover_indices(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn covers(&self) -> impl Iterator<Item = (&Permutation, &Permutation)> {
        self.covers.iter().map(|&(a, b)| (&self.elements[a], &self.elements[b]))
    }

    /// Elements with no cover inside the ideal, in lexicographic order.
    pub fn maximal_elements(&self) -> Vec<Permutation> {
        let mut has_up = vec![false; self.len()];
        for &(a, _) in &self.covers {
            has_up[a] = true;
        }
        let mut out: Vec<Permutation> = self
            .elements
            .iter()
            .zip(has_up)
            .filter(|(_, up)| !up)
            .map(|(x, _)| x.clone())
            .collect();
        out.sort();
        out
    }

    pub fn to_json(&self) -> IdealJson {
        IdealJson {
            degree: self.degree,
            elements: self.elements.clone(),
            covers: self
                .covers()
                .map(|(x, y)| (x.clone(), y.clone()))
                .collect(),
            ranks: self.ranks.clone(),
        }
    }

    /// Rebuilds an ideal from its JSON form, checking it is downward closed
    /// and that the recorded covers and ranks are the true ones.
    pub fn from_json(json: &IdealJson) -> Result<Self> {
        let set: HashSet<&Permutation> = json.elements.iter().collect();
        for x in &json.elements {
            if x.degree() != json.degree {
                return Err(Error::DegreeMismatch { left: json.degree, right: x.degree() });
            }
            if covers_of(x, Direction::Down).iter().any(|y| !set.contains(y)) {
                return Err(Error::Parse(format!("element set is not an order ideal at {x}")));
            }
        }
        let ideal = BruhatIdeal::from_elements(json.degree, json.elements.clone());
        let mut given: Vec<_> = json.covers.clone();
        given.sort();
        let mut actual: Vec<_> = ideal.covers().map(|(x, y)| (x.clone(), y.clone())).collect();
        actual.sort();
        if given != actual {
            return Err(Error::Parse("cover list does not match the element set".into()));
        }
        for (x, r) in json.elements.iter().zip(&json.ranks) {
            if x.length() != *r {
                return Err(Error::Parse(format!("wrong rank recorded for {x}")));
            }
        }
        Ok(ideal)
    }

    pub fn to_dot(&self) -> String {
        self.to_dot_styled(&DotStyle::default())
    }

    /// DOT rendering: bottom-to-top, one row per rank, nodes labelled by
    /// one-line notation and canonical reduced word.
    pub fn to_dot_styled(&self, style: &DotStyle) -> String {
        let mut out = String::new();
        writeln!(out, "digraph ideal {{").unwrap();
        writeln!(out, "  rankdir=BT;").unwrap();
        writeln!(out, "  node [shape=plaintext];").unwrap();
        writeln!(out, "  edge [arrowhead=none];").unwrap();
        for (i, x) in self.elements.iter().enumerate() {
            let shape = if style.circled.contains(&i) { ", shape=circle" } else { "" };
            writeln!(
                out,
                "  n{i} [label=\"{}\\n[{}]\"{shape}];",
                x.compact(),
                canonical_reduced_word(x).compact()
            )
            .unwrap();
        }
        let mut start = 0;
        while start < self.len() {
            let r = self.ranks[start];
            let end = start + self.ranks[start..].iter().take_while(|&&x| x == r).count();
            let ids: Vec<String> = (start..end).map(|i| format!("n{i}")).collect();
            writeln!(out, "  {{ rank=same; {} }}", ids.join("; ")).unwrap();
            start = end;
        }
        for &(a, b) in &self.covers {
            let attr = if style.bold.contains(&(a, b)) { " [penwidth=3]" } else { "" };
            writeln!(out, "  n{a} -> n{b}{attr};").unwrap();
        }
        writeln!(out, "}}").unwrap();
        out
    }
}

/// Decorations for [`BruhatIdeal::to_dot_styled`], by element index.
#[derive(Clone, Debug, Default)]
pub struct DotStyle {
    pub bold: HashSet<(usize, usize)>,
    pub circled: HashSet<usize>,
}

/// Serialized form of a [`BruhatIdeal`]; `ranks[i]` is the length of `elements[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealJson {
    pub degree: usize,
    pub elements: Vec<Permutation>,
    pub covers: Vec<(Permutation, Permutation)>,
    pub ranks: Vec<usize>,
}

/// `B(w)`, by breadth-first search along down-covers.
pub fn principal_ideal(w: &Permutation, cap: usize) -> Result<BruhatIdeal> {
    let mut seen: HashSet<Permutation> = HashSet::new();
    let mut queue = VecDeque::new();
    let mut edges = Vec::new();
    seen.insert(w.clone());
    queue.push_back(w.clone());
    while let Some(x) = queue.pop_front() {
        for y in covers_of(&x, Direction::Down) {
            edges.push((y.clone(), x.clone()));
            if seen.insert(y.clone()) {
                if seen.len() > cap {
                    return Err(Error::CapExceeded { what: "ideal enumeration", cap });
                }
                queue.push_back(y);
            }
        }
    }
    let (elements, ranks, index) = BruhatIdeal::assemble(w.degree(), seen.into_iter().collect());
    let mut covers: Vec<(usize, usize)> = edges.iter().map(|(a, b)| (index[a], index[b])).collect();
    covers.sort();
    Ok(BruhatIdeal {
        degree: w.degree(),
        elements,
        ranks,
        covers,
        index,
    })
}

/// `B(v) ∩ B(w)`, with covers recomputed inside the intersection.
pub fn intersect_ideals(v: &Permutation, w: &Permutation, cap: usize) -> Result<BruhatIdeal> {
    bruhat_leq(v, w)?;
    // Enumerate below the shorter of the two.
    let (small, other) = if v.length() <= w.length() { (v, w) } else { (w, v) };
    let base = principal_ideal(small, cap)?;
    let elements: Vec<Permutation> = base
        .elements
        .into_iter()
        .filter(|x| leq_same_degree(x.raw(), other.raw()))
        .collect();
    Ok(BruhatIdeal::from_elements(v.degree(), elements))
}

/// Maximal elements of an ideal, in lexicographic order.
pub fn maximal_elements(ideal: &BruhatIdeal) -> Vec<Permutation> {
    ideal.maximal_elements()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RunDirection {
    Increasing,
    Decreasing,
}

/// The word `a (a+1) ... (a+b)` or `(a+b) ... (a+1) a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RunWord {
    pub start: usize,
    pub span: usize,
    pub direction: RunDirection,
}

impl RunWord {
    pub fn new(start: usize, span: usize, direction: RunDirection) -> Self {
        assert!(start >= 1, "generator indices start at 1");
        RunWord { start, span, direction }
    }

    pub fn increasing(start: usize, span: usize) -> Self {
        RunWord::new(start, span, RunDirection::Increasing)
    }

    pub fn decreasing(start: usize, span: usize) -> Self {
        RunWord::new(start, span, RunDirection::Decreasing)
    }

    /// Smallest letter.
    pub fn low(&self) -> usize {
        self.start
    }

    /// Largest letter.
    pub fn high(&self) -> usize {
        self.start + self.span
    }

    pub fn len(&self) -> usize {
        self.span + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn letters(&self) -> Vec<usize> {
        let up = self.low()..=self.high();
        match self.direction {
            RunDirection::Increasing => up.collect(),
            RunDirection::Decreasing => up.rev().collect(),
        }
    }

    pub fn to_permutation(&self, n: usize) -> Result<Permutation> {
        Permutation::from_word(n, &self.letters())
    }

    /// The two runs obtained by dropping the first or the last letter.
    pub fn shorter(&self) -> Option<(RunWord, RunWord)> {
        (self.span > 0).then(|| {
            (
                RunWord { start: self.start, span: self.span - 1, direction: self.direction },
                RunWord { start: self.start + 1, span: self.span - 1, direction: self.direction },
            )
        })
    }
}

impl std::fmt::Display for RunWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for x in self.letters() {
            if x < 10 {
                write!(f, "{x}")?;
            } else {
                write!(f, "({x})")?;
            }
        }
        Ok(())
    }
}

/// Whether the element of the run word lies below `w`.
pub fn run_word_leq(r: &RunWord, w: &Permutation) -> Result<bool> {
    if r.high() >= w.degree() {
        return Err(Error::LetterOutOfRange { letter: r.high(), max: w.degree() - 1 });
    }
    bruhat_leq(&r.to_permutation(w.degree())?, w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::ReducedWord;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn rw(n: usize, s: &str) -> Permutation {
        ReducedWord::parse(n, s).unwrap().eval()
    }

    #[test]
    fn leq_examples() {
        let e = Permutation::identity(4);
        assert!(bruhat_leq(&e, &p("4132")).unwrap());
        assert!(bruhat_leq(&rw(4, "2321"), &p("4132")).unwrap());
        assert!(!bruhat_leq(&rw(3, "121"), &rw(3, "12")).unwrap());
        assert!(bruhat_leq(&e, &Permutation::identity(5)).is_err());
    }

    #[test]
    fn cover_examples() {
        let s1 = Permutation::simple(3, 1).unwrap();
        assert_eq!(covers_of(&s1, Direction::Down), vec![Permutation::identity(3)]);
        assert_eq!(
            covers_of(&Permutation::identity(3), Direction::Up),
            vec![p("132"), p("213")]
        );
        let top = rw(5, "432");
        let down = covers_of(&top, Direction::Down);
        for w in ["32", "42", "43"] {
            assert!(down.contains(&rw(5, w)), "{w}");
        }
    }

    #[test]
    fn principal_sizes() {
        assert_eq!(principal_ideal(&Permutation::identity(3), 100).unwrap().len(), 1);
        assert_eq!(principal_ideal(&p("51234"), 100).unwrap().len(), 16);
        let b = principal_ideal(&Permutation::simple(2, 1).unwrap(), 100).unwrap();
        assert_eq!(b.elements(), &[p("12"), p("21")]);
        assert_eq!(principal_ideal(&Permutation::longest(4), 100).unwrap().len(), 24);
        assert!(matches!(
            principal_ideal(&Permutation::longest(4), 10),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn principal_covers_match_recomputed() {
        for w in Permutation::all(4) {
            let a = principal_ideal(&w, 1000).unwrap();
            let b = BruhatIdeal::from_elements(4, a.elements().to_vec());
            assert_eq!(a, b, "{w}");
        }
    }

    #[test]
    fn intersections() {
        let v = p("312647895");
        let w = p("325184769");
        let i = intersect_ideals(&v, &w, DEFAULT_IDEAL_CAP).unwrap();
        assert_eq!(i.maximal_elements(), {
            let mut m = vec![rw(9, "5217"), rw(9, "21467")];
            m.sort();
            m
        });
        let fig = intersect_ideals(&rw(6, "23451"), &rw(6, "412534"), 1000).unwrap();
        assert_eq!(fig.len(), 21);
        let b = principal_ideal(&p("2143"), 100).unwrap();
        assert_eq!(intersect_ideals(&p("2143"), &p("4321"), 100).unwrap(), b);
    }

    #[test]
    fn run_words() {
        let w = p("325184769");
        assert!(!run_word_leq(&RunWord::increasing(5, 2), &w).unwrap());
        assert!(!run_word_leq(&RunWord::increasing(5, 1), &w).unwrap());
        assert!(run_word_leq(&RunWord::decreasing(5, 1), &w).unwrap());
        assert!(run_word_leq(&RunWord::increasing(6, 1), &w).unwrap());
        assert!(run_word_leq(&RunWord::increasing(1, 0), &w).unwrap());
        assert!(!run_word_leq(&RunWord::decreasing(1, 2), &rw(4, "2132")).unwrap());
        assert_eq!(RunWord::decreasing(1, 2).to_string(), "321");
    }

    #[test]
    fn json_round_trip() {
        let i = intersect_ideals(&rw(5, "432"), &rw(5, "321432"), 1000).unwrap();
        let json = serde_json::to_string(&i.to_json()).unwrap();
        let back: IdealJson = serde_json::from_str(&json).unwrap();
        assert_eq!(BruhatIdeal::from_json(&back).unwrap(), i);
        let dot = i.to_dot();
        assert!(dot.contains("rankdir=BT"));
        assert_eq!(dot.matches("rank=same").count(), 4);
    }
}
