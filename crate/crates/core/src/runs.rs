//! Run decompositions, slimming, optimal partners and optimal ranks of
//! boolean permutations.

use serde::{Deserialize, Serialize};

use crate::bruhat::{RunDirection, RunWord};
use crate::error::{Error, Result};
use crate::intersect::BooleanFrame;
use crate::perm::Permutation;
use crate::rs::rs_shape;
use crate::word::{enumerate_reduced_words, ReducedWord, WordLimits};

/// A reduced word of a boolean permutation written as a concatenation of runs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunDecomposition {
    pub runs: Vec<RunWord>,
    pub word: ReducedWord,
    pub count: usize,
}

impl RunDecomposition {
    fn from_runs(n: usize, runs: Vec<RunWord>) -> Result<Self> {
        let letters: Vec<usize> = runs.iter().flat_map(|r| r.letters()).collect();
        let word = ReducedWord::new(n, letters)?;
        Ok(RunDecomposition { count: runs.len(), runs, word })
    }
}

/// Splits each support component into the fewest monotone intervals of
/// letters, letting increasing runs absorb shared boundary letters, then
/// orders the runs so adjacent boundary letters keep their order in `v`.
pub fn greedy_runs(v: &Permutation) -> Result<Vec<RunWord>> {
    let frame = BooleanFrame::new(v)?;
    let pos = |k: usize| frame.position(k).expect("letter in support");
    let dir = |k: usize| {
        if pos(k) < pos(k + 1) {
            RunDirection::Increasing
        } else {
            RunDirection::Decreasing
        }
    };
    let mut runs = Vec::new();
    for comp in frame.support().interval_components() {
        let (lo, hi) = (comp.min().unwrap(), comp.max().unwrap());
        let m = hi - lo + 1;
        // best[j]: (runs, -letters in increasing runs) covering the first j letters.
        let mut best = vec![(usize::MAX, 0isize); m + 1];
        let mut from = vec![0usize; m + 1];
        best[0] = (0, 0);
        for j in 1..=m {
            for i in (0..j).rev() {
                let (a, b) = (lo + i, lo + j - 1);
                if b > a + 1 && dir(a) != dir(a + 1) {
                    break;
                }
                let inc = if b > a && dir(a) == RunDirection::Increasing { (b - a + 1) as isize } else { 0 };
                let cand = (best[i].0 + 1, best[i].1 - inc);
                if cand < best[j] {
                    best[j] = cand;
                    from[j] = i;
                }
            }
        }
        let mut j = m;
        while j > 0 {
            let i = from[j];
            let (a, b) = (lo + i, lo + j - 1);
            runs.push(if a == b { RunWord::increasing(a, 0) } else { RunWord::new(a, b - a, dir(a)) });
            j = i;
        }
    }
    Ok(order_runs(&frame, runs))
}

/// Topological order of runs under the order of adjacent boundary letters,
/// preferring runs with larger letters among the available ones.
fn order_runs(frame: &BooleanFrame, mut runs: Vec<RunWord>) -> Vec<RunWord> {
    runs.sort_by_key(|r| std::cmp::Reverse(r.high()));
    let m = runs.len();
    let mut indegree = vec![0usize; m];
    let mut succ = vec![Vec::new(); m];
    for a in 0..m {
        for b in 0..m {
            if runs[a].high() + 1 == runs[b].low() {
                let k = runs[a].high();
                let (first, second) = if frame.position(k) < frame.position(k + 1) { (a, b) } else { (b, a) };
                succ[first].push(second);
                indegree[second] += 1;
            }
        }
    }
    let mut done = vec![false; m];
    let mut out = Vec::with_capacity(m);
    while out.len() < m {
        let next = (0..m).find(|&i| !done[i] && indegree[i] == 0).expect("run constraints form a forest of paths");
        done[next] = true;
        for &s in &succ[next] {
            indegree[s] -= 1;
        }
        out.push(runs[next]);
    }
    out
}

/// Fewest runs over every reduced word of `v`, with a witness decomposition.
pub fn exhaustive_runs(v: &Permutation, limits: WordLimits) -> Result<Vec<RunWord>> {
    let mut best: Option<Vec<RunWord>> = None;
    for word in enumerate_reduced_words(v, limits)? {
        let runs = min_run_partition(word.letters());
        if best.as_ref().is_none_or(|b| runs.len() < b.len()) {
            best = Some(runs);
        }
    }
    Ok(best.unwrap_or_default())
}

/// Minimal partition of a word into consecutive runs, by dynamic programming.
pub fn min_run_partition(letters: &[usize]) -> Vec<RunWord> {
    let l = letters.len();
    let mut best = vec![usize::MAX; l + 1];
    let mut from = vec![0usize; l + 1];
    best[0] = 0;
    for j in 1..=l {
        for i in (0..j).rev() {
            let seg = &letters[i..j];
            if as_run(seg).is_none() {
                break;
            }
            if best[i] + 1 < best[j] {
                best[j] = best[i] + 1;
                from[j] = i;
            }
        }
    }
    let mut runs = Vec::new();
    let mut j = l;
    while j > 0 {
        let i = from[j];
        runs.push(as_run(&letters[i..j]).unwrap());
        j = i;
    }
    runs.reverse();
    runs
}

fn as_run(seg: &[usize]) -> Option<RunWord> {
    let first = seg[0];
    if seg.len() == 1 {
        return Some(RunWord::increasing(first, 0));
    }
    let span = seg.len() - 1;
    if seg.iter().enumerate().all(|(k, &x)| x == first + k) {
        Some(RunWord::increasing(first, span))
    } else if first >= span && seg.iter().enumerate().all(|(k, &x)| x + k == first) {
        Some(RunWord::decreasing(first - span, span))
    } else {
        None
    }
}

/// An optimal run word for a boolean `v`.
///
/// The greedy decomposition is checked against the second row of the RS shape
/// of `v`; if it uses more runs, every reduced word is searched instead.
pub fn run_decompose(v: &Permutation) -> Result<RunDecomposition> {
    let greedy = greedy_runs(v)?;
    let lambda2 = rs_shape(v).row(2);
    let runs = if greedy.len() > lambda2 {
        let found = exhaustive_runs(v, WordLimits::default())?;
        if found.len() < greedy.len() {
            found
        } else {
            greedy
        }
    } else {
        greedy
    };
    check_count(RunDecomposition::from_runs(v.degree(), runs)?, lambda2)
}

fn check_count(dec: RunDecomposition, lambda2: usize) -> Result<RunDecomposition> {
    if dec.count != lambda2 {
        return Err(Error::Invariant(format!(
            "fewest runs {} differs from second RS row {lambda2} for word [{}]",
            dec.count,
            dec.word.compact()
        )));
    }
    Ok(dec)
}

/// `run(v)`.
pub fn run_count(v: &Permutation) -> Result<usize> {
    Ok(run_decompose(v)?.count)
}

/// Partner word of a single run: `(a+1)..(a+b) a..(a+b-1)` for an increasing
/// run, `(a+b-1)..a (a+b)..(a+1)` for a decreasing one, empty when `b = 0`.
pub fn run_partner(r: &RunWord) -> Vec<usize> {
    let (a, b) = (r.low(), r.span);
    if b == 0 {
        return Vec::new();
    }
    match r.direction {
        RunDirection::Increasing => (a + 1..=a + b).chain(a..a + b).collect(),
        RunDirection::Decreasing => (a..a + b).rev().chain((a + 1..=a + b).rev()).collect(),
    }
}

/// Concatenated run partners over an optimal run word.
pub fn partner_word(v: &Permutation) -> Result<Vec<usize>> {
    let dec = run_decompose(v)?;
    Ok(dec.runs.iter().flat_map(run_partner).collect())
}

/// The optimal partner of a boolean `v`; the identity when `v = e`.
pub fn optimal_partner(v: &Permutation) -> Result<Permutation> {
    Permutation::from_word(v.degree(), &partner_word(v)?)
}

/// `ork(v) = l(v) - run(v)`.
pub fn optimal_rank(v: &Permutation) -> Result<usize> {
    Ok(v.length() - run_count(v)?)
}

/// The runs of an optimal run word with their smallest letters removed.
pub fn unmatched_element(v: &Permutation) -> Result<Permutation> {
    let dec = run_decompose(v)?;
    let letters: Vec<usize> = dec
        .runs
        .iter()
        .flat_map(|r| r.letters().into_iter().filter(move |&x| x != r.low()))
        .collect();
    Permutation::from_word(v.degree(), &letters)
}

/// The unique maximal permutation with a reduced word inside `s` with its
/// `i`-th letter (1-based) deleted.
pub fn slim(s: &ReducedWord, i: usize) -> Result<Permutation> {
    if i == 0 || i > s.len() {
        return Err(Error::PositionOutOfRange { position: i, len: s.len() });
    }
    let letters = s.letters();
    let mut u = Permutation::from_word(s.degree(), &letters[..i - 1])?;
    let mut len = u.length();
    for &x in &letters[i..] {
        let next = u.mul_simple_right(x);
        let next_len = next.length();
        if next_len > len {
            u = next;
            len = next_len;
        }
    }
    Ok(u)
}
