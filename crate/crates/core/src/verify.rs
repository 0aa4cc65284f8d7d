//! Sweeps checking the library's structural claims case by case, each one
//! against an independent slow computation where one exists.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bgg::{
    build_sign_assignment, full_complex, grade, is_perfect, restricted_complex, SignAssignment,
};
use crate::bruhat::{intersect_ideals, principal_ideal, DEFAULT_IDEAL_CAP};
use crate::error::{Error, Result};
use crate::intersect::{
    intersection_maximal_closed_form, maximal_avoiding, obstructions, orientation, BooleanFrame,
};
use crate::matching::{build_matching, verify_matching, MatchingKind};
use crate::oracle;
use crate::perm::Permutation;
use crate::rs::{a_function, is_longest_parabolic, longest_for_blocks, longest_parabolic_element, rs_shape, YoungShape};
use crate::runs::{optimal_partner, run_count, slim};
use crate::selfish::{maximal_selfish_interval, selfish_count};
use crate::support::SupportSet;
use crate::word::{enumerate_reduced_words, WordLimits};

/// Failure messages kept per report; the count covers all of them.
const KEPT_FAILURES: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    BooleanCharacterization,
    SelfishCount,
    IntersectionObstructions,
    IntersectionClosedForm,
    Orientation,
    PerfectMatchingExact,
    AlmostPerfectHomology,
    SingletonRankBound,
    Slimming,
    OptimalPartner,
    RunsSecondRow,
    AFunctionSecondRow,
    GradeEqualsA,
    ParabolicGrade,
    PerfectModules,
    BggStructure,
}

impl Check {
    pub const ALL: [Check; 16] = [
        Check::BooleanCharacterization,
        Check::SelfishCount,
        Check::IntersectionObstructions,
        Check::IntersectionClosedForm,
        Check::Orientation,
        Check::PerfectMatchingExact,
        Check::AlmostPerfectHomology,
        Check::SingletonRankBound,
        Check::Slimming,
        Check::OptimalPartner,
        Check::RunsSecondRow,
        Check::AFunctionSecondRow,
        Check::GradeEqualsA,
        Check::ParabolicGrade,
        Check::PerfectModules,
        Check::BggStructure,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::BooleanCharacterization => "boolean-characterization",
            Check::SelfishCount => "selfish-count",
            Check::IntersectionObstructions => "intersection-obstructions",
            Check::IntersectionClosedForm => "intersection-closed-form",
            Check::Orientation => "orientation",
            Check::PerfectMatchingExact => "perfect-matching-exact",
            Check::AlmostPerfectHomology => "almost-perfect-homology",
            Check::SingletonRankBound => "singleton-rank-bound",
            Check::Slimming => "slimming",
            Check::OptimalPartner => "optimal-partner",
            Check::RunsSecondRow => "runs-second-row",
            Check::AFunctionSecondRow => "a-function-second-row",
            Check::GradeEqualsA => "grade-equals-a",
            Check::ParabolicGrade => "parabolic-grade",
            Check::PerfectModules => "perfect-modules",
            Check::BggStructure => "bgg-structure",
        }
    }

    /// Short ids accepted in place of the name.
    pub fn alias(self) -> Option<&'static str> {
        Some(match self {
            Check::BooleanCharacterization => "thm2.4",
            Check::SelfishCount => "prop3.3",
            Check::IntersectionObstructions => "prop3.5",
            Check::IntersectionClosedForm => "cor3.6",
            Check::Orientation => "thm3.10",
            Check::PerfectMatchingExact => "lem4.3",
            Check::AlmostPerfectHomology => "lem4.4",
            Check::SingletonRankBound => "prop5.8",
            Check::Slimming => "lem5.6",
            Check::OptimalPartner => "thm5.10",
            Check::RunsSecondRow => "thm6.4",
            Check::AFunctionSecondRow => "cor6.7",
            Check::GradeEqualsA => "thm6.8",
            Check::ParabolicGrade => "thm7.2",
            Check::PerfectModules => "thm7.3",
            Check::BggStructure => return None,
        })
    }

    pub fn description(self) -> &'static str {
        match self {
            Check::BooleanCharacterization => "l(w) = |supp w|, pattern avoidance and repeat-free reduced words agree",
            Check::SelfishCount => "maximal selfish subsets of [1,k]: recursion, brute force and Padovan counts agree",
            Check::IntersectionObstructions => "maximal run-avoiding supports give the maxima of B(v) ∩ B(w)",
            Check::IntersectionClosedForm => "closed-form maxima of B(v) ∩ B(w) match enumeration",
            Check::Orientation => "one-line orientation matches the all-reduced-words definition",
            Check::PerfectMatchingExact => "perfect matchings give exact restricted complexes",
            Check::AlmostPerfectHomology => "almost perfect matchings give one-dimensional homology at the singleton",
            Check::SingletonRankBound => "every matching is perfect or has singleton rank at most l(v) - run(v)",
            Check::Slimming => "slim is the unique maximum over subwords with a letter deleted",
            Check::OptimalPartner => "the optimal partner gives an almost perfect matching of rank l(v) - run(v)",
            Check::RunsSecondRow => "second RS row equals the fewest runs over all reduced words",
            Check::AFunctionSecondRow => "a(v) = lambda_2(v) = run(v), at most two rows, first row = longest increasing subsequence",
            Check::GradeEqualsA => "grade(L_v) = a(v) for boolean v",
            Check::ParabolicGrade => "longest parabolic elements have grade equal to their length",
            Check::PerfectModules => "L_w is perfect exactly for longest parabolic elements",
            Check::BggStructure => "BGG signs: diamonds anticommute, d^2 = 0, full and principal complexes exact",
        }
    }

    /// Whether the sweep is indexed by `k` rather than by `n`.
    pub fn uses_k(self) -> bool {
        self == Check::SelfishCount
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s || c.alias() == Some(s.as_str()))
            .ok_or_else(|| Error::Parse(format!("unknown check `{s}`")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepConfig {
    pub n: RangeInclusive<usize>,
    pub k: RangeInclusive<usize>,
    pub seed: u64,
    /// Check every case even where sampling is the default.
    pub exhaustive: bool,
    /// Sample size for degrees above [`SweepConfig::exhaustive_up_to`].
    pub samples: usize,
    pub exhaustive_up_to: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            n: 1..=5,
            k: 1..=15,
            seed: 0,
            exhaustive: false,
            samples: 200,
            exhaustive_up_to: 5,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub check: Check,
    pub scope: String,
    pub cases: usize,
    /// Cases available before sampling.
    pub population: usize,
    pub failure_count: usize,
    pub failures: Vec<String>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }

    pub fn sampled(&self) -> bool {
        self.cases < self.population
    }

    fn merge(mut self, other: CheckReport) -> CheckReport {
        self.cases += other.cases;
        self.population += other.population;
        self.failure_count += other.failure_count;
        let room = KEPT_FAILURES.saturating_sub(self.failures.len());
        self.failures.extend(other.failures.into_iter().take(room));
        self
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{status} {} [{}]: {} cases", self.check, self.scope, self.cases)?;
        if self.sampled() {
            write!(f, " (sampled from {})", self.population)?;
        }
        if !self.passed() {
            write!(f, ", {} failures", self.failure_count)?;
            for msg in &self.failures {
                write!(f, "\n  {msg}")?;
            }
        }
        Ok(())
    }
}

type CaseResult = Result<Option<String>>;

/// Runs `f` on the chosen cases in parallel. A case fails on `Some(msg)` or
/// on an error.
fn sweep<T, F>(check: Check, scope: String, population: usize, cases: Vec<T>, f: F) -> CheckReport
where
    T: Sync + fmt::Debug,
    F: Fn(&T) -> CaseResult + Sync,
{
    let mut failures: Vec<String> = cases
        .par_iter()
        .filter_map(|c| match f(c) {
            Ok(None) => None,
            Ok(Some(msg)) => Some(format!("{c:?}: {msg}")),
            Err(e) => Some(format!("{c:?}: error: {e}")),
        })
        .collect();
    let failure_count = failures.len();
    failures.truncate(KEPT_FAILURES);
    CheckReport { check, scope, cases: cases.len(), population, failure_count, failures }
}

/// Indices into a population of `len` cases: all of them, or a seeded sample.
fn choose(len: usize, n: usize, cfg: &SweepConfig, salt: u64) -> Vec<usize> {
    if cfg.exhaustive || n <= cfg.exhaustive_up_to || len <= cfg.samples {
        return (0..len).collect();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ ((n as u64) << 32) ^ salt);
    let mut idx = sample(&mut rng, len, cfg.samples).into_vec();
    idx.sort_unstable();
    idx
}

fn fail_if(bad: bool, msg: impl FnOnce() -> String) -> CaseResult {
    Ok(bad.then(msg))
}

pub fn boolean_elements(n: usize) -> Vec<Permutation> {
    Permutation::all(n).filter(Permutation::is_boolean).collect()
}

/// Runs one check over every degree (or every `k`) in the configured range.
pub fn run_check(check: Check, cfg: &SweepConfig) -> Result<CheckReport> {
    if check.uses_k() {
        return Ok(check_selfish(cfg.k.clone()));
    }
    let mut total: Option<CheckReport> = None;
    for n in cfg.n.clone() {
        let r = run_check_at(check, n, cfg)?;
        total = Some(match total {
            None => r,
            Some(t) => t.merge(r),
        });
    }
    let mut report = total.ok_or_else(|| Error::Parse("empty degree range".into()))?;
    report.scope = range_scope("n", &cfg.n);
    Ok(report)
}

fn run_check_at(check: Check, n: usize, cfg: &SweepConfig) -> Result<CheckReport> {
    let needs_signs = matches!(
        check,
        Check::PerfectMatchingExact
            | Check::AlmostPerfectHomology
            | Check::OptimalPartner
            | Check::GradeEqualsA
            | Check::ParabolicGrade
            | Check::PerfectModules
            | Check::BggStructure
    );
    let signs = if needs_signs { Some(build_sign_assignment(n)?) } else { None };
    let signs = signs.as_ref();
    Ok(match check {
        Check::BooleanCharacterization => check_boolean_characterization(n, cfg),
        Check::SelfishCount => check_selfish(cfg.k.clone()),
        Check::IntersectionObstructions => check_intersection(n, cfg, false),
        Check::IntersectionClosedForm => check_intersection(n, cfg, true),
        Check::Orientation => check_orientation(n, cfg),
        Check::PerfectMatchingExact => check_matching_homology(n, cfg, signs.unwrap(), false),
        Check::AlmostPerfectHomology => check_matching_homology(n, cfg, signs.unwrap(), true),
        Check::SingletonRankBound => check_singleton_bound(n, cfg),
        Check::Slimming => check_slimming(n, 8, cfg),
        Check::OptimalPartner => check_optimal_partner(n, cfg, signs.unwrap()),
        Check::RunsSecondRow => check_runs_second_row(n, cfg),
        Check::AFunctionSecondRow => check_a_second_row(n, cfg),
        Check::GradeEqualsA => check_grade_equals_a(n, cfg, signs.unwrap()),
        Check::ParabolicGrade => check_parabolic_grade(n, signs.unwrap()),
        Check::PerfectModules => check_perfect_modules(n, cfg, signs.unwrap()),
        Check::BggStructure => check_bgg(n, cfg, signs.unwrap(), true),
    })
}

fn range_scope(name: &str, r: &RangeInclusive<usize>) -> String {
    if r.start() == r.end() {
        format!("{name} = {}", r.start())
    } else {
        format!("{name} = {}..{}", r.start(), r.end())
    }
}

fn scope(n: usize) -> String {
    format!("n = {n}")
}

pub fn check_boolean_characterization(n: usize, cfg: &SweepConfig) -> CheckReport {
    let all: Vec<Permutation> = Permutation::all(n).collect();
    let pick: Vec<Permutation> = choose(all.len(), n, cfg, 1).into_iter().map(|i| all[i].clone()).collect();
    sweep(Check::BooleanCharacterization, scope(n), all.len(), pick, |w| {
        let by_length = w.is_boolean();
        let by_patterns = w.is_boolean_by_patterns();
        // A word longer than the number of letters must repeat one.
        let (by_words, supp) = if w.length() < n.max(1) {
            (oracle::is_boolean_by_words(w)?, Some(oracle::support_from_words(w)?))
        } else {
            (false, None)
        };
        if let Some(s) = supp {
            if s != w.support() {
                return Ok(Some(format!("support {} but words give {s}", w.support())));
            }
        }
        fail_if(by_length != by_patterns || by_length != by_words, || {
            format!("length {by_length}, patterns {by_patterns}, words {by_words}")
        })
    })
}

/// Counts and members of the maximal selfish subsets of `[1, k]`.
pub fn check_selfish(ks: RangeInclusive<usize>) -> CheckReport {
    let scope = range_scope("k", &ks);
    let cases: Vec<usize> = ks.collect();
    let population = cases.len();
    sweep(Check::SelfishCount, scope, population, cases, |&k| {
        let fast = maximal_selfish_interval(k);
        let brute = oracle::maximal_selfish_brute(SupportSet::interval(1, k));
        let padovan = padovan(k);
        if fast != brute {
            return Ok(Some(format!("recursion gives {} sets, brute force {}", fast.len(), brute.len())));
        }
        fail_if(selfish_count(k) != padovan || fast.len() as u64 != padovan, || {
            format!("count {} but Padovan term {padovan}", selfish_count(k))
        })
    })
}

/// `p(k) = p(k-2) + p(k-3)` with `p(0) = p(1) = 1`, `p(2) = 2`.
fn padovan(k: usize) -> u64 {
    let mut p = vec![1u64, 1, 2];
    while p.len() <= k {
        let m = p.len();
        p.push(p[m - 2] + p[m - 3]);
    }
    p[k]
}

fn boolean_pairs(n: usize, cfg: &SweepConfig, salt: u64) -> (usize, Vec<(Permutation, Permutation)>) {
    let vs = boolean_elements(n);
    let ws: Vec<Permutation> = Permutation::all(n).collect();
    let len = vs.len() * ws.len();
    let pairs = choose(len, n, cfg, salt)
        .into_iter()
        .map(|i| (vs[i / ws.len()].clone(), ws[i % ws.len()].clone()))
        .collect();
    (len, pairs)
}

fn boolean_cases(n: usize, cfg: &SweepConfig, salt: u64) -> (usize, Vec<Permutation>) {
    let vs = boolean_elements(n);
    let pick = choose(vs.len(), n, cfg, salt).into_iter().map(|i| vs[i].clone()).collect();
    (vs.len(), pick)
}

/// Maximal elements from the maximal supports avoiding every obstruction run.
pub fn maximal_by_obstructions(v: &Permutation, w: &Permutation) -> Result<Vec<Permutation>> {
    let frame = BooleanFrame::new(v)?;
    let obs = obstructions(v, w)?;
    let forbidden: Vec<SupportSet> = obs.minimal_runs.iter().map(|r| r.letters().into_iter().collect()).collect();
    let mut out: Vec<Permutation> = maximal_avoiding(frame.support(), &forbidden)
        .into_iter()
        .map(|s| frame.element(s))
        .collect();
    out.sort();
    Ok(out)
}

pub fn check_intersection(n: usize, cfg: &SweepConfig, closed_form: bool) -> CheckReport {
    let check = if closed_form { Check::IntersectionClosedForm } else { Check::IntersectionObstructions };
    let (population, pairs) = boolean_pairs(n, cfg, 2);
    sweep(check, scope(n), population, pairs, |(v, w)| {
        let mut expected = intersect_ideals(v, w, DEFAULT_IDEAL_CAP)?.maximal_elements();
        expected.sort();
        let got = if closed_form {
            intersection_maximal_closed_form(v, w)?
        } else {
            maximal_by_obstructions(v, w)?
        };
        fail_if(got != expected, || format!("got {got:?}, enumeration gives {expected:?}"))
    })
}

pub fn check_orientation(n: usize, cfg: &SweepConfig) -> CheckReport {
    let all: Vec<Permutation> = Permutation::all(n).collect();
    let pick: Vec<Permutation> = choose(all.len(), n, cfg, 3).into_iter().map(|i| all[i].clone()).collect();
    sweep(Check::Orientation, scope(n), all.len(), pick, |w| {
        let supp = w.support();
        for k in supp.iter().filter(|&k| supp.contains(k + 1)) {
            let fast = orientation(w, k)?;
            let slow = oracle::orientation_by_words(w, k)?;
            if fast != slow {
                return Ok(Some(format!("k = {k}: one-line {fast:?}, words {slow:?}")));
            }
        }
        Ok(None)
    })
}

fn matching_homology_mismatch(
    v: &Permutation,
    w: &Permutation,
    kind: &MatchingKind,
    signs: &SignAssignment,
) -> Result<Option<String>> {
    let h = restricted_complex(v, w, signs)?.homology_by_depth();
    let mut expected = vec![0; h.len()];
    if let MatchingKind::AlmostPerfect { rank, .. } = kind {
        expected[v.length() - rank] = 1;
    }
    Ok((h != expected).then(|| format!("homology by depth {h:?}, matching predicts {expected:?}")))
}

/// Matching certificates verify, and their kind predicts the homology.
pub fn check_matching_homology(n: usize, cfg: &SweepConfig, signs: &SignAssignment, almost: bool) -> CheckReport {
    let check = if almost { Check::AlmostPerfectHomology } else { Check::PerfectMatchingExact };
    let (population, pairs) = boolean_pairs(n, cfg, 4);
    sweep(check, scope(n), population, pairs, |(v, w)| {
        let cert = build_matching(v, w, DEFAULT_IDEAL_CAP)?;
        let kind = match verify_matching(&cert) {
            Ok(k) => k,
            Err(e) => return Ok(Some(format!("certificate rejected: {e}"))),
        };
        if matches!(kind, MatchingKind::Perfect) == almost {
            return Ok(None);
        }
        matching_homology_mismatch(v, w, &kind, signs)
    })
}

pub fn check_singleton_bound(n: usize, cfg: &SweepConfig) -> CheckReport {
    let (population, pairs) = boolean_pairs(n, cfg, 5);
    sweep(Check::SingletonRankBound, scope(n), population, pairs, |(v, w)| {
        let cert = build_matching(v, w, DEFAULT_IDEAL_CAP)?;
        let kind = match verify_matching(&cert) {
            Ok(k) => k,
            Err(e) => return Ok(Some(format!("certificate rejected: {e}"))),
        };
        let bound = v.length() - run_count(v)?;
        fail_if(kind.singleton_rank().is_some_and(|r| r > bound), || {
            format!("singleton rank {:?} exceeds {bound}", kind.singleton_rank())
        })
    })
}

/// Every reduced word of length at most `max_len` in `S_n`, every position.
pub fn check_slimming(n: usize, max_len: usize, cfg: &SweepConfig) -> CheckReport {
    let words: Vec<_> = Permutation::all(n)
        .filter(|w| w.length() <= max_len)
        .flat_map(|w| enumerate_reduced_words(&w, WordLimits::default()).expect("short words"))
        .filter(|s| !s.is_empty())
        .collect();
    let pick: Vec<_> = choose(words.len(), n, cfg, 6).into_iter().map(|i| words[i].clone()).collect();
    sweep(Check::Slimming, scope(n), words.len(), pick, |s| {
        for i in 1..=s.len() {
            let fast = slim(s, i)?;
            let (maxima, set) = oracle::slim_brute(s, i);
            if maxima != [fast.clone()] {
                return Ok(Some(format!("i = {i}: slim {fast}, maxima {maxima:?}")));
            }
            let below: BTreeSet<Permutation> = principal_ideal(&fast, DEFAULT_IDEAL_CAP)?
                .elements()
                .iter()
                .filter(|x| x.is_boolean())
                .cloned()
                .collect();
            let generated: BTreeSet<Permutation> = set.into_iter().filter(Permutation::is_boolean).collect();
            if below != generated {
                return Ok(Some(format!("i = {i}: boolean elements differ")));
            }
        }
        Ok(None)
    })
}

pub fn check_optimal_partner(n: usize, cfg: &SweepConfig, signs: &SignAssignment) -> CheckReport {
    let (population, vs) = boolean_cases(n, cfg, 7);
    sweep(Check::OptimalPartner, scope(n), population, vs, |v| {
        let w = optimal_partner(v)?;
        let cert = build_matching(v, &w, DEFAULT_IDEAL_CAP)?;
        let kind = match verify_matching(&cert) {
            Ok(k) => k,
            Err(e) => return Ok(Some(format!("certificate rejected: {e}"))),
        };
        let ork = v.length() - run_count(v)?;
        if kind.singleton_rank() != Some(ork) {
            return Ok(Some(format!("partner {w}: singleton rank {:?}, expected {ork}", kind.singleton_rank())));
        }
        matching_homology_mismatch(v, &w, &kind, signs)
    })
}

pub fn check_runs_second_row(n: usize, cfg: &SweepConfig) -> CheckReport {
    let (population, vs) = boolean_cases(n, cfg, 8);
    sweep(Check::RunsSecondRow, scope(n), population, vs, |v| {
        let lambda2 = rs_shape(v).row(2);
        let fewest = oracle::min_runs_over_words(v)?;
        let fast = run_count(v)?;
        fail_if(lambda2 != fewest || fast != fewest, || {
            format!("lambda_2 = {lambda2}, fewest runs {fewest}, run_count {fast}")
        })
    })
}

pub fn check_a_second_row(n: usize, cfg: &SweepConfig) -> CheckReport {
    let all: Vec<Permutation> = Permutation::all(n).collect();
    let pick: Vec<Permutation> = choose(all.len(), n, cfg, 9).into_iter().map(|i| all[i].clone()).collect();
    sweep(Check::AFunctionSecondRow, scope(n), all.len(), pick, |w| {
        let shape = rs_shape(w);
        let lis = oracle::longest_increasing_subsequence(w);
        if shape.row(1) != lis {
            return Ok(Some(format!("first row {} but longest increasing subsequence {lis}", shape.row(1))));
        }
        if !w.is_boolean() {
            return Ok(None);
        }
        let (a, l2, runs) = (a_function(w), shape.row(2), run_count(w)?);
        fail_if(shape.num_rows() > 2 || a != l2 || l2 != runs, || {
            format!("shape {shape}, a = {a}, run = {runs}")
        })
    })
}

pub fn check_grade_equals_a(n: usize, cfg: &SweepConfig, signs: &SignAssignment) -> CheckReport {
    let (population, vs) = boolean_cases(n, cfg, 10);
    sweep(Check::GradeEqualsA, scope(n), population, vs, |v| {
        let r = grade(v, signs)?;
        fail_if(r.grade != r.a_value, || format!("grade {} but a = {}", r.grade, r.a_value))
    })
}

fn compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    (1..=n)
        .flat_map(|first| {
            compositions(n - first).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

/// Every partition and composition of `n`.
pub fn check_parabolic_grade(n: usize, signs: &SignAssignment) -> CheckReport {
    let mut blocks: Vec<Vec<usize>> = YoungShape::all(n).iter().map(|mu| mu.parts().to_vec()).collect();
    blocks.extend(compositions(n));
    blocks.sort();
    blocks.dedup();
    let population = blocks.len();
    sweep(Check::ParabolicGrade, scope(n), population, blocks, |b| {
        let w = if b.windows(2).all(|p| p[0] >= p[1]) {
            longest_parabolic_element(&YoungShape::new(b.clone())?, n)?
        } else {
            longest_for_blocks(b, n)?
        };
        let g = grade(&w, signs)?.grade;
        fail_if(g != w.length(), || format!("{w}: grade {g}, length {}", w.length()))
    })
}

pub fn check_perfect_modules(n: usize, cfg: &SweepConfig, signs: &SignAssignment) -> CheckReport {
    let all: Vec<Permutation> = Permutation::all(n).collect();
    let pick: Vec<Permutation> = choose(all.len(), n, cfg, 11).into_iter().map(|i| all[i].clone()).collect();
    sweep(Check::PerfectModules, scope(n), all.len(), pick, |w| {
        let perfect = is_perfect(w, signs)?;
        let parabolic = is_longest_parabolic(w);
        fail_if(perfect != parabolic, || format!("perfect {perfect}, longest parabolic {parabolic}"))
    })
}

/// Diamond signs, `d^2 = 0` on `S_n`, and, when `exactness` is set,
/// exactness of the full complex and of every `B(w)` with `w != e`.
pub fn check_bgg(n: usize, cfg: &SweepConfig, signs: &SignAssignment, exactness: bool) -> CheckReport {
    let full = sweep(Check::BggStructure, scope(n), 1, vec![n], |_| {
        signs.check_diamonds()?;
        let c = full_complex(signs)?;
        if !c.d_squared_is_zero() {
            return Ok(Some("d^2 != 0 on the full complex".into()));
        }
        let h: usize = c.homology_by_depth().iter().sum();
        fail_if(exactness && n > 1 && h != 0, || format!("full complex has {h} homology classes"))
    });
    if !exactness {
        return full;
    }
    let w0 = Permutation::longest(n);
    let all: Vec<Permutation> = Permutation::all(n).filter(|w| !w.is_identity()).collect();
    let pick: Vec<Permutation> = choose(all.len(), n, cfg, 12).into_iter().map(|i| all[i].clone()).collect();
    let principal = sweep(Check::BggStructure, scope(n), all.len(), pick, |w| {
        let h = restricted_complex(w, &w0, signs)?.homology_by_depth();
        fail_if(h.iter().any(|&x| x != 0), || format!("B(w) homology by depth {h:?}"))
    });
    full.merge(principal)
}
