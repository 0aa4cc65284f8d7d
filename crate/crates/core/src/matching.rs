//! Perfect and almost perfect matchings of `B(v) ∩ B(w)` for boolean `v`,
//! as coideal filtrations with cover-pair subquotients.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bruhat::{intersect_ideals, BruhatIdeal, DotStyle, IdealJson};
use crate::error::{Error, Result};
use crate::intersect::BooleanFrame;
use crate::perm::Permutation;
use crate::runs::{optimal_partner, run_decompose};
use crate::support::SupportSet;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MatchStep {
    Pair([Permutation; 2]),
    Singleton(Permutation),
}

impl MatchStep {
    pub fn elements(&self) -> Vec<&Permutation> {
        match self {
            MatchStep::Pair([x, y]) => vec![x, y],
            MatchStep::Singleton(z) => vec![z],
        }
    }
}

/// Steps listed top-down: every prefix of `steps` is a coideal of `over`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchingCertificate {
    pub steps: Vec<MatchStep>,
    pub over: BruhatIdeal,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub steps: Vec<MatchStep>,
    pub over: IdealJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum MatchingKind {
    Perfect,
    AlmostPerfect { singleton: Permutation, rank: usize },
}

impl MatchingKind {
    pub fn singleton_rank(&self) -> Option<usize> {
        match self {
            MatchingKind::Perfect => None,
            MatchingKind::AlmostPerfect { rank, .. } => Some(*rank),
        }
    }
}

/// The first condition a certificate violates.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum MatchingViolation {
    #[error("step {step} uses {element}, which is not in the ideal")]
    Foreign { step: usize, element: Permutation },
    #[error("{element} appears in more than one step")]
    Repeated { element: Permutation },
    #[error("{element} is not covered by any step")]
    Missing { element: Permutation },
    #[error("step {step}: {x} is not covered by {y}")]
    NotCover { step: usize, x: Permutation, y: Permutation },
    #[error("after step {step} the union is not a coideal: {above} lies above {below} but is missing")]
    NotCoideal { step: usize, below: Permutation, above: Permutation },
    #[error("more than one singleton step")]
    TooManySingletons,
}

impl MatchingCertificate {
    pub fn to_json(&self) -> CertificateJson {
        CertificateJson {
            steps: self.steps.clone(),
            over: self.over.to_json(),
        }
    }

    pub fn from_json(json: &CertificateJson) -> Result<Self> {
        Ok(MatchingCertificate {
            steps: json.steps.clone(),
            over: BruhatIdeal::from_json(&json.over)?,
        })
    }

    pub fn singleton(&self) -> Option<&Permutation> {
        self.steps.iter().find_map(|s| match s {
            MatchStep::Singleton(z) => Some(z),
            _ => None,
        })
    }

    /// DOT drawing of the ideal with matched covers bold and the singleton circled.
    pub fn to_dot(&self) -> String {
        let mut style = DotStyle::default();
        for step in &self.steps {
            match step {
                MatchStep::Pair([x, y]) => {
                    if let (Some(a), Some(b)) = (self.over.index_of(x), self.over.index_of(y)) {
                        style.bold.insert((a, b));
                    }
                }
                MatchStep::Singleton(z) => {
                    if let Some(i) = self.over.index_of(z) {
                        style.circled.insert(i);
                    }
                }
            }
        }
        self.over.to_dot_styled(&style)
    }
}

/// Checks every certificate condition directly against the ideal.
pub fn verify_matching(c: &MatchingCertificate) -> std::result::Result<MatchingKind, MatchingViolation> {
    let ideal = &c.over;
    let mut up: Vec<Vec<usize>> = vec![Vec::new(); ideal.len()];
    let mut is_cover: HashSet<(usize, usize)> = HashSet::new();
    for &(a, b) in ideal.cover_indices() {
        up[a].push(b);
        is_cover.insert((a, b));
    }
    let mut taken = vec![false; ideal.len()];
    let mut singleton = None;
    for (step, s) in c.steps.iter().enumerate() {
        let mut idx = Vec::new();
        for x in s.elements() {
            let i = ideal.index_of(x).ok_or_else(|| MatchingViolation::Foreign { step, element: x.clone() })?;
            if taken[i] {
                return Err(MatchingViolation::Repeated { element: x.clone() });
            }
            taken[i] = true;
            idx.push(i);
        }
        match s {
            MatchStep::Pair([x, y]) => {
                if !is_cover.contains(&(idx[0], idx[1])) {
                    return Err(MatchingViolation::NotCover { step, x: x.clone(), y: y.clone() });
                }
            }
            MatchStep::Singleton(z) => {
                if singleton.is_some() {
                    return Err(MatchingViolation::TooManySingletons);
                }
                singleton = Some(z.clone());
            }
        }
        for &i in &idx {
            if let Some(&j) = up[i].iter().find(|&&j| !taken[j]) {
                return Err(MatchingViolation::NotCoideal {
                    step,
                    below: ideal.elements()[i].clone(),
                    above: ideal.elements()[j].clone(),
                });
            }
        }
    }
    if let Some(i) = taken.iter().position(|t| !t) {
        return Err(MatchingViolation::Missing { element: ideal.elements()[i].clone() });
    }
    Ok(match singleton {
        None => MatchingKind::Perfect,
        Some(z) => MatchingKind::AlmostPerfect { rank: z.length(), singleton: z },
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MatchingStrategy {
    /// Run-by-run matching when `w` is the optimal partner of `v`,
    /// largest-letter matching otherwise.
    #[default]
    Auto,
    /// Repeatedly match along the largest available common letter and
    /// recurse on the unmatched principal filter.
    LargestLetter,
    /// Match along the smallest letter of each run of an optimal run word in turn.
    RunByRun,
}

pub fn build_matching(v: &Permutation, w: &Permutation, cap: usize) -> Result<MatchingCertificate> {
    build_matching_with(v, w, MatchingStrategy::Auto, cap)
}

pub fn build_matching_with(
    v: &Permutation,
    w: &Permutation,
    strategy: MatchingStrategy,
    cap: usize,
) -> Result<MatchingCertificate> {
    let frame = BooleanFrame::new(v)?;
    let over = intersect_ideals(v, w, cap)?;
    let members: HashSet<SupportSet> = over.elements().iter().map(|x| x.support()).collect();
    let ctx = Ctx { frame: &frame, members: &members };
    let strategy = match strategy {
        MatchingStrategy::Auto if !v.is_identity() && *w == optimal_partner(v)? => MatchingStrategy::RunByRun,
        MatchingStrategy::Auto => MatchingStrategy::LargestLetter,
        s => s,
    };
    let masks = match strategy {
        MatchingStrategy::RunByRun => ctx.run_by_run(v)?,
        _ => {
            let mut out = Vec::new();
            ctx.largest_letter(SupportSet::EMPTY, &mut out, 0)?;
            out
        }
    };
    let steps = masks
        .into_iter()
        .map(|s| match s {
            MaskStep::Pair(a, b) => MatchStep::Pair([frame.element(a), frame.element(b)]),
            MaskStep::Singleton(z) => MatchStep::Singleton(frame.element(z)),
        })
        .collect();
    Ok(MatchingCertificate { steps, over })
}

#[derive(Clone, Copy, Debug)]
enum MaskStep {
    Pair(SupportSet, SupportSet),
    Singleton(SupportSet),
}

struct Ctx<'a> {
    frame: &'a BooleanFrame,
    members: &'a HashSet<SupportSet>,
}

impl Ctx<'_> {
    fn sorted_desc(mut pairs: Vec<(SupportSet, SupportSet)>) -> Vec<MaskStep> {
        pairs.sort_by_key(|(a, _)| (std::cmp::Reverse(a.len()), a.to_vec()));
        pairs.into_iter().map(|(a, b)| MaskStep::Pair(a, b)).collect()
    }

    fn largest_letter(&self, base: SupportSet, out: &mut Vec<MaskStep>, depth: usize) -> Result<()> {
        let filter: Vec<SupportSet> = self.members.iter().copied().filter(|s| base.is_subset(*s)).collect();
        let avail = self
            .frame
            .support()
            .difference(base)
            .iter()
            .filter(|&l| self.members.contains(&base.with(l)))
            .max();
        let Some(m) = avail else {
            if filter.len() != 1 {
                return Err(Error::Invariant(format!("filter above {base} is not a singleton")));
            }
            out.push(MaskStep::Singleton(base));
            return Ok(());
        };
        let mut pairs = Vec::new();
        let mut rest = Vec::new();
        for &s in &filter {
            if s.contains(m) {
                continue;
            }
            if self.members.contains(&s.with(m)) {
                pairs.push((s, s.with(m)));
            } else {
                rest.push(s);
            }
        }
        if let Some(&first) = rest.first() {
            let next = rest.iter().fold(first, |acc, s| acc.intersection(*s));
            let principal = filter.iter().filter(|s| next.is_subset(**s)).count();
            if principal != rest.len() || !self.members.contains(&next) {
                return Err(Error::Invariant(format!(
                    "unmatched part after letter {m} at depth {depth} is not a principal filter"
                )));
            }
            self.largest_letter(next, out, depth + 1)?;
        }
        out.extend(Self::sorted_desc(pairs));
        Ok(())
    }

    fn run_by_run(&self, v: &Permutation) -> Result<Vec<MaskStep>> {
        let runs = run_decompose(v)?.runs;
        let mut current: Vec<SupportSet> = self.members.iter().copied().collect();
        let mut stages = Vec::new();
        for r in runs.iter().filter(|r| r.span > 0) {
            let a = r.low();
            let tail = SupportSet::interval(a + 1, r.high());
            let here: HashSet<SupportSet> = current.iter().copied().collect();
            let mut pairs = Vec::new();
            let mut rest = Vec::new();
            for &s in &current {
                if tail.is_subset(s) {
                    rest.push(s);
                } else if !s.contains(a) {
                    if !here.contains(&s.with(a)) {
                        return Err(Error::Invariant(format!("{s} has no partner along letter {a}")));
                    }
                    pairs.push((s, s.with(a)));
                }
            }
            stages.push(Self::sorted_desc(pairs));
            current = rest;
        }
        let [z] = current[..] else {
            return Err(Error::Invariant(format!("{} elements left unmatched", current.len())));
        };
        let mut out = vec![MaskStep::Singleton(z)];
        for stage in stages.into_iter().rev() {
            out.extend(stage);
        }
        Ok(out)
    }
}

/// Matched pairs indexed by element, for callers that draw or inspect them.
pub fn pairing(c: &MatchingCertificate) -> HashMap<Permutation, Permutation> {
    let mut m = HashMap::new();
    for s in &c.steps {
        if let MatchStep::Pair([x, y]) = s {
            m.insert(x.clone(), y.clone());
            m.insert(y.clone(), x.clone());
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bruhat::{principal_ideal, DEFAULT_IDEAL_CAP};
    use crate::word::ReducedWord;

    fn rw(n: usize, s: &str) -> Permutation {
        ReducedWord::parse(n, s).unwrap().eval()
    }

    fn kind(v: &Permutation, w: &Permutation) -> MatchingKind {
        let c = build_matching(v, w, DEFAULT_IDEAL_CAP).unwrap();
        verify_matching(&c).unwrap()
    }

    #[test]
    fn figure_examples() {
        let v = rw(5, "4321");
        let k = kind(&v, &rw(5, "321432"));
        assert_eq!(k, MatchingKind::AlmostPerfect { singleton: rw(5, "432"), rank: 3 });

        let k = kind(&rw(4, "123"), &rw(4, "321"));
        assert_eq!(k, MatchingKind::AlmostPerfect { singleton: rw(4, "2"), rank: 1 });

        let k = kind(&rw(6, "23451"), &rw(6, "412534"));
        assert_eq!(k, MatchingKind::AlmostPerfect { singleton: rw(6, "134"), rank: 3 });
    }

    #[test]
    fn trivial_certificates() {
        let s1 = Permutation::simple(2, 1).unwrap();
        let over = principal_ideal(&s1, 10).unwrap();
        let c = MatchingCertificate {
            steps: vec![MatchStep::Pair([Permutation::identity(2), s1.clone()])],
            over,
        };
        assert_eq!(verify_matching(&c), Ok(MatchingKind::Perfect));
        assert_eq!(kind(&Permutation::identity(3), &Permutation::longest(3)).singleton_rank(), Some(0));
    }

    #[test]
    fn reordered_steps_fail() {
        let v = rw(5, "4321");
        let mut c = build_matching(&v, &rw(5, "321432"), DEFAULT_IDEAL_CAP).unwrap();
        assert!(verify_matching(&c).is_ok());
        let last = c.steps.pop().unwrap();
        c.steps.insert(0, last);
        assert!(matches!(verify_matching(&c), Err(MatchingViolation::NotCoideal { .. })));
    }

    #[test]
    fn non_cover_pair_fails() {
        let v = rw(4, "12");
        let over = principal_ideal(&v, 10).unwrap();
        let c = MatchingCertificate {
            steps: vec![
                MatchStep::Pair([rw(4, "1"), v.clone()]),
                MatchStep::Pair([Permutation::identity(4), rw(4, "2")]),
            ],
            over,
        };
        assert!(verify_matching(&c).is_ok());
        let c2 = MatchingCertificate {
            steps: vec![
                MatchStep::Pair([Permutation::identity(4), v.clone()]),
                MatchStep::Pair([rw(4, "1"), rw(4, "2")]),
            ],
            over: c.over.clone(),
        };
        assert!(matches!(verify_matching(&c2), Err(MatchingViolation::NotCover { .. })));
    }

    #[test]
    fn json_round_trip() {
        let c = build_matching(&rw(4, "123"), &rw(4, "321"), DEFAULT_IDEAL_CAP).unwrap();
        let text = serde_json::to_string(&c.to_json()).unwrap();
        assert!(text.contains("\"pair\""));
        assert!(text.contains("\"singleton\""));
        let back: CertificateJson = serde_json::from_str(&text).unwrap();
        assert_eq!(MatchingCertificate::from_json(&back).unwrap(), c);
        assert!(c.to_dot().contains("shape=circle"));
    }
}
