//! Grades of simple modules: the least depth carrying homology of the complex
//! on `B(w) ∩ B(u)`, minimized over `u`.

use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bgg::complex::RestrictedComplex;
use crate::bgg::signs::SignAssignment;
use crate::bruhat::{leq_same_degree, principal_ideal, DEFAULT_IDEAL_CAP};
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::rs::{a_function, longest_parabolic_element, YoungShape};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradeOptions {
    /// Skip `u` sharing a left or right descent with `w`, and `u` comparable
    /// with `w` (both different from `e`); those complexes are exact.
    pub prune: bool,
    pub parallel: bool,
    /// Record the first nonzero depth for every `u`.
    pub per_u_table: bool,
}

impl Default for GradeOptions {
    fn default() -> Self {
        GradeOptions { prune: true, parallel: true, per_u_table: false }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UExactness {
    pub u: Permutation,
    /// `None` when the complex is exact; pruned candidates are not listed.
    pub first_nonzero_depth: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradeReport {
    pub w: Permutation,
    pub grade: usize,
    /// Lexicographically first `u` attaining the grade.
    pub witness_u: Permutation,
    pub a_value: usize,
    /// Whether the grade equals `l(w)`, the projective dimension.
    pub perfect: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub per_u_exactness: Option<Vec<UExactness>>,
}

pub fn grade(w: &Permutation, signs: &SignAssignment) -> Result<GradeReport> {
    grade_with(w, signs, GradeOptions::default())
}

fn skippable(w: &Permutation, u: &Permutation) -> bool {
    if w.is_identity() || u.is_identity() {
        return false;
    }
    if !w.left_descents().intersection(u.left_descents()).is_empty()
        || !w.right_descents().intersection(u.right_descents()).is_empty()
    {
        return true;
    }
    leq_same_degree(u.raw(), w.raw()) || leq_same_degree(w.raw(), u.raw())
}

pub fn grade_with(w: &Permutation, signs: &SignAssignment, opts: GradeOptions) -> Result<GradeReport> {
    let n = w.degree();
    if n != signs.degree() {
        return Err(Error::DegreeMismatch { left: signs.degree(), right: n });
    }
    let lw = w.length();
    let below_w = principal_ideal(w, DEFAULT_IDEAL_CAP)?;
    let candidates: Vec<Permutation> = Permutation::all(n)
        .filter(|u| !(opts.prune && skippable(w, u)))
        .collect();
    let best = AtomicUsize::new(lw);

    let evaluate = |u: &Permutation| -> Result<(Option<usize>, Permutation)> {
        let elements: Vec<Permutation> = below_w
            .elements()
            .iter()
            .filter(|x| leq_same_degree(x.raw(), u.raw()))
            .cloned()
            .collect();
        let c = RestrictedComplex::on(&elements, lw, signs)?;
        let bound = if opts.per_u_table { lw } else { best.load(Ordering::Relaxed) };
        let depth = c.first_nonzero_depth(bound);
        if let Some(d) = depth {
            best.fetch_min(d, Ordering::Relaxed);
        }
        Ok((depth, u.clone()))
    };
    let results: Vec<(Option<usize>, Permutation)> = if opts.parallel {
        candidates.par_iter().map(evaluate).collect::<Result<_>>()?
    } else {
        candidates.iter().map(evaluate).collect::<Result<_>>()?
    };

    let (grade, witness_u) = results
        .iter()
        .filter_map(|(d, u)| d.map(|d| (d, u.clone())))
        .min()
        .ok_or_else(|| Error::Invariant(format!("no u gives homology for {w}")))?;
    if grade > lw {
        return Err(Error::Invariant(format!("grade {grade} of {w} exceeds its length")));
    }
    let per_u_exactness = opts.per_u_table.then(|| {
        results
            .into_iter()
            .map(|(first_nonzero_depth, u)| UExactness { u, first_nonzero_depth })
            .collect()
    });
    Ok(GradeReport {
        w: w.clone(),
        grade,
        witness_u,
        a_value: a_function(w),
        perfect: grade == lw,
        per_u_exactness,
    })
}

/// Grade of the longest element of the Young subgroup for `mu`, which must
/// equal its length.
pub fn grade_of_parabolic_longest(mu: &YoungShape, n: usize, signs: &SignAssignment) -> Result<GradeReport> {
    let w = longest_parabolic_element(mu, n)?;
    let report = grade(&w, signs)?;
    if report.grade != w.length() {
        return Err(Error::Postcondition(format!(
            "grade {} of the longest element {w} for {mu} differs from its length {}",
            report.grade,
            w.length()
        )));
    }
    Ok(report)
}

/// Whether `L_w` is perfect: grade equal to `l(w)`.
pub fn is_perfect(w: &Permutation, signs: &SignAssignment) -> Result<bool> {
    Ok(grade(w, signs)?.perfect)
}
