//! Boolean permutations, intersections of principal Bruhat ideals, optimal
//! partners, Robinson–Schensted shapes and the grades of simple modules over
//! the incidence algebra of the Bruhat order of `S_n`.
//!
//! Permutations are stored in one-line notation and compose right to left.
//! Square brackets in docs and output, as in `[2321]`, denote the element
//! given by a reduced word.

pub mod bgg;
pub mod bruhat;
pub mod error;
pub mod intersect;
pub mod linalg;
pub mod matching;
pub mod oracle;
pub mod perm;
pub mod rs;
pub mod runs;
pub mod selfish;
pub mod support;
pub mod verify;
pub mod word;

pub use bruhat::{
    bruhat_leq, covers_of, intersect_ideals, maximal_elements, principal_ideal, run_word_leq,
    BruhatIdeal, Direction, RunDirection, RunWord,
};
pub use error::{Error, Result};
pub use perm::{Permutation, Side};
pub use support::SupportSet;
pub use word::{canonical_reduced_word, enumerate_reduced_words, ReducedWord, WordLimits};
