//! The BGG complex on the Bruhat order of `S_n`, its restrictions to
//! intersections of principal ideals, and grades of simple modules.

pub mod complex;
pub mod grade;
pub mod signs;

pub use complex::{full_complex, homology_ranks, restricted_complex, RestrictedComplex};
pub use grade::{grade, grade_of_parabolic_longest, grade_with, is_perfect, GradeOptions, GradeReport, UExactness};
pub use signs::{build_sign_assignment, build_sign_assignment_with, BruhatGraph, SignAssignment, SignSolver};
