//! Exhaustive comparisons against the slow reference implementations.

use bruhat_core::bruhat::{covers_of, Direction, DEFAULT_IDEAL_CAP};
use bruhat_core::matching::{build_matching, build_matching_with, verify_matching, MatchingKind, MatchingStrategy};
use bruhat_core::oracle::{bruhat_leq_subword, subword_ideal};
use bruhat_core::rs::{a_function, longest_parabolic_element, YoungShape};
use bruhat_core::runs::{optimal_partner, optimal_rank, run_count};
use bruhat_core::selfish::{maximal_selfish_interval, selfish_count};
use bruhat_core::verify::{boolean_elements, check_boolean_characterization, check_selfish, SweepConfig};
use bruhat_core::{bruhat_leq, principal_ideal, Permutation};

#[test]
fn bruhat_order_matches_subwords() {
    for n in 1..=5 {
        let all: Vec<Permutation> = Permutation::all(n).collect();
        for w in &all {
            let below = subword_ideal(w);
            for u in &all {
                assert_eq!(bruhat_leq(u, w).unwrap(), below.contains(u), "{u} <= {w}");
            }
            let ideal = principal_ideal(w, DEFAULT_IDEAL_CAP).unwrap();
            assert_eq!(ideal.len(), below.len());
        }
    }
    let u: Permutation = "2143".parse().unwrap();
    assert!(bruhat_leq_subword(&u, &"3412".parse().unwrap()));
    assert!(!bruhat_leq_subword(&u, &"1432".parse().unwrap()));
}

#[test]
fn covers_differ_by_one_transposition() {
    for w in Permutation::all(5) {
        for x in covers_of(&w, Direction::Down) {
            let moved = w.images().iter().zip(x.images()).filter(|(a, b)| *a != b).count();
            assert_eq!(moved, 2);
        }
    }
}

#[test]
fn boolean_characterizations_through_s6() {
    let cfg = SweepConfig { exhaustive: true, ..SweepConfig::default() };
    for n in 1..=6 {
        let r = check_boolean_characterization(n, &cfg);
        assert!(r.passed(), "{r}");
        assert_eq!(r.cases, (1..=n).product::<usize>());
    }
    let counts: Vec<usize> = (1..=7).map(|n| boolean_elements(n).len()).collect();
    assert_eq!(counts, vec![1, 2, 5, 13, 34, 89, 233]);
}

#[test]
fn selfish_counts_through_fifteen() {
    assert!(check_selfish(1..=15).passed());
    for k in 1..=15 {
        assert_eq!(selfish_count(k), maximal_selfish_interval(k).len() as u64);
    }
}

#[test]
fn optimal_rank_is_below_length() {
    for n in 2..=7 {
        for v in boolean_elements(n).into_iter().filter(|v| !v.is_identity()) {
            assert!(optimal_rank(&v).unwrap() < v.length(), "{v}");
            assert_eq!(a_function(&v), run_count(&v).unwrap(), "{v}");
        }
    }
}

#[test]
fn partner_matchings_in_s7() {
    for v in boolean_elements(7) {
        let w = optimal_partner(&v).unwrap();
        let kind = verify_matching(&build_matching(&v, &w, DEFAULT_IDEAL_CAP).unwrap()).unwrap();
        assert_eq!(kind.singleton_rank(), Some(v.length() - run_count(&v).unwrap()), "{v}");
    }
}

#[test]
fn both_strategies_respect_the_bound() {
    for v in boolean_elements(5) {
        let bound = optimal_rank(&v).unwrap();
        for w in Permutation::all(5) {
            let c = build_matching_with(&v, &w, MatchingStrategy::LargestLetter, DEFAULT_IDEAL_CAP).unwrap();
            match verify_matching(&c).unwrap() {
                MatchingKind::Perfect => {}
                MatchingKind::AlmostPerfect { rank, .. } => assert!(rank <= bound, "{v} {w}"),
            }
        }
    }
}

#[test]
fn a_function_of_longest_parabolic_elements() {
    for n in 1..=8 {
        for mu in YoungShape::all(n) {
            let w = longest_parabolic_element(&mu, n).unwrap();
            let expected: usize = mu.parts().iter().map(|m| m * (m - 1) / 2).sum();
            assert_eq!(w.length(), expected);
            assert_eq!(a_function(&w), expected, "{mu}");
        }
    }
}

#[test]
fn shapes_of_boolean_elements_have_two_rows() {
    for n in 1..=7 {
        for v in boolean_elements(n) {
            assert!(bruhat_core::rs::rs_shape(&v).num_rows() <= 2, "{v}");
        }
    }
}
