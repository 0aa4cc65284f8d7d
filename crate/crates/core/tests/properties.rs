use proptest::prelude::*;

use bruhat_core::bruhat::{covers_of, Direction};
use bruhat_core::intersect::{intersection_maximal_closed_form, obstructions, BooleanFrame};
use bruhat_core::oracle::{longest_increasing_subsequence, maximal_selfish_brute};
use bruhat_core::rs::rs_shape;
use bruhat_core::runs::{greedy_runs, run_decompose};
use bruhat_core::selfish::maximal_selfish;
use bruhat_core::word::canonical_reduced_word;
use bruhat_core::{
    bruhat_leq, enumerate_reduced_words, intersect_ideals, principal_ideal, Permutation, ReducedWord, RunWord,
    SupportSet, WordLimits,
};

fn perm(max_n: usize) -> impl Strategy<Value = Permutation> {
    (1..=max_n).prop_flat_map(|n| {
        Just((1..=n).collect::<Vec<usize>>())
            .prop_shuffle()
            .prop_map(|v| Permutation::new(v).unwrap())
    })
}

fn perm_of(n: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::new(v).unwrap())
}

fn boolean_of(n: usize) -> impl Strategy<Value = Permutation> {
    let all: Vec<Permutation> = Permutation::all(n).filter(Permutation::is_boolean).collect();
    proptest::sample::select(all)
}

fn pair(n: usize) -> impl Strategy<Value = (Permutation, Permutation)> {
    (perm_of(n), perm_of(n))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn simple_reflections_change_length_by_one(w in perm(9), i in 1usize..9) {
        prop_assume!(i < w.degree());
        let l = w.length();
        let r = w.mul_simple_right(i).length();
        let s = w.mul_simple_left(i).length();
        prop_assert!(r == l + 1 || r + 1 == l);
        prop_assert!(s == l + 1 || s + 1 == l);
        prop_assert_eq!(r < l, w.right_descents().contains(i));
        prop_assert_eq!(s < l, w.left_descents().contains(i));
    }

    #[test]
    fn inverse_and_compose(w in perm_of(7), u in perm_of(7)) {
        prop_assert!(w.compose(&w.inverse()).unwrap().is_identity());
        prop_assert_eq!(w.inverse().length(), w.length());
        let wu = w.compose(&u).unwrap();
        prop_assert_eq!(wu.inverse(), u.inverse().compose(&w.inverse()).unwrap());
        prop_assert!(wu.length() <= w.length() + u.length());
    }

    #[test]
    fn rank_round_trip(w in perm(9)) {
        prop_assert_eq!(Permutation::unrank(w.degree(), w.rank()), w.clone());
        let s: String = w.to_string();
        prop_assert_eq!(Permutation::parse(&s).unwrap(), w.clone());
        prop_assert_eq!(Permutation::parse(&w.compact()).unwrap(), w.clone());
        let json = serde_json::to_string(&w).unwrap();
        prop_assert_eq!(serde_json::from_str::<Permutation>(&json).unwrap(), w);
    }

    #[test]
    fn canonical_word_is_reduced(w in perm(8)) {
        let s = canonical_reduced_word(&w);
        prop_assert_eq!(s.len(), w.length());
        prop_assert_eq!(s.eval(), w.clone());
        prop_assert_eq!(s.support(), w.support());
        prop_assert_eq!(ReducedWord::parse(w.degree(), &s.compact()).unwrap(), s);
    }

    #[test]
    fn reduced_words_evaluate_back(w in perm_of(5)) {
        for s in enumerate_reduced_words(&w, WordLimits::default()).unwrap() {
            prop_assert_eq!(s.len(), w.length());
            prop_assert_eq!(s.eval(), w.clone());
        }
    }

    #[test]
    fn boolean_characterizations(w in perm(8)) {
        prop_assert_eq!(w.is_boolean(), w.is_boolean_by_patterns());
        prop_assert_eq!(w.is_boolean(), w.inverse().is_boolean());
    }

    #[test]
    fn covers_are_one_longer(w in perm_of(6)) {
        for x in covers_of(&w, Direction::Up) {
            prop_assert_eq!(x.length(), w.length() + 1);
            prop_assert!(bruhat_leq(&w, &x).unwrap());
            prop_assert!(covers_of(&x, Direction::Down).contains(&w));
        }
    }

    #[test]
    fn principal_ideal_downward_closed(w in perm_of(5)) {
        let b = principal_ideal(&w, 1000).unwrap();
        for x in b.elements() {
            prop_assert!(bruhat_leq(x, &w).unwrap());
            for y in covers_of(x, Direction::Down) {
                prop_assert!(b.contains(&y));
            }
            prop_assert_eq!(b.rank_of(x), Some(x.length()));
        }
        if w.is_boolean() {
            prop_assert_eq!(b.len(), 1 << w.length());
            prop_assert!(b.elements().iter().all(Permutation::is_boolean));
            // hypercube: each element of rank r covers exactly r others
            for x in b.elements() {
                prop_assert_eq!(covers_of(x, Direction::Down).len(), x.length());
            }
        }
    }

    #[test]
    fn intersection_laws((v, w) in pair(5), v2 in perm_of(5)) {
        let vw = intersect_ideals(&v, &w, 1000).unwrap();
        prop_assert_eq!(&vw, &intersect_ideals(&w, &v, 1000).unwrap());
        prop_assert_eq!(intersect_ideals(&v, &v, 1000).unwrap(), principal_ideal(&v, 1000).unwrap());
        if bruhat_leq(&v, &v2).unwrap() {
            let big = intersect_ideals(&v2, &w, 1000).unwrap();
            prop_assert!(vw.elements().iter().all(|x| big.contains(x)));
        }
    }

    #[test]
    fn maxima_are_subwords_of_the_frame(v in boolean_of(6), w in perm_of(6)) {
        let frame = BooleanFrame::new(&v).unwrap();
        for m in intersect_ideals(&v, &w, 10_000).unwrap().maximal_elements() {
            prop_assert_eq!(frame.element(m.support()), m);
        }
    }

    #[test]
    fn boolean_partners_only_have_short_obstructions(v in boolean_of(7), w in boolean_of(7)) {
        prop_assert!(obstructions(&v, &w).unwrap().all_j_equal_1);
        let mut enumerated = intersect_ideals(&v, &w, 100_000).unwrap().maximal_elements();
        enumerated.sort();
        prop_assert_eq!(intersection_maximal_closed_form(&v, &w).unwrap(), enumerated);
    }

    #[test]
    fn obstructions_do_not_depend_on_the_word(v in boolean_of(5), w in perm_of(5)) {
        let base = obstructions(&v, &w).unwrap();
        for s in enumerate_reduced_words(&v, WordLimits::default()).unwrap() {
            let other = bruhat_core::intersect::obstructions_with_word(&s, &w).unwrap();
            let letters = |o: &bruhat_core::intersect::ObstructionSet| -> Vec<SupportSet> {
                let mut x: Vec<SupportSet> = o.minimal_runs.iter().map(|r| r.letters().into_iter().collect()).collect();
                x.sort();
                x
            };
            prop_assert_eq!(letters(&other), letters(&base));
            prop_assert_eq!(other.mismatched_letters, base.mismatched_letters);
        }
    }

    #[test]
    fn selfish_families(bits in 0u64..(1 << 12)) {
        let universe = SupportSet::from_bits(bits << 1);
        let fam = maximal_selfish(universe);
        prop_assert_eq!(&fam.members, &maximal_selfish_brute(universe));
        for (i, a) in fam.members.iter().enumerate() {
            prop_assert!(a.is_selfish() && a.is_subset(universe));
            for b in &fam.members[i + 1..] {
                prop_assert!(!a.is_subset(*b) && !b.is_subset(*a));
            }
        }
    }

    #[test]
    fn shape_symmetry_and_first_row(w in perm(7)) {
        let shape = rs_shape(&w);
        prop_assert_eq!(shape.size(), w.degree());
        prop_assert_eq!(&shape, &rs_shape(&w.inverse()));
        prop_assert_eq!(shape.row(1), longest_increasing_subsequence(&w));
    }

    #[test]
    fn one_run_moves_the_first_row_by_at_most_one(w in perm_of(7), start in 1usize..7, span in 0usize..6, up in any::<bool>()) {
        prop_assume!(start + span < 7);
        let r = if up { RunWord::increasing(start, span) } else { RunWord::decreasing(start, span) };
        let x = r.to_permutation(7).unwrap();
        let a = rs_shape(&w).row(1) as isize;
        let b = rs_shape(&w.compose(&x).unwrap()).row(1) as isize;
        prop_assert!((a - b).abs() <= 1);
    }

    #[test]
    fn run_decomposition_is_a_reduced_word(v in boolean_of(8)) {
        let d = run_decompose(&v).unwrap();
        prop_assert_eq!(d.word.eval(), v.clone());
        prop_assert_eq!(d.count, d.runs.len());
        prop_assert!(greedy_runs(&v).unwrap().len() >= d.count);
    }
}
