use proptest::prelude::*;

use prohibit_core::corpus::wrap_type0;
use prohibit_core::oracle::derivable_words;
use prohibit_core::random::{
    binary_alphabet, random_cnf_shaped, random_context_free, random_regular, rng,
};
use prohibit_core::{
    cfg_intersect_dfa, compile_regular, complement, cyk_member, dfa_member, difference,
    enumerate_words, equivalent, minimize, parse_grammar_file, t0_member, to_cnf, to_file_text,
    Budget, ChomskyClass, ProhibitionGrammar, Verdict, Word,
};

fn small_words(n: usize) -> Vec<Word> {
    enumerate_words(&binary_alphabet(), n).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn file_text_round_trips(seed in any::<u64>()) {
        let mut r = rng(seed);
        let pg = ProhibitionGrammar::new(random_context_free(&mut r), random_regular(&mut r)).unwrap();
        let back = parse_grammar_file(&to_file_text(&pg)).unwrap();
        prop_assert_eq!(back, pg);
    }

    #[test]
    fn complement_is_an_involution(seed in any::<u64>()) {
        let d = compile_regular(&random_regular(&mut rng(seed))).unwrap();
        prop_assert!(equivalent(&complement(&complement(&d)), &d).unwrap().is_equal());
    }

    #[test]
    fn difference_is_pointwise(seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = compile_regular(&random_regular(&mut r)).unwrap();
        let b = compile_regular(&random_regular(&mut r)).unwrap();
        let d = difference(&a, &b).unwrap();
        for w in small_words(6) {
            let expect = dfa_member(&a, &w).unwrap() && !dfa_member(&b, &w).unwrap();
            prop_assert_eq!(dfa_member(&d, &w).unwrap(), expect);
        }
    }

    #[test]
    fn minimization_is_idempotent(seed in any::<u64>()) {
        let d = compile_regular(&random_regular(&mut rng(seed))).unwrap();
        let m = minimize(&d);
        prop_assert_eq!(minimize(&m).num_states(), m.num_states());
        prop_assert!(equivalent(&d, &m).unwrap().is_equal());
    }

    #[test]
    fn cyk_agrees_with_exhaustive_derivation(seed in any::<u64>()) {
        let g = random_cnf_shaped(&mut rng(seed));
        let cnf = to_cnf(&g).unwrap();
        let derived = derivable_words(&g, 6, 6);
        for w in small_words(6) {
            prop_assert_eq!(cyk_member(&cnf, &w).unwrap(), derived.contains(&w), "{}", w);
        }
    }

    #[test]
    fn product_is_intersection(seed in any::<u64>()) {
        let mut r = rng(seed);
        let cf = random_context_free(&mut r);
        let cnf = to_cnf(&cf).unwrap();
        let dfa = compile_regular(&random_regular(&mut r)).unwrap();
        let product = to_cnf(&cfg_intersect_dfa(&cnf, &dfa).unwrap()).unwrap();
        for w in small_words(6) {
            let expect = cyk_member(&cnf, &w).unwrap() && dfa_member(&dfa, &w).unwrap();
            prop_assert_eq!(cyk_member(&product, &w).unwrap(), expect, "{}", w);
        }
    }

    #[test]
    fn larger_budgets_never_flip_verdicts(seed in any::<u64>(), steps in 1usize..400, len in 1usize..12) {
        let mut r = rng(seed);
        let g = wrap_type0(&random_context_free(&mut r));
        prop_assert_eq!(g.classify(), ChomskyClass::Type0);
        let small = Budget::new(steps, len).unwrap();
        for w in small_words(4) {
            let first = t0_member(&g, &w, &small).unwrap();
            let second = t0_member(&g, &w, &small.doubled()).unwrap();
            if first.verdict.is_definitive() {
                prop_assert_eq!(first.verdict, second.verdict, "{}", w);
            }
            if let Some(trace) = first.evidence {
                prop_assert!(trace.replays_in(&g));
                prop_assert_eq!(trace.yield_word(), Some(w.clone()));
            }
        }
    }

    #[test]
    fn enumeration_count_is_geometric(k in 1usize..4, n in 0usize..6) {
        let alphabet = ["a", "b", "c"][..k].iter().map(|s| s.to_string()).collect();
        let words = enumerate_words(&alphabet, n).unwrap();
        let expect: usize = (0..=n as u32).map(|i| k.pow(i)).sum();
        prop_assert_eq!(words.len(), expect);
        prop_assert!(words.windows(2).all(|p| p[0] < p[1]));
    }
}

#[test]
fn t0_agrees_with_cyk_on_context_free_corpus() {
    for entry in prohibit_core::corpus::corpus() {
        if entry.grammar.classify() != ChomskyClass::Type2 {
            continue;
        }
        let cnf = to_cnf(&entry.grammar).unwrap();
        let wrapped = wrap_type0(&entry.grammar);
        for w in small_words(6) {
            let v = t0_member(&wrapped, &w, &Budget::for_word(&w))
                .unwrap()
                .verdict;
            assert_eq!(
                v,
                Verdict::from_bool(cyk_member(&cnf, &w).unwrap()),
                "{} on {w}",
                entry.name
            );
        }
    }
}

#[test]
fn relation_tables_match_golden_file() {
    let golden = include_str!("golden/relation_tables.txt");
    assert_eq!(prohibit_core::relation_matrix().render(), golden);
}
