mod common;

use common::*;
use epigroup_core::decider::{decide_identity_in, decide_zword_identity_in, render_trace, Outcome, Searcher};
use epigroup_core::finite_epigroups::{search_counterexample, Budget, Search};
use epigroup_core::normalizer::normalize;
use epigroup_core::zterm::{zword_to_term, ZWord};
use proptest::prelude::*;

const SHAPE: Shape = Shape { height: 2, letters: 2, qmax: 3, nodes: 8 };

/// Pairs that agree often enough to exercise both verdicts.
fn pair() -> impl Strategy<Value = (ZWord, ZWord)> {
    (any::<u64>(), 0u8..3).prop_map(|(seed, how)| {
        let mut r = rng(seed);
        let a = word(&mut r, SHAPE);
        let b = match how {
            0 => s_walk(&mut r, &a, 6, 24),
            1 => {
                // perturb one exponent of the normal form
                let n = normalize(&a).unwrap().to_zword().unwrap();
                match n {
                    ZWord::Omega(b, q) => ZWord::omega(*b, q + 1),
                    other => ZWord::concat(vec![other, ZWord::letter('x')]).unwrap(),
                }
            }
            _ => word(&mut r, SHAPE),
        };
        (a, b)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn verdicts_agree_with_finite_models((a, b) in pair()) {
        let s = Searcher::standard();
        let v = decide_zword_identity_in(&a, &b, None).unwrap();
        let found = search_counterexample(&s.corpus, &a, &b, Budget::default());
        match v.outcome {
            Outcome::Holds => prop_assert_eq!(&found, &Search::NotFound, "{} = {}", a, b),
            Outcome::Fails => {}
        }
        if found.found().is_some() {
            prop_assert_eq!(v.outcome, Outcome::Fails);
        }
        prop_assert_eq!(v.holds(), v.lhs_normal == v.rhs_normal);
    }

    #[test]
    fn term_and_word_routes_agree((a, b) in pair()) {
        let (ta, tb) = (zword_to_term(&a), zword_to_term(&b));
        let vw = decide_zword_identity_in(&a, &b, Some(Searcher::standard())).unwrap();
        let vt = decide_identity_in(&ta, &tb, Some(Searcher::standard())).unwrap();
        prop_assert_eq!(vw.outcome, vt.outcome);
        prop_assert_eq!(vw.counterexample().map(|c| c.index), vt.counterexample().map(|c| c.index));
        prop_assert!(render_trace(&vw).contains(&vw.outcome.as_str().to_uppercase()));
    }

    #[test]
    fn deterministic((a, b) in pair()) {
        let v1 = decide_zword_identity_in(&a, &b, Some(Searcher::standard())).unwrap();
        let v2 = decide_zword_identity_in(&a, &b, Some(Searcher::standard())).unwrap();
        prop_assert_eq!(v1.to_json(), v2.to_json());
    }
}
