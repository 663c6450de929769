mod common;

use common::*;
use epigroup_core::normalizer::normalize;
use epigroup_core::omega_poly::OmegaPoly;
use epigroup_core::sword::{s_canonical, s_equal, s_neighbors, Sword};
use proptest::prelude::*;

const H1: Shape = Shape { height: 1, letters: 2, qmax: 2, nodes: 8 };
const H2: Shape = Shape { height: 2, letters: 3, qmax: 3, nodes: 10 };

/// Arbitrary height-1 words, or normal forms up to height 3.
fn arb_sword() -> impl Strategy<Value = Sword> {
    prop_oneof![
        arb_word(Shape { height: 1, letters: 3, qmax: 3, nodes: 12 }).prop_map(|z| Sword::from_zword(&z).unwrap()),
        arb_word(Shape { height: 3, letters: 3, qmax: 3, nodes: 10 }).prop_map(|z| normalize(&z).unwrap().into_sword()),
    ]
}

proptest! {
    #[test]
    fn canonical_is_idempotent(z in arb_word(H2)) {
        let c = s_canonical(&z).unwrap();
        prop_assert_eq!(s_canonical(&c).unwrap(), c.clone());
        prop_assert!(s_equal(&z, &c).unwrap());
    }

    #[test]
    fn neighbors_keep_measures(z in arb_word(H2)) {
        let len = z.length().unwrap();
        for n in s_neighbors(&z, 24) {
            prop_assert_eq!(n.length().unwrap(), len.clone(), "{} -> {}", z, n);
            prop_assert_eq!(n.height(), z.height(), "{} -> {}", z, n);
        }
    }

    #[test]
    fn canonical_is_walk_invariant(seed in any::<u64>()) {
        let mut r = rng(seed);
        let z = word(&mut r, Shape { height: 1, letters: 3, qmax: 3, nodes: 12 });
        let w = s_walk(&mut r, &z, 10, 40);
        prop_assert_eq!(s_canonical(&z).unwrap(), s_canonical(&w).unwrap(), "{} ~ {}", z, w);
    }

    #[test]
    fn cancellation(p in arb_sword(), s in arb_sword()) {
        let ps = p.concat(&s).unwrap();
        prop_assert_eq!(ps.strip_prefix(&p).unwrap(), Some(s.clone()));
        prop_assert_eq!(ps.strip_suffix(&s).unwrap(), Some(p));
    }

    #[test]
    fn prefixes_form_a_chain(s in arb_sword(), a in (0i128..3, 0i128..6), b in (0i128..3, 0i128..6)) {
        let take = |(hi, lo): (i128, i128)| {
            let len = OmegaPoly::from_coeffs(vec![lo, hi]);
            if len > *s.length() { None } else { s.prefix_of_length(&len).unwrap() }
        };
        if let (Some(p1), Some(p2)) = (take(a), take(b)) {
            let (short, long) = if p1.length() <= p2.length() { (p1, p2) } else { (p2, p1) };
            prop_assert!(long.strip_prefix(&short).unwrap().is_some(), "{} vs {}", short, long);
            prop_assert!(s.strip_prefix(&long).unwrap().is_some());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn agrees_with_search(seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = word(&mut r, H1);
        let b = if seed % 2 == 0 { s_walk(&mut r, &a, 5, 16) } else { word(&mut r, H1) };
        let fast = s_equal(&a, &b).unwrap();
        let slow = bfs_connected(&a, &b, 12, 16);
        if slow {
            prop_assert!(fast, "{} ~ {} found by search", a, b);
        }
        if seed % 2 == 0 {
            prop_assert!(fast, "{} ~ {} by construction", a, b);
        }
        if !fast {
            prop_assert!(!slow);
        }
    }
}

#[test]
fn measures_of_generators() {
    for (a, b) in [("x x^w", "x^(w+1)"), ("x(yx)^(w+2)", "(xy)^(w+2)x"), ("x^(w-1)x", "x^w")] {
        let (a, b) = (epigroup_core::zterm::parse_zword(a).unwrap(), epigroup_core::zterm::parse_zword(b).unwrap());
        assert!(s_equal(&a, &b).unwrap());
        assert!(bfs_connected(&a, &b, 4, 16));
    }
}
