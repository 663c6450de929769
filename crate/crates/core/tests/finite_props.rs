mod common;

use common::*;
use epigroup_core::finite_epigroups::*;
use epigroup_core::zterm::{parse_term, EpigroupTerm, ZWord};
use proptest::prelude::*;

/// The inverse of `x e` in the group of `x`, found by search over `<x>`.
fn oracle_inverse(t: &CayleyTable, x: usize) -> usize {
    let mut powers = vec![x];
    loop {
        let next = t.mul(*powers.last().unwrap(), x);
        if powers.contains(&next) {
            break;
        }
        powers.push(next);
    }
    let idem: Vec<usize> = powers.iter().copied().filter(|&e| t.mul(e, e) == e).collect();
    assert_eq!(idem.len(), 1, "a monogenic semigroup has one idempotent");
    let e = idem[0];
    let xe = t.mul(x, e);
    let inv: Vec<usize> = powers
        .iter()
        .copied()
        .filter(|&u| t.mul(u, e) == u && t.mul(e, u) == u && t.mul(u, xe) == e && t.mul(xe, u) == e)
        .collect();
    assert_eq!(inv.len(), 1);
    inv[0]
}

fn t(s: &str) -> EpigroupTerm {
    parse_term(s).unwrap()
}

#[test]
fn pseudoinverse_matches_oracle() {
    for e in build_corpus(&CorpusConfig::epigroups()) {
        for x in 0..e.size() {
            assert_eq!(e.unary(x), oracle_inverse(e.table(), x), "{} at {x}", e.name);
        }
    }
}

#[test]
fn pointwise_laws() {
    let laws = [("x'x", "xx'"), ("x'x'x", "x'"), ("xxx'", "x''"), ("(x'x)'", "x'x"), ("(xy)'x", "x(yx)'")];
    for e in build_corpus(&CorpusConfig::epigroups()) {
        for (l, r) in laws {
            assert_eq!(check_identity(&e, &t(l), &t(r)), None, "{l} = {r} in {}", e.name);
        }
    }
}

fn is_hom(f: &[usize], a: &CayleyTable, b: &CayleyTable) -> bool {
    (0..a.size()).all(|x| (0..a.size()).all(|y| f[a.mul(x, y)] == b.mul(f[x], f[y])))
}

#[test]
fn homomorphisms_preserve_pseudoinverse() {
    let corpus = build_corpus(&CorpusConfig::epigroups());
    let mut seen = 0;
    for src in corpus.iter().filter(|e| e.size() <= 5) {
        for dst in corpus.iter().filter(|e| e.size() >= 2 && e.size() <= 3) {
            let (m, k) = (src.size(), dst.size());
            for code in 0..k.pow(m as u32) {
                let f: Vec<usize> = (0..m).map(|i| code / k.pow(i as u32) % k).collect();
                let onto = (0..k).all(|v| f.contains(&v));
                if !onto || !is_hom(&f, src.table(), dst.table()) {
                    continue;
                }
                seen += 1;
                for x in 0..m {
                    assert_eq!(f[src.unary(x)], dst.unary(f[x]), "{} -> {} via {f:?}", src.name, dst.name);
                }
            }
        }
    }
    assert!(seen > 50, "only {seen} surjections");
}

#[test]
fn enumeration_is_complete_and_irredundant() {
    let counts: Vec<usize> = (1..=3).map(|n| enumerate_semigroups(n).len()).collect();
    assert_eq!(counts, vec![1, 5, 24]);
    // every associative table on 2 elements is isomorphic to one listed
    let listed = enumerate_semigroups(2);
    let mut assoc = 0;
    for code in 0..16usize {
        let mul: Vec<usize> = (0..4).map(|i| code >> i & 1).collect();
        if let Ok(tab) = CayleyTable::new(2, mul) {
            assoc += 1;
            assert_eq!(listed.iter().filter(|l| l.is_isomorphic(&tab)).count(), 1);
        }
    }
    assert_eq!(assoc, 8);
    let three = enumerate_semigroups(3);
    for (i, a) in three.iter().enumerate() {
        for b in &three[i + 1..] {
            assert!(!a.is_isomorphic(b));
        }
    }
}

#[test]
fn witness_separates_prime_laws() {
    let basis = [("(xy)z", "x(yz)"), ("(xy)'x", "x(yx)'"), ("x'x'x", "x'"), ("xxx'", "x''"), ("(x'x)'", "x'x")];
    for p in [2u64, 3, 5] {
        let h = make_adjoined_zero_witness(p).unwrap();
        assert_eq!(h.provenance(), Provenance::CustomUnary);
        for (l, r) in basis {
            assert_eq!(check_identity(&h, &t(l), &t(r)), None, "H{p}: {l} = {r}");
        }
        for q in [2usize, 3, 5, 7] {
            let lhs = t(&format!("({})'", "x".repeat(q)));
            let rhs = t(&"x'".repeat(q));
            match check_identity(&h, &lhs, &rhs) {
                None => assert_ne!(q as u64, p),
                Some(a) => {
                    assert_eq!(q as u64, p);
                    assert_ne!(a.get('x').unwrap(), WITNESS_IDENTITY);
                }
            }
        }
    }
    for bad in [0, 1, 4, 9] {
        assert_eq!(make_adjoined_zero_witness(bad), Err(epigroup_core::error::Error::NotPrime(bad)));
    }
}

fn plain(letters: &[char]) -> ZWord {
    ZWord::concat(letters.iter().map(|&c| ZWord::letter(c)).collect()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn expansion_agrees_in_groups(z in arb_word(Shape { height: 1, letters: 2, qmax: 3, nodes: 8 })) {
        for n in 2..=6usize {
            let e = cyclic_group(n);
            let d = z.exponent_defect() as usize;
            let k = n * (d / n + 1);
            let flat = plain(&z.expand(k as u64).unwrap());
            prop_assert_eq!(check_identity(&e, &z, &flat), None, "{} with k = {} in Z{}", z, k, n);
        }
    }

    #[test]
    fn direct_and_term_evaluation_agree(z in arb_word(Shape { height: 2, letters: 2, qmax: 3, nodes: 10 }), x in 0usize..6, y in 0usize..6) {
        for e in build_corpus(&CorpusConfig::full()) {
            let a = Assignment([('x', x % e.size()), ('y', y % e.size())].into_iter().collect());
            prop_assert_eq!(eval_zword(&e, &z, &a).unwrap(), eval_zword_via_term(&e, &z, &a).unwrap());
        }
    }
}

#[test]
fn corpus_contents() {
    let c = build_corpus(&CorpusConfig::full());
    let names: Vec<&str> = c.iter().map(|e| e.name.as_str()).collect();
    for want in ["Z2", "Z6", "null2", "null3", "left-zero2", "right-zero2", "B2", "H2", "H3", "H5"] {
        assert!(names.contains(&want), "{want}");
    }
    let z4 = c.iter().find(|e| e.name == "Z4").unwrap();
    assert_eq!(z4.unary(1), z4.table().power(1, 3));
    assert_eq!(c.iter().filter(|e| e.name.starts_with('S')).count(), 30);
    assert_eq!(build_corpus(&CorpusConfig::full()), c);
    let text = serde_json::to_string(&corpus_to_json(&c)).unwrap();
    assert_eq!(corpus_from_json(&serde_json::from_str(&text).unwrap()).unwrap(), c);
}
