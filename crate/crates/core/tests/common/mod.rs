#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet, VecDeque};

use epigroup_core::sword::s_neighbors;
use epigroup_core::finite_epigroups::{build_corpus, CorpusConfig, Epigroup};
use epigroup_core::zterm::{EpigroupTerm, ZWord};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Clone, Copy, Debug)]
pub struct Shape {
    pub height: usize,
    pub letters: usize,
    pub qmax: i64,
    pub nodes: usize,
}

fn letter(r: &mut ChaCha8Rng, shape: Shape) -> ZWord {
    ZWord::Letter((b'x' + r.gen_range(0..shape.letters as u8)) as char)
}

/// Random word whose height is at most `shape.height`, using roughly at most
/// `shape.nodes` tree nodes.
pub fn word(r: &mut ChaCha8Rng, shape: Shape) -> ZWord {
    let mut budget = shape.nodes.max(1);
    gen(r, shape, shape.height, &mut budget)
}

fn gen(r: &mut ChaCha8Rng, shape: Shape, h: usize, budget: &mut usize) -> ZWord {
    let factors = r.gen_range(1..=3usize);
    let mut parts = Vec::new();
    for _ in 0..factors {
        if *budget == 0 {
            break;
        }
        if h > 0 && *budget >= 2 && r.gen_bool(0.45) {
            *budget -= 1;
            let base = gen(r, shape, h - 1, budget);
            parts.push(ZWord::omega(base, r.gen_range(-shape.qmax..=shape.qmax)));
        } else {
            *budget -= 1;
            parts.push(letter(r, shape));
        }
    }
    if parts.is_empty() {
        parts.push(letter(r, shape));
    }
    ZWord::concat(parts).unwrap()
}

/// Random walk along single generator steps.
pub fn s_walk(r: &mut ChaCha8Rng, z: &ZWord, steps: usize, cap: usize) -> ZWord {
    let mut cur = z.clone();
    for _ in 0..steps {
        let ns = s_neighbors(&cur, cap);
        if let Some(n) = ns.choose(r) {
            cur = n.clone();
        }
    }
    cur
}

/// Bidirectional breadth-first search over generator steps.
pub fn bfs_connected(a: &ZWord, b: &ZWord, depth: usize, cap: usize) -> bool {
    if a == b {
        return true;
    }
    let mut seen_a: HashSet<ZWord> = HashSet::from([a.clone()]);
    let mut seen_b: HashSet<ZWord> = HashSet::from([b.clone()]);
    let mut fa: Vec<ZWord> = vec![a.clone()];
    let mut fb: Vec<ZWord> = vec![b.clone()];
    for round in 0..depth {
        let (front, seen, other) = if round % 2 == 0 {
            (&mut fa, &mut seen_a, &seen_b)
        } else {
            (&mut fb, &mut seen_b, &seen_a)
        };
        let mut next = Vec::new();
        for w in front.iter() {
            for n in s_neighbors(w, cap) {
                if other.contains(&n) {
                    return true;
                }
                if seen.insert(n.clone()) {
                    next.push(n);
                }
            }
        }
        *front = next;
        if front.is_empty() {
            return false;
        }
    }
    false
}

/// All words reachable within `depth` steps.
pub fn ball(a: &ZWord, depth: usize, cap: usize) -> BTreeSet<ZWord> {
    let mut seen = BTreeSet::from([a.clone()]);
    let mut q = VecDeque::from([(a.clone(), 0usize)]);
    while let Some((w, d)) = q.pop_front() {
        if d == depth {
            continue;
        }
        for n in s_neighbors(&w, cap) {
            if seen.insert(n.clone()) {
                q.push_back((n, d + 1));
            }
        }
    }
    seen
}

/// Words drawn through a seeded generator, so failures report a seed.
pub fn arb_word(shape: Shape) -> impl Strategy<Value = ZWord> {
    any::<u64>().prop_map(move |seed| word(&mut rng(seed), shape))
}

pub fn term(r: &mut ChaCha8Rng, letters: usize, depth: usize) -> EpigroupTerm {
    let leaf = |r: &mut ChaCha8Rng| EpigroupTerm::Letter((b'x' + r.gen_range(0..letters as u8)) as char);
    if depth == 0 {
        return leaf(r);
    }
    match r.gen_range(0..4) {
        0 => leaf(r),
        1 => EpigroupTerm::inv(term(r, letters, depth - 1)),
        _ => {
            let n = r.gen_range(2..=3);
            let parts = (0..n).map(|_| term(r, letters, depth - 1)).collect();
            EpigroupTerm::product(parts).unwrap()
        }
    }
}

pub fn arb_term(letters: usize, depth: usize) -> impl Strategy<Value = EpigroupTerm> {
    any::<u64>().prop_map(move |seed| term(&mut rng(seed), letters, depth))
}

pub fn epigroups() -> Vec<Epigroup> {
    build_corpus(&CorpusConfig::epigroups())
}
