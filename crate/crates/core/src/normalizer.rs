//! Reduction of swords to normal form.
//!
//! A normal sword has no subsword of the shapes `x^(w+p) x^(w+q)`,
//! `(x^n)^(w+q)` or `(x^(w+p))^(w+q)`. Words are normalized bottom-up: each
//! power base is normalized first, the power itself is reduced, and the
//! pieces are multiplied together, merging ω-powers of a common base that
//! meet at the joint.

use std::fmt;
use std::sync::Arc;

use crate::error::{add_exp, mul_exp, Error, Result};
use crate::sword::{canon, canon_traced, primitive_root, push_item, raw_items, render_items, Item, Items, SStep, Sword};
use crate::zterm::ZWord;

const FIX_CAP: usize = 10_000;

/// A sword known to be normal.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct NormalSword {
    sword: Sword,
    fully_normal: bool,
}

impl NormalSword {
    /// `None` when `s` is not normal.
    pub fn new(s: Sword) -> Result<Option<NormalSword>> {
        if !normal_items(s.items())? {
            return Ok(None);
        }
        NormalSword::trusted(s).map(Some)
    }

    fn trusted(sword: Sword) -> Result<NormalSword> {
        let fully_normal = fully_normal_items(sword.items())?;
        Ok(NormalSword { sword, fully_normal })
    }

    fn from_items(items: Items) -> Result<NormalSword> {
        NormalSword::trusted(Sword::from_canonical(items)?)
    }

    pub fn sword(&self) -> &Sword {
        &self.sword
    }

    pub fn into_sword(self) -> Sword {
        self.sword
    }

    pub fn is_fully_normal(&self) -> bool {
        self.fully_normal
    }

    pub fn to_zword(&self) -> Option<ZWord> {
        self.sword.to_zword()
    }

    pub(crate) fn items(&self) -> &[Item] {
        self.sword.items()
    }
}

impl fmt::Display for NormalSword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.sword.fmt(f)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PeriodKind {
    PlainPower(u64),
    OmegaPower(i64),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PeriodReport {
    pub base: NormalSword,
    pub kind: PeriodKind,
}

/// Fold direction used when multiplying the pieces of a word.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum Fold {
    #[default]
    Left,
    Right,
}

/// One rewrite applied during normalization. `at` is the dotted position of
/// the enclosing power base (empty at the top level).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TraceStep {
    pub rule: &'static str,
    pub at: String,
    pub before: String,
    pub after: String,
}

impl TraceStep {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "rule": self.rule, "at": self.at, "before": self.before, "after": self.after })
    }
}

struct Ctx {
    trace: Option<Vec<TraceStep>>,
    at: String,
}

impl Ctx {
    fn quiet() -> Ctx {
        Ctx { trace: None, at: String::new() }
    }

    fn note(&mut self, rule: &'static str, before: impl FnOnce() -> String, after: impl FnOnce() -> String) {
        if let Some(t) = &mut self.trace {
            t.push(TraceStep { rule, at: self.at.clone(), before: before(), after: after() });
        }
    }

    fn canon(&mut self, xs: &[Item]) -> Result<Items> {
        match &mut self.trace {
            None => canon(xs),
            Some(_) => {
                let mut steps: Vec<SStep> = Vec::new();
                let out = canon_traced(xs, &mut Some(&mut steps))?;
                for s in steps {
                    self.note(s.rule, || s.before, || s.after);
                }
                Ok(out)
            }
        }
    }

    fn concat(&mut self, a: &[Item], b: &[Item]) -> Result<Items> {
        let mut out = a.to_vec();
        match &mut self.trace {
            None => {
                for it in b {
                    push_item(&mut out, it.clone(), &mut None)?;
                }
            }
            Some(_) => {
                let mut steps: Vec<SStep> = Vec::new();
                for it in b {
                    push_item(&mut out, it.clone(), &mut Some(&mut steps))?;
                }
                for s in steps {
                    self.note(s.rule, || s.before, || s.after);
                }
            }
        }
        Ok(out)
    }
}

// ---------------------------------------------------------------------------
// Chains of nested powers at either end of an item

/// Bases met when repeatedly descending into the last item of a power.
fn tail_chain(it: &Item) -> Vec<&Arc<Items>> {
    let mut out = Vec::new();
    let mut cur = it;
    while let Item::P(b, _) = cur {
        out.push(b);
        match b.last() {
            Some(x) => cur = x,
            None => break,
        }
    }
    out
}

fn head_chain(it: &Item) -> Vec<&Arc<Items>> {
    let mut out = Vec::new();
    let mut cur = it;
    while let Item::P(b, _) = cur {
        out.push(b);
        match b.first() {
            Some(x) => cur = x,
            None => break,
        }
    }
    out
}

/// Depths `(i, j)` at which the tail chain of `a` and the head chain of `b`
/// reach ω-powers of the same base.
fn chain_match(a: &Item, b: &Item) -> Option<(usize, usize)> {
    let ta = tail_chain(a);
    let hb = head_chain(b);
    for (i, x) in ta.iter().enumerate() {
        if let Some(j) = hb.iter().position(|y| y == x) {
            return Some((i, j));
        }
    }
    None
}

/// Unwinds `it` so that the power at depth `k` of its tail chain ends the
/// sequence.
fn expose_tail(it: &Item, k: usize) -> Result<Items> {
    if k == 0 {
        return Ok(vec![it.clone()]);
    }
    let Item::P(c, q) = it else { return Err(Error::Internal("tail chain too short".into())) };
    let mut out = vec![Item::P(c.clone(), add_exp(*q, -1)?)];
    out.extend(c[..c.len() - 1].iter().cloned());
    out.extend(expose_tail(c.last().expect("nonempty base"), k - 1)?);
    Ok(out)
}

fn expose_head(it: &Item, k: usize) -> Result<Items> {
    if k == 0 {
        return Ok(vec![it.clone()]);
    }
    let Item::P(c, q) = it else { return Err(Error::Internal("head chain too short".into())) };
    let mut out = expose_head(c.first().expect("nonempty base"), k - 1)?;
    out.extend(c[1..].iter().cloned());
    out.push(Item::P(c.clone(), add_exp(*q, -1)?));
    Ok(out)
}

/// Applies `y^(w+p) y^(w+r) -> y^(w+p+r)` at every joint of `xs` until none is
/// left. The bases of `xs` must already be normal.
fn fix_joints(xs: Items, cx: &mut Ctx) -> Result<Items> {
    let mut xs = xs;
    for _ in 0..FIX_CAP {
        let found = (0..xs.len().saturating_sub(1)).find_map(|i| chain_match(&xs[i], &xs[i + 1]).map(|m| (i, m)));
        let Some((i, (da, db))) = found else { return Ok(xs) };
        let mut left = expose_tail(&xs[i], da)?;
        let mut right = expose_head(&xs[i + 1], db)?;
        if da > 0 {
            cx.note("S-windOff", || render_items(&xs[i..=i]), || render_items(&left));
        }
        if db > 0 {
            cx.note("S-windOff", || render_items(&xs[i + 1..=i + 1]), || render_items(&right));
        }
        let Some(Item::P(y, p)) = left.pop() else { unreachable!() };
        let Item::P(_, r) = right.remove(0) else { unreachable!() };
        let merged = Item::P(y.clone(), add_exp(p, r)?);
        cx.note(
            "R-mergeExp",
            || render_items(&[Item::P(y.clone(), p), Item::P(y.clone(), r)]),
            || render_items(std::slice::from_ref(&merged)),
        );
        let mut next: Items = xs[..i].to_vec();
        next.extend(left);
        next.push(merged);
        next.extend(right);
        next.extend(xs[i + 2..].iter().cloned());
        xs = cx.canon(&next)?;
    }
    Err(Error::Internal("joint merging did not settle".into()))
}

// ---------------------------------------------------------------------------
// Core operations on canonical item sequences with normal bases

fn merge_items(a: &[Item], b: &[Item], cx: &mut Ctx) -> Result<Items> {
    let joined = cx.concat(a, b)?;
    fix_joints(joined, cx)
}

fn reduce_items(rho: &[Item], q: i64, cx: &mut Ctx) -> Result<Items> {
    let cap = crate::sword::items_height(rho) + 1;
    reduce_rec(rho, q, cx, cap)
}

fn reduce_rec(rho: &[Item], q: i64, cx: &mut Ctx, fuel: usize) -> Result<Items> {
    if rho.is_empty() {
        return Ok(Vec::new());
    }
    if let [Item::P(x, m)] = rho {
        let out = Item::P(x.clone(), mul_exp(*m, q)?);
        cx.note(
            "R-nestedOmega",
            || render_items(&[Item::P(Arc::new(rho.to_vec()), q)]),
            || render_items(std::slice::from_ref(&out)),
        );
        return Ok(vec![out]);
    }
    let (w, n) = primitive_root(&rho.to_vec())?;
    if n >= 2 {
        let nq = mul_exp(n, q)?;
        cx.note(
            "R-plainPower",
            || render_items(&[Item::P(Arc::new(rho.to_vec()), q)]),
            || render_items(&[Item::P(Arc::new(w.clone()), nq)]),
        );
        return reduce_rec(&w, nq, cx, fuel);
    }
    if rho.len() >= 2 {
        if let Some((da, db)) = chain_match(&rho[rho.len() - 1], &rho[0]) {
            if fuel == 0 {
                return Err(Error::Internal("ring reduction exceeded its depth bound".into()));
            }
            // rho = y^(w+m1) mid y^(w+m2) becomes
            // y^(w+m1) mid (y^(w+m1+m2) mid)^(w+q-1) y^(w+m2).
            let mut head = expose_head(&rho[0], db)?;
            let mut tail = expose_tail(&rho[rho.len() - 1], da)?;
            let Item::P(y, m1) = head.remove(0) else { unreachable!() };
            let Some(Item::P(_, m2)) = tail.pop() else { unreachable!() };
            let mut mid = head;
            mid.extend(rho[1..rho.len() - 1].iter().cloned());
            mid.extend(tail);
            let before = || render_items(&[Item::P(Arc::new(rho.to_vec()), q)]);
            let mut ring = vec![Item::P(y.clone(), add_exp(m1, m2)?)];
            ring.extend(mid.iter().cloned());
            let ring = fix_joints(cx.canon(&ring)?, cx)?;
            let q1 = add_exp(q, -1)?;
            let shown = |inner: Items| {
                let mut v = vec![Item::P(y.clone(), m1)];
                v.extend(mid.iter().cloned());
                v.push(Item::P(Arc::new(inner), q1));
                v.push(Item::P(y.clone(), m2));
                render_items(&v)
            };
            let mut rolled = vec![Item::P(y.clone(), m2), Item::P(y.clone(), m1)];
            rolled.extend(mid.iter().cloned());
            let rolled_text = shown(rolled);
            cx.note("S-roll", before, || rolled_text.clone());
            cx.note("R-mergeExp", || rolled_text, || shown(ring.clone()));
            let left = cx.canon(&[vec![Item::P(y.clone(), m1)], mid].concat())?;
            let left = fix_joints(left, cx)?;
            let inner = reduce_rec(&ring, q1, cx, fuel - 1)?;
            let acc = merge_items(&left, &inner, cx)?;
            return merge_items(&acc, &[Item::P(y, m2)], cx);
        }
    }
    Ok(vec![Item::P(Arc::new(rho.to_vec()), q)])
}

fn normalize_rec(xs: &[Item], fold: Fold, cx: &mut Ctx) -> Result<Items> {
    let mut pieces: Vec<Items> = Vec::with_capacity(xs.len());
    let outer = cx.at.clone();
    for (i, it) in xs.iter().enumerate() {
        match it {
            Item::L(c) => pieces.push(vec![Item::L(*c)]),
            Item::P(b, q) => {
                cx.at = if outer.is_empty() { i.to_string() } else { format!("{outer}.{i}") };
                let nb = normalize_rec(b, fold, cx)?;
                let r = reduce_items(&nb, *q, cx)?;
                cx.at = outer.clone();
                pieces.push(r);
            }
        }
    }
    cx.at = outer;
    let mut acc: Items = Vec::new();
    match fold {
        Fold::Left => {
            for p in pieces {
                acc = merge_items(&acc, &p, cx)?;
            }
        }
        Fold::Right => {
            for p in pieces.into_iter().rev() {
                acc = merge_items(&p, &acc, cx)?;
            }
        }
    }
    Ok(acc)
}

// ---------------------------------------------------------------------------
// Pattern checks

fn normal_items(xs: &[Item]) -> Result<bool> {
    for it in xs {
        if let Item::P(b, _) = it {
            if !normal_items(b)? {
                return Ok(false);
            }
            if matches!(b.as_slice(), [Item::P(..)]) || primitive_root(b)?.1 >= 2 {
                return Ok(false);
            }
            if b.len() >= 2 && chain_match(&b[b.len() - 1], &b[0]).is_some() {
                return Ok(false);
            }
        }
    }
    Ok(xs.windows(2).all(|w| chain_match(&w[0], &w[1]).is_none()))
}

fn fully_normal_items(xs: &[Item]) -> Result<bool> {
    if xs.is_empty() || !normal_items(xs)? {
        return Ok(false);
    }
    if matches!(xs, [Item::P(..)]) {
        return Ok(false);
    }
    if chain_match(&xs[xs.len() - 1], &xs[0]).is_some() {
        return Ok(false);
    }
    let mut sq = xs.to_vec();
    for it in xs {
        push_item(&mut sq, it.clone(), &mut None)?;
    }
    normal_items(&sq)
}

// ---------------------------------------------------------------------------
// Public interface

pub fn is_normal(s: &Sword) -> Result<bool> {
    normal_items(s.items())
}

/// Normal, not of the shapes `x^(w+m)` or `x^(w+p) y x^(w+q)`, with a normal
/// square.
pub fn is_fully_normal(s: &Sword) -> Result<bool> {
    fully_normal_items(s.items())
}

pub fn merge_product(a: &NormalSword, b: &NormalSword) -> Result<NormalSword> {
    NormalSword::from_items(merge_items(a.items(), b.items(), &mut Ctx::quiet())?)
}

/// Normal form of `rho^(w+q)`.
pub fn reduce_omega_power(rho: &NormalSword, q: i64) -> Result<NormalSword> {
    NormalSword::from_items(reduce_items(rho.items(), q, &mut Ctx::quiet())?)
}

/// `x` fully normal with `s = x^n` (n >= 2) or `s = x^(w+m)`.
pub fn find_period(s: &NormalSword) -> Result<Option<PeriodReport>> {
    let xs = s.items();
    if let [Item::P(x, m)] = xs {
        let base = NormalSword::from_items((**x).clone())?;
        if base.fully_normal {
            return Ok(Some(PeriodReport { base, kind: PeriodKind::OmegaPower(*m) }));
        }
        return Ok(None);
    }
    if xs.is_empty() {
        return Ok(None);
    }
    let (w, n) = primitive_root(&xs.to_vec())?;
    if n >= 2 {
        let base = NormalSword::from_items(w)?;
        if base.fully_normal {
            return Ok(Some(PeriodReport { base, kind: PeriodKind::PlainPower(n as u64) }));
        }
    }
    Ok(None)
}

pub fn normalize(z: &ZWord) -> Result<NormalSword> {
    normalize_with(z, Fold::Left)
}

pub fn normalize_with(z: &ZWord, fold: Fold) -> Result<NormalSword> {
    NormalSword::from_items(normalize_rec(&raw_items(z), fold, &mut Ctx::quiet())?)
}

/// Normal form together with the rewrites that produced it.
pub fn normalize_traced(z: &ZWord, fold: Fold) -> Result<(NormalSword, Vec<TraceStep>)> {
    let mut cx = Ctx { trace: Some(Vec::new()), at: String::new() };
    let items = normalize_rec(&raw_items(z), fold, &mut cx)?;
    Ok((NormalSword::from_items(items)?, cx.trace.unwrap_or_default()))
}

/// Normal form of a sword.
pub fn normalize_sword(s: &Sword) -> Result<NormalSword> {
    NormalSword::from_items(normalize_rec(s.items(), Fold::Left, &mut Ctx::quiet())?)
}
