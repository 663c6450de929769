//! Swords: classes of Z-unary words modulo winding and rolling, kept in a
//! canonical item form.
//!
//! Canonical policy: ω-powers are pushed left to right. Each new power winds
//! on the copies of its base sitting to its left, then rolls left by the
//! longest common suffix of its base and the lower-height context, never
//! reaching into a power of its own height. When the context ends in a power
//! of the same primitive root, the exponent of the left one is moved into the
//! right one. Trailing copies of a base are wound on from the right.

use std::cell::RefCell;
use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use crate::error::{add_exp, mul_exp, Error, Result};
use crate::omega_poly::{divisors, OmegaPoly};
use crate::zterm::ZWord;

/// Default node cap for [`s_neighbors`].
pub const DEFAULT_NEIGHBOR_CAP: usize = 64;

const SETTLE_CAP: usize = 100_000;
const WALK_CAP: usize = 20_000;
const ROLL_CAP: usize = 2_000;
const CONJ_SPAN: usize = 8;

#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub(crate) enum Item {
    L(char),
    P(Arc<Vec<Item>>, i64),
}

pub(crate) type Items = Vec<Item>;

impl Item {
    pub(crate) fn height(&self) -> usize {
        match self {
            Item::L(_) => 0,
            Item::P(b, _) => 1 + items_height(b),
        }
    }

    fn length(&self) -> Result<OmegaPoly> {
        match self {
            Item::L(_) => Ok(OmegaPoly::one()),
            Item::P(b, q) => items_length(b)?.mul_omega_plus(*q),
        }
    }

    fn nodes(&self) -> usize {
        match self {
            Item::L(_) => 1,
            Item::P(b, _) => 1 + b.iter().map(Item::nodes).sum::<usize>() + usize::from(b.len() > 1),
        }
    }
}

pub(crate) fn items_height(xs: &[Item]) -> usize {
    xs.iter().map(Item::height).max().unwrap_or(0)
}

pub(crate) fn items_length(xs: &[Item]) -> Result<OmegaPoly> {
    xs.iter().try_fold(OmegaPoly::zero(), |acc, x| acc.add(&x.length()?))
}

pub(crate) fn raw_items(z: &ZWord) -> Items {
    match z {
        ZWord::Letter(c) => vec![Item::L(*c)],
        ZWord::Concat(xs) => xs.iter().flat_map(raw_items).collect(),
        ZWord::Omega(b, q) => vec![Item::P(Arc::new(raw_items(b)), *q)],
    }
}

pub(crate) fn items_to_zword(xs: &[Item]) -> Option<ZWord> {
    ZWord::concat(
        xs.iter()
            .map(|it| match it {
                Item::L(c) => ZWord::Letter(*c),
                Item::P(b, q) => ZWord::omega(items_to_zword(b).expect("nonempty base"), *q),
            })
            .collect(),
    )
}

pub(crate) fn render_items(xs: &[Item]) -> String {
    items_to_zword(xs).map_or_else(|| "ε".to_string(), |z| z.to_string())
}

pub(crate) fn mirror_items(xs: &[Item]) -> Items {
    xs.iter()
        .rev()
        .map(|it| match it {
            Item::L(c) => Item::L(*c),
            Item::P(b, q) => Item::P(Arc::new(mirror_items(b)), *q),
        })
        .collect()
}

fn repeat_items(xs: &[Item], n: usize) -> Items {
    let mut out = Vec::with_capacity(xs.len() * n);
    for _ in 0..n {
        out.extend_from_slice(xs);
    }
    out
}

// ---------------------------------------------------------------------------
// Canonicalization

/// One 𝒮-step observed while canonicalizing the outermost level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SStep {
    pub rule: &'static str,
    pub before: String,
    pub after: String,
}

pub(crate) type Sink<'a> = Option<&'a mut Vec<SStep>>;

fn note(sink: &mut Sink<'_>, rule: &'static str, before: impl FnOnce() -> String, after: impl FnOnce() -> String) {
    if let Some(s) = sink.as_deref_mut() {
        s.push(SStep { rule, before: before(), after: after() });
    }
}

const MEMO_CAP: usize = 1 << 16;

thread_local! {
    // suffixes of a word are canonicalized over and over by the wind-on checks
    static MEMO: RefCell<HashMap<Items, Items>> = RefCell::new(HashMap::new());
}

/// Canonical form of an arbitrary item sequence.
pub(crate) fn canon(items: &[Item]) -> Result<Items> {
    if items.len() < 2 {
        return canon_traced(items, &mut None);
    }
    if let Some(hit) = MEMO.with(|m| m.borrow().get(items).cloned()) {
        return Ok(hit);
    }
    let out = canon_traced(items, &mut None)?;
    MEMO.with(|m| {
        let mut m = m.borrow_mut();
        if m.len() >= MEMO_CAP {
            m.clear();
        }
        m.insert(items.to_vec(), out.clone());
    });
    Ok(out)
}

pub(crate) fn canon_traced(items: &[Item], sink: &mut Sink<'_>) -> Result<Items> {
    let mut out = Vec::with_capacity(items.len());
    for it in items {
        let it = match it {
            Item::L(c) => Item::L(*c),
            Item::P(b, q) => Item::P(Arc::new(canon(b)?), *q),
        };
        push_item(&mut out, it, sink)?;
    }
    Ok(out)
}

/// Appends an item whose base (if any) is already canonical.
pub(crate) fn push_item(out: &mut Items, it: Item, sink: &mut Sink<'_>) -> Result<()> {
    match it {
        Item::L(_) => {
            out.push(it);
            absorb(out, sink)
        }
        Item::P(b, q) => settle(out, (*b).clone(), q, sink),
    }
}

/// Right wind-on: `d^(w+q) d -> d^(w+q+1)`. The copy of `d` may be spread
/// over lower-height material in any arrangement equal to it.
fn absorb(out: &mut Items, sink: &mut Sink<'_>) -> Result<()> {
    let n = out.len();
    let mut hmax = 0usize;
    let mut tail_len = OmegaPoly::zero();
    for i in (0..n).rev() {
        if i + 1 < n {
            hmax = hmax.max(out[i + 1].height());
            tail_len = tail_len.add(&out[i + 1].length()?)?;
        }
        let h = out[i].height();
        if i + 1 < n && h > 0 && h >= hmax {
            let Item::P(d, r) = &out[i] else { unreachable!() };
            if tail_len >= items_length(d)? {
                if let Some(rest) = copy_after(&out[i + 1..], d)? {
                    if h == hmax && endless(&out[i + 1..], d, &rest)? {
                        continue;
                    }
                    let (d, r) = (d.clone(), *r);
                    let before = render_items(&out[i..]);
                    out.truncate(i);
                    out.push(Item::P(d, add_exp(r, 1)?));
                    note(sink, "S-windOn", || before, || {
                        let mut after = out[i..].to_vec();
                        after.extend_from_slice(&rest);
                        render_items(&after)
                    });
                    absorb(out, sink)?;
                    for it in rest {
                        push_item(out, it, sink)?;
                    }
                    return Ok(());
                }
            }
        }
    }
    Ok(())
}

/// A copy of `d` carved out of the first power of the same height in `f` that
/// leaves room for more copies than that power and the material before it can
/// hold: the bases are conjugate and winding on would not stop.
fn endless(f: &[Item], d: &Items, rest: &[Item]) -> Result<bool> {
    let h = 1 + items_height(d);
    let Some(j) = f.iter().position(|it| it.height() == h) else { return Ok(false) };
    let Item::P(e, _) = &f[j] else { return Ok(false) };
    let (ld, lv) = (items_length(d)?, items_length(&f[..j])?);
    if ld <= lv {
        return Ok(false);
    }
    let k = h - 1;
    let cd = ld.coeff(k).max(1);
    let bound = (lv.coeff(k) + items_length(e)?.coeff(k)) / cd + 2;
    let mut rest = rest.to_vec();
    for _ in 0..bound {
        match copy_after(&rest, d)? {
            Some(r) => rest = r,
            None => return Ok(false),
        }
    }
    Ok(true)
}

/// `Some(g)` when the material `f` equals `d g` as swords.
fn copy_after(f: &[Item], d: &Items) -> Result<Option<Items>> {
    if f.len() >= d.len() && f[..d.len()] == d[..] {
        return Ok(Some(f[d.len()..].to_vec()));
    }
    if items_height(f) == 0 || first_letter(f) != first_letter(d) {
        return Ok(None);
    }
    let f = canon(f)?;
    let (_, rest, drem) = match walk(&f, d) {
        Ok(w) => w,
        Err(Error::Internal(_)) => return Ok(None),
        Err(e) => return Err(e),
    };
    if !drem.is_empty() {
        return Ok(None);
    }
    let mut joined = d.clone();
    joined.extend(rest.iter().cloned());
    Ok((canon(&joined)? == f).then_some(rest))
}

fn settle(out: &mut Items, c: Items, q: i64, sink: &mut Sink<'_>) -> Result<()> {
    let mut c = c;
    let mut q = q;
    let h = 1 + items_height(&c);
    let mut pending: VecDeque<Item> = VecDeque::new();
    let mut root: Option<(Items, i64)> = None;
    let mut steps = 0usize;
    loop {
        steps += 1;
        if steps > SETTLE_CAP {
            return Err(Error::Internal("canonicalization did not settle".into()));
        }
        let n = out.len();
        if n >= c.len() && out[n - c.len()..] == c[..] {
            let before = format!("{}{}", render_items(&c), render_items(&[Item::P(Arc::new(c.clone()), q)]));
            out.truncate(n - c.len());
            q = add_exp(q, 1)?;
            note(sink, "S-windOn", || before, || render_items(&[Item::P(Arc::new(c.clone()), q)]));
            continue;
        }
        if let Some(Item::P(y, p)) = out.last() {
            if 1 + items_height(y) == h {
                if root.is_none() {
                    root = Some(primitive_root(&c)?);
                }
                let (w, b) = root.as_ref().unwrap();
                if let Some(a) = power_exponent(y, w)? {
                    if *p == 0 {
                        break;
                    }
                    let (y, p) = (y.clone(), *p);
                    let cc = Arc::new(c.clone());
                    let before = || render_items(&[Item::P(y.clone(), p), Item::P(cc.clone(), q)]);
                    let before = sink.is_some().then(before).unwrap_or_default();
                    out.pop();
                    out.push(Item::P(y.clone(), 0));
                    let total = mul_exp(a, p)?;
                    q = add_exp(q, total.div_euclid(*b))?;
                    let rest = total.rem_euclid(*b) as usize;
                    note(sink, "S-windOff", || before, || {
                        let mut after = vec![Item::P(y.clone(), 0), Item::P(cc.clone(), q)];
                        after.extend(repeat_items(w, rest));
                        render_items(&after)
                    });
                    for it in repeat_items(w, rest).into_iter().rev() {
                        pending.push_front(it);
                    }
                    absorb(out, sink)?;
                    continue;
                }
            }
        }
        let before_c = c.clone();
        match roll_step(out, &mut c, h)? {
            Some(Roll::Copy) => {
                let before = format!("{}{}", render_items(&c), render_items(&[Item::P(Arc::new(c.clone()), q)]));
                q = add_exp(q, 1)?;
                note(sink, "S-windOn", || before, || render_items(&[Item::P(Arc::new(c.clone()), q)]));
            }
            Some(Roll::Moved(moved)) => {
                note(
                    sink,
                    "S-roll",
                    || format!("{}{}", render_items(&moved), render_items(&[Item::P(Arc::new(before_c), q)])),
                    || format!("{}{}", render_items(&[Item::P(Arc::new(c.clone()), q)]), render_items(&moved)),
                );
                for it in moved.into_iter().rev() {
                    pending.push_front(it);
                }
                // Rotating changes the base; its primitive root rotates too.
                root = None;
            }
            None => break,
        }
    }
    out.push(Item::P(Arc::new(c), q));
    absorb(out, sink)?;
    for it in pending {
        push_item(out, it, sink)?;
    }
    Ok(())
}

enum Roll {
    /// The context ends with a full copy of the base.
    Copy,
    /// A proper common suffix was moved to the right of the power.
    Moved(Items),
}

/// Finds the longest common suffix of the context at the end of `out`
/// (trailing items of height at most `h`) and the base `c`, and rotates it to
/// the right of the power.
fn roll_step(out: &mut Items, c: &mut Items, h: usize) -> Result<Option<Roll>> {
    let n = out.len();
    let mut k = n;
    while k > 0 && out[k - 1].height() <= h {
        k -= 1;
    }
    if k == n || last_letter(&out[n - 1..]) != last_letter(c) {
        return Ok(None);
    }
    let cm = mirror_items(c);
    let (common, xrem, crem) = loop {
        let xm = mirror_items(&out[k..]);
        let (common, xrem, crem) = match walk_capped(&xm, &cm, ROLL_CAP) {
            Ok(w) => w,
            Err(Error::Internal(_)) => return Ok(None),
            Err(e) => return Err(e),
        };
        if common.is_empty() {
            return Ok(None);
        }
        // Material is never rolled out of a power of the same height: right
        // wind-on moves it back into such a power.
        if let Some(j) = (k..n).rev().find(|&j| out[j].height() == h) {
            if items_length(&common)? > items_length(&out[j + 1..])? {
                if j + 1 == n {
                    return Ok(None);
                }
                k = j + 1;
                continue;
            }
        }
        break (common, xrem, crem);
    };
    out.truncate(k);
    for it in canon(&mirror_items(&xrem))? {
        push_item(out, it, &mut None)?;
    }
    if crem.is_empty() {
        return Ok(Some(Roll::Copy));
    }
    let moved = canon(&mirror_items(&common))?;
    let mut rotated = moved.clone();
    rotated.extend(mirror_items(&crem));
    *c = canon(&rotated)?;
    Ok(Some(Roll::Moved(moved)))
}

pub(crate) fn first_letter(xs: &[Item]) -> Option<char> {
    match xs.first()? {
        Item::L(c) => Some(*c),
        Item::P(b, _) => first_letter(b),
    }
}

pub(crate) fn last_letter(xs: &[Item]) -> Option<char> {
    match xs.last()? {
        Item::L(c) => Some(*c),
        Item::P(b, _) => last_letter(b),
    }
}

/// Largest `b` with `c = w^b` (items canonical), together with `w`.
pub(crate) fn primitive_root(c: &Items) -> Result<(Items, i64)> {
    let len = items_length(c)?;
    let content = len.content();
    if content > 1 {
        for b in divisors(content).into_iter().rev() {
            if b < 2 {
                break;
            }
            let Some(part) = len.div_int(b as i128) else { continue };
            if let Some(w) = prefix_items(c, &part)? {
                if canon(&repeat_items(&w, b as usize))? == *c {
                    return Ok((w, b as i64));
                }
            }
        }
    }
    Ok((c.clone(), 1))
}

/// `Some(a)` when `y = w^a` for a positive integer `a`.
pub(crate) fn power_exponent(y: &Items, w: &Items) -> Result<Option<i64>> {
    if y == w {
        return Ok(Some(1));
    }
    let (ly, lw) = (items_length(y)?, items_length(w)?);
    if ly.degree() != lw.degree() || ly.leading() % lw.leading() != 0 {
        return Ok(None);
    }
    let a = ly.leading() / lw.leading();
    if a < 2 || lw.scale(a)? != ly || a > 1 << 20 {
        return Ok(None);
    }
    let a = a as i64;
    Ok((canon(&repeat_items(w, a as usize))? == *y).then_some(a))
}

// ---------------------------------------------------------------------------
// Prefixes and walking

/// Prefix of the canonical sequence `xs` of length exactly `len`.
pub(crate) fn prefix_items(xs: &[Item], len: &OmegaPoly) -> Result<Option<Items>> {
    if len.is_negative() {
        return Ok(None);
    }
    let mut acc = OmegaPoly::zero();
    let mut out: Items = Vec::new();
    for it in xs {
        if acc == *len {
            break;
        }
        let l = it.length()?;
        let next = acc.add(&l)?;
        if next <= *len {
            out.push(it.clone());
            acc = next;
            continue;
        }
        let rem = len.sub(&acc)?;
        let Item::P(d, q) = it else { return Ok(None) };
        let ld = items_length(d)?;
        let part = if rem.degree() <= ld.degree() || rem.is_zero() {
            let Some(n) = rem.floor_div(&ld)? else { return Ok(None) };
            if n < 0 {
                return Ok(None);
            }
            let tail = rem.sub(&ld.scale(n)?)?;
            let Some(mut split) = prefix_items(d, &tail)? else { return Ok(None) };
            let mut v = repeat_items(d, n as usize);
            v.append(&mut split);
            v
        } else {
            let delta = rem.sub(&ld.mul_omega_plus(0)?)?;
            let Some(m) = delta.floor_div(&ld)? else { return Ok(None) };
            let m = i64::try_from(m).map_err(|_| Error::Overflow)?;
            if m >= *q {
                return Ok(None);
            }
            let tail = delta.sub(&ld.scale(m as i128)?)?;
            let Some(mut split) = prefix_items(d, &tail)? else { return Ok(None) };
            let mut v = vec![Item::P(d.clone(), m)];
            v.append(&mut split);
            v
        };
        out.extend(part);
        acc = len.clone();
        break;
    }
    if acc != *len {
        return Ok(None);
    }
    Ok(Some(canon(&out)?))
}

/// Greedy joint unwinding of two canonical sequences: returns the common
/// front and both remainders (all canonical).
pub(crate) fn walk(xs: &[Item], ys: &[Item]) -> Result<(Items, Items, Items)> {
    walk_capped(xs, ys, WALK_CAP)
}

fn walk_capped(xs: &[Item], ys: &[Item], cap: usize) -> Result<(Items, Items, Items)> {
    let mut a: VecDeque<Item> = xs.iter().cloned().collect();
    let mut b: VecDeque<Item> = ys.iter().cloned().collect();
    let mut common: Items = Vec::new();
    let mut steps = 0usize;
    while let (Some(p), Some(r)) = (a.front().cloned(), b.front().cloned()) {
        steps += 1;
        if steps > cap {
            return Err(Error::Internal("prefix walk did not terminate".into()));
        }
        if p == r {
            common.push(p);
            a.pop_front();
            b.pop_front();
            continue;
        }
        match (&p, &r) {
            (Item::P(d, s), Item::P(e, t)) if d == e => {
                let m = (*s).min(*t);
                let diff = usize::try_from((s - t).unsigned_abs()).map_err(|_| Error::Overflow)?;
                common.push(Item::P(d.clone(), m));
                a.pop_front();
                b.pop_front();
                let longer = if s > t { &mut a } else { &mut b };
                for _ in 0..diff {
                    for it in d.iter().rev() {
                        longer.push_front(it.clone());
                    }
                }
            }
            _ => {
                let (hp, hr) = (p.height(), r.height());
                if hp == 0 && hr == 0 {
                    break;
                }
                if hp > hr && conjugate_front(&p, &mut b)? {
                    continue;
                }
                if hr > hp && conjugate_front(&r, &mut a)? {
                    continue;
                }
                if hp >= hr {
                    unwind_front(&mut a)?;
                }
                if hr >= hp {
                    unwind_front(&mut b)?;
                }
            }
        }
    }
    let a: Items = a.into_iter().collect();
    let b: Items = b.into_iter().collect();
    Ok((canon(&common)?, canon(&a)?, canon(&b)?))
}

/// With `p = d^(w+s)` in front of the other side, rewrites `xs = v e^(w+t) ...`
/// into `d^(w+t) v ...` when `v e = d v`.
fn conjugate_front(p: &Item, xs: &mut VecDeque<Item>) -> Result<bool> {
    let Item::P(d, _) = p else { return Ok(false) };
    let h = p.height();
    let Some(j) = xs.iter().take(CONJ_SPAN).position(|it| it.height() >= h) else { return Ok(false) };
    let Item::P(e, t) = &xs[j] else { return Ok(false) };
    if j == 0 || xs[j].height() != h || items_length(e)? != items_length(d)? {
        return Ok(false);
    }
    let v: Items = xs.iter().take(j).cloned().collect();
    let mut ve = v.clone();
    ve.extend(e.iter().cloned());
    let mut dv = (**d).clone();
    dv.extend(v.iter().cloned());
    if canon(&ve)? != canon(&dv)? {
        return Ok(false);
    }
    let t = *t;
    xs.drain(..=j);
    for it in v.into_iter().rev() {
        xs.push_front(it);
    }
    xs.push_front(Item::P(d.clone(), t));
    Ok(true)
}

/// `d^(w+r) ...` becomes `d d^(w+r-1) ...`.
fn unwind_front(xs: &mut VecDeque<Item>) -> Result<()> {
    if let Some(Item::P(d, r)) = xs.pop_front() {
        xs.push_front(Item::P(d.clone(), add_exp(r, -1)?));
        for it in d.iter().rev() {
            xs.push_front(it.clone());
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Public sword type

/// A canonical representative of an 𝒮-class. The empty sword is allowed as a
/// sentinel for prefixes and LCP results.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Sword {
    items: Items,
    len: OmegaPoly,
    height: usize,
}

impl Sword {
    pub(crate) fn from_canonical(items: Items) -> Result<Sword> {
        let len = items_length(&items)?;
        let height = items_height(&items);
        Ok(Sword { items, len, height })
    }

    pub(crate) fn from_items(items: &[Item]) -> Result<Sword> {
        Sword::from_canonical(canon(items)?)
    }

    pub fn empty() -> Sword {
        Sword { items: Vec::new(), len: OmegaPoly::zero(), height: 0 }
    }

    pub fn from_zword(z: &ZWord) -> Result<Sword> {
        Sword::from_items(&raw_items(z))
    }

    pub fn letter(c: char) -> Sword {
        Sword { items: vec![Item::L(c)], len: OmegaPoly::one(), height: 0 }
    }

    pub(crate) fn items(&self) -> &[Item] {
        &self.items
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn length(&self) -> &OmegaPoly {
        &self.len
    }

    pub fn height(&self) -> usize {
        self.height
    }

    /// `None` for the empty sword.
    pub fn to_zword(&self) -> Option<ZWord> {
        items_to_zword(&self.items)
    }

    pub fn concat(&self, other: &Sword) -> Result<Sword> {
        let mut out = self.items.clone();
        for it in &other.items {
            push_item(&mut out, it.clone(), &mut None)?;
        }
        Sword::from_canonical(out)
    }

    pub fn power(&self, n: usize) -> Result<Sword> {
        Sword::from_items(&repeat_items(&self.items, n))
    }

    /// `self^(w+q)`; the empty sword stays empty.
    pub fn omega_power(&self, q: i64) -> Result<Sword> {
        if self.is_empty() {
            return Ok(Sword::empty());
        }
        Sword::from_canonical(vec![Item::P(Arc::new(self.items.clone()), q)])
    }

    pub fn mirror(&self) -> Result<Sword> {
        Sword::from_items(&mirror_items(&self.items))
    }

    pub fn prefix_of_length(&self, len: &OmegaPoly) -> Result<Option<Sword>> {
        if len.is_negative() || *len > self.len {
            return Err(Error::LengthOutOfRange(len.to_string()));
        }
        prefix_items(&self.items, len)?.map(Sword::from_canonical).transpose()
    }

    pub fn suffix_of_length(&self, len: &OmegaPoly) -> Result<Option<Sword>> {
        match self.mirror()?.prefix_of_length(len)? {
            Some(s) => Ok(Some(s.mirror()?)),
            None => Ok(None),
        }
    }

    /// `r` with `self = p r`, if `p` is a prefix.
    pub fn strip_prefix(&self, p: &Sword) -> Result<Option<Sword>> {
        if p.len > self.len {
            return Ok(None);
        }
        let (_, rest, prem) = walk(&self.items, &p.items)?;
        if !prem.is_empty() {
            return Ok(None);
        }
        let r = Sword::from_canonical(rest)?;
        // The greedy walk can only be trusted when it reassembles.
        if p.concat(&r)? != *self {
            return Ok(None);
        }
        Ok(Some(r))
    }

    /// `r` with `self = r p`, if `p` is a suffix.
    pub fn strip_suffix(&self, p: &Sword) -> Result<Option<Sword>> {
        match self.mirror()?.strip_prefix(&p.mirror()?)? {
            Some(r) => Ok(Some(r.mirror()?)),
            None => Ok(None),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self.to_zword() {
            Some(z) => serde_json::json!({ "canonical": true, "word": z.to_json() }),
            None => serde_json::json!({ "canonical": true, "word": null }),
        }
    }
}

impl fmt::Display for Sword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render_items(&self.items))
    }
}

pub fn s_canonical(z: &ZWord) -> Result<ZWord> {
    Ok(Sword::from_zword(z)?.to_zword().expect("nonempty word"))
}

pub fn s_equal(a: &ZWord, b: &ZWord) -> Result<bool> {
    Ok(Sword::from_zword(a)? == Sword::from_zword(b)?)
}

// ---------------------------------------------------------------------------
// Single-step neighbours, for search-based cross-checks

/// Every word one generator application away from `z`, in either
/// orientation, at any depth; results with more than `cap` nodes are dropped.
pub fn s_neighbors(z: &ZWord, cap: usize) -> Vec<ZWord> {
    neighbors_items(&raw_items(z), cap)
        .into_iter()
        .filter_map(|xs| items_to_zword(&xs))
        .collect()
}

pub(crate) fn neighbors_items(s: &[Item], cap: usize) -> BTreeSet<Items> {
    let mut out: BTreeSet<Items> = BTreeSet::new();
    let mut add = |v: Items| {
        if v.iter().map(Item::nodes).sum::<usize>() + usize::from(v.len() > 1) <= cap {
            out.insert(v);
        }
    };
    for i in 0..s.len() {
        let Item::P(d, q) = &s[i] else { continue };
        let q = *q;
        let (pre, post) = (&s[..i], &s[i + 1..]);
        let splice = |mid: Items, lo: usize, hi: usize| -> Items {
            let mut v = s[..lo].to_vec();
            v.extend(mid);
            v.extend_from_slice(&s[hi..]);
            v
        };
        let k = d.len();
        // winding off
        let mut mid = d.to_vec();
        mid.push(Item::P(d.clone(), q - 1));
        add(splice(mid, i, i + 1));
        let mut mid = vec![Item::P(d.clone(), q - 1)];
        mid.extend(d.iter().cloned());
        add(splice(mid, i, i + 1));
        // winding on
        if pre.len() >= k && pre[pre.len() - k..] == d[..] {
            add(splice(vec![Item::P(d.clone(), q + 1)], i - k, i + 1));
        }
        if post.len() >= k && post[..k] == d[..] {
            add(splice(vec![Item::P(d.clone(), q + 1)], i, i + 1 + k));
        }
        // rolling, both orientations: x (yx)^(w+q) ~ (xy)^(w+q) x
        for j in 1..k {
            let (y, x) = d.split_at(k - j);
            if pre.len() >= j && pre[pre.len() - j..] == *x {
                let mut base = x.to_vec();
                base.extend_from_slice(y);
                let mut mid = vec![Item::P(Arc::new(base), q)];
                mid.extend_from_slice(x);
                add(splice(mid, i - j, i + 1));
            }
            let (x, y) = d.split_at(j);
            if post.len() >= j && post[..j] == *x {
                let mut base = y.to_vec();
                base.extend_from_slice(x);
                let mut mid = x.to_vec();
                mid.push(Item::P(Arc::new(base), q));
                add(splice(mid, i, i + 1 + j));
            }
        }
        // inside the base
        for nb in neighbors_items(d, cap) {
            add(splice(vec![Item::P(Arc::new(nb), q)], i, i + 1));
        }
    }
    out
}
