//! Epigroup terms and Z-unary words: trees, parsing, printing, translation
//! between the two, and structural measures.

use std::collections::BTreeSet;
use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::omega_poly::OmegaPoly;

/// Default cap on the number of letters `expand` will produce.
pub const DEFAULT_EXPANSION_BOUND: usize = 1_000_000;

/// Z-unary word. `Concat` is flat and has at least two children; plain powers
/// are stored as repeated children.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum ZWord {
    Letter(char),
    Concat(Vec<ZWord>),
    Omega(Box<ZWord>, i64),
}

/// Unary-semigroup term over multiplication and pseudoinversion.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum EpigroupTerm {
    Letter(char),
    Product(Vec<EpigroupTerm>),
    Pseudoinverse(Box<EpigroupTerm>),
}

/// `pi0 tau1^(w+q1) pi1 ... taun^(w+qn) pin`, split at the ω-powers of
/// maximal height.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HeightRepresentation {
    pub height: usize,
    pub prefix: Option<ZWord>,
    pub segments: Vec<Segment>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Segment {
    pub base: ZWord,
    pub q: i64,
    pub after: Option<ZWord>,
}

impl ZWord {
    pub fn letter(c: char) -> ZWord {
        ZWord::Letter(c)
    }

    pub fn omega(base: ZWord, q: i64) -> ZWord {
        ZWord::Omega(Box::new(base), q)
    }

    /// Flattening product; `None` for an empty list.
    pub fn concat(parts: Vec<ZWord>) -> Option<ZWord> {
        let mut flat = Vec::new();
        for p in parts {
            match p {
                ZWord::Concat(xs) => flat.extend(xs),
                other => flat.push(other),
            }
        }
        match flat.len() {
            0 => None,
            1 => flat.pop(),
            _ => Some(ZWord::Concat(flat)),
        }
    }

    /// The top-level factors (a single factor unless this is a `Concat`).
    pub fn factors(&self) -> &[ZWord] {
        match self {
            ZWord::Concat(xs) => xs,
            other => std::slice::from_ref(other),
        }
    }

    pub fn height(&self) -> usize {
        match self {
            ZWord::Letter(_) => 0,
            ZWord::Concat(xs) => xs.iter().map(ZWord::height).max().unwrap_or(0),
            ZWord::Omega(b, _) => b.height() + 1,
        }
    }

    pub fn length(&self) -> Result<OmegaPoly> {
        match self {
            ZWord::Letter(_) => Ok(OmegaPoly::one()),
            ZWord::Concat(xs) => xs
                .iter()
                .try_fold(OmegaPoly::zero(), |acc, x| acc.add(&x.length()?)),
            ZWord::Omega(b, q) => b.length()?.mul_omega_plus(*q),
        }
    }

    /// Number of tree nodes.
    pub fn node_count(&self) -> usize {
        match self {
            ZWord::Letter(_) => 1,
            ZWord::Concat(xs) => 1 + xs.iter().map(ZWord::node_count).sum::<usize>(),
            ZWord::Omega(b, _) => 1 + b.node_count(),
        }
    }

    pub fn alphabet(&self) -> BTreeSet<char> {
        let mut out = BTreeSet::new();
        self.collect_letters(&mut out);
        out
    }

    fn collect_letters(&self, out: &mut BTreeSet<char>) {
        match self {
            ZWord::Letter(c) => {
                out.insert(*c);
            }
            ZWord::Concat(xs) => xs.iter().for_each(|x| x.collect_letters(out)),
            ZWord::Omega(b, _) => b.collect_letters(out),
        }
    }

    /// `max{0, -q}` over every ω-exponent at every depth.
    pub fn exponent_defect(&self) -> u64 {
        match self {
            ZWord::Letter(_) => 0,
            ZWord::Concat(xs) => xs.iter().map(ZWord::exponent_defect).max().unwrap_or(0),
            ZWord::Omega(b, q) => b.exponent_defect().max(if *q < 0 { q.unsigned_abs() } else { 0 }),
        }
    }

    pub fn height_representation(&self) -> Result<HeightRepresentation> {
        let h = self.height();
        if h == 0 {
            return Err(Error::HeightZero);
        }
        let mut prefix: Vec<ZWord> = Vec::new();
        let mut segments: Vec<Segment> = Vec::new();
        let mut pending: Vec<ZWord> = Vec::new();
        for f in self.factors() {
            match f {
                ZWord::Omega(b, q) if f.height() == h => {
                    let gap = ZWord::concat(std::mem::take(&mut pending));
                    match segments.last_mut() {
                        Some(seg) => seg.after = gap,
                        None => prefix = gap.into_iter().collect(),
                    }
                    segments.push(Segment { base: (**b).clone(), q: *q, after: None });
                }
                other => pending.push(other.clone()),
            }
        }
        if let Some(seg) = segments.last_mut() {
            seg.after = ZWord::concat(pending);
        }
        Ok(HeightRepresentation { height: h, prefix: ZWord::concat(prefix), segments })
    }

    /// Replace ω by `k` and spell out the letters.
    pub fn expand(&self, k: u64) -> Result<Vec<char>> {
        self.expand_bounded(k, DEFAULT_EXPANSION_BOUND)
    }

    pub fn expand_bounded(&self, k: u64, bound: usize) -> Result<Vec<char>> {
        let defect = self.exponent_defect();
        if k <= defect {
            return Err(Error::ExpansionParameter { k, defect });
        }
        let len = self.length()?.eval(k as i128)?;
        if len < 0 || len as u128 > bound as u128 {
            return Err(Error::ExpansionTooLarge { len: len.to_string(), bound });
        }
        let mut out = Vec::with_capacity(len as usize);
        self.expand_into(k as i64, &mut out);
        Ok(out)
    }

    fn expand_into(&self, k: i64, out: &mut Vec<char>) {
        match self {
            ZWord::Letter(c) => out.push(*c),
            ZWord::Concat(xs) => xs.iter().for_each(|x| x.expand_into(k, out)),
            ZWord::Omega(b, q) => {
                let start = out.len();
                b.expand_into(k, out);
                let end = out.len();
                for _ in 1..(k + q) {
                    out.extend_from_within(start..end);
                }
            }
        }
    }

    /// Structural reversal of every concatenation.
    pub fn mirror(&self) -> ZWord {
        match self {
            ZWord::Letter(c) => ZWord::Letter(*c),
            ZWord::Concat(xs) => ZWord::Concat(xs.iter().rev().map(ZWord::mirror).collect()),
            ZWord::Omega(b, q) => ZWord::omega(b.mirror(), *q),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            ZWord::Letter(c) => json!({ "letter": c.to_string() }),
            ZWord::Concat(xs) => json!({ "concat": xs.iter().map(ZWord::to_json).collect::<Vec<_>>() }),
            ZWord::Omega(b, q) => json!({ "omega": { "base": b.to_json(), "q": q } }),
        }
    }

    pub fn from_json(v: &Value) -> Result<ZWord> {
        match Expr::from_json(v)? {
            e if e.has_inverse() => Err(Error::Json("pseudoinverse inside a Z-word".into())),
            e => Ok(e.to_zword()),
        }
    }
}

impl EpigroupTerm {
    pub fn letter(c: char) -> EpigroupTerm {
        EpigroupTerm::Letter(c)
    }

    pub fn inv(t: EpigroupTerm) -> EpigroupTerm {
        EpigroupTerm::Pseudoinverse(Box::new(t))
    }

    pub fn product(parts: Vec<EpigroupTerm>) -> Option<EpigroupTerm> {
        let mut flat = Vec::new();
        for p in parts {
            match p {
                EpigroupTerm::Product(xs) => flat.extend(xs),
                other => flat.push(other),
            }
        }
        match flat.len() {
            0 => None,
            1 => flat.pop(),
            _ => Some(EpigroupTerm::Product(flat)),
        }
    }

    pub fn alphabet(&self) -> BTreeSet<char> {
        let mut out = BTreeSet::new();
        self.collect_letters(&mut out);
        out
    }

    fn collect_letters(&self, out: &mut BTreeSet<char>) {
        match self {
            EpigroupTerm::Letter(c) => {
                out.insert(*c);
            }
            EpigroupTerm::Product(xs) => xs.iter().for_each(|x| x.collect_letters(out)),
            EpigroupTerm::Pseudoinverse(b) => b.collect_letters(out),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            EpigroupTerm::Letter(c) => json!({ "letter": c.to_string() }),
            EpigroupTerm::Product(xs) => {
                json!({ "concat": xs.iter().map(EpigroupTerm::to_json).collect::<Vec<_>>() })
            }
            EpigroupTerm::Pseudoinverse(b) => json!({ "inv": b.to_json() }),
        }
    }

    pub fn from_json(v: &Value) -> Result<EpigroupTerm> {
        match Expr::from_json(v)? {
            e if e.has_omega() => Err(Error::Json("ω-power inside a term".into())),
            e => Ok(e.to_term()),
        }
    }
}

/// `x'` becomes `x^(w-1)`.
pub fn term_to_zword(t: &EpigroupTerm) -> ZWord {
    match t {
        EpigroupTerm::Letter(c) => ZWord::Letter(*c),
        EpigroupTerm::Product(xs) => ZWord::Concat(xs.iter().map(term_to_zword).collect()),
        EpigroupTerm::Pseudoinverse(b) => ZWord::omega(term_to_zword(b), -1),
    }
}

/// `x^(w+q)` becomes `x' x^(q+1)` for `q >= 0` and `x'^(-q)` otherwise.
pub fn zword_to_term(z: &ZWord) -> EpigroupTerm {
    match z {
        ZWord::Letter(c) => EpigroupTerm::Letter(*c),
        ZWord::Concat(xs) => {
            EpigroupTerm::product(xs.iter().map(zword_to_term).collect()).expect("nonempty concat")
        }
        ZWord::Omega(b, q) => omega_as_term(zword_to_term(b), *q),
    }
}

fn omega_as_term(base: EpigroupTerm, q: i64) -> EpigroupTerm {
    let inv = EpigroupTerm::inv(base.clone());
    let parts: Vec<EpigroupTerm> = if q >= 0 {
        std::iter::once(inv)
            .chain(std::iter::repeat_n(base, q as usize + 1))
            .collect()
    } else {
        std::iter::repeat_n(inv, q.unsigned_abs() as usize).collect()
    };
    EpigroupTerm::product(parts).expect("nonempty")
}

// ---------------------------------------------------------------------------
// Parsing

/// Parse tree for the shared grammar; either syntax may appear.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Expr {
    Letter(char),
    Seq(Vec<Expr>),
    Inv(Box<Expr>),
    Omega(Box<Expr>, i64),
}

impl Expr {
    pub fn has_inverse(&self) -> bool {
        match self {
            Expr::Letter(_) => false,
            Expr::Seq(xs) => xs.iter().any(Expr::has_inverse),
            Expr::Inv(_) => true,
            Expr::Omega(b, _) => b.has_inverse(),
        }
    }

    pub fn has_omega(&self) -> bool {
        match self {
            Expr::Letter(_) => false,
            Expr::Seq(xs) => xs.iter().any(Expr::has_omega),
            Expr::Inv(b) => b.has_omega(),
            Expr::Omega(..) => true,
        }
    }

    /// Pseudoinverses become `^(w-1)`.
    pub fn to_zword(&self) -> ZWord {
        match self {
            Expr::Letter(c) => ZWord::Letter(*c),
            Expr::Seq(xs) => ZWord::concat(xs.iter().map(Expr::to_zword).collect()).expect("nonempty"),
            Expr::Inv(b) => ZWord::omega(b.to_zword(), -1),
            Expr::Omega(b, q) => ZWord::omega(b.to_zword(), *q),
        }
    }

    /// ω-powers are rewritten through pseudoinversion.
    pub fn to_term(&self) -> EpigroupTerm {
        match self {
            Expr::Letter(c) => EpigroupTerm::Letter(*c),
            Expr::Seq(xs) => {
                EpigroupTerm::product(xs.iter().map(Expr::to_term).collect()).expect("nonempty")
            }
            Expr::Inv(b) => EpigroupTerm::inv(b.to_term()),
            Expr::Omega(b, q) => omega_as_term(b.to_term(), *q),
        }
    }

    fn from_json(v: &Value) -> Result<Expr> {
        let bad = |m: &str| Error::Json(m.to_string());
        let obj = v.as_object().ok_or_else(|| bad("expected an object"))?;
        if obj.len() != 1 {
            return Err(bad("expected exactly one key"));
        }
        let (k, inner) = obj.iter().next().unwrap();
        match k.as_str() {
            "letter" => {
                let s = inner.as_str().ok_or_else(|| bad("letter must be a string"))?;
                let mut cs = s.chars();
                match (cs.next(), cs.next()) {
                    (Some(c), None) if c.is_ascii_lowercase() => Ok(Expr::Letter(c)),
                    _ => Err(bad("letter must be a single character a-z")),
                }
            }
            "concat" => {
                let xs = inner.as_array().ok_or_else(|| bad("concat must be an array"))?;
                if xs.is_empty() {
                    return Err(bad("empty concat"));
                }
                Ok(Expr::Seq(xs.iter().map(Expr::from_json).collect::<Result<_>>()?))
            }
            "inv" => Ok(Expr::Inv(Box::new(Expr::from_json(inner)?))),
            "omega" => {
                let base = inner.get("base").ok_or_else(|| bad("omega needs a base"))?;
                let q = inner
                    .get("q")
                    .and_then(Value::as_i64)
                    .ok_or_else(|| bad("omega needs an integer q"))?;
                Ok(Expr::Omega(Box::new(Expr::from_json(base)?), q))
            }
            other => Err(bad(&format!("unknown node kind '{other}'"))),
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Syntax { pos: self.pos, msg: msg.to_string() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(&format!("expected '{}'", c as char))
        }
    }

    fn seq(&mut self) -> Result<Expr> {
        let mut items = Vec::new();
        while let Some(c) = self.peek() {
            if c == b')' {
                break;
            }
            items.push(self.factor()?);
        }
        match items.len() {
            0 => self.err("expected a letter or '('"),
            1 => Ok(items.pop().unwrap()),
            _ => Ok(Expr::Seq(items)),
        }
    }

    fn factor(&mut self) -> Result<Expr> {
        let mut e = match self.peek() {
            Some(c) if c.is_ascii_lowercase() => {
                self.pos += 1;
                Expr::Letter(c as char)
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.seq()?;
                self.expect(b')')?;
                inner
            }
            Some(_) => return self.err("expected a letter or '('"),
            None => return self.err("unexpected end of input"),
        };
        loop {
            match self.peek() {
                Some(b'\'') => {
                    self.pos += 1;
                    e = Expr::Inv(Box::new(e));
                }
                Some(b'^') => {
                    self.pos += 1;
                    e = self.exponent(e)?;
                }
                _ => return Ok(e),
            }
        }
    }

    fn number(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| Error::Syntax { pos: start, msg: "number too large".into() })
    }

    fn exponent(&mut self, base: Expr) -> Result<Expr> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let at = self.pos;
                let n = self.number()?;
                if n < 1 {
                    return Err(Error::Syntax { pos: at, msg: "plain exponent must be positive".into() });
                }
                if n > 1 << 16 {
                    return Err(Error::Syntax { pos: at, msg: "plain exponent too large".into() });
                }
                Ok(if n == 1 { base } else { Expr::Seq(vec![base; n as usize]) })
            }
            Some(b'w') => {
                self.pos += 1;
                Ok(Expr::Omega(Box::new(base), 0))
            }
            Some(b'(') => {
                self.pos += 1;
                self.expect(b'w')?;
                let q = match self.peek() {
                    Some(b')') => 0,
                    Some(b'+') => {
                        self.pos += 1;
                        self.number()?
                    }
                    Some(b'-') => {
                        self.pos += 1;
                        -self.number()?
                    }
                    _ => return self.err("expected '+', '-' or ')' in exponent"),
                };
                self.expect(b')')?;
                Ok(Expr::Omega(Box::new(base), q))
            }
            _ => self.err("unknown exponent form"),
        }
    }
}

/// Parse either syntax.
pub fn parse_mixed(text: &str) -> Result<Expr> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    if !text.is_ascii() {
        let pos = text.char_indices().find(|(_, c)| !c.is_ascii()).unwrap().0;
        return Err(Error::Syntax { pos, msg: "non-ASCII character".into() });
    }
    let e = p.seq()?;
    if p.peek().is_some() {
        return p.err("unexpected trailing input");
    }
    Ok(e.flatten())
}

impl Expr {
    fn flatten(self) -> Expr {
        match self {
            Expr::Seq(xs) => {
                let mut out = Vec::new();
                for x in xs {
                    match x.flatten() {
                        Expr::Seq(ys) => out.extend(ys),
                        y => out.push(y),
                    }
                }
                if out.len() == 1 {
                    out.pop().unwrap()
                } else {
                    Expr::Seq(out)
                }
            }
            Expr::Inv(b) => Expr::Inv(Box::new(b.flatten())),
            Expr::Omega(b, q) => Expr::Omega(Box::new(b.flatten()), q),
            l => l,
        }
    }
}

pub fn parse_term(text: &str) -> Result<EpigroupTerm> {
    let e = parse_mixed(text)?;
    if e.has_omega() {
        let pos = text.find('w').unwrap_or(0);
        return Err(Error::Syntax { pos, msg: "ω-exponent in term syntax".into() });
    }
    Ok(e.to_term())
}

pub fn parse_zword(text: &str) -> Result<ZWord> {
    let e = parse_mixed(text)?;
    if e.has_inverse() {
        let pos = text.find('\'').unwrap_or(0);
        return Err(Error::Syntax { pos, msg: "pseudoinverse in Z-word syntax".into() });
    }
    Ok(e.to_zword())
}

// ---------------------------------------------------------------------------
// Printing

/// Writes `items` grouping runs of equal neighbours as `^k`.
fn write_runs<T: PartialEq>(
    f: &mut fmt::Formatter<'_>,
    items: &[T],
    atom: impl Fn(&T, &mut fmt::Formatter<'_>) -> fmt::Result,
    single: impl Fn(&T, &mut fmt::Formatter<'_>) -> fmt::Result,
) -> fmt::Result {
    let mut i = 0;
    while i < items.len() {
        let mut j = i + 1;
        while j < items.len() && items[j] == items[i] {
            j += 1;
        }
        if j - i == 1 {
            single(&items[i], f)?;
        } else {
            atom(&items[i], f)?;
            write!(f, "^{}", j - i)?;
        }
        i = j;
    }
    Ok(())
}

fn write_q(f: &mut fmt::Formatter<'_>, q: i64) -> fmt::Result {
    match q {
        0 => write!(f, "^w"),
        q if q > 0 => write!(f, "^(w+{q})"),
        q => write!(f, "^(w-{})", q.unsigned_abs()),
    }
}

fn zword_atom(z: &ZWord, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match z {
        ZWord::Letter(c) => write!(f, "{c}"),
        other => write!(f, "({other})"),
    }
}

impl fmt::Display for ZWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ZWord::Letter(c) => write!(f, "{c}"),
            ZWord::Concat(xs) => write_runs(f, xs, zword_atom, |x, f| write!(f, "{x}")),
            ZWord::Omega(b, q) => {
                zword_atom(b, f)?;
                write_q(f, *q)
            }
        }
    }
}

fn term_atom(t: &EpigroupTerm, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match t {
        EpigroupTerm::Product(_) => write!(f, "({t})"),
        other => write!(f, "{other}"),
    }
}

impl fmt::Display for EpigroupTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EpigroupTerm::Letter(c) => write!(f, "{c}"),
            EpigroupTerm::Product(xs) => write_runs(f, xs, term_atom, |x, f| write!(f, "{x}")),
            EpigroupTerm::Pseudoinverse(b) => {
                term_atom(b, f)?;
                write!(f, "'")
            }
        }
    }
}
