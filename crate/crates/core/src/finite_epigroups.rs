//! Finite epigroups: Cayley tables, pseudoinversion, exhaustive identity checks
//! and the default corpus of small models.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::zterm::{zword_to_term, EpigroupTerm, ZWord};

/// An associative multiplication table on `0..n`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CayleyTable {
    n: usize,
    mul: Vec<usize>,
}

impl CayleyTable {
    /// `mul` is row-major: `mul[a * n + b] = a * b`.
    pub fn new(n: usize, mul: Vec<usize>) -> Result<CayleyTable> {
        if n == 0 {
            return Err(Error::InvalidTable("empty carrier".into()));
        }
        if mul.len() != n * n {
            return Err(Error::InvalidTable(format!(
                "expected {} entries, found {}",
                n * n,
                mul.len()
            )));
        }
        if let Some(&v) = mul.iter().find(|&&v| v >= n) {
            return Err(Error::InvalidTable(format!("entry {v} outside 0..{n}")));
        }
        let t = CayleyTable { n, mul };
        if let Some((a, b, c)) = t.non_associative() {
            return Err(Error::NonAssociative { a, b, c });
        }
        Ok(t)
    }

    pub fn from_rows(rows: &[Vec<usize>]) -> Result<CayleyTable> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidTable("table is not square".into()));
        }
        CayleyTable::new(n, rows.concat())
    }

    fn non_associative(&self) -> Option<(usize, usize, usize)> {
        let n = self.n;
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.mul.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    /// Index and period of the monogenic subsemigroup generated by `x`.
    pub fn index_period(&self, x: usize) -> (usize, usize) {
        // seen[v] = k means x^k = v
        let mut seen = vec![0usize; self.n];
        let mut p = x;
        let mut k = 1;
        loop {
            if seen[p] != 0 {
                return (seen[p], k - seen[p]);
            }
            seen[p] = k;
            p = self.mul(p, x);
            k += 1;
        }
    }

    pub fn power(&self, x: usize, k: usize) -> usize {
        assert!(k >= 1);
        let (mut acc, mut base, mut e) = (None, x, k);
        while e > 0 {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => base,
                    Some(a) => self.mul(a, base),
                });
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc.unwrap()
    }

    /// The smallest exponent `m >= index` with `m ≡ r (mod period)`.
    fn group_exponent(&self, x: usize, r: i64) -> usize {
        let (i, p) = self.index_period(x);
        let p = p as i64;
        let target = r.rem_euclid(p);
        let i = i as i64;
        (i + (target - i).rem_euclid(p)) as usize
    }

    /// `x^(ω+q)`: the `q`-th power of `x e` inside the group of `x`.
    pub fn omega_power(&self, x: usize, q: i64) -> usize {
        self.power(x, self.group_exponent(x, q))
    }

    /// The idempotent power of `x`.
    pub fn idempotent_power(&self, x: usize) -> usize {
        self.omega_power(x, 0)
    }

    fn canonical_key(&self) -> Vec<usize> {
        let n = self.n;
        let mut best: Option<Vec<usize>> = None;
        for perm in permutations(n) {
            let mut key = vec![0; n * n];
            for a in 0..n {
                for b in 0..n {
                    key[perm[a] * n + perm[b]] = perm[self.mul(a, b)];
                }
            }
            if best.as_ref().is_none_or(|b| key < *b) {
                best = Some(key);
            }
        }
        best.unwrap()
    }

    pub fn is_isomorphic(&self, other: &CayleyTable) -> bool {
        self.n == other.n && self.canonical_key() == other.canonical_key()
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                go(cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// The pseudoinverse `x^m`, `m >= index`, `m ≡ -1 (mod period)`.
pub fn pseudoinverse(t: &CayleyTable, x: usize) -> usize {
    t.omega_power(x, -1)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Provenance {
    ComputedPseudoinverse,
    CustomUnary,
}

/// A finite unary semigroup: a table together with a unary map.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Epigroup {
    pub name: String,
    table: CayleyTable,
    unary: Vec<usize>,
    provenance: Provenance,
}

impl Epigroup {
    pub fn from_table(name: impl Into<String>, table: CayleyTable) -> Epigroup {
        let unary = (0..table.size()).map(|x| pseudoinverse(&table, x)).collect();
        Epigroup { name: name.into(), table, unary, provenance: Provenance::ComputedPseudoinverse }
    }

    pub fn with_unary(name: impl Into<String>, table: CayleyTable, unary: Vec<usize>) -> Result<Epigroup> {
        if unary.len() != table.size() || unary.iter().any(|&u| u >= table.size()) {
            return Err(Error::InvalidTable("unary map does not fit the carrier".into()));
        }
        Ok(Epigroup { name: name.into(), table, unary, provenance: Provenance::CustomUnary })
    }

    pub fn table(&self) -> &CayleyTable {
        &self.table
    }

    pub fn size(&self) -> usize {
        self.table.size()
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn unary(&self, x: usize) -> usize {
        self.unary[x]
    }

    pub fn unary_map(&self) -> &[usize] {
        &self.unary
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "name": self.name,
            "n": self.size(),
            "mul": self.table.rows(),
        });
        if self.provenance == Provenance::CustomUnary {
            v["unary"] = json!(self.unary);
        }
        v
    }

    pub fn from_json(v: &Value) -> Result<Epigroup> {
        let bad = |m: &str| Error::Json(m.to_string());
        let obj = v.as_object().ok_or_else(|| bad("table must be an object"))?;
        let name = obj.get("name").and_then(Value::as_str).unwrap_or("table").to_string();
        let rows: Vec<Vec<usize>> = obj
            .get("mul")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing \"mul\""))?
            .iter()
            .map(|r| {
                r.as_array()
                    .ok_or_else(|| bad("rows of \"mul\" must be arrays"))?
                    .iter()
                    .map(|x| x.as_u64().map(|x| x as usize).ok_or_else(|| bad("entries must be naturals")))
                    .collect()
            })
            .collect::<Result<_>>()?;
        if let Some(n) = obj.get("n") {
            if n.as_u64() != Some(rows.len() as u64) {
                return Err(Error::InvalidTable("\"n\" does not match the table".into()));
            }
        }
        let table = CayleyTable::from_rows(&rows)?;
        match obj.get("unary") {
            None | Some(Value::Null) => Ok(Epigroup::from_table(name, table)),
            Some(u) => {
                let unary = u
                    .as_array()
                    .ok_or_else(|| bad("\"unary\" must be an array"))?
                    .iter()
                    .map(|x| x.as_u64().map(|x| x as usize).ok_or_else(|| bad("entries must be naturals")))
                    .collect::<Result<_>>()?;
                Epigroup::with_unary(name, table, unary)
            }
        }
    }

    /// Evaluate `x^(ω+q)`. Custom unary maps go through the term translation.
    fn omega_power(&self, x: usize, q: i64) -> usize {
        match self.provenance {
            Provenance::ComputedPseudoinverse => self.table.omega_power(x, q),
            Provenance::CustomUnary => {
                let inv = self.unary[x];
                if q >= 0 {
                    (0..=q).fold(inv, |acc, _| self.table.mul(acc, x))
                } else {
                    (1..q.unsigned_abs()).fold(inv, |acc, _| self.table.mul(acc, inv))
                }
            }
        }
    }
}

impl fmt::Display for Epigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (order {})", self.name, self.size())?;
        for row in self.table.rows() {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            write!(f, "\n  {}", cells.join(" "))?;
        }
        if self.provenance == Provenance::CustomUnary {
            let u: Vec<String> = self.unary.iter().map(|v| v.to_string()).collect();
            write!(f, "\n  unary: {}", u.join(" "))?;
        }
        Ok(())
    }
}

/// Values for the letters of an identity.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Assignment(pub BTreeMap<char, usize>);

impl Assignment {
    pub fn get(&self, c: char) -> Result<usize> {
        self.0.get(&c).copied().ok_or(Error::Unassigned(c))
    }

    pub fn to_json(&self) -> Value {
        Value::Object(self.0.iter().map(|(c, v)| (c.to_string(), json!(v))).collect())
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(c, v)| format!("{c}↦{v}")).collect();
        write!(f, "{}", parts.join(", "))
    }
}

/// Anything that can be evaluated in a finite unary semigroup.
pub trait Evaluate {
    fn letters(&self) -> BTreeSet<char>;
    fn eval(&self, e: &Epigroup, a: &Assignment) -> Result<usize>;
}

impl Evaluate for EpigroupTerm {
    fn letters(&self) -> BTreeSet<char> {
        self.alphabet()
    }

    fn eval(&self, e: &Epigroup, a: &Assignment) -> Result<usize> {
        eval_term(e, self, a)
    }
}

impl Evaluate for ZWord {
    fn letters(&self) -> BTreeSet<char> {
        self.alphabet()
    }

    fn eval(&self, e: &Epigroup, a: &Assignment) -> Result<usize> {
        eval_zword(e, self, a)
    }
}

pub fn eval_term(e: &Epigroup, t: &EpigroupTerm, a: &Assignment) -> Result<usize> {
    Ok(match t {
        EpigroupTerm::Letter(c) => a.get(*c)?,
        EpigroupTerm::Product(xs) => {
            let mut it = xs.iter();
            let first = eval_term(e, it.next().ok_or_else(|| Error::Internal("empty product".into()))?, a)?;
            it.try_fold(first, |acc, x| Ok::<_, Error>(e.table.mul(acc, eval_term(e, x, a)?)))?
        }
        EpigroupTerm::Pseudoinverse(b) => e.unary[eval_term(e, b, a)?],
    })
}

/// Agrees with evaluating `zword_to_term(z)`, without building the term.
pub fn eval_zword(e: &Epigroup, z: &ZWord, a: &Assignment) -> Result<usize> {
    Ok(match z {
        ZWord::Letter(c) => a.get(*c)?,
        ZWord::Concat(xs) => {
            let mut it = xs.iter();
            let first = eval_zword(e, it.next().ok_or_else(|| Error::Internal("empty concat".into()))?, a)?;
            it.try_fold(first, |acc, x| Ok::<_, Error>(e.table.mul(acc, eval_zword(e, x, a)?)))?
        }
        ZWord::Omega(b, q) => e.omega_power(eval_zword(e, b, a)?, *q),
    })
}

/// Reference path for words: translate to a term first.
pub fn eval_zword_via_term(e: &Epigroup, z: &ZWord, a: &Assignment) -> Result<usize> {
    eval_term(e, &zword_to_term(z), a)
}

/// All assignments of `letters` in lexicographic order (first letter most significant).
fn for_each_assignment<F>(letters: &[char], n: usize, mut f: F) -> Option<Assignment>
where
    F: FnMut(&Assignment) -> bool,
{
    let mut digits = vec![0usize; letters.len()];
    loop {
        let a = Assignment(letters.iter().copied().zip(digits.iter().copied()).collect());
        if !f(&a) {
            return Some(a);
        }
        let mut i = letters.len();
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < n {
                break;
            }
            digits[i] = 0;
        }
    }
}

fn identity_letters<L: Evaluate + ?Sized, R: Evaluate + ?Sized>(lhs: &L, rhs: &R) -> Vec<char> {
    let mut s = lhs.letters();
    s.extend(rhs.letters());
    s.into_iter().collect()
}

/// The first violating assignment, if any.
pub fn check_identity<L, R>(e: &Epigroup, lhs: &L, rhs: &R) -> Option<Assignment>
where
    L: Evaluate + ?Sized,
    R: Evaluate + ?Sized,
{
    let letters = identity_letters(lhs, rhs);
    for_each_assignment(&letters, e.size(), |a| {
        // every letter is assigned, so evaluation cannot fail
        lhs.eval(e, a).ok() == rhs.eval(e, a).ok()
    })
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// `Z_p` with a zero adjoined. Element `k < p` is the `k`-th power of a
/// generator (so `0` is the identity) and `p` is the zero.
/// The unary map fixes the identity and sends everything else to zero.
pub fn make_adjoined_zero_witness(p: u64) -> Result<Epigroup> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let p = p as usize;
    let n = p + 1;
    let mut mul = vec![p; n * n];
    for a in 0..p {
        for b in 0..p {
            mul[a * n + b] = (a + b) % p;
        }
    }
    let table = CayleyTable::new(n, mul)?;
    let unary = (0..n).map(|x| if x == 0 { 0 } else { p }).collect();
    Epigroup::with_unary(format!("H{p}"), table, unary)
}

/// The element of `make_adjoined_zero_witness(p)` acting as the group identity.
pub const WITNESS_IDENTITY: usize = 0;

pub fn cyclic_group(n: usize) -> Epigroup {
    let mul = (0..n * n).map(|i| (i / n + i % n) % n).collect();
    Epigroup::from_table(format!("Z{n}"), CayleyTable::new(n, mul).expect("addition is associative"))
}

/// `0` is the zero; every product is zero.
pub fn null_semigroup(n: usize) -> Epigroup {
    Epigroup::from_table(format!("null{n}"), CayleyTable::new(n, vec![0; n * n]).expect("constant"))
}

pub fn left_zero(n: usize) -> Epigroup {
    let mul = (0..n * n).map(|i| i / n).collect();
    Epigroup::from_table(format!("left-zero{n}"), CayleyTable::new(n, mul).expect("projection"))
}

pub fn right_zero(n: usize) -> Epigroup {
    let mul = (0..n * n).map(|i| i % n).collect();
    Epigroup::from_table(format!("right-zero{n}"), CayleyTable::new(n, mul).expect("projection"))
}

/// The five-element combinatorial Brandt semigroup: `0` and the matrix
/// units `e11, e12, e21, e22` as `1..=4`.
pub fn brandt_b2() -> Epigroup {
    const UNITS: [(usize, usize); 4] = [(1, 1), (1, 2), (2, 1), (2, 2)];
    let idx = |u: (usize, usize)| 1 + UNITS.iter().position(|&v| v == u).unwrap();
    let mut mul = vec![0; 25];
    for (a, &(i, j)) in UNITS.iter().enumerate() {
        for (b, &(k, l)) in UNITS.iter().enumerate() {
            if j == k {
                mul[(a + 1) * 5 + (b + 1)] = idx((i, l));
            }
        }
    }
    Epigroup::from_table("B2", CayleyTable::new(5, mul).expect("Brandt table is associative"))
}

/// All semigroups on `0..n` up to isomorphism, as tables in canonical
/// (lexicographically least) labelling, sorted.
pub fn enumerate_semigroups(n: usize) -> Vec<CayleyTable> {
    fn consistent(mul: &[Option<usize>], n: usize) -> bool {
        for a in 0..n {
            for b in 0..n {
                let Some(ab) = mul[a * n + b] else { continue };
                for c in 0..n {
                    let (Some(l), Some(bc)) = (mul[ab * n + c], mul[b * n + c]) else { continue };
                    if let Some(r) = mul[a * n + bc] {
                        if l != r {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
    fn fill(cell: usize, n: usize, mul: &mut Vec<Option<usize>>, out: &mut BTreeSet<Vec<usize>>) {
        if cell == n * n {
            let t = CayleyTable { n, mul: mul.iter().map(|v| v.unwrap()).collect() };
            out.insert(t.canonical_key());
            return;
        }
        for v in 0..n {
            mul[cell] = Some(v);
            if consistent(mul, n) {
                fill(cell + 1, n, mul, out);
            }
        }
        mul[cell] = None;
    }
    let mut keys = BTreeSet::new();
    fill(0, n, &mut vec![None; n * n], &mut keys);
    keys.into_iter().map(|mul| CayleyTable { n, mul }).collect()
}

/// What goes into a corpus.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CorpusConfig {
    /// Every semigroup up to this order.
    pub max_order: usize,
    pub cyclic: Vec<usize>,
    pub null: Vec<usize>,
    pub left_right_zero: bool,
    pub brandt: bool,
    /// Primes `p` for the adjoined-zero witnesses `H_p`.
    pub witnesses: Vec<u64>,
}

impl CorpusConfig {
    /// Everything, including the custom-unary witnesses.
    pub fn full() -> CorpusConfig {
        CorpusConfig { witnesses: vec![2, 3, 5], ..CorpusConfig::epigroups() }
    }

    /// Only genuine epigroups (pseudoinversion computed from the table).
    /// Identities valid in all epigroups hold in every member.
    pub fn epigroups() -> CorpusConfig {
        CorpusConfig {
            max_order: 3,
            cyclic: (2..=6).collect(),
            null: vec![2, 3],
            left_right_zero: true,
            brandt: true,
            witnesses: Vec::new(),
        }
    }
}

impl Default for CorpusConfig {
    fn default() -> CorpusConfig {
        CorpusConfig::epigroups()
    }
}

/// Named fixtures first, then the enumerated small semigroups, then witnesses.
pub fn build_corpus(config: &CorpusConfig) -> Vec<Epigroup> {
    let mut out: Vec<Epigroup> = config.cyclic.iter().map(|&n| cyclic_group(n)).collect();
    out.extend(config.null.iter().map(|&n| null_semigroup(n)));
    if config.left_right_zero {
        out.push(left_zero(2));
        out.push(right_zero(2));
    }
    if config.brandt {
        out.push(brandt_b2());
    }
    for n in 1..=config.max_order {
        for (i, t) in enumerate_semigroups(n).into_iter().enumerate() {
            out.push(Epigroup::from_table(format!("S{n}.{}", i + 1), t));
        }
    }
    for &p in &config.witnesses {
        out.push(make_adjoined_zero_witness(p).expect("corpus witnesses use primes"));
    }
    out
}

pub fn corpus_to_json(corpus: &[Epigroup]) -> Value {
    Value::Array(corpus.iter().map(Epigroup::to_json).collect())
}

/// A single table object or an array of them.
pub fn corpus_from_json(v: &Value) -> Result<Vec<Epigroup>> {
    match v {
        Value::Array(xs) => xs.iter().map(Epigroup::from_json).collect(),
        _ => Ok(vec![Epigroup::from_json(v)?]),
    }
}

/// Limits the number of assignments evaluated across the whole scan.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Budget {
    pub max_assignments: u64,
}

impl Default for Budget {
    fn default() -> Budget {
        Budget { max_assignments: 2_000_000 }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Counterexample {
    /// Position in the corpus.
    pub index: usize,
    pub epigroup: Epigroup,
    pub assignment: Assignment,
    pub lhs_value: usize,
    pub rhs_value: usize,
}

impl Counterexample {
    pub fn to_json(&self) -> Value {
        json!({
            "table": self.epigroup.to_json(),
            "assignment": self.assignment.to_json(),
        })
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Search {
    Found(Box<Counterexample>),
    NotFound,
    BudgetExhausted { checked: usize },
}

impl Search {
    pub fn found(&self) -> Option<&Counterexample> {
        match self {
            Search::Found(c) => Some(c),
            _ => None,
        }
    }
}

/// Scan the corpus in order and stop at the first violation.
pub fn search_counterexample<L, R>(corpus: &[Epigroup], lhs: &L, rhs: &R, budget: Budget) -> Search
where
    L: Evaluate + ?Sized,
    R: Evaluate + ?Sized,
{
    let letters = identity_letters(lhs, rhs);
    let mut left = budget.max_assignments;
    for (index, e) in corpus.iter().enumerate() {
        let cost = (e.size() as u64).checked_pow(letters.len() as u32).unwrap_or(u64::MAX);
        if cost > left {
            return Search::BudgetExhausted { checked: index };
        }
        left -= cost;
        if let Some(a) = check_identity(e, lhs, rhs) {
            let lhs_value = lhs.eval(e, &a).expect("assigned");
            let rhs_value = rhs.eval(e, &a).expect("assigned");
            return Search::Found(Box::new(Counterexample {
                index,
                epigroup: e.clone(),
                assignment: a,
                lhs_value,
                rhs_value,
            }));
        }
    }
    Search::NotFound
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zterm::{parse_term, parse_zword};

    fn t(s: &str) -> EpigroupTerm {
        parse_term(s).unwrap()
    }

    fn one(c: char, v: usize) -> Assignment {
        Assignment([(c, v)].into_iter().collect())
    }

    #[test]
    fn validation() {
        assert!(CayleyTable::from_rows(&[vec![0, 1], vec![1, 0]]).is_ok());
        assert!(CayleyTable::from_rows(&[vec![0, 0], vec![1, 1]]).is_ok());
        // 0*0 = 1, 1*x = 0: (0*0)*0 = 0 but 0*(0*0) = 0*1
        let e = CayleyTable::from_rows(&[vec![1, 1], vec![0, 0]]).unwrap_err();
        assert!(matches!(e, Error::NonAssociative { .. }), "{e}");
        assert!(CayleyTable::from_rows(&[vec![0, 2], vec![0, 0]]).is_err());
    }

    #[test]
    fn pseudoinverses() {
        let z3 = cyclic_group(3);
        assert_eq!(pseudoinverse(z3.table(), 1), 2);
        let z4 = cyclic_group(4);
        assert_eq!(z4.unary(1), z4.table().power(1, 3));
        // null2: element 1 squares to 0
        let nl = null_semigroup(2);
        assert_eq!(nl.table().index_period(1), (2, 1));
        assert_eq!(nl.unary(1), 0);
        let b = brandt_b2();
        for x in 0..5 {
            if b.table().mul(x, x) == x {
                assert_eq!(b.unary(x), x);
            }
        }
    }

    #[test]
    fn evaluation() {
        let z2 = cyclic_group(2);
        assert_eq!(eval_term(&z2, &t("x'"), &one('x', 1)).unwrap(), 1);
        let nl = null_semigroup(2);
        assert_eq!(eval_term(&nl, &t("x''"), &one('x', 1)).unwrap(), 0);
        assert_eq!(eval_term(&nl, &t("xy"), &one('x', 1)), Err(Error::Unassigned('y')));
        let z = parse_zword("(x^(w+2) y)^(w-3) x").unwrap();
        for e in build_corpus(&CorpusConfig::full()) {
            for x in 0..e.size() {
                for y in 0..e.size() {
                    let a = Assignment([('x', x), ('y', y)].into_iter().collect());
                    assert_eq!(eval_zword(&e, &z, &a).unwrap(), eval_zword_via_term(&e, &z, &a).unwrap(), "{}", e.name);
                }
            }
        }
    }

    #[test]
    fn identities() {
        let z2 = cyclic_group(2);
        let a = check_identity(&z2, &parse_zword("x^w").unwrap(), &parse_zword("x^(w+1)").unwrap());
        assert_eq!(a, Some(one('x', 1)));
        for e in build_corpus(&CorpusConfig::epigroups()) {
            assert_eq!(check_identity(&e, &t("x'x"), &t("xx'")), None, "{}", e.name);
        }
        let h5 = make_adjoined_zero_witness(5).unwrap();
        let a = check_identity(&h5, &t("(xxxxx)'"), &t("x'x'x'x'x'")).unwrap();
        assert_ne!(a.get('x').unwrap(), WITNESS_IDENTITY);
        assert_eq!(check_identity(&h5, &t("(xxx)'"), &t("x'x'x'")), None);
        assert_eq!(make_adjoined_zero_witness(4), Err(Error::NotPrime(4)));
        assert_eq!(make_adjoined_zero_witness(2).unwrap().size(), 3);
    }

    #[test]
    fn enumeration_counts() {
        let counts: Vec<usize> = (1..=3).map(|n| enumerate_semigroups(n).len()).collect();
        assert_eq!(counts, vec![1, 5, 24]);
    }

    #[test]
    fn corpus_search() {
        let corpus = build_corpus(&CorpusConfig::default());
        assert_eq!(corpus, build_corpus(&CorpusConfig::default()));
        let c = search_counterexample(&corpus, &t("xy"), &t("yx"), Budget::default());
        assert_eq!(c.found().unwrap().epigroup.name, "left-zero2");
        assert_eq!(search_counterexample(&corpus, &t("x'x"), &t("xx'"), Budget::default()), Search::NotFound);
        let w = search_counterexample(&corpus, &parse_zword("x^w").unwrap(), &parse_zword("x^(w+1)").unwrap(), Budget::default());
        assert_eq!(w.found().unwrap().epigroup.name, "Z2");
        let tiny = Budget { max_assignments: 3 };
        assert!(matches!(search_counterexample(&corpus, &t("xy"), &t("yx"), tiny), Search::BudgetExhausted { .. }));
    }

    #[test]
    fn json_round_trip() {
        for e in build_corpus(&CorpusConfig::full()) {
            assert_eq!(Epigroup::from_json(&e.to_json()).unwrap(), e);
        }
        let v: Value = serde_json::from_str(r#"{"name":"bad","n":2,"mul":[[1,1],[0,0]]}"#).unwrap();
        assert!(matches!(Epigroup::from_json(&v), Err(Error::NonAssociative { .. })));
    }
}
