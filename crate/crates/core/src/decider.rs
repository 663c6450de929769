//! Deciding identities: normalize both sides and compare.

use std::fmt::Write as _;
use std::sync::OnceLock;

use serde_json::{json, Value};

use crate::error::Result;
use crate::finite_epigroups::{
    build_corpus, search_counterexample, Budget, Counterexample, CorpusConfig, Epigroup, Evaluate, Search,
};
use crate::lcp::normal_equal;
use crate::normalizer::{normalize_traced, Fold, NormalSword, TraceStep};
use crate::zterm::{term_to_zword, EpigroupTerm, ZWord};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Outcome {
    Holds,
    Fails,
}

impl Outcome {
    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::Holds => "holds",
            Outcome::Fails => "fails",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Verdict {
    pub outcome: Outcome,
    pub lhs_normal: NormalSword,
    pub rhs_normal: NormalSword,
    /// Steps for the left side, then the right; `at` starts with `lhs` or `rhs`.
    pub trace: Vec<TraceStep>,
    /// Present only when a search was requested and the identity fails.
    pub search: Option<Search>,
}

impl Verdict {
    pub fn holds(&self) -> bool {
        self.outcome == Outcome::Holds
    }

    pub fn counterexample(&self) -> Option<&Counterexample> {
        self.search.as_ref().and_then(Search::found)
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "outcome": self.outcome.as_str(),
            "lhsNormal": self.lhs_normal.to_string(),
            "rhsNormal": self.rhs_normal.to_string(),
            "steps": self.trace.iter().map(TraceStep::to_json).collect::<Vec<_>>(),
        });
        if let Some(c) = self.counterexample() {
            v["counterexample"] = c.to_json();
        }
        v
    }
}

/// Where to look for finite counterexamples.
#[derive(Clone, Debug)]
pub struct Searcher {
    pub corpus: Vec<Epigroup>,
    pub budget: Budget,
}

impl Searcher {
    pub fn new(corpus: Vec<Epigroup>, budget: Budget) -> Searcher {
        Searcher { corpus, budget }
    }

    /// The genuine-epigroup corpus with the default budget, built once.
    pub fn standard() -> &'static Searcher {
        static S: OnceLock<Searcher> = OnceLock::new();
        S.get_or_init(|| Searcher::new(build_corpus(&CorpusConfig::epigroups()), Budget::default()))
    }

    fn run<L: Evaluate + ?Sized, R: Evaluate + ?Sized>(&self, lhs: &L, rhs: &R) -> Search {
        search_counterexample(&self.corpus, lhs, rhs, self.budget)
    }
}

fn side(z: &ZWord, label: &str) -> Result<(NormalSword, Vec<TraceStep>)> {
    let (n, mut steps) = normalize_traced(z, Fold::Left)?;
    for s in &mut steps {
        s.at = if s.at.is_empty() { label.to_string() } else { format!("{label}.{}", s.at) };
    }
    Ok((n, steps))
}

fn compare(lhs: &ZWord, rhs: &ZWord) -> Result<Verdict> {
    let (lhs_normal, mut trace) = side(lhs, "lhs")?;
    let (rhs_normal, rt) = side(rhs, "rhs")?;
    trace.extend(rt);
    let outcome = if normal_equal(&lhs_normal, &rhs_normal)? { Outcome::Holds } else { Outcome::Fails };
    Ok(Verdict { outcome, lhs_normal, rhs_normal, trace, search: None })
}

/// Decide `lhs ≈ rhs` over all epigroups. With `search`, a failing identity
/// is also looked up in the standard corpus.
pub fn decide_identity(lhs: &EpigroupTerm, rhs: &EpigroupTerm, search: bool) -> Result<Verdict> {
    decide_identity_in(lhs, rhs, search.then(Searcher::standard))
}

pub fn decide_identity_in(lhs: &EpigroupTerm, rhs: &EpigroupTerm, searcher: Option<&Searcher>) -> Result<Verdict> {
    let mut v = compare(&term_to_zword(lhs), &term_to_zword(rhs))?;
    if let (Outcome::Fails, Some(s)) = (v.outcome, searcher) {
        v.search = Some(s.run(lhs, rhs));
    }
    Ok(v)
}

/// Same as [`decide_identity`] with the search switched on, for words.
pub fn decide_zword_identity(lhs: &ZWord, rhs: &ZWord) -> Result<Verdict> {
    decide_zword_identity_in(lhs, rhs, Some(Searcher::standard()))
}

pub fn decide_zword_identity_in(lhs: &ZWord, rhs: &ZWord, searcher: Option<&Searcher>) -> Result<Verdict> {
    let mut v = compare(lhs, rhs)?;
    if let (Outcome::Fails, Some(s)) = (v.outcome, searcher) {
        v.search = Some(s.run(lhs, rhs));
    }
    Ok(v)
}

pub fn render_trace(v: &Verdict) -> String {
    let mut out = String::new();
    let n = v.trace.len();
    let _ = writeln!(out, "{} step{}", n, if n == 1 { "" } else { "s" });
    for (i, s) in v.trace.iter().enumerate() {
        let _ = writeln!(out, "  {:>3}. {:<14} at {:<10} {}  =>  {}", i + 1, s.rule, s.at, s.before, s.after);
    }
    let _ = writeln!(out, "lhs normal: {}", v.lhs_normal);
    let _ = writeln!(out, "rhs normal: {}", v.rhs_normal);
    out.push_str(&v.outcome.as_str().to_uppercase());
    if let Some(line) = render_search(v) {
        out.push('\n');
        out.push_str(&line);
    }
    out
}

/// One line about the finite search, if one ran.
pub fn render_search(v: &Verdict) -> Option<String> {
    Some(match v.search.as_ref()? {
        Search::Found(c) => format!(
            "counterexample in {} (corpus #{}): {}; lhs = {}, rhs = {}",
            c.epigroup.name, c.index, c.assignment, c.lhs_value, c.rhs_value
        ),
        Search::NotFound => "no counterexample in the corpus".to_string(),
        Search::BudgetExhausted { .. } => "no counterexample found within budget".to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zterm::{parse_term, parse_zword};

    fn term(l: &str, r: &str) -> Verdict {
        decide_identity(&parse_term(l).unwrap(), &parse_term(r).unwrap(), true).unwrap()
    }

    fn word(l: &str, r: &str) -> Verdict {
        decide_zword_identity(&parse_zword(l).unwrap(), &parse_zword(r).unwrap()).unwrap()
    }

    #[test]
    fn basis_examples() {
        assert!(term("x'x'x", "x'").holds());
        assert!(term("(xx)'", "x'x'").holds());
        let v = term("x''", "x");
        assert_eq!(v.outcome, Outcome::Fails);
        let c = v.counterexample().unwrap();
        assert_eq!(c.epigroup.name, "null2");
        assert_eq!(c.lhs_value, 0);
    }

    #[test]
    fn word_examples() {
        let v = word("x^w x", "x^(w+1)");
        assert!(v.holds());
        assert_eq!(v.trace.len(), 1);
        assert_eq!(v.trace[0].rule, "S-windOn");
        assert!(render_trace(&v).starts_with("1 step\n"));
        let v = word("x^w", "x^(w+1)");
        assert_eq!(v.counterexample().unwrap().epigroup.name, "Z2");
        assert!(render_trace(&v).contains("Z2"));
        assert!(word("(x^(w+1))^(w+1)", "x^(w+1)").holds());
        let v = word("x^(w+1)", "x^(w+1)");
        assert!(render_trace(&v).starts_with("0 steps"));
    }

    #[test]
    fn json_shape() {
        let v = term("xy", "yx");
        let j = v.to_json();
        assert_eq!(j["outcome"], "fails");
        assert_eq!(j["counterexample"]["table"]["name"], "left-zero2");
        assert_eq!(j["counterexample"]["assignment"]["x"], 0);
        assert!(j["steps"].is_array());
    }
}
