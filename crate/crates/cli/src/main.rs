use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use epigroup_core::decider::{decide_identity_in, decide_zword_identity_in, render_search, render_trace, Searcher, Verdict};
use epigroup_core::error::Error;
use epigroup_core::finite_epigroups::{
    build_corpus, check_identity, corpus_from_json, Budget, CorpusConfig, Epigroup, Evaluate,
};
use epigroup_core::lcp::longest_common_prefix;
use epigroup_core::normalizer::{normalize, normalize_traced, Fold};
use epigroup_core::sword::s_canonical;
use epigroup_core::zterm::{parse_mixed, EpigroupTerm, Expr, ZWord};

const CORPUS_ENV: &str = "EPIGROUP_CORPUS";

#[derive(Parser)]
#[command(name = "epigroup", version, about = "Decide identities of epigroups")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide an identity "<lhs> = <rhs>"
    Decide {
        identity: String,
        #[arg(long)]
        trace: bool,
        /// Search the finite corpus when the identity fails
        #[arg(long)]
        counterexample: bool,
        #[arg(long)]
        json: bool,
    },
    /// Print the normal form of an expression
    Normalize {
        expr: String,
        #[arg(long)]
        trace: bool,
        #[arg(long)]
        json: bool,
    },
    /// Canonical representative under winding and rolling only
    Canon { expr: String },
    /// Longest common prefix of two normal forms
    Lcp { first: String, second: String },
    /// Finite expansion with every ω replaced by k
    Expand {
        expr: String,
        #[arg(long)]
        k: u64,
    },
    /// Finite model checking
    Finite {
        #[command(subcommand)]
        cmd: FiniteCmd,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CorpusName {
    /// Genuine epigroups only
    Default,
    /// Also the custom-unary witnesses
    Full,
}

#[derive(Subcommand)]
enum FiniteCmd {
    /// Check an identity exhaustively
    Check {
        identity: String,
        #[arg(long, conflicts_with = "corpus")]
        table: Option<PathBuf>,
        #[arg(long, value_enum)]
        corpus: Option<CorpusName>,
        #[arg(long)]
        json: bool,
    },
    /// Print the pseudoinverse of every element
    Pseudoinv {
        #[arg(long)]
        table: PathBuf,
    },
}

enum Failure {
    Input(String),
    Internal(String),
}

impl Failure {
    fn from_core(e: Error, src: &str, offset: usize) -> Failure {
        match e {
            Error::Internal(m) => Failure::Internal(m),
            Error::Syntax { pos, msg } => {
                let at = offset + pos;
                Failure::Input(format!("syntax error at offset {at}: {msg}\n  {src}\n  {}^", " ".repeat(at)))
            }
            e => Failure::Input(e.to_string()),
        }
    }
}

type Run = std::result::Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = std::panic::catch_unwind(|| run(cli)).unwrap_or_else(|p| {
        let msg = p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default();
        Err(Failure::Internal(msg))
    });
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(m)) => {
            eprintln!("internal error: {m}");
            ExitCode::from(3)
        }
    }
}

fn parse_at(src: &str, text: &str, offset: usize) -> std::result::Result<Expr, Failure> {
    // keep offsets relative to the full argument
    let lead = text.len() - text.trim_start().len();
    parse_mixed(text.trim()).map_err(|e| Failure::from_core(e, src, offset + lead))
}

fn parse_expr(src: &str) -> std::result::Result<Expr, Failure> {
    parse_at(src, src, 0)
}

fn parse_identity(src: &str) -> std::result::Result<(Expr, Expr), Failure> {
    let eq = src.find('=').ok_or_else(|| Failure::Input(format!("expected \"<lhs> = <rhs>\", found {src:?}")))?;
    if src[eq + 1..].contains('=') {
        return Err(Failure::Input("more than one '=' in the identity".into()));
    }
    Ok((parse_at(src, &src[..eq], 0)?, parse_at(src, &src[eq + 1..], eq + 1)?))
}

fn core<T>(r: epigroup_core::error::Result<T>, src: &str) -> std::result::Result<T, Failure> {
    r.map_err(|e| Failure::from_core(e, src, 0))
}

/// Either concrete syntax, evaluated the way it was written.
enum Side {
    Term(EpigroupTerm),
    Word(ZWord),
}

fn sides(l: &Expr, r: &Expr) -> (Side, Side) {
    if l.has_omega() || r.has_omega() {
        (Side::Word(l.to_zword()), Side::Word(r.to_zword()))
    } else {
        (Side::Term(l.to_term()), Side::Term(r.to_term()))
    }
}

fn load_corpus(path: &Path) -> std::result::Result<Vec<Epigroup>, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    let v: Value = serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    corpus_from_json(&v).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn default_corpus(config: CorpusConfig) -> std::result::Result<Vec<Epigroup>, Failure> {
    match std::env::var_os(CORPUS_ENV) {
        Some(p) => load_corpus(Path::new(&p)),
        None => Ok(build_corpus(&config)),
    }
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("values serialize"));
}

fn run(cli: Cli) -> Run {
    match cli.cmd {
        Cmd::Decide { identity, trace, counterexample, json } => {
            let (l, r) = parse_identity(&identity)?;
            let searcher = if counterexample {
                Some(Searcher::new(default_corpus(CorpusConfig::epigroups())?, Budget::default()))
            } else {
                None
            };
            let v: Verdict = match sides(&l, &r) {
                (Side::Term(a), Side::Term(b)) => core(decide_identity_in(&a, &b, searcher.as_ref()), &identity)?,
                (Side::Word(a), Side::Word(b)) => {
                    core(decide_zword_identity_in(&a, &b, searcher.as_ref()), &identity)?
                }
                _ => unreachable!("sides share a syntax"),
            };
            if json {
                print_json(&v.to_json());
            } else if trace {
                println!("{}", render_trace(&v));
            } else {
                println!("{}", v.outcome.as_str().to_uppercase());
                if let Some(line) = render_search(&v) {
                    println!("{line}");
                }
            }
            Ok(if v.holds() { 0 } else { 1 })
        }
        Cmd::Normalize { expr, trace, json } => {
            let z = parse_expr(&expr)?.to_zword();
            let (n, steps) = core(normalize_traced(&z, Fold::Left), &expr)?;
            if json {
                print_json(&json!({
                    "input": z.to_string(),
                    "normal": n.to_string(),
                    "sword": n.sword().to_json(),
                    "steps": steps.iter().map(|s| s.to_json()).collect::<Vec<_>>(),
                }));
            } else {
                if trace {
                    for (i, s) in steps.iter().enumerate() {
                        let at = if s.at.is_empty() { "top" } else { &s.at };
                        println!("{:>3}. {:<14} at {:<8} {}  =>  {}", i + 1, s.rule, at, s.before, s.after);
                    }
                }
                println!("{n}");
            }
            Ok(0)
        }
        Cmd::Canon { expr } => {
            let z = parse_expr(&expr)?.to_zword();
            println!("{}", core(s_canonical(&z), &expr)?);
            Ok(0)
        }
        Cmd::Lcp { first, second } => {
            let a = core(normalize(&parse_expr(&first)?.to_zword()), &first)?;
            let b = core(normalize(&parse_expr(&second)?.to_zword()), &second)?;
            println!("{}", core(longest_common_prefix(&a, &b), &first)?);
            Ok(0)
        }
        Cmd::Expand { expr, k } => {
            let z = parse_expr(&expr)?.to_zword();
            let letters = core(z.expand(k), &expr)?;
            println!("{}", letters.into_iter().collect::<String>());
            Ok(0)
        }
        Cmd::Finite { cmd: FiniteCmd::Check { identity, table, corpus, json } } => {
            let (l, r) = parse_identity(&identity)?;
            let models = match (table, corpus) {
                (Some(path), _) => load_corpus(&path)?,
                (None, Some(CorpusName::Full)) => build_corpus(&CorpusConfig::full()),
                (None, _) => default_corpus(CorpusConfig::epigroups())?,
            };
            let (a, b) = sides(&l, &r);
            let (la, lb): (&dyn Evaluate, &dyn Evaluate) = match (&a, &b) {
                (Side::Term(x), Side::Term(y)) => (x, y),
                (Side::Word(x), Side::Word(y)) => (x, y),
                _ => unreachable!("sides share a syntax"),
            };
            finite_check(&models, la, lb, json)
        }
        Cmd::Finite { cmd: FiniteCmd::Pseudoinv { table } } => {
            for e in load_corpus(&table)? {
                println!("{}", e.name);
                for x in 0..e.size() {
                    let (i, p) = e.table().index_period(x);
                    println!("  {x}' = {}  (index {i}, period {p})", e.unary(x));
                }
            }
            Ok(0)
        }
    }
}

fn finite_check(models: &[Epigroup], lhs: &dyn Evaluate, rhs: &dyn Evaluate, json: bool) -> Run {
    let mut failures = Vec::new();
    for e in models {
        if let Some(a) = check_identity(e, lhs, rhs) {
            let lv = lhs.eval(e, &a).map_err(|e| Failure::Internal(e.to_string()))?;
            let rv = rhs.eval(e, &a).map_err(|e| Failure::Internal(e.to_string()))?;
            failures.push((e, a, lv, rv));
        }
    }
    if json {
        print_json(&json!({
            "outcome": if failures.is_empty() { "holds" } else { "fails" },
            "checked": models.len(),
            "violations": failures.iter().map(|(e, a, lv, rv)| json!({
                "table": e.name,
                "assignment": a.to_json(),
                "lhs": lv,
                "rhs": rv,
            })).collect::<Vec<_>>(),
        }));
    } else if failures.is_empty() {
        println!("HOLDS in all {} tables", models.len());
    } else {
        println!("FAILS in {} of {} tables", failures.len(), models.len());
        for (e, a, lv, rv) in &failures {
            println!("  {}: {a} gives {lv} and {rv}", e.name);
        }
    }
    Ok(if failures.is_empty() { 0 } else { 1 })
}
