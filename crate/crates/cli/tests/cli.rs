use std::io::Write;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_epigroup"));
    c.env_remove("EPIGROUP_CORPUS");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn table_file(json: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(json.as_bytes()).unwrap();
    f
}

#[test]
fn decide_holds() {
    let o = run(&["decide", "x'x = xx'"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "HOLDS");
}

#[test]
fn decide_fails_with_witness() {
    let o = run(&["decide", "xy = yx", "--counterexample"]);
    assert_eq!(o.status.code(), Some(1));
    let s = stdout(&o);
    assert!(s.starts_with("FAILS"), "{s}");
    assert!(s.contains("left-zero2"), "{s}");
}

#[test]
fn worked_normalization() {
    let o = run(&["normalize", "(xz^(w+2))^w z^(w-5)"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "(xz^(w+2))^(w-1)xz^(w-3)");
    let o = run(&["normalize", "--trace", "(xz^(w+2))^w z^(w-5)"]);
    assert!(stdout(&o).contains("R-mergeExp"));
}

#[test]
fn trace_output() {
    let o = run(&["decide", "x^w x = x^(w+1)", "--trace"]);
    let s = stdout(&o);
    assert!(s.starts_with("1 step"), "{s}");
    assert!(s.contains("S-windOn"));
    let o = run(&["decide", "x^(w+1) = x^(w+1)", "--trace"]);
    assert!(stdout(&o).starts_with("0 steps"));
}

#[test]
fn json_is_stable() {
    let args = ["decide", "x'' = x", "--json", "--counterexample"];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.status.code(), Some(1));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["outcome"], "fails");
    assert_eq!(v["counterexample"]["table"]["name"], "null2");
    assert_eq!(v["counterexample"]["assignment"]["x"], 1);
    for key in ["lhsNormal", "rhsNormal", "steps"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    let o = run(&["normalize", "--json", "x x^w"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["normal"], "x^(w+1)");
}

#[test]
fn input_errors() {
    let o = run(&["decide", "xy = y(x"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("offset 8"), "{err}");
    assert_eq!(run(&["decide", "xy"]).status.code(), Some(2));
    assert_eq!(run(&["expand", "x^(w-3)", "--k", "2"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn small_commands() {
    assert_eq!(stdout(&run(&["canon", "x(yx)^(w+3)"])).trim(), "(xy)^(w+3)x");
    assert_eq!(stdout(&run(&["lcp", "x^w y", "x^w z"])).trim(), "x^w");
    assert_eq!(stdout(&run(&["expand", "(xy)^(w-1)", "--k", "3"])).trim(), "xyxy");
}

#[test]
fn finite_commands() {
    let lz = table_file(r#"{"name":"lz","n":2,"mul":[[0,0],[1,1]]}"#);
    let path = lz.path().to_str().unwrap();
    let o = run(&["finite", "check", "xy=yx", "--table", path]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("lz"));
    assert_eq!(run(&["finite", "check", "xyx=xy", "--table", path]).status.code(), Some(0));
    let o = run(&["finite", "pseudoinv", "--table", path]);
    assert!(stdout(&o).contains("1' = 1"), "{}", stdout(&o));
    let bad = table_file(r#"{"name":"bad","n":2,"mul":[[1,1],[0,0]]}"#);
    let o = run(&["finite", "pseudoinv", "--table", bad.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not associative"));
    assert_eq!(run(&["finite", "check", "(xx)'=x'x'", "--corpus", "default"]).status.code(), Some(0));
    let o = run(&["finite", "check", "(xx)'=x'x'", "--corpus", "full"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("H2"));
}

#[test]
fn corpus_override() {
    let z3 = table_file(r#"[{"name":"three","n":3,"mul":[[0,1,2],[1,2,0],[2,0,1]]}]"#);
    let o = bin()
        .args(["decide", "x^w = x^(w+1)", "--counterexample"])
        .env("EPIGROUP_CORPUS", z3.path())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("three"), "{}", stdout(&o));
}
