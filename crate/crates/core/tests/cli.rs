use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::{json, Value};
use tempfile::TempDir;

const OLIVER: &str = r#"{"l": 0, "L": "triv", "J": ["x1^2*x2 + x1*x2^2", "x1^4 + x1^2*x2^2 + x2^4"]}"#;

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_a4perf")).args(args).output().expect("spawn a4perf");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// Realize `triple` and return the written complex file.
fn realized(dir: &TempDir, name: &str, triple: &str) -> PathBuf {
    let t = write(dir, &format!("{name}.triple.json"), triple);
    let c = dir.path().join(format!("{name}.json"));
    let (code, _, err) = run(&["realize", s(&t), "-o", s(&c)]);
    assert_eq!(code, 0, "{err}");
    c
}

#[test]
fn classify_lambda() {
    let dir = TempDir::new().unwrap();
    let c = realized(&dir, "lambda", r#"{"l": 0, "L": "triv", "J": ["x1", "x2"]}"#);
    let (code, out, _) = run(&["classify", s(&c), "--json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["triple"]["l"], 0);
    assert_eq!(v["triple"]["L"], "triv");
    assert_eq!(v["triple"]["J"], json!(["x1", "x2"]));
}

#[test]
fn nonzero_square_is_a_domain_error() {
    let dir = TempDir::new().unwrap();
    let c = realized(&dir, "lambda", r#"{"l": 0, "L": "triv", "J": ["x1", "x2"]}"#);
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&c).unwrap()).unwrap();
    let term = v["terms"][0].clone();
    let n = term["dim"].as_u64().unwrap() as usize;
    let id: Vec<Vec<u8>> = (0..n).map(|i| (0..n).map(|j| u8::from(i == j)).collect()).collect();
    v["terms"] = json!([term.clone(), term.clone(), term]);
    v["hi"] = json!(v["lo"].as_i64().unwrap() + 2);
    v["diffs"] = json!([id.clone(), id]);
    let bad = write(&dir, "bad.json", &v.to_string());
    let (code, _, err) = run(&["classify", s(&bad)]);
    assert_eq!(code, 1);
    assert!(err.contains("d² ≠ 0 at degree"), "{err}");
}

#[test]
fn realize_oliver_with_check() {
    let dir = TempDir::new().unwrap();
    let t = write(&dir, "oliver.json", OLIVER);
    let (code, out, err) = run(&["realize", s(&t), "--check"]);
    assert_eq!(code, 0, "{err}");
    assert!(out.contains(": ok"), "{out}");
    let c = realized(&dir, "oliver", OLIVER);
    let (code, out, _) = run(&["classify", s(&c), "--json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!((v["m"].as_u64(), v["n"].as_u64(), v["t"].as_u64()), (Some(2), Some(3), Some(5)));
}

#[test]
fn enumerate_finds_oliver() {
    let (code, out, _) = run(&["enumerate", "3", "4", "--invariant", "--steenrod"]);
    assert_eq!(code, 0);
    assert!(out.contains("x1^2*x2 + x1*x2^2"), "{out}");
    assert!(out.contains("count 1"), "{out}");
}

#[test]
fn obstruction_outputs() {
    let dir = TempDir::new().unwrap();
    let c = realized(&dir, "oliver", OLIVER);
    let (code, out, _) = run(&["obstruct", s(&c), "--json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["vanishes"], true);

    let sq = write(&dir, "sq.json", r#"{"J": ["x1^2", "x2^2"]}"#);
    let (code, out, _) = run(&["obstruct", s(&sq)]);
    assert_eq!(code, 0);
    assert!(out.contains("2 - V"), "{out}");
    assert!(out.lines().any(|l| l.starts_with("vanishes") && l.ends_with("no")), "{out}");
}

#[test]
fn spectral_pages() {
    let dir = TempDir::new().unwrap();
    let c = realized(&dir, "oliver", OLIVER);
    let (code, out, _) = run(&["spectral", s(&c)]);
    assert_eq!(code, 0);
    assert!(out.contains("collapses at E₂: yes"), "{out}");
    assert!(out.contains("(0,0) (1,2) (1,3) (2,5)"), "{out}");

    let z = write(&dir, "zero.json", r#"{"field": "F2", "group": "C3", "lo": 0, "hi": -1, "terms": [], "diffs": []}"#);
    let (code, out, err) = run(&["spectral", s(&z), "--page", "1"]);
    assert_eq!(code, 0, "{err}");
    assert!(out.contains("(empty)"), "{out}");
}

#[test]
fn rigidity() {
    let (code, out, _) = run(&["rigidity", "2", "3"]);
    assert_eq!(code, 0);
    assert!(out.contains("1 ideal(s)"), "{out}");
    assert!(out.contains("finite free yes"), "{out}");
    let (code, out, _) = run(&["rigidity", "0", "0"]);
    assert_eq!(code, 0);
    assert!(out.contains("ideal (x1, x2)"), "{out}");
}

#[test]
fn selftest_passes() {
    let (code, out, _) = run(&["selftest", "--seed", "5"]);
    assert_eq!(code, 0, "{out}");
    assert!(!out.contains("FAIL"), "{out}");
}

#[test]
fn usage_errors() {
    assert_eq!(run(&["bogus"]).0, 1);
    assert_eq!(run(&["--help"]).0, 0);
    assert_eq!(run(&["classify", "/nonexistent/file.json"]).0, 1);
}
