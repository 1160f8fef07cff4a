use std::fs;
use std::process::Command;

use serde_json::Value;

fn pal(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_pal")).args(args).output().expect("pal runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

fn write(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

const V3: &str = r#"{"name":"V3","elements":["a","b","c"],"le":[["a","c"],["b","c"]]}"#;

#[test]
fn poset_check_and_dot() {
    let dir = tempfile::tempdir().unwrap();
    let v3 = write(&dir, "v3.json", V3);
    let (code, out, _) = pal(&["poset", "check", &v3]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), r#"{"elements":3,"relationPairs":2}"#);

    let (code, dot, _) = pal(&["poset", "export-dot", &v3]);
    assert_eq!(code, 0);
    assert_eq!(dot.matches("->").count(), 2);

    let dot_file = dir.path().join("v3.dot");
    let (code, out, _) = pal(&["poset", "export-dot", &v3, "--out", dot_file.to_str().unwrap()]);
    assert_eq!((code, out.as_str()), (0, ""));
    assert_eq!(fs::read_to_string(dot_file).unwrap(), dot);
}

#[test]
fn transitively_implied_pairs_are_not_edges() {
    let dir = tempfile::tempdir().unwrap();
    let c = write(&dir, "c3.json", r#"{"elements":["x","y","z"],"le":[["x","y"],["y","z"],["x","z"]]}"#);
    let (_, dot, _) = pal(&["poset", "export-dot", &c]);
    assert_eq!(dot.matches("->").count(), 2);
    let (_, out, _) = pal(&["poset", "check", &c]);
    assert!(out.contains(r#""relationPairs":3"#));
}

#[test]
fn cycle_and_parse_errors() {
    let dir = tempfile::tempdir().unwrap();
    let cyc = write(&dir, "cyc.json", r#"{"elements":["a","b"],"le":[["a","b"],["b","a"]]}"#);
    let (code, out, _) = pal(&["poset", "check", &cyc]);
    assert_eq!(code, 1);
    assert_eq!(out.trim(), r#"{"error":"cycle","witness":["a","b"]}"#);

    let bad = write(&dir, "bad.json", "{not json");
    assert_eq!(pal(&["poset", "check", &bad]).0, 2);

    let v3 = write(&dir, "v3.json", V3);
    assert_eq!(pal(&["alg", "eq", "-p", &v3, "x(a) &", "x(a)"]).0, 2);
    assert_eq!(pal(&["alg", "eq", "-p", &v3, "x(q)", "x(a)"]).0, 2);
}

#[test]
fn alg_commands() {
    let dir = tempfile::tempdir().unwrap();
    let v3 = write(&dir, "v3.json", V3);
    assert_eq!(pal(&["alg", "eq", "-p", &v3, "x(a) & x(c)", "x(a)"]).1.trim(), "true");
    assert_eq!(pal(&["alg", "eq", "-p", &v3, "x(a)", "x(b)"]).1.trim(), "false");
    assert_eq!(pal(&["alg", "dnf", "-p", &v3, "!x(c)"]).1.trim(), "-x{c}");
    assert_eq!(pal(&["alg", "leq", "-p", &v3, "x(b)", "x(c)"]).1.trim(), "true");

    let (code, out, _) = pal(&["alg", "leq", "-p", &v3, "x(c)", "x(a) | x(b)", "--oracle", "--json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["result"], false);
    assert_eq!(v["oracleAgrees"], true);

    let (_, out, _) = pal(&["alg", "normalize", "-p", &v3, "x(a) | (x(a) & x(b))"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["result"]["lattice"], "x{a}");
    assert_eq!(v["result"]["support"], serde_json::json!(["a"]));
}

#[test]
fn verify_suites() {
    let (code, out, _) = pal(&["verify", "--suite", "fact24", "--max-size", "6", "--seed", "42"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["failures"], 0);
    assert_eq!(v["cases"], 88 + 4 + 1);

    let (code, out, _) = pal(&["verify", "--suite", "rado", "--horizon", "12"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["badArray"], true);
    assert!(v["antichainSize"].as_u64().unwrap() >= 5);

    let (code, out, _) = pal(&["verify", "--suite", "all", "--max-size", "4", "--human"]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(out.lines().filter(|l| l.contains(" pass ")).count(), 14);
}

#[test]
fn verify_is_deterministic() {
    let strip = |s: String| {
        let mut v: Value = serde_json::from_str(&s).unwrap();
        for verdict in v["verdicts"].as_array_mut().unwrap() {
            verdict["elapsed_ms"] = 0.into();
        }
        v
    };
    let args = ["verify", "--suite", "lex-layering", "--seed", "9", "--samples", "20"];
    assert_eq!(strip(pal(&args).1), strip(pal(&args).1));
}

#[test]
fn array_classify() {
    let dir = tempfile::tempdir().unwrap();
    let arr = write(&dir, "a.json", r#"{"k":2,"N":7,"generator":"rado-identity"}"#);
    let (code, out, _) = pal(&["array", "classify", &arr]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["verdict"], "bad");
    assert_eq!(v["goodPairs"], 0);
}
