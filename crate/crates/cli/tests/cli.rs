use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn lineidx(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lineidx")).args(args).env_remove("GEOM_SEED").output().unwrap()
}

fn with_stdin(args: &[&str], input: &[u8]) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_lineidx"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input).unwrap();
    child.wait_with_output().unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn error_kind(out: &Output) -> String {
    let v: Value = serde_json::from_slice(&out.stderr).expect("stderr is JSON");
    v["error"].as_str().unwrap().to_string()
}

const TRIANGLE: &str = r#"{
  "lines": [
    {"slope": {"n": "1", "d": "1"}, "intercept": {"n": "0", "d": "1"}},
    {"slope": {"n": "-1", "d": "1"}, "intercept": {"n": "2", "d": "1"}},
    {"slope": {"n": "0", "d": "1"}, "intercept": {"n": "-3", "d": "1"}}
  ],
  "points": [
    [{"x": {"n": "0", "d": "1"}, "y": {"n": "0", "d": "1"}}, 0],
    [{"x": {"n": "2", "d": "1"}, "y": {"n": "0", "d": "1"}}, 1],
    [{"x": {"n": "1", "d": "1"}, "y": {"n": "-3", "d": "1"}}, 2]
  ]
}"#;

#[test]
fn three_point_query_writes_three_vertices() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("tri.json");
    std::fs::write(&inst, TRIANGLE).unwrap();
    let idx = dir.path().join("tri.idx");
    let hull = dir.path().join("hull.json");
    for mode in ["std", "oblivious", "tradeoff:2", "outsens"] {
        assert!(lineidx(&["preprocess", "--lines", s(&inst), "--mode", mode, "--out", s(&idx)]).status.success());
        let out = lineidx(&["query", "--index", s(&idx), "--points", s(&inst), "--out", s(&hull)]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        let v: Value = serde_json::from_slice(&std::fs::read(&hull).unwrap()).unwrap();
        assert_eq!(v["vertices"].as_array().unwrap().len(), 3, "{mode}");
        assert_eq!(v["vertices"][0]["x"], serde_json::json!({"n": "0", "d": "1"}));
    }
}

#[test]
fn dash_means_stdin_and_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let idx = dir.path().join("tri.idx");
    assert!(with_stdin(&["preprocess", "--lines", "-", "--mode", "std", "--out", s(&idx)], TRIANGLE.as_bytes())
        .status
        .success());
    let out = with_stdin(&["query", "--index", s(&idx), "--points", "-", "--out", "-"], TRIANGLE.as_bytes());
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["mode"], "std");
    assert_eq!(v["vertices"].as_array().unwrap().len(), 3);
}

#[test]
fn verify_random_64_matches_all_trials() {
    let out = lineidx(&["verify", "--kind", "random", "--sizes", "64", "--trials", "100"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["trials"], 100);
    assert_eq!(v["matches"], 100);
}

#[test]
fn verify_checks_levels_too() {
    let out = lineidx(&["verify", "--kind", "random", "--sizes", "48", "--trials", "3", "--levels-k", "2"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}

fn bench_csv(path: &Path) -> Vec<Vec<String>> {
    let out = lineidx(&[
        "bench", "--kinds", "random,few-hull", "--sizes", "64,128", "--trials", "2", "--h", "5", "--seed", "3",
        "--modes", "std,oblivious,tradeoff:4,outsens,levels", "--csv", s(path),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let mut r = csv::Reader::from_path(path).unwrap();
    let header: Vec<String> = r.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(
        header,
        [
            "generator", "n", "k", "mode", "seed", "total_conflicts", "zone_total", "rounds", "wraps",
            "wall_time_ns", "oracle_match"
        ]
    );
    r.records().map(|rec| rec.unwrap().iter().map(String::from).collect()).collect()
}

#[test]
fn bench_rows_are_deterministic_and_correct() {
    let dir = tempfile::tempdir().unwrap();
    let a = bench_csv(&dir.path().join("a.csv"));
    let b = bench_csv(&dir.path().join("b.csv"));
    assert_eq!(a.len(), 2 * 2 * 2 * 5);
    for (x, y) in a.iter().zip(&b) {
        assert_eq!(x[..9], y[..9]);
        assert_eq!(x[10], "true");
    }
}

#[test]
fn geom_seed_sets_the_default_seed() {
    let explicit = lineidx(&["generate", "--kind", "random", "-n", "12", "--seed", "5"]).stdout;
    let env = Command::new(env!("CARGO_BIN_EXE_lineidx"))
        .args(["generate", "--kind", "random", "-n", "12"])
        .env("GEOM_SEED", "5")
        .output()
        .unwrap()
        .stdout;
    let default = lineidx(&["generate", "--kind", "random", "-n", "12"]).stdout;
    assert_eq!(explicit, env);
    assert_ne!(explicit, default);
}

#[test]
fn levels_query_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("inst.json");
    let idx = dir.path().join("lv.idx");
    assert!(lineidx(&["generate", "--kind", "random", "-n", "40", "--seed", "2", "--out", s(&inst)]).status.success());
    assert!(lineidx(&["preprocess", "--lines", s(&inst), "--mode", "levels", "--out", s(&idx)]).status.success());
    let out = lineidx(&["levels-query", "--index", s(&idx), "--lines", s(&inst), "-k", "2"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let parsed: lineidx::levels::LevelComplex = serde_json::from_value(v["level"].clone()).unwrap();
    let i: lineidx::gen::Instance = serde_json::from_slice(&std::fs::read(&inst).unwrap()).unwrap();
    assert_eq!(parsed, lineidx::oracle::brute_levels(&i.lines, 2));
}

#[test]
fn errors_are_json_with_nonzero_exit() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("tri.json");
    std::fs::write(&inst, TRIANGLE).unwrap();
    let idx = dir.path().join("tri.idx");
    assert!(lineidx(&["preprocess", "--lines", s(&inst), "--mode", "std", "--out", s(&idx)]).status.success());

    let mut bytes = std::fs::read(&idx).unwrap();
    bytes[8..12].copy_from_slice(&99u32.to_le_bytes());
    let other = dir.path().join("other.idx");
    std::fs::write(&other, &bytes).unwrap();
    let out = lineidx(&["query", "--index", s(&other), "--points", s(&inst)]);
    assert!(!out.status.success());
    assert_eq!(error_kind(&out), "VersionMismatch");

    std::fs::write(&other, b"not an index").unwrap();
    assert_eq!(error_kind(&lineidx(&["query", "--index", s(&other), "--points", s(&inst)])), "BadMagic");

    let off = TRIANGLE.replacen(r#"{"n": "-3", "d": "1"}}, 2"#, r#"{"n": "-4", "d": "1"}}, 2"#, 1);
    let offp = dir.path().join("off.json");
    std::fs::write(&offp, off).unwrap();
    let out = lineidx(&["query", "--index", s(&idx), "--points", s(&offp)]);
    assert!(!out.status.success());
    assert_eq!(error_kind(&out), "PointNotOnDeclaredLine");

    let out = lineidx(&["preprocess", "--lines", s(&inst), "--mode", "bogus", "--out", s(&idx)]);
    assert!(!out.status.success());
    assert_eq!(error_kind(&out), "Usage");

    let out = lineidx(&["levels-query", "--index", s(&idx), "--lines", s(&inst), "-k", "1"]);
    assert_eq!(error_kind(&out), "InvalidParameter");
}
