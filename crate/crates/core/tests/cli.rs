use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn qfodc(args: &[&str]) -> (i32, String, String) {
    qfodc_env(args, None)
}

fn qfodc_env(args: &[&str], cache: Option<&PathBuf>) -> (i32, String, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_qfodc"));
    cmd.args(args).env_remove("QFODC_CACHE_DIR");
    if let Some(dir) = cache {
        cmd.env("QFODC_CACHE_DIR", dir);
    }
    let out = cmd.output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned(), String::from_utf8_lossy(&out.stderr).into_owned())
}

fn without_timings(mut v: Value) -> Value {
    for c in v["checks"].as_array_mut().unwrap() {
        c["elapsed_ms"] = Value::from(0);
    }
    v
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("qfodc-test-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn z1_report_passes_with_three_oracles() {
    let (code, out, err) = qfodc(&["verify", "--group", "glq", "--n", "2", "--calculus", "gamma-z1", "--zn", "L-[n,n]^2", "--format", "json"]);
    assert_eq!(code, 0, "{err}");
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["group"], "glq");
    assert_eq!(v["calculus"], "gamma-z1");
    let dxdx = v["checks"].as_array().unwrap().iter().find(|c| c["id"] == "prop4i-dxdx").expect("prop4i-dxdx present");
    assert_eq!(dxdx["status"], "pass");
    for o in ["pbw", "pairing", "numeric"] {
        assert_eq!(dxdx["oracles"][o], true);
    }
    let ids: Vec<&str> = v["checks"].as_array().unwrap().iter().map(|c| c["id"].as_str().unwrap()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
}

#[test]
fn x_table_contains_first_relation() {
    let (code, out, _) = qfodc(&["table", "--group", "glq", "--n", "2", "--calculus", "gamma-x"]);
    assert_eq!(code, 0);
    assert!(out.contains("dx1.x1 = q^-2 x1.dx1"), "{out}");
}

#[test]
fn exit_codes() {
    assert_eq!(qfodc(&["verify", "--group", "spq", "--n", "4", "--calculus", "gamma-x"]).0, 2);
    assert_eq!(qfodc(&["verify", "--group", "glq", "--n", "2", "--calculus", "nonsense"]).0, 2);
    assert_eq!(qfodc(&["verify", "--group", "glq"]).0, 2);
    assert_eq!(qfodc(&["verify", "--group", "glq", "--n", "2", "--q", "abc"]).0, 2);
    assert_eq!(qfodc(&["verify", "--group", "glq", "--n", "2", "--calculus", "gamma-x", "--check", "no-such-check"]).0, 2);
    assert_eq!(qfodc(&["frobnicate"]).0, 2);
    // X^+ on a single index with Z = eps is the zero space.
    assert_eq!(qfodc(&["verify", "--group", "glq", "--n", "2", "--calculus", "elementary:x+:1,1"]).0, 2);
}

#[test]
fn output_is_deterministic() {
    let args = ["verify", "--group", "glq", "--n", "2", "--calculus", "gamma-z2", "--format", "json", "--workers", "2"];
    let (_, a, _) = qfodc(&args);
    let (_, b, _) = qfodc(&args);
    let a: Value = serde_json::from_str(&a).unwrap();
    let b: Value = serde_json::from_str(&b).unwrap();
    assert_eq!(without_timings(a), without_timings(b));
}

#[test]
fn config_file_and_check_filter() {
    let dir = scratch("config");
    let path = dir.join("run.json");
    std::fs::write(&path, r#"{"group": "glq", "n": 2, "calculus": "gamma-x", "check": ["bus9"], "format": "json"}"#).unwrap();
    let (code, out, err) = qfodc(&["verify", "--config", path.to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    let v: Value = serde_json::from_str(&out).unwrap();
    let checks = v["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 1);
    assert_eq!(checks[0]["id"], "bus9-dxdx");
    std::fs::write(&path, r#"{"group": "glq", "n": 2, "colour": "red"}"#).unwrap();
    assert_eq!(qfodc(&["verify", "--config", path.to_str().unwrap()]).0, 2);
}

#[test]
fn cache_directory_is_used() {
    let dir = scratch("cache");
    let args = ["verify", "--group", "glq", "--n", "2", "--calculus", "gamma-y", "--format", "json"];
    let (code, first, _) = qfodc_env(&args, Some(&dir));
    assert_eq!(code, 0);
    assert_eq!(std::fs::read_dir(&dir).unwrap().count(), 1);
    let (code, second, _) = qfodc_env(&args, Some(&dir));
    assert_eq!(code, 0);
    let a: Value = serde_json::from_str(&first).unwrap();
    let b: Value = serde_json::from_str(&second).unwrap();
    assert_eq!(a, b);
}

#[test]
fn markdown_report() {
    let (code, out, _) = qfodc(&["verify", "--group", "oq", "--n", "3", "--calculus", "recipe-oq", "--format", "markdown"]);
    assert_eq!(code, 0);
    assert!(out.contains("| recipe-dimension | pass |"));
    assert!(out.contains("recipe-separation-reading"));
}
