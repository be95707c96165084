//! End-to-end tests of the batch interface: exit codes, report determinism,
//! cache transparency, and round-trips through the JSON formats.

use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_qshuffle")
}

fn write_config(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path.to_string_lossy().into_owned()
}

fn cyclic3(dir: &Path) -> String {
    write_config(
        dir,
        "cyclic3.json",
        r#"{
  "schema": "qshuffle-config/1",
  "vertices": ["1", "2", "3"],
  "zeta": {"kind": "quiver", "counts": [[0,0,1],[1,0,0],[0,1,0]]}
}"#,
    )
}

fn sl2(dir: &Path) -> String {
    write_config(
        dir,
        "sl2.json",
        r#"{
  "schema": "qshuffle-config/1",
  "vertices": ["1"],
  "zeta": {"kind": "kac_moody", "d": [[2]]}
}"#,
    )
}

fn run(args: &[&str], cache_dir: &Path) -> Output {
    Command::new(bin())
        .args(args)
        .env("QSHUFFLE_CACHE_DIR", cache_dir)
        .output()
        .expect("binary runs")
}

#[test]
fn member_exit_codes() {
    let tmp = TempDir::new().unwrap();
    let cfg = cyclic3(tmp.path());
    let cache = tmp.path().join("cache");
    let member = r#"{"sign":"-","degree":{"1":1,"2":1,"3":1},"body":[{"monomial":{"z[1,1]":1},"coeff":"1"},{"monomial":{"z[2,1]":1},"coeff":"-1"}]}"#;
    let out = run(
        &["member", "--config", &cfg, "--no-cache", "--element", member],
        &cache,
    );
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["result"]["verdict"], "MEMBER");

    let non_member = r#"{"sign":"-","degree":{"1":1,"2":1,"3":1},"body":[{"monomial":{},"coeff":"1"}]}"#;
    let out = run(
        &["member", "--config", &cfg, "--no-cache", "--element", non_member],
        &cache,
    );
    assert_eq!(out.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["result"]["verdict"], "NOT_MEMBER");
    assert!(report["result"]["witness"]["terms"].as_array().unwrap().len() > 0);
}

#[test]
fn invalid_config_is_usage_error() {
    let tmp = TempDir::new().unwrap();
    let cache = tmp.path().join("cache");
    let bad = write_config(
        tmp.path(),
        "bad.json",
        r#"{"schema": "other/9", "vertices": ["1"], "zeta": {"kind": "quiver", "counts": [[0]]}}"#,
    );
    let out = run(&["zeta-info", "--config", &bad, "--no-cache"], &cache);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn reports_are_deterministic_and_cache_transparent() {
    let tmp = TempDir::new().unwrap();
    let cfg = sl2(tmp.path());
    let cache = tmp.path().join("cache");
    let element = r#"{"sign":"+","terms":[{"word":[["1",1],["1",0]],"coeff":"1"}]}"#;
    let args = ["straighten", "--config", &cfg, "--element", element];
    // cold run populates the cache
    let first = run(&args, &cache);
    assert_eq!(first.status.code(), Some(0));
    // warm run must be byte-identical
    let second = run(&args, &cache);
    assert_eq!(first.stdout, second.stdout);
    // cache disabled must also be byte-identical
    let mut no_cache_args = args.to_vec();
    no_cache_args.push("--no-cache");
    let third = run(&no_cache_args, &cache);
    assert_eq!(first.stdout, third.stdout);
    // and the cache directory actually holds an entry
    assert!(cache.read_dir().unwrap().count() > 0);
}

#[test]
fn straighten_roundtrips_through_json() {
    let tmp = TempDir::new().unwrap();
    let cfg = sl2(tmp.path());
    let cache = tmp.path().join("cache");
    let element = r#"{"sign":"+","terms":[{"word":[["1",1],["1",0]],"coeff":"1"}]}"#;
    let out = run(
        &["straighten", "--config", &cfg, "--no-cache", "--element", element],
        &cache,
    );
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let straightened = report["result"]["straightened"].to_string();
    // feeding the straightened element back is a fixed point
    let again = run(
        &["straighten", "--config", &cfg, "--no-cache", "--element", &straightened],
        &cache,
    );
    assert_eq!(again.status.code(), Some(0));
    let report2: serde_json::Value = serde_json::from_slice(&again.stdout).unwrap();
    assert_eq!(report["result"]["straightened"], report2["result"]["straightened"]);
}

#[test]
fn pair_modes_agree() {
    let tmp = TempDir::new().unwrap();
    let cfg = cyclic3(tmp.path());
    let cache = tmp.path().join("cache");
    // <e_v, F_w> via the oracle and via upsilon + plus pairing
    let v = r#"[["1",0],["2",0]]"#;
    let w = r#"[["2",0],["1",0]]"#;
    let oracle = run(
        &["pair", "--config", &cfg, "--no-cache", "--mode", "oracle", "--left", v, "--right", w],
        &cache,
    );
    assert_eq!(oracle.status.code(), Some(0));
    let oracle_val: serde_json::Value = serde_json::from_slice(&oracle.stdout).unwrap();
    // image of w on the minus side
    let upsilon_w = run(
        &[
            "upsilon",
            "--config",
            &cfg,
            "--no-cache",
            "--element",
            r#"{"sign":"-","terms":[{"word":[["2",0],["1",0]],"coeff":"1"}]}"#,
        ],
        &cache,
    );
    assert_eq!(upsilon_w.status.code(), Some(0));
    let img: serde_json::Value = serde_json::from_slice(&upsilon_w.stdout).unwrap();
    let fw = img["result"]["image"].to_string();
    let plus = run(
        &[
            "pair",
            "--config",
            &cfg,
            "--no-cache",
            "--mode",
            "plus",
            "--left",
            r#"{"sign":"+","terms":[{"word":[["1",0],["2",0]],"coeff":"1"}]}"#,
            "--right",
            &fw,
        ],
        &cache,
    );
    assert_eq!(plus.status.code(), Some(0), "{}", String::from_utf8_lossy(&plus.stderr));
    let plus_val: serde_json::Value = serde_json::from_slice(&plus.stdout).unwrap();
    assert_eq!(oracle_val["result"]["value"], plus_val["result"]["value"]);
}

#[test]
fn verify_core_suite_passes() {
    let tmp = TempDir::new().unwrap();
    let cfg = sl2(tmp.path());
    let cache = tmp.path().join("cache");
    let out = run(
        &["verify", "--config", &cfg, "--no-cache", "--suite", "core"],
        &cache,
    );
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["result"]["ok"], true);
}

#[test]
fn kernel_reports_dimension() {
    let tmp = TempDir::new().unwrap();
    let cfg = cyclic3(tmp.path());
    let cache = tmp.path().join("cache");
    let out = run(
        &[
            "kernel",
            "--config",
            &cfg,
            "--no-cache",
            "--degree",
            r#"{"1":1,"2":1,"3":1}"#,
            "--homdeg",
            "0",
            "--window",
            "-1,1",
        ],
        &cache,
    );
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(report["result"]["dimension"].as_u64().unwrap() > 0);
}
