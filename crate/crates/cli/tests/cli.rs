//! End-to-end tests of the binary surface.

use std::path::PathBuf;
use std::process::{Command, Output};

fn polykit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polykit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).to_string()
}

fn tmpdir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("polykit-test-{name}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn classify_named_inputs() {
    let out = polykit(&["classify", "pe3"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["class"], "IdealAlmostPogorelov");
    assert_eq!(v["m"], 14);

    let out = polykit(&["classify", "dodecahedron", "--format", "text"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "Pogorelov");
}

#[test]
fn construct_writes_snapshots_and_reads_back() {
    let dir = tmpdir("construct");
    let out = polykit(&[
        "construct",
        "exhaustive:6",
        "--out-dir",
        dir.to_str().unwrap(),
        "--planar-code",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let polys: Vec<_> = std::fs::read_dir(&dir)
        .unwrap()
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .filter(|p| p.extension().is_some_and(|x| x == "poly"))
        .collect();
    assert_eq!(polys.len(), 4, "1 + 1 + 2 combinatorial types up to m = 6");
    // classify one snapshot file by path
    let out = polykit(&["classify", polys[0].to_str().unwrap()]);
    assert!(out.status.success());
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn invariants_of_cube() {
    let out = polykit(&["invariants", "cube", "--bigraded"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["betti"], serde_json::json!([1, 0, 0, 3, 0, 0, 3, 0, 0, 1]));
    assert_eq!(v["pairing_rank"], 3);
    assert_eq!(v["a3_rank"], 0);
}

#[test]
fn invariants_respects_max_m() {
    let out = polykit(&["invariants", "pe3", "--max-m", "10"]);
    assert!(!out.status.success());
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn belts_jsonl_output() {
    let out = polykit(&["belts", "cube", "--k", "4"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.trim().lines().collect();
    assert_eq!(lines.len(), 3);
    for line in lines {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["k"], 4);
        assert_eq!(v["trivial"], true);
    }
}

#[test]
fn toric_output() {
    let out = polykit(&["toric", "cube", "--mode", "small-cover"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["graded_dims"], serde_json::json!([1, 3, 3, 1]));
}

#[test]
fn verify_criterion_runs() {
    let out = polykit(&["verify", "--criterion", "ideal_b4", "--corpus", "named"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["disagreements"], serde_json::json!([]));
}

#[test]
fn compare_isomorphic_constructions() {
    let out = polykit(&["compare", "pe3", "truncate-full:simplex"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["isomorphic"], true);
    assert_eq!(v["fingerprints_equal"], true);

    let out = polykit(&["compare", "cube", "m5xi"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["isomorphic"], false);
}

#[test]
fn fingerprint_cache_roundtrip_and_self_check() {
    let dir = tmpdir("cache");
    let cache = dir.to_str().unwrap();
    let first = polykit(&["fingerprint", "as3", "--cache-dir", cache]);
    assert!(first.status.success());
    let second = polykit(&["fingerprint", "as3", "--cache-dir", cache]);
    assert!(second.status.success());
    assert_eq!(stdout(&first), stdout(&second), "cache hit must be byte-identical");

    let stats = polykit(&["cache", "stats", "--cache-dir", cache]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&stats)).unwrap();
    assert_eq!(v["entries"], 1);

    let check = polykit(&["cache", "self-check", "--cache-dir", cache]);
    assert!(check.status.success(), "{}", String::from_utf8_lossy(&check.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&check)).unwrap();
    assert_eq!(v["mismatches"], serde_json::json!([]));

    let clear = polykit(&["cache", "clear", "--cache-dir", cache]);
    assert!(clear.status.success());
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn verify_over_directory_corpus() {
    let dir = tmpdir("verify-dir");
    let out = polykit(&["construct", "exhaustive:7", "--out-dir", dir.to_str().unwrap()]);
    assert!(out.status.success());
    let out = polykit(&[
        "verify",
        "--criterion",
        "pogorelov_h3h3",
        "--corpus",
        dir.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["members"], 9, "1+1+2+5 combinatorial types up to m=7");
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn usage_errors_exit_two() {
    let out = polykit(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn deterministic_output_across_runs() {
    let a = polykit(&["invariants", "as3", "--bigraded"]);
    let b = polykit(&["invariants", "as3", "--bigraded"]);
    assert_eq!(stdout(&a), stdout(&b));
    let a = polykit(&["fingerprint", "cube"]);
    let b = polykit(&["fingerprint", "cube"]);
    assert_eq!(stdout(&a), stdout(&b));
}
