// SPDX-License-Identifier: Apache-2.0

use std::process::Command;

fn mdv() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_mdv"));
    c.env_remove("MDV_CACHE");
    c
}

fn stdout_of(args: &[&str]) -> (i32, String) {
    let out = mdv().args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn descend_worked_point() {
    let (code, out) = stdout_of(&["descend", "--d", "-1355", "--point", "64,572"]);
    assert_eq!(code, 0);
    assert!(out.contains("x^3 - 48x + 143"), "{out}");
    assert!(out.contains("disc: -109755"), "{out}");
}

#[test]
fn descend_rejects_off_curve_point() {
    let (code, _) = stdout_of(&["descend", "--d", "-1355", "--point", "64,571"]);
    assert_eq!(code, 2);
    let (code, _) = stdout_of(&["descend", "--d", "-1355", "--point", "64"]);
    assert_eq!(code, 2);
}

#[test]
fn classgroup_verb() {
    let (code, out) = stdout_of(&["classgroup", "--disc", "-3299"]);
    assert_eq!(code, 0);
    assert!(out.contains("h: 27") && out.contains("[3, 9]") && out.contains("r3: 2"), "{out}");
    let (code, _) = stdout_of(&["classgroup", "--disc", "-12"]);
    assert_eq!(code, 2);
}

#[test]
fn search_and_census_verbs() {
    let (code, out) = stdout_of(&["search", "--d", "-1355", "--x-bound", "100"]);
    assert_eq!(code, 0);
    assert!(out.contains("(64, 572)"), "{out}");
    let (code, out) = stdout_of(&["census", "--d", "-31", "--a-bound", "10000"]);
    assert_eq!(code, 0);
    assert!(out.contains("0 cubic(s)"), "{out}");
    let (code, out) = stdout_of(&["census", "--d", "-7"]);
    assert_eq!(code, 0);
    assert!(out.contains("x^3 - 3x + 5"), "{out}");
}

#[test]
fn usage_errors_exit_2() {
    let (code, _) = stdout_of(&["verify", "--dmin", "-10"]);
    assert_eq!(code, 2);
    let (code, _) = stdout_of(&["verify", "--dmin", "10", "--dmax", "-10"]);
    assert_eq!(code, 2);
    let (code, _) = stdout_of(&["frobnicate"]);
    assert_eq!(code, 2);
}

#[test]
fn verify_is_deterministic_with_env_cache() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache.jsonl");
    let args = ["verify", "--dmin", "-400", "--dmax", "400", "--x-bound", "20000", "--height-bound", "100"];
    let plain = mdv().args(args).args(["--threads", "1"]).output().unwrap();
    assert_eq!(plain.status.code(), Some(0));
    let cached = mdv()
        .args(args)
        .args(["--threads", "2"])
        .env("MDV_CACHE", &cache)
        .output()
        .unwrap();
    assert_eq!(cached.status.code(), Some(0));
    assert!(cache.exists());
    let lines = std::fs::read_to_string(&cache).unwrap().lines().count();
    assert!(lines > 0);
    // warm cache, explicit flag overriding a bogus env value
    let warm = mdv()
        .args(args)
        .args(["--cache", cache.to_str().unwrap()])
        .env("MDV_CACHE", dir.path().join("missing/elsewhere.jsonl"))
        .output()
        .unwrap();
    assert_eq!(warm.status.code(), Some(0));
    assert_eq!(plain.stdout, cached.stdout);
    assert_eq!(plain.stdout, warm.stdout);
    // deleting the cache reproduces the same report
    std::fs::remove_file(&cache).unwrap();
    let again = mdv().args(args).env("MDV_CACHE", &cache).output().unwrap();
    assert_eq!(plain.stdout, again.stdout);
}

#[test]
fn verify_writes_both_formats() {
    let dir = tempfile::tempdir().unwrap();
    let prefix = dir.path().join("report");
    let status = mdv()
        .args(["verify", "--dmin", "-100", "--dmax", "-1", "--x-bound", "1000", "--format", "both", "--out"])
        .arg(&prefix)
        .status()
        .unwrap();
    assert!(status.success());
    let csv = std::fs::read_to_string(dir.path().join("report.csv")).unwrap();
    let json = std::fs::read_to_string(dir.path().join("report.json")).unwrap();
    assert_eq!(csv.lines().count(), 9);
    let rows: Vec<serde_json::Value> = serde_json::from_str(&json).unwrap();
    assert_eq!(rows.len(), 8);
    assert_eq!(rows[0]["D"], -91);
    let (code, _) = stdout_of(&["verify", "--dmin", "-100", "--dmax", "-1", "--format", "both"]);
    assert_eq!(code, 2);
}
