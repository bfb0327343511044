use std::path::Path;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn cherednik(args: &[&str], cache: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_cherednik"));
    cmd.args(args).env_remove("CHEREDNIK_CACHE_DIR");
    if let Some(dir) = cache {
        cmd.env("CHEREDNIK_CACHE_DIR", dir);
    }
    cmd.output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("bad JSON ({e}): {}", String::from_utf8_lossy(&out.stdout)))
}

#[test]
fn shapovalov_gl1_example() {
    let out = cherednik(&["shapovalov", "--n", "1", "--zeta", "1", "--nu", "3"], None);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["tau"], 1);
    assert_eq!(v["det_computed"], json!([["6", []]]));
    assert_eq!(v["det_predicted"], json!([["6", []]]));
    assert_eq!(v["ratio"], "1");
}

#[test]
fn shapovalov_symbolic_gl2() {
    let out = cherednik(&["shapovalov", "--n", "2", "--zeta", "s,s", "--nu", "1,1"], None);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["tau"], 2);
    assert_ne!(v["ratio"], Value::Null);
}

#[test]
fn classify_examples() {
    // Only ζ_0 nonzero: P is linear, so no positive integer root appears.
    let out = cherednik(&["classify", "--n", "2", "--zeta", "1", "--lambda", "5,3"], None);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["finite"], false);
    // ζ = 0 is the undeformed algebra, where every x-monomial is singular.
    let out = cherednik(&["classify", "--n", "2", "--zeta", "0", "--lambda", "5,3"], None);
    let v = json_of(&out);
    assert_eq!(v["finite"], true);
    assert_eq!(v["nu"], json!([0, 0]));
    let out = cherednik(&["classify", "--n", "2", "--zeta", "1", "--lambda", "5,7/2"], None);
    assert_eq!(json_of(&out)["finite"], false);
}

#[test]
fn bridge_suite_example() {
    let out = cherednik(&["verify", "--suite", "bridge", "--n", "2", "--kmax", "2"], None);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["passed"], true);
    assert_eq!(v["items"], 3);
}

#[test]
fn every_suite_passes_at_default_bounds() {
    for suite in ["pbw-consistency", "shapovalov", "casimir", "bridge", "findim", "poisson-gl", "poisson-sp", "appendix-sp", "appendix-sp4"] {
        let out = cherednik(&["verify", "--suite", suite], None);
        assert_eq!(out.status.code(), Some(0), "{suite}: {}", String::from_utf8_lossy(&out.stdout));
        assert_eq!(json_of(&out)["passed"], true, "{suite}");
    }
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        &["verify", "--suite", "nope"][..],
        &["shapovalov", "--n", "2", "--zeta", "1", "--nu", "1"],
        &["shapovalov", "--n", "1", "--zeta", "abc", "--nu", "1"],
        &["classify", "--n", "2", "--zeta", "s", "--lambda", "1,0"],
        &["pair", "--algebra", "sp", "--n", "1", "--zeta", "zeta_1", "--i", "1", "--j", "2"],
        &["pair", "--n", "2", "--i", "3", "--j", "1"],
        &["normal-order", "--n", "1", "--word", "x_2"],
        &["frobnicate"],
        &[],
    ] {
        let out = cherednik(args, None);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
    }
    assert_eq!(cherednik(&["--help"], None).status.code(), Some(0));
    assert_eq!(cherednik(&["--version"], None).status.code(), Some(0));
}

#[test]
fn identity_violation_exits_two() {
    // The literal closed-form τ_2 differs from the bracket form by a sign, so
    // τ_2 + c_2 is not central; the residuals come back as data.
    let out = cherednik(&["poisson-center", "--algebra", "sp", "--n", "2", "--zeta", "1", "--tau", "closed"], None);
    assert_eq!(out.status.code(), Some(2));
    let v = json_of(&out);
    assert_eq!(v["passed"], false);
    assert!(!v["residuals"].as_array().unwrap().is_empty());
    let out = cherednik(&["poisson-center", "--algebra", "sp", "--n", "1", "--zeta", "1", "--tau", "closed"], None);
    assert_eq!(out.status.code(), Some(0));
    let out = cherednik(&["poisson-center", "--algebra", "gl", "--tau", "closed"], None);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn casimir_certificate() {
    let out = cherednik(&["casimir", "--n", "2", "--zeta", "s,s"], None);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["central"], true);
    assert_eq!(v["constructions_agree"], true);
    assert_eq!(v["residuals"], json!([]));
    let latex = cherednik(&["casimir", "--n", "2", "--zeta", "s,s", "--output", "latex"], None);
    let text = String::from_utf8(latex.stdout).unwrap();
    assert!(text.contains("e_{11}"), "{text}");
}

#[test]
fn p_poly_matches_hc() {
    let v = json_of(&cherednik(&["p-poly", "--n", "2", "--zeta", "s,s,s"], None));
    assert_eq!(v["matches_hc"], true);
}

#[test]
fn character_and_design() {
    let v = json_of(&cherednik(&["character", "--lambda", "2,0", "--nu", "1,1"], None));
    assert_eq!(v["components"].as_array().unwrap().len(), 4);
    let out = cherednik(&["design", "--lambda", "3,0", "--nu", "1,2"], None);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["round_trip_nu"], json!([1, 2]));
}

#[test]
fn poisson_centers() {
    for algebra in ["gl", "sp"] {
        let out = cherednik(&["poisson-center", "--algebra", algebra, "--n", "2", "--zeta", "s,s"], None);
        assert_eq!(out.status.code(), Some(0), "{algebra}");
        assert_eq!(json_of(&out)["passed"], true, "{algebra}");
    }
}

#[test]
fn pair_gl_and_sp() {
    let v = json_of(&cherednik(&["pair", "--n", "1", "--zeta", "1", "--i", "1", "--j", "1"], None));
    assert_eq!(v["pair"], json!([[[], [["1", []]]]]));
    let v = json_of(&cherednik(&["pair", "--algebra", "sp", "--n", "1", "--zeta", "1", "--i", "1", "--j", "2"], None));
    assert_eq!(v["pair"].as_array().unwrap().len(), 1);
}

#[test]
fn cache_hits_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["casimir", "--n", "2", "--zeta", "s,1/2"];
    let fresh = cherednik(&args, None);
    let first = cherednik(&args, Some(dir.path()));
    let entries: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(entries.len(), 1);
    let second = cherednik(&args, Some(dir.path()));
    assert_eq!(fresh.stdout, first.stdout);
    assert_eq!(first.stdout, second.stdout);
    let flag = cherednik(&["--cache-dir", dir.path().to_str().unwrap(), "casimir", "--n", "2", "--zeta", "s,1/2"], None);
    assert_eq!(flag.stdout, fresh.stdout);
}

#[test]
fn cache_ignores_other_versions_and_no_cache() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["p-poly", "--n", "1", "--zeta", "1,1"];
    let fresh = cherednik(&args, Some(dir.path()));
    let entry = std::fs::read_dir(dir.path()).unwrap().next().unwrap().unwrap().path();
    let mut stored: Value = serde_json::from_str(&std::fs::read_to_string(&entry).unwrap()).unwrap();
    // Tamper with the stored body under a foreign version: it must not be served.
    stored["version"] = json!("0.0.0-other");
    stored["result"]["body"]["p"] = json!("tampered");
    std::fs::write(&entry, stored.to_string()).unwrap();
    let again = cherednik(&args, Some(dir.path()));
    assert_eq!(again.stdout, fresh.stdout);
    let skipped = tempfile::tempdir().unwrap();
    cherednik(&["--no-cache", "p-poly", "--n", "1", "--zeta", "1,1"], Some(skipped.path()));
    assert_eq!(std::fs::read_dir(skipped.path()).unwrap().count(), 0);
}

#[test]
fn output_is_deterministic() {
    let args = ["poisson-center", "--algebra", "sp", "--n", "2", "--zeta", "s,s"];
    assert_eq!(cherednik(&args, None).stdout, cherednik(&args, None).stdout);
}
