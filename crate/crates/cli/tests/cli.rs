use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use proptest::prelude::*;

use curvelab::polyparse::parse_poly;
use curvelab_core::exactalg::BivarPoly;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_curvelab"))
}

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn run(args: &[&str], file: &Path) -> Output {
    bin().args(args).arg(file).env_remove("CURVELAB_PRIME_BITS").output().unwrap()
}

fn write(dir: &tempfile::TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn cusp_pair_analysis() {
    let out = run(&["analyze", "--json"], &data("cusp_pair.json"));
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["schema"], "curvelab.report");
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["command"], "analyze");
    // (t^2, t^3) and (t^2, t^3 + t^4/2) meet with multiplicity 7 > 6.
    assert_eq!(v["intersections"][0][1], 7);
    assert_eq!(v["tjurina"]["berger"], 15);
    assert_eq!(v["tjurina"]["closed"], 15);
    assert_eq!(v["tjurina"]["oracle"], 15);
    assert_eq!(v["milnor"], 17);
    assert_eq!(v["all_pass"], true);
}

#[test]
fn semigroup_command() {
    let dir = tempfile::tempdir().unwrap();
    let cusp = write(&dir, "cusp.json", r#"{"version": "1", "branches": [{"poly": "y^2 - x^3"}]}"#);
    let v = json(&run(&["semigroup", "--json"], &cusp));
    assert_eq!(v["branches"][0]["chars"]["beta_bar"], serde_json::json!([2, 3]));
    assert_eq!(v["conductor"], serde_json::json!([2]));
    assert_eq!(v["semigroup"]["rows"], serde_json::json!(["101"]));

    let pair = run(&["semigroup", "--json"], &data("cusp_pair.json"));
    assert_eq!(json(&pair)["conductor"], serde_json::json!([9, 9]));

    let five = write(&dir, "five.json", r#"{"version": "1", "branches": [{"param": {"n": 5, "y": [[8, 1]]}}]}"#);
    assert_eq!(json(&run(&["semigroup", "--json"], &five))["conductor"], serde_json::json!([28]));
}

#[test]
fn lambda_command() {
    let out = run(&["lambda", "--json"], &data("cusp_pair.json"));
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["theta"], v["theta_maximals"]);
    // c(Λ) = I - β0 + 1 for a diagonal pair.
    assert_eq!(v["kahler_conductor"], serde_json::json!([6, 6]));
}

#[test]
fn duplicate_branches_are_input_errors() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        &dir,
        "dup.json",
        r#"{"version": "1", "branches": [{"poly": "y^2 - x^3"}, {"param": {"n": 2, "y": [[3, 1]]}}]}"#,
    );
    let out = run(&["analyze"], &f);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("branches are not distinct"));
}

#[test]
fn parse_errors_carry_positions() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(&dir, "bad.json", "{\"version\": \"1\",\n \"branches\": [{\"poly\": \"y^2 - x^\"}]}\n");
    let out = run(&["analyze"], &f);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 2, column 33"), "{err}");

    let missing = run(&["analyze"], &dir.path().join("absent.json"));
    assert_eq!(missing.status.code(), Some(1));
}

#[test]
fn failing_verdict_exits_with_two() {
    // An expansion order of 1 cannot separate the branches, so the instance
    // errors out and its verdict fails.
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        &dir,
        "fam.json",
        r#"{"version": "1", "semigroup": [2, 3], "pairs": [["y^2 - x^3", "y^2 - x^3 - x^4"]]}"#,
    );
    let out = run(&["experiment", "--truncation", "1"], &f);
    assert_eq!(out.status.code(), Some(2), "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn out_file_and_prime_bits() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("report.json");
    let out = bin()
        .args(["analyze", "--json", "--out"])
        .arg(&target)
        .arg(data("cusp_pair.json"))
        .env("CURVELAB_PRIME_BITS", "40")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&target).unwrap()).unwrap();
    assert_eq!(v["tjurina"]["berger"], 15);

    let bad = bin().args(["analyze"]).arg(data("cusp_pair.json")).env("CURVELAB_PRIME_BITS", "3").output().unwrap();
    assert_eq!(bad.status.code(), Some(1));
    let zero = run(&["analyze", "--jobs", "0"], &data("cusp_pair.json"));
    assert_eq!(zero.status.code(), Some(1));
}

#[test]
fn reports_do_not_depend_on_jobs() {
    let a = run(&["experiment", "--json", "--seed", "3", "--jobs", "1"], &data("family_determinism.json"));
    let b = run(&["experiment", "--json", "--seed", "3", "--jobs", "8"], &data("family_determinism.json"));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let c = run(&["experiment", "--json", "--seed", "4", "--jobs", "8"], &data("family_determinism.json"));
    assert_ne!(a.stdout, c.stdout);
}

fn small_poly() -> impl Strategy<Value = BivarPoly> {
    prop::collection::vec((0u32..6, 0u32..6, -20i64..20), 0..6).prop_map(|t| BivarPoly::from_i64_terms(&t))
}

proptest! {
    #[test]
    fn display_round_trips(f in small_poly()) {
        prop_assert_eq!(parse_poly(&f.to_string()).unwrap(), f);
    }
}
