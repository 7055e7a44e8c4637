use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/fixtures")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_incidence"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

fn json(o: &Output) -> Value {
    serde_json::from_str(&stdout(o)).expect("json output")
}

#[test]
fn matroid_reports_basis() {
    let o = run(&["--format", "json", "matroid", fixture("g1.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["command"], "matroid");
    assert_eq!(v["basis"], true);
    assert_eq!(v["independent"], true);
}

#[test]
fn matroid_reports_violating_subset() {
    let o = run(&["matroid", fixture("fano.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("independent: false"));
    assert!(text.contains("violating subset"));
}

#[test]
fn purecond_with_brackets() {
    let path = fixture("nf7.json");
    let o = run(&["--format", "json", "purecond", path.to_str().unwrap(), "--bracket"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["degree"], 12);
    assert_eq!(v["bracket_experimental"], false);
    let g = incidence::geometry::parse_document(&std::fs::read_to_string(&path).unwrap())
        .unwrap()
        .geometry;
    let b = incidence::bracket::parse_bracket_polynomial(&g, v["bracket"].as_str().unwrap()).unwrap();
    let pc = incidence::purecond::pure_condition(&g).unwrap();
    assert_eq!(b.expand(), pc.polynomial);
}

#[test]
fn eval_vanishes_at_medial_normals() {
    let o = run(&[
        "eval",
        fixture("nf7.json").to_str().unwrap(),
        "--normals",
        fixture("medial_normals.json").to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(10));
    assert_eq!(stdout(&o).trim(), "0");
}

#[test]
fn realize_medial_is_proper() {
    let o = run(&[
        "--format",
        "json",
        "realize",
        fixture("nf7.json").to_str().unwrap(),
        "--normals",
        fixture("medial_normals.json").to_str().unwrap(),
        "--pin",
        "p6",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["kernel_dimension"], 1);
    assert_eq!(v["redrawings"][0]["classification"], "proper");
    assert_eq!(v["redrawings"][0]["coordinates"]["p6"], serde_json::json!(["0", "0"]));
}

#[test]
fn invariance_passes() {
    let o = run(&[
        "--format",
        "json",
        "invariance",
        fixture("dg4.json").to_str().unwrap(),
        "--trials",
        "10",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["passed"], true);
}

#[test]
fn unknown_command_is_usage_error() {
    let o = run(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn malformed_input_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{\"d\": 2, \"points\": [\"p0\"").unwrap();
    let o = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("error"));
    let o = run(&["validate", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn purecond_rejects_non_basis() {
    let o = run(&["purecond", fixture("fano.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let path = fixture("pappus.json");
    let args = [
        "--format",
        "json",
        "matroid",
        path.to_str().unwrap(),
        "--method",
        "randomized",
        "--seed",
        "7",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn validate_document_round_trips() {
    let path = fixture("nf7.json");
    let o = run(&["--format", "json", "validate", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let reparsed = incidence::geometry::parse_document(&v["document"].to_string()).unwrap();
    let original = incidence::geometry::parse_document(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(reparsed.geometry.fingerprint(), original.geometry.fingerprint());
    assert_eq!(v["fingerprint"], original.geometry.fingerprint());
}
