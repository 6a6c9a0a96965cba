use std::fs;
use std::path::{Path, PathBuf};

use mixmean::cli::run;
use mixmean::search::SCAN_HEADER;
use tempfile::TempDir;

fn write(dir: &Path, name: &str, body: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, body).unwrap();
    path
}

fn invoke(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("mixmean").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn gen_weights_prints_critical_weight() {
    let dir = TempDir::new().unwrap();
    let head = write(dir.path(), "head.json", r#"{"w": [1, 1]}"#);
    let (code, out, _) = invoke(&["gen-weights", path_str(&head)]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "4");

    let head = write(dir.path(), "head2.json", r#"{"w": [1, 2]}"#);
    let (_, out, _) = invoke(&["gen-weights", path_str(&head)]);
    assert_eq!(out.trim(), "9");
}

#[test]
fn check_reports_every_condition() {
    let dir = TempDir::new().unwrap();
    let w = write(dir.path(), "w.json", r#"{"w": [1, 1, 4.05]}"#);
    let (code, out, _) = invoke(&["check", path_str(&w)]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let names: Vec<&str> = v["reports"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["name"].as_str().unwrap())
        .collect();
    assert_eq!(names, ["nanjundiah", "holland", "extended"]);
    assert_eq!(v["reports"][2]["holds"], true);
    assert_eq!(v["established"], true);

    let w = write(dir.path(), "bad.json", r#"{"w": [1, 1, 6]}"#);
    let (code, out, _) = invoke(&["check", path_str(&w)]);
    assert_eq!(code, 2);
    assert!(out.contains("\"established\": false"));
}

#[test]
fn verify_reports_increments() {
    let dir = TempDir::new().unwrap();
    let w = write(dir.path(), "w.json", r#"{"w": [1, 1, 1]}"#);
    let x = write(dir.path(), "x.json", r#"{"x": [1, 2, 3]}"#);
    let (code, out, _) = invoke(&["verify", path_str(&w), path_str(&x), "--s", "0"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let incs = v["increments"].as_array().unwrap();
    assert_eq!(incs.len(), 2);
    // Closed forms for w = 1 and x = (1, 2, 3): A = (1, 3/2, 2).
    let level2 = 2.0 * (1.5f64.sqrt() - 2f64.sqrt().mul_add(0.5, 0.5));
    let g3 = 3f64.cbrt();
    let level3 = 3.0 * (g3 - (1.0 + 2f64.sqrt() + 6f64.cbrt()) / 3.0) - level2;
    assert!((incs[0]["rado"].as_f64().unwrap() - level2).abs() < 1e-14);
    assert!((incs[1]["rado"].as_f64().unwrap() - level3).abs() < 1e-14);
    assert!((incs[0]["rado"].as_f64().unwrap() - 0.03527).abs() < 1e-4);
    assert!((incs[1]["rado"].as_f64().unwrap() - 0.06016).abs() < 1e-3);
    assert_eq!(v["holds"], true);
}

#[test]
fn means_subcommand_outputs_sequences() {
    let dir = TempDir::new().unwrap();
    let w = write(dir.path(), "w.json", r#"{"w": [1, 1]}"#);
    let x = write(dir.path(), "x.json", r#"{"x": [1, 4]}"#);
    let (code, out, _) = invoke(&["means", path_str(&w), path_str(&x), "--r", "1", "--s", "0"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["partial_r"], serde_json::json!([1.0, 2.5]));
    assert_eq!(v["partial_s"], serde_json::json!([1.0, 2.0]));
}

#[test]
fn usage_and_input_errors_exit_one() {
    let dir = TempDir::new().unwrap();
    let (code, _, err) = invoke(&["certify"]);
    assert_eq!(code, 1);
    assert!(!err.is_empty());

    let (code, _, err) = invoke(&["bogus"]);
    assert_eq!(code, 1);
    assert_eq!(err.lines().count(), 1);

    let bad = write(dir.path(), "neg.json", r#"{"w": [1, -1]}"#);
    let (code, _, err) = invoke(&["check", path_str(&bad)]);
    assert_eq!(code, 1);
    assert!(err.starts_with("error:"));

    let (code, _, _) = invoke(&["check", "/definitely/missing.json"]);
    assert_eq!(code, 1);

    let w = write(dir.path(), "w.json", r#"{"w": [1, 1]}"#);
    let (code, _, _) = invoke(&["scan", path_str(&w), "--range", "6:3", "--steps", "4"]);
    assert_eq!(code, 1);

    let (code, out, _) = invoke(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("Usage"));
}

#[test]
fn search_is_reproducible() {
    let dir = TempDir::new().unwrap();
    let w = write(dir.path(), "w.json", r#"{"w": [1, 2, 1.5, 0.7]}"#);
    let args = ["search", path_str(&w), "--trials", "64", "--seed", "11"];
    let (code_a, out_a, _) = invoke(&args);
    let (code_b, out_b, _) = invoke(&args);
    assert_eq!(code_a, 0);
    assert_eq!(code_a, code_b);
    assert_eq!(out_a, out_b);

    let refuted = write(dir.path(), "r.json", r#"{"w": [1, 1, 6]}"#);
    let (code, _, _) = invoke(&["search", path_str(&refuted), "--trials", "200"]);
    assert_eq!(code, 2);
}

#[test]
fn certify_exit_codes_follow_route() {
    let dir = TempDir::new().unwrap();
    let ok = write(dir.path(), "ok.json", r#"{"w": [1, 1, 4.05]}"#);
    let (code, out, _) = invoke(&["certify", path_str(&ok), "--resolution", "201"]);
    assert_eq!(code, 0);
    assert!(out.contains("\"route\": \"extended\""));

    let refuted = write(dir.path(), "bad.json", r#"{"w": [1, 1, 6]}"#);
    let (code, out, _) = invoke(&["certify", path_str(&refuted), "--resolution", "201"]);
    assert_eq!(code, 2);
    assert!(out.contains("refuted-numeric"));
}

#[test]
fn scan_writes_csv() {
    let dir = TempDir::new().unwrap();
    let head = write(dir.path(), "head.json", r#"{"w": [1, 1]}"#);
    let (code, out, _) = invoke(&[
        "scan",
        path_str(&head),
        "--range",
        "3:6",
        "--steps",
        "4",
        "--resolution",
        "101",
    ]);
    assert_eq!(code, 0);
    let mut lines = out.lines();
    assert_eq!(lines.next().unwrap(), SCAN_HEADER);
    assert_eq!(
        lines.next().unwrap().split(',').count(),
        SCAN_HEADER.split(',').count()
    );
    // Four grid rows plus the critical weight 4.
    assert_eq!(out.lines().count(), 1 + 5);
    assert!(out.lines().any(|l| l.starts_with("4,0,")));
    // Holland rows have no interior bound.
    let first: Vec<&str> = out.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(first[7], "");
}

#[test]
fn binary_exit_status() {
    let dir = TempDir::new().unwrap();
    let head = write(dir.path(), "head.json", r#"{"w": [1, 1]}"#);
    let output = std::process::Command::new(env!("CARGO_BIN_EXE_mixmean"))
        .args(["gen-weights", path_str(&head)])
        .output()
        .unwrap();
    assert!(output.status.success());
    assert_eq!(String::from_utf8_lossy(&output.stdout).trim(), "4");

    let status = std::process::Command::new(env!("CARGO_BIN_EXE_mixmean"))
        .arg("nonsense")
        .output()
        .unwrap()
        .status;
    assert_eq!(status.code(), Some(1));
}
