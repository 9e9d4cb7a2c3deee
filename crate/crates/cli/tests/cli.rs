//! End-to-end CLI checks: file formats round-trip bit-exactly, exit codes
//! follow the documented convention, and certificates re-verify from file
//! contents alone.

use std::path::{Path, PathBuf};
use std::process::Command;

fn bin() -> PathBuf {
    PathBuf::from(env!("CARGO_BIN_EXE_cyclecert"))
}

fn repo_file(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..").join(rel)
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(bin()).args(args).output().expect("spawn cyclecert");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

#[test]
fn detect_reports_the_rychkov_cycles() {
    let sys = repo_file("systems/rychkov-d2.json");
    let (code, stdout, _) = run(&[
        "detect",
        "--system",
        sys.to_str().unwrap(),
        "--bracket",
        "0.75:1.3",
        "--spectrum",
        "2",
    ]);
    assert_eq!(code, 0);
    assert!(stdout.contains("0.8937"), "stable cycle missing: {stdout}");
    let (code, stdout, _) = run(&[
        "detect",
        "--system",
        sys.to_str().unwrap(),
        "--bracket",
        "0.4:0.75",
        "--unstable",
        "--spectrum",
        "2",
    ]);
    assert_eq!(code, 0);
    assert!(stdout.contains("0.6320"), "unstable cycle missing: {stdout}");
    assert!(stdout.contains("Unstable"));
}

#[test]
fn missing_file_is_an_input_error() {
    let (code, _, stderr) = run(&["detect", "--system", "/nonexistent.json", "--bracket", "1:2"]);
    assert_eq!(code, 3);
    assert!(stderr.contains("error"));
}

#[test]
fn bad_bracket_is_an_input_error() {
    let sys = repo_file("systems/van-der-pol.json");
    let (code, _, _) = run(&["detect", "--system", sys.to_str().unwrap(), "--bracket", "oops"]);
    assert_eq!(code, 3);
}

#[test]
fn nonexistence_certificate_round_trips() {
    let dir = tempdir();
    let sys = repo_file("systems/rychkov-lienard.json");
    let cert = dir.join("ne.cert.json");
    let (code, stdout, _) = run(&[
        "nonexist",
        "--system",
        sys.to_str().unwrap(),
        "--n",
        "4",
        "--delta",
        "236252/1000000",
        "--cert",
        cert.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{stdout}");
    // bit-exact round trip: parse -> serialize -> identical JSON values
    let text = std::fs::read_to_string(&cert).unwrap();
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    let reserialized = serde_json::to_string(&value).unwrap();
    let reparsed: serde_json::Value = serde_json::from_str(&reserialized).unwrap();
    assert_eq!(value, reparsed);
    assert_eq!(value["kind"], "nonexistence");
    assert!(value["b_hashes"].as_array().unwrap().len() == 5);
    // verification succeeds from the file alone
    let (code, stdout, _) = run(&["verify", cert.to_str().unwrap()]);
    assert_eq!(code, 0, "{stdout}");
    assert!(stdout.contains("verifies"));
}

#[test]
fn nonexistence_refusal_is_inconclusive() {
    let dir = tempdir();
    let sys = repo_file("systems/rychkov-lienard.json");
    let (code, _, stderr) = run(&[
        "nonexist",
        "--system",
        sys.to_str().unwrap(),
        "--n",
        "4",
        "--delta",
        "1/5",
        "--out",
        dir.to_str().unwrap(),
    ]);
    assert_eq!(code, 2, "{stderr}");
    // odd n is an input error, not a refusal
    let (code, _, _) = run(&[
        "nonexist",
        "--system",
        sys.to_str().unwrap(),
        "--n",
        "5",
        "--delta",
        "236252/1000000",
        "--out",
        dir.to_str().unwrap(),
    ]);
    assert_eq!(code, 2);
}

#[test]
fn bound_bisection_reproduces_the_n4_threshold() {
    let dir = tempdir();
    let sys = repo_file("systems/rychkov-lienard.json");
    let report = dir.join("report.json");
    let (code, stdout, _) = run(&[
        "bound",
        "--system",
        sys.to_str().unwrap(),
        "--n",
        "4",
        "--bracket",
        "1/5:3/10",
        "--tol",
        "1/1000000",
        "--report",
        report.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{stdout}");
    let value: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    let b = value["upper_bound_float"].as_f64().unwrap();
    assert!((b - 0.2362516).abs() < 3e-6, "bound {b}");
}

#[test]
fn long_tier_guard_blocks_desk_runs() {
    let sys = repo_file("systems/rychkov-lienard.json");
    let (code, _, stderr) = run(&[
        "nonexist",
        "--system",
        sys.to_str().unwrap(),
        "--n",
        "300",
        "--delta",
        "2249654/10000000",
    ]);
    assert_eq!(code, 3);
    assert!(stderr.contains("--tier long"), "{stderr}");
}

#[test]
fn plotdata_with_no_artifacts_succeeds() {
    let (code, stdout, _) = run(&["plotdata"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("nothing to plot"));
}

#[test]
fn tampered_certificate_fails_verification() {
    let dir = tempdir();
    let sys = repo_file("systems/rychkov-lienard.json");
    let cert = dir.join("ne.cert.json");
    let (code, _, _) = run(&[
        "nonexist",
        "--system",
        sys.to_str().unwrap(),
        "--n",
        "4",
        "--delta",
        "236252/1000000",
        "--cert",
        cert.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let mut value: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&cert).unwrap()).unwrap();
    value["x_power"] = serde_json::json!(2);
    std::fs::write(&cert, serde_json::to_string(&value).unwrap()).unwrap();
    let (code, _, stderr) = run(&["verify", cert.to_str().unwrap()]);
    assert_eq!(code, 2, "{stderr}");
}

fn tempdir() -> PathBuf {
    let dir = std::env::temp_dir().join(format!("cyclecert-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}
