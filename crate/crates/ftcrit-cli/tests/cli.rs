//! End-to-end tests of the `ftcrit` binary: exit codes, output formats, and
//! the documented error contract.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ftcrit"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn case_study_dir() -> (tempfile::TempDir, PathBuf) {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["casestudy", dir.path().to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
    let file = dir.path().join("casestudy.ftdl");
    assert!(file.exists());
    (dir, file)
}

fn write_model(dir: &Path, name: &str, content: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, content).unwrap();
    path
}

#[test]
fn casestudy_writes_full_suite() {
    let (dir, _) = case_study_dir();
    for name in [
        "casestudy.ftdl",
        "mcs.csv",
        "coherence.txt",
        "unreliability_t5.csv",
        "curve.csv",
        "importance_t5.csv",
        "rank_birnbaum_t5.csv",
        "compare_x9_x1_t5.txt",
        "simulate_t5.csv",
    ] {
        assert!(dir.path().join(name).exists(), "{name} missing");
    }
}

#[test]
fn prob_at_zero_prints_zero() {
    let (_dir, file) = case_study_dir();
    let out = run(&["prob", file.to_str().unwrap(), "--t", "0"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "0\n");
    assert!(stderr(&out).is_empty());
}

#[test]
fn curve_reaches_near_certainty() {
    let (_dir, file) = case_study_dir();
    let out = run(&[
        "curve",
        file.to_str().unwrap(),
        "--t-max",
        "2000",
        "--points",
        "200",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t,unreliability"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 200);
    let last: Vec<&str> = rows.last().unwrap().split(',').collect();
    assert_eq!(last[0], "2000");
    assert!(last[1].parse::<f64>().unwrap() >= 0.999999);
}

#[test]
fn compare_orders_alarm_below_vehicle() {
    let (_dir, file) = case_study_dir();
    let out = run(&[
        "compare",
        file.to_str().unwrap(),
        "--t",
        "5",
        "--i",
        "x9",
        "--j",
        "x1",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("permutation_equivalent: false"));
    assert!(text.contains("verdict: TheoremInapplicable"));
    let value = |key: &str| -> f64 {
        text.lines()
            .find_map(|l| l.strip_prefix(key))
            .unwrap()
            .trim()
            .parse()
            .unwrap()
    };
    assert!(value("birnbaum_i:") <= value("birnbaum_j:"));
}

#[test]
fn mcs_lists_canonical_cuts() {
    let (_dir, file) = case_study_dir();
    let out = run(&["mcs", file.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 24);
    assert_eq!(lines[0], "x1");
    assert_eq!(lines[8], "x9,x11,x13,x15");
}

#[test]
fn rank_puts_vehicle_first() {
    let (_dir, file) = case_study_dir();
    let out = run(&[
        "rank",
        file.to_str().unwrap(),
        "--t",
        "5",
        "--measure",
        "birnbaum",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("event,birnbaum,fussell_vesely,rrw,raw,rank")
    );
    let first = lines.next().unwrap();
    assert!(first.starts_with("x1,"));
    assert!(first.ends_with(",1"));
}

#[test]
fn importance_paper_literal_flips_fv_sign() {
    let (_dir, file) = case_study_dir();
    let literal = run(&[
        "importance",
        file.to_str().unwrap(),
        "--t",
        "5",
        "--paper-literal",
    ]);
    assert!(literal.status.success());
    let text = stdout(&literal);
    let x1 = text.lines().find(|l| l.starts_with("x1,")).unwrap();
    let fv: f64 = x1.split(',').nth(2).unwrap().parse().unwrap();
    assert!(fv <= 0.0, "literal FV must be nonpositive, got {fv}");
}

#[test]
fn simulate_is_reproducible() {
    let (_dir, file) = case_study_dir();
    let args = [
        "simulate",
        file.to_str().unwrap(),
        "--t",
        "5",
        "--samples",
        "20000",
        "--seed",
        "7",
    ];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(stdout(&a), stdout(&b));
    assert_eq!(stdout(&a).lines().next().unwrap(), "mean,std_error,samples");
}

#[test]
fn validate_is_quiet_on_success() {
    let (_dir, file) = case_study_dir();
    let out = run(&["validate", file.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).is_empty());
    assert!(stderr(&out).is_empty());
}

#[test]
fn analysis_errors_are_machine_parsable_and_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write_model(dir.path(), "bad.ftdl", "event x1 rate -1 \"\"\ntop OR(x1)");
    let out = run(&["validate", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).is_empty());
    let err = stderr(&out);
    assert!(
        err.starts_with("error: ParseError: "),
        "unexpected stderr: {err}"
    );
    assert_eq!(err.lines().count(), 1);

    let missing = dir.path().join("nope.ftdl");
    let out = run(&["validate", missing.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).starts_with("error: Io: "));
}

#[test]
fn usage_errors_exit_2() {
    let out = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["prob"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn coherence_exit_code_tracks_verdict() {
    let (_dir, file) = case_study_dir();
    let out = run(&["coherence", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("is_coherent: true"));

    let dir = tempfile::tempdir().unwrap();
    let xor = write_model(
        dir.path(),
        "xor.ftdl",
        "event a rate 1e-3 \"\"\nevent b rate 1e-3 \"\"\ntop XOR(a, b)",
    );
    let out = run(&["coherence", xor.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("monotone: false"));
    assert!(text.contains("monotone_witness: failed={a}, flip=b"));
    assert!(stderr(&out).is_empty());
}

#[test]
fn env_var_overrides_enumeration_cap() {
    let (_dir, file) = case_study_dir();
    let out = bin()
        .args(["coherence", file.to_str().unwrap()])
        .env("FTCRIT_MAX_EVENTS", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).starts_with("error: TooManyEvents: "));
}

#[test]
fn json_output_mirrors_values() {
    let (_dir, file) = case_study_dir();
    let text = run(&["prob", file.to_str().unwrap(), "--t", "5"]);
    let json = run(&["prob", file.to_str().unwrap(), "--t", "5", "--json"]);
    assert!(json.status.success());
    let parsed: serde_json::Value = serde_json::from_str(stdout(&json).trim()).unwrap();
    let from_json = parsed["unreliability"].as_f64().unwrap();
    let from_text: f64 = stdout(&text).trim().parse().unwrap();
    assert_eq!(from_json, from_text);

    let rank_json = run(&[
        "rank",
        file.to_str().unwrap(),
        "--t",
        "5",
        "--measure",
        "rrw",
        "--json",
    ]);
    assert!(rank_json.status.success());
    let parsed: serde_json::Value = serde_json::from_str(stdout(&rank_json).trim()).unwrap();
    assert_eq!(parsed["rows"].as_array().unwrap().len(), 16);
}

#[test]
fn simulate_component_criticality() {
    let (_dir, file) = case_study_dir();
    let out = run(&[
        "simulate",
        file.to_str().unwrap(),
        "--t",
        "5",
        "--samples",
        "50000",
        "--seed",
        "3",
        "--component",
        "x1",
    ]);
    assert!(out.status.success());
    let row = stdout(&out).lines().nth(1).unwrap().to_string();
    let mean: f64 = row.split(',').next().unwrap().parse().unwrap();
    // almost every system failure at t=5 is caused by the vehicle
    assert!(mean > 0.9, "mean={mean}");
}
