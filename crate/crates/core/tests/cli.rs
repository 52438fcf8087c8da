use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

use kcalc::cli::run;
use kcalc::fixtures::fixtures_dir;
use kcalc::groupoid::FiniteGroupoid;
use kcalc::kernel::{check_proof, Proof, System};

fn fixture(rel: &str) -> String {
    fixtures_dir().join(rel).display().to_string()
}

fn invoke(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("kcalc").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut argv = vec!["--json"];
    argv.extend_from_slice(args);
    let (code, out, _) = invoke(&argv);
    (
        code,
        serde_json::from_str(&out).unwrap_or_else(|e| panic!("{e}: {out}")),
    )
}

#[test]
fn help_and_version_exit_zero() {
    let (code, out, _) = invoke(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("countermodel") && out.contains("truncate"));
    assert_eq!(invoke(&["--version"]).0, 0);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(invoke(&[]).0, 2);
    assert_eq!(invoke(&["decide", "a"]).0, 2);
    assert_eq!(invoke(&["decide", "a", "--logic", "k"]).0, 2);
    let (code, _, err) = invoke(&["galois", "x.json", "--dir", "sideways"]);
    assert_eq!(code, 2);
    assert!(!err.is_empty());
}

#[test]
fn missing_file_is_an_input_error() {
    let (code, doc) = json(&["check", "/nonexistent/proof.json", "--system", "hc"]);
    assert_eq!(code, 2);
    assert_eq!(doc["kind"], "input");
    let (code, _, err) = invoke(&["hlevel", "/nonexistent/g.json"]);
    assert_eq!(code, 2);
    assert!(err.contains("cannot read"));
}

#[test]
fn decide_text_shows_countermodel() {
    let (code, out, _) = invoke(&["decide", "a | ~a", "--logic", "ipc"]);
    assert_eq!(code, 1);
    assert!(out.contains("invalid") && out.contains("countermodel"));
}

#[test]
fn decide_reports_missing_countermodel_bound() {
    // Peirce's law needs two worlds
    let (code, doc) = json(&[
        "decide",
        "((a -> b) -> a) -> a",
        "--logic",
        "ipc",
        "--max-worlds",
        "1",
    ]);
    assert_eq!(code, 1);
    assert_eq!(doc["witness"]["kind"], "no-countermodel-within");
    assert_eq!(doc["witness"]["max_worlds"], 1);
}

#[test]
fn s4_countermodel_refutes() {
    let (code, doc) = json(&["decide", "Box(P | Q) -> Box P | Box Q", "--logic", "s4"]);
    assert_eq!(code, 1);
    assert_eq!(doc["witness"]["world"], 0);
    assert!(doc["witness"]["model"]["worlds"].as_u64().unwrap() >= 2);
}

#[test]
fn galois_writes_a_checkable_proof() {
    let dir = tempfile::tempdir().unwrap();
    let out: PathBuf = dir.path().join("out.json");
    let input = fixture("proofs/galois-bwd-03.json");
    let (code, text, _) = invoke(&[
        "galois",
        &input,
        "--dir",
        "bwd",
        "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{text}");
    let p = Proof::from_json(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert!(check_proof(&p, System::Hc).accepted);
    assert_eq!(p.target.to_string(), "?!(P & Q) -> P");
}

#[test]
fn galois_on_a_rejected_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    let mut p =
        Proof::from_json(&std::fs::read_to_string(fixture("proofs/galois-fwd-02.json")).unwrap())
            .unwrap();
    p.steps[0].formula = kcalc::formula::parse("?!Q -> P").unwrap();
    p.target = p.steps[0].formula.clone();
    std::fs::write(&path, p.to_json()).unwrap();
    let (code, doc) = json(&["galois", path.to_str().unwrap(), "--dir", "fwd"]);
    assert_eq!(code, 1);
    assert_eq!(doc["check"]["verdict"], "rejected");
    assert!(doc["proof"].is_null());
}

#[test]
fn truncate_output_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t.json");
    let (code, _, _) = invoke(&[
        "truncate",
        &fixture("groupoids/two-bc3.json"),
        "--level",
        "0",
        "--output",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let g = FiniteGroupoid::from_json(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(g.objects(), 2);
    assert_eq!(g.h_level().0, 0);
    let (code, doc) = json(&["truncate", &fixture("groupoids/bs3.json"), "--level", "-3"]);
    assert_eq!(code, 2);
    assert_eq!(doc["kind"], "input");
}

#[test]
fn parse_unicode() {
    let (code, out, _) = invoke(&["parse", "?!(P & Q) -> P & Q", "--unicode"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("?!(P ∧ Q) → P ∧ Q"), "{out}");
}

#[test]
fn medvedev_budget_is_a_resource_error() {
    let (code, doc) = json(&[
        "medvedev",
        "(a -> b -> c) -> a & b -> c",
        "--max-base",
        "4",
        "--budget",
        "100",
    ]);
    assert_eq!(code, 2);
    assert_eq!(doc["kind"], "resource");
}

#[test]
fn environment_caps() {
    let bin = env!("CARGO_BIN_EXE_kcalc");
    let status = Command::new(bin)
        .args(["medvedev", "a -> a", "--max-base", "4"])
        .env("KCALC_MAX_BASE", "3")
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(2));
    let out = Command::new(bin)
        .args(["--json", "countermodel", "a | ~a"])
        .env("KCALC_MAX_WORLDS", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["max_worlds"], 1);
    assert_eq!(doc["found"], false);
    let out = Command::new(bin)
        .args(["countermodel", "a"])
        .env("KCALC_MAX_WORLDS", "many")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn crosscheck_is_seeded() {
    let a = json(&[
        "crosscheck",
        "--height",
        "2",
        "--samples",
        "30",
        "--seed",
        "11",
    ]);
    let b = json(&[
        "crosscheck",
        "--height",
        "2",
        "--samples",
        "30",
        "--seed",
        "11",
    ]);
    assert_eq!(a.0, 0);
    assert_eq!(a.1, b.1);
    assert_eq!(json(&["crosscheck", "--height", "4"]).0, 2);
}
