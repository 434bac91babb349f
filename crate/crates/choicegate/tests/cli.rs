//! End-to-end CLI tests: every subcommand against the bundled fixtures,
//! plus the exit-code contract (2 validation, 3 mechanism, 4 I/O).

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_choicegate")
}

fn fixture(name: &str) -> String {
    format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> Output {
    Command::new(bin()).args(args).output().expect("spawn CLI")
}

fn stdout_json(args: &[&str]) -> serde_json::Value {
    let out = run(args);
    assert!(
        out.status.success(),
        "command {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn audit_json_report_echoes_seed_and_config() {
    let v = stdout_json(&[
        "audit", "--suite", &fixture("chatbot-suite.json"), "--mock", "utilitarian", "--seed", "9",
    ]);
    assert_eq!(v["config"]["seed"], 9);
    assert_eq!(v["system"], "utilitarian");
    assert_eq!(v["scores"].as_array().unwrap().len(), 5);
}

#[test]
fn audit_axioms_flag_restricts_scores() {
    let v = stdout_json(&[
        "audit", "--suite", &fixture("chatbot-suite.json"), "--mock", "ignoring",
        "--axioms", "participation,anonymity",
    ]);
    let names: Vec<&str> = v["scores"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["axiom"].as_str().unwrap())
        .collect();
    assert_eq!(names, ["participation", "anonymity"]);
}

#[test]
fn audit_text_summary_format() {
    let out = run(&[
        "audit", "--suite", &fixture("chatbot-suite.json"), "--mock", "ignoring",
        "--axioms", "participation", "--format", "text-summary",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("participation 1.0000"), "{text}");
}

#[test]
fn vote_single_borda() {
    let v = stdout_json(&[
        "vote", "single", "--profile", &fixture("ranking-profile.json"), "--rule", "borda",
    ]);
    assert_eq!(v["winners"], serde_json::json!(["top-cs-degrees"]));
}

#[test]
fn vote_committee_pav() {
    let v = stdout_json(&[
        "vote", "committee", "--profile", &fixture("approval-profile.json"),
        "--rule", "pav-exact", "--k", "2",
    ]);
    assert_eq!(v["winners"], serde_json::json!(["accuracy", "fairness"]));
}

#[test]
fn vote_median_weighted() {
    let v = stdout_json(&[
        "vote", "median", "--metric-id", "accuracy", "--reports", "3,7,10",
    ]);
    assert_eq!(v["value"], 7.0);
    let w = stdout_json(&[
        "vote", "median", "--metric-id", "accuracy", "--reports", "3,7,10", "--weights", "5,1,1",
    ]);
    assert_eq!(w["value"], 3.0);
}

#[test]
fn vote_veto_core() {
    let v = stdout_json(&["vote", "veto-core", "--profile", &fixture("ranking-profile.json")]);
    assert!(!v.as_array().unwrap().is_empty());
}

#[test]
fn portion_subcommands() {
    let mean = stdout_json(&[
        "portion", "mean", "--profile", &fixture("cardinal-profile.json"),
        "--types", "encyclopedia,forums,news",
    ]);
    let total: f64 = mean["mass"]
        .as_object()
        .unwrap()
        .values()
        .map(|v| v.as_f64().unwrap())
        .sum();
    assert!((total - 1.0).abs() < 1e-9);

    let filtered = stdout_json(&[
        "portion", "filtered", "--profile", &fixture("cardinal-profile.json"),
        "--types", "encyclopedia,forums,news",
        "--veto-profile", &fixture("veto-profile.json"),
    ]);
    assert!(filtered["mass"].get("forums").is_none(), "forums survived the veto");
}

#[test]
fn labels_aggregate_and_estimate() {
    let hard = stdout_json(&[
        "labels", "aggregate", "--csv", &fixture("annotations.csv"), "--mode", "plurality",
    ]);
    assert_eq!(hard["img-001"], "cat");

    let weighted = stdout_json(&[
        "labels", "aggregate", "--csv", &fixture("annotations.csv"),
        "--mode", "weighted", "--weights", &fixture("annotator-weights.json"),
    ]);
    assert_eq!(weighted["img-002"], "dog");

    let est = stdout_json(&["labels", "estimate", "--csv", &fixture("annotations.csv")]);
    assert_eq!(est["labels"]["img-003"], "bird");
    let noisy = est["reliabilities"]["accuracies"]["ann-4"].as_f64().unwrap();
    let good = est["reliabilities"]["accuracies"]["ann-1"].as_f64().unwrap();
    assert!(noisy < good);
}

#[test]
fn temporal_run_and_audits() {
    let dir = tempfile::tempdir().unwrap();
    let combined = stdout_json(&[
        "temporal", "run", "--roster", "uni-big-a,uni-big-b,uni-small",
        "--rounds", &fixture("temporal-rounds.json"),
    ]);
    let chosen: Vec<&str> = combined["log"]["rounds"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["chosen"].as_str().unwrap())
        .collect();
    assert_eq!(chosen, ["list-big", "list-big", "list-small", "list-big", "list-big", "list-small"]);

    let log_path = dir.path().join("log.json");
    std::fs::write(&log_path, serde_json::to_string(&combined["log"]).unwrap()).unwrap();
    let audit = stdout_json(&[
        "temporal", "audit-group", "--log", log_path.to_str().unwrap(),
        "--groups", &fixture("temporal-groups.json"),
    ]);
    for entry in audit.as_array().unwrap() {
        assert_eq!(entry["violated"], false, "{entry}");
    }

    let neglect = stdout_json(&[
        "temporal", "audit-individual", "--log", log_path.to_str().unwrap(), "--window", "3",
    ]);
    assert_eq!(neglect.as_array().unwrap().len(), 0);
}

#[test]
fn scenario_runs_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    // the fixture scenario references the suite relative to the workspace root
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..");
    let mut manifests = Vec::new();
    for run in 0..2 {
        let out_dir = dir.path().join(format!("run-{run}"));
        let status = Command::new(bin())
            .current_dir(&root)
            .args(["scenario", "--config", &fixture("scenario-full.json"), "--out-dir"])
            .arg(&out_dir)
            .status()
            .unwrap();
        assert!(status.success());
        manifests.push(std::fs::read(out_dir.join("manifest.json")).unwrap());
    }
    assert_eq!(manifests[0], manifests[1]);
}

#[test]
fn exit_code_2_on_validation_error() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"suite-id": "x", "instances": [], "extra": 1}"#).unwrap();
    let out = run(&["audit", "--suite", bad.to_str().unwrap(), "--mock", "utilitarian"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("extra"));
}

#[test]
fn exit_code_3_on_mechanism_error() {
    // every type is vetoed by everyone: the filter leaves nothing to portion
    let dir = tempfile::tempdir().unwrap();
    let veto = dir.path().join("veto.json");
    std::fs::write(
        &veto,
        serde_json::to_string(&serde_json::json!({
            "stakeholders": ["s1"],
            "weights": {"s1": 1.0},
            "ballots": {"s1": {"kind": "veto", "vetoed": ["encyclopedia", "forums", "news"]}}
        }))
        .unwrap(),
    )
    .unwrap();
    let out = run(&[
        "portion", "filtered", "--profile", &fixture("cardinal-profile.json"),
        "--types", "encyclopedia,forums,news",
        "--veto-profile", veto.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("no admissible types"));
}

#[test]
fn exit_code_4_on_missing_file() {
    let out = run(&["audit", "--suite", "/nonexistent/suite.json", "--mock", "utilitarian"]);
    assert_eq!(out.status.code(), Some(4));
}
