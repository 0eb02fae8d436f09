//! End-to-end checks of the binary: determinism, row counts, config
//! precedence, and failure modes.

use std::fs;
use std::path::Path;
use std::process::Command;

fn cobweb() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cobweb"))
}

fn read(dir: &Path, name: &str) -> Vec<u8> {
    fs::read(dir.join(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

#[test]
fn run_is_deterministic_under_a_fixed_seed() {
    let tmp = tempfile::tempdir().unwrap();
    for sub in ["a", "b"] {
        let status = cobweb()
            .args(["run", "medin-1", "--seed", "7"])
            .arg("--out")
            .arg(tmp.path().join(sub))
            .status()
            .unwrap();
        assert!(status.success());
    }
    for file in [
        "results.csv",
        "summary.json",
        "tree_p0.json",
        "fig_accuracy.svg",
    ] {
        assert_eq!(
            read(&tmp.path().join("a/medin-1"), file),
            read(&tmp.path().join("b/medin-1"), file),
            "{file} must be byte-identical across runs"
        );
    }
}

#[test]
fn row_counts_match_participants_times_items_times_phases() {
    let tmp = tempfile::tempdir().unwrap();
    let status = cobweb()
        .args(["run", "medin-2", "--seed", "3", "--participants", "8"])
        .arg("--out")
        .arg(tmp.path())
        .status()
        .unwrap();
    assert!(status.success());
    let csv = String::from_utf8(read(&tmp.path().join("medin-2"), "results.csv")).unwrap();
    // 8 participants x 16 test items x 1 phase, plus the header
    assert_eq!(csv.lines().count(), 8 * 16 + 1);
    assert_eq!(
        csv.lines().next().unwrap(),
        "participant,item_id,item_type,phase,p_reference,loglik"
    );
}

#[test]
fn flags_beat_config_file_values() {
    let tmp = tempfile::tempdir().unwrap();
    let config = tmp.path().join("run.conf");
    fs::write(
        &config,
        "# sweep defaults\nalpha = 0.5\nparticipants = 4\nseed = 11\n",
    )
    .unwrap();
    let status = cobweb()
        .args(["run", "medin-1", "--participants", "6"])
        .arg("--config")
        .arg(&config)
        .arg("--out")
        .arg(tmp.path())
        .status()
        .unwrap();
    assert!(status.success());
    let summary = String::from_utf8(read(&tmp.path().join("medin-1"), "summary.json")).unwrap();
    let json: serde_json::Value = serde_json::from_str(&summary).unwrap();
    // flag wins for participants; file fills alpha and seed
    assert_eq!(json["params"]["participants"], 6);
    assert_eq!(json["params"]["alpha"], 0.5);
    assert_eq!(json["params"]["master_seed"], 11);
}

#[test]
fn sweep_writes_one_row_per_value() {
    let tmp = tempfile::tempdir().unwrap();
    let status = cobweb()
        .args([
            "sweep",
            "smith-minda",
            "--param",
            "alpha",
            "--values",
            "0.5,2.0",
            "--participants",
            "4",
        ])
        .arg("--out")
        .arg(tmp.path())
        .status()
        .unwrap();
    assert!(status.success());
    let csv = String::from_utf8(read(&tmp.path().join("smith-minda"), "sweep.csv")).unwrap();
    assert_eq!(csv.lines().count(), 3, "header plus one row per value");
    assert!(csv.lines().nth(1).unwrap().starts_with("alpha,0.5,"));
}

#[test]
fn inspect_round_trips_a_run_snapshot() {
    let tmp = tempfile::tempdir().unwrap();
    assert!(cobweb()
        .args(["run", "medin-1", "--seed", "7", "--participants", "2"])
        .arg("--out")
        .arg(tmp.path())
        .status()
        .unwrap()
        .success());
    let out = cobweb()
        .arg("inspect")
        .arg(tmp.path().join("medin-1/tree_p0.json"))
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("tree:"), "got: {text}");
    assert!(text.contains("category:"));
}

#[test]
fn corrupt_snapshot_fails_with_diagnostics_on_stderr() {
    let tmp = tempfile::tempdir().unwrap();
    let path = tmp.path().join("broken.json");
    fs::write(&path, b"{\"schema\": {\"attributes\": [").unwrap();
    let out = cobweb().arg("inspect").arg(&path).output().unwrap();
    assert!(!out.status.success());
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("error"), "stderr: {err}");
}

#[test]
fn unknown_experiment_is_rejected() {
    let out = cobweb().args(["run", "nonesuch"]).output().unwrap();
    assert!(!out.status.success());
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("unknown experiment"));
}
