//! End-to-end tests for the `srt` binary: exit codes, emitted files,
//! manifest digests, and rerun stability.

use sha2::{Digest, Sha256};
use srt_core::graph6::{g6_decode, g6_encode};
use srt_core::GraphSpec;
use std::path::Path;
use std::process::Command;

fn srt(dir: &Path, args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_srt"))
        .arg("--out-dir")
        .arg(dir)
        .args(args)
        .env_remove("SRT_OUT_DIR")
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("no signal"),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn read(dir: &Path, name: &str) -> String {
    std::fs::read_to_string(dir.join(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn sha_hex(text: &str) -> String {
    Sha256::digest(text.as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// Every digest in the manifest must match the file it names.
fn assert_manifest_consistent(dir: &Path) {
    let manifest: serde_json::Value =
        serde_json::from_str(&read(dir, "manifest.json")).expect("manifest parses");
    let outputs = manifest["outputs"].as_array().expect("outputs array");
    assert!(!outputs.is_empty(), "manifest lists at least one output");
    for entry in outputs {
        let name = entry["path"].as_str().expect("path");
        let recorded = entry["sha256"].as_str().expect("sha256");
        assert_eq!(recorded, sha_hex(&read(dir, name)), "digest of {name}");
    }
}

// ---- build -----------------------------------------------------------

#[test]
fn build_paw30_emits_a_verified_witness() {
    let dir = tempfile::tempdir().expect("tempdir");
    let (code, stdout, _) = srt(dir.path(), &["build", "paw30"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("verified=true"), "stdout: {stdout}");
    let g = g6_decode(read(dir.path(), "paw30.g6").trim()).expect("g6 decodes");
    assert_eq!(g.order(), 30);
    let report: serde_json::Value =
        serde_json::from_str(&read(dir.path(), "paw30.report.json")).expect("report parses");
    assert_eq!(report["verified"], serde_json::json!(true));
    assert_eq!(report["order"], serde_json::json!(30));
    assert_manifest_consistent(dir.path());
}

#[test]
fn build_aliases_cover_the_grid_and_doubling_families() {
    let dir = tempfile::tempdir().expect("tempdir");
    let (code, _, _) = srt(dir.path(), &["build", "theorem2", "--n", "4"]);
    assert_eq!(code, 0);
    let g = g6_decode(read(dir.path(), "theorem2.g6").trim()).expect("g6 decodes");
    assert_eq!(g.order(), 9);

    let (code, _, _) = srt(dir.path(), &["build", "hk", "--k", "3"]);
    assert_eq!(code, 0);
    let g = g6_decode(read(dir.path(), "hk.g6").trim()).expect("g6 decodes");
    assert_eq!(g.order(), 12);
}

#[test]
fn build_rejects_unknown_names_and_missing_parameters() {
    let dir = tempfile::tempdir().expect("tempdir");
    let (code, _, stderr) = srt(dir.path(), &["build", "no-such-builder"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("unknown builder"), "stderr: {stderr}");
    let (code, _, stderr) = srt(dir.path(), &["build", "grid"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("--n"), "stderr: {stderr}");
}

// ---- check -----------------------------------------------------------

#[test]
fn check_separates_clean_graphs_from_violations() {
    let dir = tempfile::tempdir().expect("tempdir");
    let c5 = g6_encode(&GraphSpec::parse("C5").unwrap().build().unwrap());
    std::fs::write(dir.path().join("c5.g6"), c5 + "\n").expect("write");
    let (code, stdout, _) = srt(
        dir.path(),
        &["check", dir.path().join("c5.g6").to_str().unwrap(), "--f1", "K3"],
    );
    assert_eq!(code, 0);
    assert!(stdout.contains("SR-graph"), "stdout: {stdout}");

    let k4 = g6_encode(&GraphSpec::parse("K4").unwrap().build().unwrap());
    std::fs::write(dir.path().join("k4.g6"), k4 + "\n").expect("write");
    let (code, stdout, _) = srt(
        dir.path(),
        &["check", dir.path().join("k4.g6").to_str().unwrap(), "--f1", "K3"],
    );
    assert_eq!(code, 1);
    assert!(stdout.contains("vertices"), "stdout names the witness: {stdout}");
    let report: serde_json::Value =
        serde_json::from_str(&read(dir.path(), "check.report.json")).expect("report parses");
    assert_eq!(report["srGraph"], serde_json::json!(false));
    assert_eq!(report["witness"]["hostDegrees"], serde_json::json!([3, 3, 3]));
}

#[test]
fn check_reports_unreadable_input_as_exit_two() {
    let dir = tempfile::tempdir().expect("tempdir");
    std::fs::write(dir.path().join("bad.g6"), "garbage!!!\n").expect("write");
    let (code, _, stderr) = srt(
        dir.path(),
        &["check", dir.path().join("bad.g6").to_str().unwrap(), "--f1", "K3"],
    );
    assert_eq!(code, 2);
    assert!(!stderr.is_empty());
    let (code, _, _) = srt(dir.path(), &["check", "/no/such/file", "--f1", "K3"]);
    assert_eq!(code, 2);
}

// ---- certify ---------------------------------------------------------

#[test]
fn certify_short_path_is_complete_and_rerun_stable() {
    let a = tempfile::tempdir().expect("tempdir");
    let b = tempfile::tempdir().expect("tempdir");
    let (code, stdout, _) = srt(a.path(), &["certify", "--f1", "P4"]);
    assert_eq!(code, 0, "complete certificate exits zero");
    assert!(stdout.contains("value 13"), "stdout: {stdout}");
    let cert: serde_json::Value =
        serde_json::from_str(&read(a.path(), "certificate.json")).expect("certificate parses");
    assert_eq!(cert["value"], serde_json::json!(13));
    assert_eq!(cert["complete"], serde_json::json!(true));
    assert_eq!(cert["claim"], serde_json::json!("Rs exact"));

    let (code, _, _) = srt(b.path(), &["certify", "--f1", "P4"]);
    assert_eq!(code, 0);
    assert_eq!(
        sha_hex(&read(a.path(), "certificate.json")),
        sha_hex(&read(b.path(), "certificate.json")),
        "identical inputs and seed give identical bytes"
    );
    assert_manifest_consistent(a.path());
}

// ---- turan -----------------------------------------------------------

#[test]
fn turan_exact_matches_the_known_order_six_value() {
    let dir = tempfile::tempdir().expect("tempdir");
    let (code, stdout, _) = srt(
        dir.path(),
        &["turan", "--n", "6", "--pattern", "K3", "--mode", "exact"],
    );
    assert_eq!(code, 0);
    assert!(stdout.contains(": 13"), "stdout: {stdout}");
    let csv = read(dir.path(), "turan_exact_k3_6.csv");
    assert!(csv.lines().nth(1).expect("data row").contains(",13,"), "csv: {csv}");
    let witness = read(dir.path(), "turan_exact_k3_6.g6");
    let g = g6_decode(witness.trim()).expect("witness decodes");
    assert_eq!((g.order(), g.edge_count()), (6, 13));
}

#[test]
fn turan_exact_refuses_large_orders_and_points_at_lower_mode() {
    let dir = tempfile::tempdir().expect("tempdir");
    let (code, _, stderr) = srt(
        dir.path(),
        &["turan", "--n", "12", "--pattern", "K3", "--mode", "exact"],
    );
    assert_eq!(code, 2);
    assert!(stderr.contains("--mode lower"), "stderr: {stderr}");
    let (code, stdout, _) = srt(
        dir.path(),
        &["turan", "--n", "12", "--pattern", "K3", "--mode", "lower"],
    );
    assert_eq!(code, 0);
    assert!(stdout.contains("lower bound"), "stdout: {stdout}");
}

#[test]
fn turan_gap_reports_the_order_eight_deficit() {
    let dir = tempfile::tempdir().expect("tempdir");
    let (code, stdout, _) = srt(
        dir.path(),
        &["turan", "--n", "8", "--pattern", "K3", "--mode", "gap"],
    );
    assert_eq!(code, 0);
    assert!(stdout.contains("gap 2"), "stdout: {stdout}");
    let csv = read(dir.path(), "turan_gap_k3_8_8.csv");
    assert!(csv.contains("8,24,22,2,within-bound"), "csv: {csv}");
}

// ---- enum ------------------------------------------------------------

#[test]
fn enum_catalogue_at_order_five_has_exactly_two_graphs() {
    let dir = tempfile::tempdir().expect("tempdir");
    let (code, stdout, _) = srt(
        dir.path(),
        &["enum", "--n", "5", "--f1", "K3", "--f2", "K13"],
    );
    assert_eq!(code, 0);
    assert!(stdout.contains("2 graphs"), "stdout: {stdout}");
    let lines: Vec<_> = read(dir.path(), "catalog_k3_k13_n5.g6")
        .lines()
        .map(str::to_string)
        .collect();
    assert_eq!(lines.len(), 2);
    for line in &lines {
        let g = g6_decode(line).expect("catalogue entries decode");
        assert_eq!(g.order(), 5);
    }
    let sidecar: serde_json::Value =
        serde_json::from_str(&read(dir.path(), "catalog_k3_k13_n5.json")).expect("sidecar parses");
    assert_eq!(sidecar["count"], serde_json::json!(2));
    assert_manifest_consistent(dir.path());
}

#[test]
fn stability_probes_match_the_known_verdicts() {
    let dir = tempfile::tempdir().expect("tempdir");
    let (code, stdout, _) = srt(dir.path(), &["enum", "--stability", "C5", "--f1", "K3"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("stable"), "stdout: {stdout}");
    let (code, stdout, _) = srt(
        dir.path(),
        &["enum", "--stability", "K23", "--f1", "K3", "--f2", "K13"],
    );
    assert_eq!(code, 0);
    assert!(stdout.contains("unstable"), "stdout: {stdout}");
    assert!(stdout.contains("vertex"), "names the loose vertex: {stdout}");
    let report: serde_json::Value =
        serde_json::from_str(&read(dir.path(), "stability_k23.json")).expect("report parses");
    assert_eq!(report["stable"], serde_json::json!(false));
    assert!(!report["looseVertices"].as_array().unwrap().is_empty());
}

#[test]
fn enum_requires_a_target_and_bounds_the_order() {
    let dir = tempfile::tempdir().expect("tempdir");
    let (code, _, stderr) = srt(dir.path(), &["enum", "--f1", "K3"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("--n"), "stderr: {stderr}");
    let (code, _, stderr) = srt(dir.path(), &["enum", "--n", "11", "--f1", "K3"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("n <= 10"), "stderr: {stderr}");
}

// ---- environment -----------------------------------------------------

#[test]
fn out_dir_falls_back_to_the_environment_variable() {
    let dir = tempfile::tempdir().expect("tempdir");
    let out = Command::new(env!("CARGO_BIN_EXE_srt"))
        .args(["build", "2k2"])
        .env("SRT_OUT_DIR", dir.path())
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(0));
    assert!(dir.path().join("2k2.g6").exists());
    assert!(dir.path().join("manifest.json").exists());
}
