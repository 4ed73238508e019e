use std::process::{Command, Output};

use chowkit_core::pipeline::EMBEDDED;
use sha2::{Digest, Sha256};

fn chowkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chowkit")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn embedded(name: &str) -> &'static str {
    EMBEDDED.iter().find(|(n, _)| *n == name).unwrap().1
}

fn with_checksum(body: &str) -> String {
    let mut h = Sha256::new();
    h.update(body.trim_end_matches('\n').as_bytes());
    h.update(b"\n");
    format!("# sha256 {}\n{body}", hex::encode(h.finalize()))
}

#[test]
fn verify_n_reports_its_series() {
    let o = chowkit(&["verify", "--stage", "N"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("series of A*(N) = (1,1,3,3,3,1,1)"));
}

#[test]
fn stage_subcommand_matches_verify() {
    let a = chowkit(&["stage", "Q", "--format", "json"]);
    let b = chowkit(&["verify", "--stage", "Q", "--format", "json"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn json_report_schema() {
    let o = chowkit(&["verify", "--stage", "curve3", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let report = &doc[0];
    assert_eq!(report["stage"], "curve3");
    assert!(report["elapsed_ms"].is_null());
    let check = &report["checks"][0];
    for field in ["name", "expected", "computed", "pass"] {
        assert!(check.get(field).is_some(), "missing {field}");
    }
}

#[test]
fn output_is_deterministic() {
    let a = chowkit(&["verify", "--stage", "boundary", "--format", "csv"]);
    let b = chowkit(&["verify", "--stage", "boundary", "--format", "csv"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn discovery_with_a_tiny_budget_is_a_resource_error() {
    let o = chowkit(&["verify", "--stage", "M", "--mode", "discovery", "--budget", "10"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn single_cell_grid() {
    let o = chowkit(&["donaldson", "--kmax", "1", "--mmax", "1", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "m\\k,1\n1,0\n");
}

#[test]
fn grid_json_uses_decimal_strings_and_nulls() {
    let o = chowkit(&["donaldson", "--kmax", "3", "--mmax", "2", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["rows"][1]["values"], serde_json::json!(["0", "0", "-2163"]));
    assert_eq!(doc["rows"][0]["values"][1], serde_json::Value::Null);
}

#[test]
fn euler_of_a_large_cell() {
    let o = chowkit(&["euler", "--k", "1", "--m", "20"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "chi(M, 17*alpha - beta) = 9322330905\n");
}

#[test]
fn export_m() {
    let o = chowkit(&["export", "M"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["topDegree"], 17);
    assert_eq!(doc["relations"].as_array().unwrap().len(), 11);
    assert_eq!(doc["pointClass"], "1/9*beta*z^8");
    let total: u64 = doc["series"].as_array().unwrap().iter().map(|v| v.as_u64().unwrap()).sum();
    assert_eq!(total, 192);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(chowkit(&["export", "bogus-name"]).status.code(), Some(2));
    assert_eq!(chowkit(&["verify", "--stage", "nonsense"]).status.code(), Some(2));
    assert_eq!(chowkit(&["--no-such-flag", "verify"]).status.code(), Some(2));
    assert_eq!(chowkit(&["donaldson", "--kmax", "0"]).status.code(), Some(2));
    assert_eq!(chowkit(&["verify", "--fixtures", "/nonexistent/dir"]).status.code(), Some(2));
}

#[test]
fn corrupted_fixture_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let text = embedded("presentations.txt").replacen("1,1,3,3,3,1,1", "1,1,3,3,3,1,2", 1);
    std::fs::write(dir.path().join("presentations.txt"), text).unwrap();
    let o = chowkit(&["verify", "--stage", "N", "--fixtures", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("checksum mismatch"));
}

#[test]
fn resealed_wrong_value_is_a_mismatch() {
    let dir = tempfile::tempdir().unwrap();
    let body = embedded("table1.txt").split_once('\n').unwrap().1.replacen("-2163*", "-2164*", 1);
    std::fs::write(dir.path().join("table1.txt"), with_checksum(&body)).unwrap();
    let path = dir.path().to_str().unwrap();
    let o = chowkit(&["donaldson", "--kmax", "3", "--mmax", "3", "--check", "--fixtures", path]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("mismatch: k=3, m=2: table -2164, computed -2163"));
}

#[test]
fn resealed_wrong_series_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let body = embedded("presentations.txt").split_once('\n').unwrap().1.replacen("1,1,3,3,3,1,1", "1,1,3,3,3,1,2", 1);
    std::fs::write(dir.path().join("presentations.txt"), with_checksum(&body)).unwrap();
    let o = chowkit(&["verify", "--stage", "N", "--fixtures", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL  series of A*(N)"));
}

#[test]
fn intact_override_directory_passes() {
    let dir = tempfile::tempdir().unwrap();
    let (name, text) = EMBEDDED[0];
    std::fs::write(dir.path().join(name), text).unwrap();
    let o = chowkit(&["verify", "--stage", "N", "--fixtures", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
}
