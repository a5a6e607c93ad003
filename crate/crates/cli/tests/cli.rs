use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

const S3: &str = r#"{"constructor":"symmetric","params":{"degree":3}}"#;
const SHARP: &str = r#"{"constructor":"semidirect_cyclic","params":{"n":15,"m":4,"e":8}}"#;

fn nilgraph(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nilgraph"))
        .args(args)
        .env_remove("NILGRAPH_ORDER_CAP")
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "exit {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn analyze_cyclic_is_nilpotent_with_empty_reduced_graph() {
    let r = stdout_json(&nilgraph(&[
        "analyze",
        "--spec",
        r#"{"constructor":"cyclic","params":{"n":6}}"#,
    ]));
    assert_eq!(r["flags"]["nilpotent"], true);
    assert_eq!(r["graph_stats"]["nilpotent_reduced"]["vertex_count"], 0);
}

#[test]
fn analyze_sharp_example_has_diameter_four() {
    let r = stdout_json(&nilgraph(&["analyze", "--spec", SHARP]));
    let reduced = &r["graph_stats"]["nilpotent_reduced"];
    assert_eq!(reduced["connected"], true);
    assert_eq!(reduced["diameter_multiset"], serde_json::json!([4]));
}

#[test]
fn spec_can_be_read_from_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("spec.json");
    fs::write(&path, SHARP).unwrap();
    let r = stdout_json(&nilgraph(&["analyze", "--spec", path.to_str().unwrap()]));
    assert_eq!(r["order"], 60);
}

#[test]
fn malformed_json_exits_with_usage_code() {
    let out = nilgraph(&["analyze", "--spec", "{not json"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("parsing group spec"));
}

#[test]
fn construction_failure_exits_with_usage_code() {
    let out = nilgraph(&[
        "analyze",
        "--order-cap",
        "10",
        "--spec",
        r#"{"constructor":"cyclic","params":{"n":12}}"#,
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("order cap"));
}

#[test]
fn s3_reduced_dot_has_five_nodes_and_one_edge() {
    let out = nilgraph(&[
        "graph", "--spec", S3, "--kind", "reduced", "--format", "dot",
    ]);
    assert!(out.status.success());
    let dot = String::from_utf8(out.stdout).unwrap();
    assert!(dot.starts_with("graph nilpotent_reduced {"));
    assert_eq!(dot.lines().filter(|l| l.contains("[label=")).count(), 5);
    assert_eq!(dot.lines().filter(|l| l.contains(" -- ")).count(), 1);
}

#[test]
fn nilpotent_group_reduced_graph_is_empty() {
    let out = nilgraph(&[
        "graph",
        "--spec",
        r#"{"constructor":"quaternion","params":{"n":2}}"#,
        "--format",
        "dot",
    ]);
    let dot = String::from_utf8(out.stdout).unwrap();
    assert!(!dot.contains("[label="));
    assert!(!dot.contains(" -- "));
}

#[test]
fn s3_commuting_edges_equal_reduced_edges() {
    let reduced = stdout_json(&nilgraph(&["graph", "--spec", S3, "--kind", "reduced"]));
    let commuting = stdout_json(&nilgraph(&["graph", "--spec", S3, "--kind", "commuting"]));
    assert_eq!(reduced["edges"], commuting["edges"]);
    assert_eq!(reduced["vertices"], commuting["vertices"]);
    assert_eq!(commuting["kind"], "commuting");
}

#[test]
fn unknown_kind_is_rejected() {
    let out = nilgraph(&["graph", "--spec", S3, "--kind", "tournament"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown graph kind"));
}

#[test]
fn dot_format_outside_graph_is_a_usage_error() {
    let out = nilgraph(&["analyze", "--spec", S3, "--format", "dot"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn graph_output_is_written_to_a_file_deterministically() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.dot");
    let b = dir.path().join("b.dot");
    for (path, jobs) in [(&a, "1"), (&b, "3")] {
        let out = nilgraph(&[
            "graph",
            "--spec",
            SHARP,
            "--format",
            "dot",
            "--jobs",
            jobs,
            "--output",
            path.to_str().unwrap(),
        ]);
        assert!(out.status.success());
        assert!(out.stdout.is_empty());
    }
    assert_eq!(fs::read(a).unwrap(), fs::read(b).unwrap());
}

#[test]
fn build_emits_the_cayley_table() {
    let g = stdout_json(&nilgraph(&["build", "--spec", S3]));
    assert_eq!(g["order"], 6);
    let table = g["table"].as_array().unwrap();
    assert_eq!(table.len(), 6);
    assert_eq!(table[0], serde_json::json!([0, 1, 2, 3, 4, 5]));
}

fn write_catalog(dir: &tempfile::TempDir, body: &str) -> String {
    let path = dir.path().join("catalog.json");
    fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn verify_small_catalog_passes() {
    let dir = tempfile::tempdir().unwrap();
    let cat = write_catalog(&dir, &format!("[{S3}, {SHARP}]"));
    let r = stdout_json(&nilgraph(&["verify", "--catalog", &cat]));
    assert_eq!(r["schema_version"], 1);
    assert_eq!(r["summary"]["entries"], 2);
    assert_eq!(r["summary"]["zero_fail"], true);
    assert_eq!(r["entries"][1]["result"]["status"], "report");
}

#[test]
fn entry_over_the_cap_is_recorded_and_others_checked() {
    let dir = tempfile::tempdir().unwrap();
    let body = format!(r#"{{"cap": 30, "entries": [{S3}, {SHARP}]}}"#);
    let cat = write_catalog(&dir, &body);
    let r = stdout_json(&nilgraph(&["verify", "--catalog", &cat]));
    assert_eq!(r["entries"][0]["result"]["status"], "report");
    assert_eq!(r["entries"][1]["result"]["status"], "error");
    assert!(r["entries"][1]["result"]["message"]
        .as_str()
        .unwrap()
        .contains("order cap"));
    assert_eq!(r["summary"]["errors"], 1);
}

#[test]
fn check_filter_limits_outcomes() {
    let dir = tempfile::tempdir().unwrap();
    let cat = write_catalog(&dir, &format!("[{S3}]"));
    let r = stdout_json(&nilgraph(&[
        "verify",
        "--catalog",
        &cat,
        "--check",
        "disconnected_iff_frobenius_quotient",
    ]));
    let outcomes = r["entries"][0]["result"]["theorem_outcomes"]
        .as_object()
        .unwrap();
    assert_eq!(outcomes.len(), 1);
    assert_eq!(
        outcomes["disconnected_iff_frobenius_quotient"]["status"],
        "pass"
    );
    assert_eq!(r["summary"]["checks"].as_object().unwrap().len(), 1);
}

#[test]
fn unknown_check_is_rejected() {
    let out = nilgraph(&["analyze", "--spec", S3, "--check", "no_such_check"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn malformed_catalog_exits_with_usage_code() {
    let dir = tempfile::tempdir().unwrap();
    let cat = write_catalog(&dir, "{\"entries\": 3}");
    assert_eq!(
        nilgraph(&["verify", "--catalog", &cat]).status.code(),
        Some(2)
    );
}

#[test]
fn witness54_reports_order_54_with_diameter_three() {
    let r = stdout_json(&nilgraph(&["witness54"]));
    assert_eq!(r["report"]["order"], 54);
    assert_eq!(r["report"]["fitting_order"], 27);
    assert_eq!(r["witness"]["diameters"], serde_json::json!([3]));
    assert!(r.get("candidates").is_none());
}

#[test]
fn witness54_lists_candidates() {
    let r = stdout_json(&nilgraph(&["witness54", "--list-candidates"]));
    let all = r["candidates"].as_array().unwrap();
    assert!(all.len() > 1);
    assert!(all
        .iter()
        .all(|c| c["diameters"].is_array() && c["connected"].is_boolean()));
}

#[test]
fn witness54_below_cap_is_a_configuration_error() {
    let out = nilgraph(&["witness54", "--order-cap", "50"]);
    assert_eq!(out.status.code(), Some(2));
    let env = Command::new(env!("CARGO_BIN_EXE_nilgraph"))
        .arg("witness54")
        .env("NILGRAPH_ORDER_CAP", "40")
        .output()
        .unwrap();
    assert_eq!(env.status.code(), Some(2));
}

#[test]
fn text_format_summarizes() {
    let out = nilgraph(&["analyze", "--spec", SHARP, "--format", "text"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("nilpotent_reduced: 59 vertices"));
    assert!(text.contains("0 fail"));
}

#[test]
fn default_catalog_verifies_with_exit_zero() {
    let out = nilgraph(&["verify", "--format", "text"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("799 entries (cap 120), 0 errors, 0 failures"));
}
