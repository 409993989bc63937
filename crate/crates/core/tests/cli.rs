use std::fs;
use std::process::{Command, Output};

use octgroup::catalog::{Catalog, ReferenceData, GOLDEN_FILES};
use serde_json::Value;

fn octgroup(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_octgroup")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = octgroup(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn json_any(args: &[&str]) -> Value {
    serde_json::from_slice(&octgroup(args).stdout).unwrap()
}

#[test]
fn chartab_of_frobenius_group() {
    let doc = json(&["--format", "json", "chartab", "7:3"]);
    assert_eq!(doc["classes"].as_array().unwrap().len(), 5);
    let degrees: Vec<u64> = doc["irreps"].as_array().unwrap().iter().map(|r| r["degree"].as_u64().unwrap()).collect();
    assert_eq!(degrees, [1, 1, 1, 3, 3]);
    assert_eq!(doc["aligned"], true);
    let values: Vec<&str> =
        doc["irreps"][3]["values"].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
    assert!(values.contains(&"z7 + z7^2 + z7^4"));
}

#[test]
fn chartab_sizes_sum_to_order() {
    let doc = json(&["--format", "json", "chartab", "2^3.PSL2(7)"]);
    let classes = doc["classes"].as_array().unwrap();
    assert_eq!(classes.len(), 11);
    assert_eq!(classes.iter().map(|c| c["size"].as_u64().unwrap()).sum::<u64>(), 1344);
    assert_eq!(classes[0]["representative"], "()");
}

#[test]
fn chartab_json_is_stable() {
    let a = octgroup(&["--format", "json", "chartab", "2^3:7:3"]);
    let b = octgroup(&["--format", "json", "chartab", "2^3:7:3"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn text_chartab_has_grid_rows() {
    let out = stdout(&octgroup(&["chartab", "7:3"]));
    assert!(out.lines().next().unwrap().starts_with("7:3"));
    assert!(out.lines().any(|l| l.starts_with("3_1")));
}

#[test]
fn unknown_group_is_a_usage_error() {
    let out = octgroup(&["chartab", "nope"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("nope"));
    assert_eq!(octgroup(&["chartab"]).status.code(), Some(2));
    assert_eq!(octgroup(&["tensor", "7:3", "1", "9_9"]).status.code(), Some(2));
}

#[test]
fn tensor_products() {
    assert_eq!(stdout(&octgroup(&["tensor", "2^3:7:3", "3_1", "3_2"])), "3_1 x 3_2 = 1 + 1_1 + 1_2 + 3_1 + 3_2\n");
    assert_eq!(stdout(&octgroup(&["tensor", "7:3", "1", "3_1"])), "1 x 3_1 = 3_1\n");
    // the listed 8 x 8 line has dimension 57; the product has dimension 64
    assert_eq!(
        stdout(&octgroup(&["tensor", "2^3.PSL2(7)", "8", "8"])),
        "8 x 8 = 1 + 3_1 + 3_2 + 2(6) + 3(7_2) + 3(8)\n"
    );
}

#[test]
fn branchings() {
    let out = stdout(&octgroup(&["branch", "2^3.PSL2(7)", "2^3:7:3"]));
    assert!(out.contains("21_1 → 7_1 + 7_2 + 7_3\n"), "{out}");
    assert!(stdout(&octgroup(&["branch", "PSL2(7)", "7:3"])).contains("6 → 3_1 + 3_2\n"));
    assert!(stdout(&octgroup(&["branch", "2^3:PSL2(7)", "PSL2(7)"])).contains("7_3 → 1 + 6\n"));
}

#[test]
fn branch_needs_a_subgroup() {
    let out = octgroup(&["branch", "2^3.PSL2(7)", "PSL2(7)"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not a subgroup"));
}

#[test]
fn octmul_multiplies_left_to_right() {
    assert_eq!(stdout(&octgroup(&["octmul", "e1", "e2"])), "(e1)(e2) = e3\n");
    let doc = json(&["--format", "json", "octmul", "e4", "e5", "e5"]);
    assert_eq!(doc["product"], "-e4");
    assert_eq!(octgroup(&["octmul", "e9"]).status.code(), Some(2));
}

#[test]
fn verify_filter_runs_only_orders() {
    let doc = json_any(&["--format", "json", "verify", "--filter", "orders"]);
    let claims = doc.as_array().unwrap();
    assert!(!claims.is_empty());
    assert!(claims.iter().all(|c| c["claim_id"].as_str().unwrap().starts_with("orders.")));
    for key in ["claim_id", "paper_anchor", "status", "computed", "expected"] {
        assert!(claims[0].get(key).is_some(), "missing {key}");
    }
}

#[test]
fn verify_exit_code_follows_failures() {
    let out = octgroup(&["verify", "--filter", "quaternion"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    // the printed A generates a group of order 384
    let out = octgroup(&["verify", "--filter", "orders"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).lines().any(|l| l.starts_with("fail") && l.contains("orders.2^3.S4 ")));
}

#[test]
fn corrupted_golden_file_is_reported_by_name() {
    let dir = tempfile::tempdir().unwrap();
    let (_, file, _) = GOLDEN_FILES.iter().find(|(id, _, _)| *id == "II").unwrap();
    fs::write(dir.path().join(file), "table II\nclasses C1 C2\nrow 1 | 1 banana\n").unwrap();
    let out = octgroup(&["--golden-dir", dir.path().to_str().unwrap(), "verify", "--filter", "chartab"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.lines().any(|l| l.starts_with("fail") && l.contains(file)), "{text}");
}

#[test]
fn cli_matches_library() {
    let catalog = Catalog::new(ReferenceData::embedded());
    let lib = catalog.tensor("4.S4:2", "6_1", "6_2").unwrap();
    let doc = json(&["--format", "json", "tensor", "4.S4:2", "6_1", "6_2"]);
    let cli: std::collections::BTreeMap<String, u64> = serde_json::from_value(doc["decomposition"].clone()).unwrap();
    assert_eq!(cli, lib);
}
