//! End-to-end tests of the command-line interface: exit codes, error
//! messages, and output formats.

mod common;

use std::process::{Command, Output};

use common::fixture_path;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_truthful-arch"))
        .args(args)
        .env_remove("TRUTHFUL_ARCH_BUDGET")
        .output()
        .expect("binary runs")
}

fn run_with_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_truthful-arch"))
        .args(args)
        .env(key, value)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).to_string()
}

fn stderr(output: &Output) -> String {
    String::from_utf8_lossy(&output.stderr).to_string()
}

fn fixture_arg(name: &str) -> String {
    fixture_path(name).display().to_string()
}

/// Value column of a `label  value` line in table-text output.
fn table_value(text: &str, label: &str) -> String {
    for line in text.lines() {
        if let Some(rest) = line.strip_prefix(label) {
            if rest.starts_with(' ') {
                return rest.trim().to_string();
            }
        }
    }
    panic!("label {label:?} not found in:\n{text}");
}

#[test]
fn select_cbam_renders_desirability_and_selection() {
    let output = run(&[
        "select",
        "--mechanism",
        "cbam",
        "--scenario",
        &fixture_arg("table1.json"),
    ]);
    assert!(output.status.success());
    let text = stdout(&output);
    let desirability = table_value(&text, "Desirability");
    assert_eq!(
        desirability.split_whitespace().collect::<Vec<_>>(),
        ["-0.25", "0.60", "0.69"]
    );
    assert_eq!(table_value(&text, "Selected"), "AS3");

    let output = run(&[
        "select",
        "--mechanism",
        "cbam",
        "--scenario",
        &fixture_arg("table2.json"),
    ]);
    let text = stdout(&output);
    let desirability = table_value(&text, "Desirability");
    assert_eq!(
        desirability.split_whitespace().collect::<Vec<_>>(),
        ["-0.25", "0.53", "0.41"]
    );
    assert_eq!(table_value(&text, "Selected"), "AS2");
}

#[test]
fn select_vcg_with_reported_basis_reproduces_payment_rows() {
    let output = run(&[
        "select",
        "--mechanism",
        "vcg",
        "--scenario",
        &fixture_arg("table4.json"),
        "--net-benefit-basis",
        "reported",
    ]);
    assert!(output.status.success());
    let text = stdout(&output);
    assert_eq!(
        table_value(&text, "Payment")
            .split_whitespace()
            .collect::<Vec<_>>(),
        ["-22.00", "0.00", "0.00"]
    );
    assert_eq!(
        table_value(&text, "Net benefit")
            .split_whitespace()
            .collect::<Vec<_>>(),
        ["28.00", "50.00", "50.00"]
    );
    assert_eq!(table_value(&text, "Selected"), "AS2");
}

#[test]
fn select_dictatorial_cbam_uses_the_dictator_row() {
    let output = run(&[
        "select",
        "--mechanism",
        "dictatorial-cbam",
        "--dictator",
        "1",
        "--scenario",
        &fixture_arg("table3.json"),
    ]);
    assert!(output.status.success());
    let text = stdout(&output);
    assert_eq!(
        table_value(&text, "Desirability")
            .split_whitespace()
            .collect::<Vec<_>>(),
        ["0.75", "1.00", "-0.20"]
    );
    assert_eq!(table_value(&text, "Selected"), "AS2");
}

#[test]
fn select_requires_a_dictator_for_dictatorial_mechanisms() {
    let output = run(&[
        "select",
        "--mechanism",
        "dictator",
        "--scenario",
        &fixture_arg("table3.json"),
    ]);
    assert_eq!(output.status.code(), Some(2));
    assert!(stderr(&output).contains("dictator"));
}

#[test]
fn select_rejects_degenerate_scenarios() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("empty.json");
    std::fs::write(
        &path,
        r#"{"alternatives": [], "stakeholders": [], "reported": []}"#,
    )
    .unwrap();
    let output = run(&[
        "select",
        "--mechanism",
        "vcg",
        "--scenario",
        path.to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(2));
    assert!(stderr(&output).contains("at least one alternative"));
}

#[test]
fn select_distinguishes_missing_file_parse_and_validation_errors() {
    let output = run(&[
        "select",
        "--mechanism",
        "cbam",
        "--scenario",
        "/nonexistent.json",
    ]);
    assert_eq!(output.status.code(), Some(2));
    assert!(stderr(&output).contains("cannot read scenario file"));

    let dir = tempfile::tempdir().unwrap();
    let garbled = dir.path().join("garbled.json");
    std::fs::write(&garbled, "{not json").unwrap();
    let output = run(&[
        "select",
        "--mechanism",
        "cbam",
        "--scenario",
        garbled.to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(2));
    assert!(stderr(&output).contains("invalid scenario JSON"));

    let invalid = dir.path().join("invalid.json");
    std::fs::write(
        &invalid,
        r#"{
            "alternatives": [{"name": "A", "cost": "0"}],
            "stakeholders": [{"name": "x"}],
            "reported": [["5"]]
        }"#,
    )
    .unwrap();
    let output = run(&[
        "select",
        "--mechanism",
        "cbam",
        "--scenario",
        invalid.to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(2));
    assert!(stderr(&output).contains("not positive"));
}

#[test]
fn unknown_mechanism_is_a_usage_error() {
    let output = run(&[
        "select",
        "--mechanism",
        "borda",
        "--scenario",
        &fixture_arg("table1.json"),
    ]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn analyze_finds_the_cbam_manipulation() {
    let output = run(&[
        "analyze",
        "--mechanism",
        "cbam",
        "--scenario",
        &fixture_arg("table1.json"),
        "--manipulators",
        "0",
        "--grid-step",
        "10",
    ]);
    assert!(output.status.success());
    let text = stdout(&output);
    assert_eq!(table_value(&text, "Found profitable misreport"), "true");
    assert_eq!(table_value(&text, "Gain s1"), "5.00");
    assert_eq!(table_value(&text, "Manipulated selection"), "AS2");
    assert_eq!(table_value(&text, "Candidates evaluated"), "9261");
}

#[test]
fn analyze_vcg_net_benefit_reports_no_witness() {
    let output = run(&[
        "analyze",
        "--mechanism",
        "vcg",
        "--scenario",
        &fixture_arg("table2.json"),
        "--manipulators",
        "0",
        "--objective",
        "net_benefit",
    ]);
    assert!(output.status.success());
    let text = stdout(&output);
    assert_eq!(table_value(&text, "Found profitable misreport"), "false");
    assert!(!text.contains("Witness misreport"));
}

#[test]
fn analyze_vcg_benefit_objective_finds_a_witness() {
    let output = run(&[
        "analyze",
        "--mechanism",
        "vcg",
        "--scenario",
        &fixture_arg("table1.json"),
        "--manipulators",
        "0",
        "--objective",
        "benefit",
    ]);
    assert!(output.status.success());
    let text = stdout(&output);
    assert_eq!(table_value(&text, "Found profitable misreport"), "true");
    assert_eq!(table_value(&text, "Objective"), "benefit");
}

#[test]
fn analyze_coalitions_accept_comma_separated_manipulators() {
    let output = run(&[
        "analyze",
        "--mechanism",
        "cbam",
        "--scenario",
        &fixture_arg("table1.json"),
        "--manipulators",
        "1,2",
        "--grid-step",
        "50",
    ]);
    assert!(output.status.success());
    let text = stdout(&output);
    assert_eq!(table_value(&text, "Found profitable misreport"), "false");
    assert_eq!(table_value(&text, "Candidates evaluated"), "15625");
    assert_eq!(table_value(&text, "Gain s2"), "0.00");
    assert_eq!(table_value(&text, "Gain s3"), "0.00");
}

#[test]
fn analyze_without_actuals_fails_cleanly() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("noactual.json");
    std::fs::write(
        &path,
        r#"{
            "alternatives": [{"name": "A", "cost": "1"}, {"name": "B", "cost": "2"}],
            "stakeholders": [{"name": "x"}],
            "reported": [["5", "10"]]
        }"#,
    )
    .unwrap();
    let output = run(&[
        "analyze",
        "--mechanism",
        "cbam",
        "--scenario",
        path.to_str().unwrap(),
        "--manipulators",
        "0",
    ]);
    assert_eq!(output.status.code(), Some(2));
    assert!(stderr(&output).contains("no actual benefits"));
}

#[test]
fn budget_env_var_caps_the_search() {
    let output = run_with_env(
        &[
            "analyze",
            "--mechanism",
            "cbam",
            "--scenario",
            &fixture_arg("table1.json"),
            "--manipulators",
            "0",
        ],
        "TRUTHFUL_ARCH_BUDGET",
        "100",
    );
    assert_eq!(output.status.code(), Some(2));
    assert!(stderr(&output).contains("grid too fine"));

    let output = run_with_env(
        &[
            "analyze",
            "--mechanism",
            "cbam",
            "--scenario",
            &fixture_arg("table1.json"),
            "--manipulators",
            "0",
        ],
        "TRUTHFUL_ARCH_BUDGET",
        "not-a-number",
    );
    assert_eq!(output.status.code(), Some(2));
    assert!(stderr(&output).contains("TRUTHFUL_ARCH_BUDGET"));
}

#[test]
fn gs_scan_reports_the_dichotomy() {
    let output = run(&["gs-scan", "--rule", "plurality", "--voters", "3"]);
    assert!(output.status.success());
    let text = stdout(&output);
    assert_eq!(table_value(&text, "Total profiles"), "216");
    assert_eq!(table_value(&text, "Manipulable profiles"), "36");
    assert!(text.contains("Witness"));

    let output = run(&["gs-scan", "--rule", "borda", "--voters", "2"]);
    let text = stdout(&output);
    assert_eq!(table_value(&text, "Manipulable profiles"), "14");

    let output = run(&[
        "gs-scan",
        "--rule",
        "dictatorship",
        "--dictator",
        "0",
        "--voters",
        "3",
    ]);
    let text = stdout(&output);
    assert_eq!(table_value(&text, "Manipulable profiles"), "0");
    assert!(!text.contains("Witness"));
}

#[test]
fn gs_scan_validates_its_arguments() {
    let output = run(&["gs-scan", "--rule", "dictatorship", "--voters", "3"]);
    assert_eq!(output.status.code(), Some(2));
    assert!(stderr(&output).contains("--dictator"));

    let output = run(&["gs-scan", "--rule", "plurality", "--voters", "5"]);
    assert_eq!(output.status.code(), Some(2));

    let output = run_with_env(
        &["gs-scan", "--rule", "plurality", "--voters", "3"],
        "TRUTHFUL_ARCH_BUDGET",
        "10",
    );
    assert_eq!(output.status.code(), Some(2));
    assert!(stderr(&output).contains("budget"));
}

#[test]
fn csv_and_json_formats_carry_the_same_values() {
    let base = ["select", "--mechanism", "cbam", "--scenario"];
    let fixture = fixture_arg("table1.json");

    let csv = run(&[&base[..], &[&fixture, "--format", "csv"]].concat());
    assert!(csv.status.success());
    let csv_text = stdout(&csv);
    assert!(csv_text.contains("Desirability,-0.25,0.60,0.69"));

    let json = run(&[&base[..], &[&fixture, "--format", "json"]].concat());
    assert!(json.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&json)).unwrap();
    let rows = value[0]["rows"].as_array().unwrap();
    let desirability = rows
        .iter()
        .find(|r| r["label"] == "Desirability")
        .expect("desirability row");
    assert_eq!(
        desirability["values"],
        serde_json::json!(["-0.25", "0.60", "0.69"])
    );
}
