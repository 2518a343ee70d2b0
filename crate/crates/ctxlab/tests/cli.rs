//! End-to-end tests of the ctxlab binary: output formats, exit codes, and
//! file round-trips.

use std::process::{Command, Output};

fn ctxlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ctxlab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 output")
}

#[test]
fn reproduce_text_passes_and_is_byte_identical() {
    let first = ctxlab(&["reproduce"]);
    assert!(first.status.success(), "reproduce must exit 0");
    let text = stdout_of(&first);
    assert!(text.contains("S_singlet"));
    assert!(text.contains("all 46 checks pass"));
    let second = ctxlab(&["reproduce"]);
    assert_eq!(first.stdout, second.stdout, "report must be deterministic");
}

#[test]
fn reproduce_json_matches_the_wire_format() {
    let output = ctxlab(&["reproduce", "--format", "json"]);
    assert!(output.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout_of(&output)).expect("valid JSON");
    let object = value.as_object().expect("top-level object");
    assert_eq!(object.len(), 2, "exactly checks and all_pass");
    assert_eq!(object["all_pass"], serde_json::Value::Bool(true));
    let checks = object["checks"].as_array().expect("checks array");
    assert!(!checks.is_empty());
    for check in checks {
        let check = check.as_object().expect("check object");
        assert_eq!(check.len(), 5);
        assert!(check["name"].is_string());
        assert!(check["paper"].is_number());
        assert!(check["computed"].is_number());
        assert!(check["tol"].is_number());
        assert!(check["pass"].is_boolean());
    }
}

#[test]
fn sweep_writes_the_documented_csv_format() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rows.csv");
    let output = ctxlab(&[
        "sweep",
        "--scenario",
        "singlet",
        "--param",
        "visibility",
        "--from",
        "0",
        "--to",
        "1",
        "--steps",
        "11",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(output.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("param,T,S,total,bound,violated"));
    assert_eq!(lines.count(), 11);
    assert!(!text.contains('\r'), "line feed terminators only");

    let rows = ctxlab::read_sweep_csv(&path).unwrap();
    let direct = ctxlab::sweep(
        ctxlab::ScenarioKind::Singlet,
        ctxlab::SweepParam::Visibility,
        0.0,
        1.0,
        11,
        std::f64::consts::PI / 8.0,
        1.0,
        None,
    )
    .unwrap();
    assert_eq!(rows.len(), direct.len());
    for (a, b) in rows.iter().zip(&direct) {
        assert_eq!(a, b, "file round-trip reproduces the in-memory rows");
    }
}

#[test]
fn sweep_without_out_prints_csv() {
    let output = ctxlab(&[
        "sweep",
        "--scenario",
        "ghz",
        "--param",
        "visibility",
        "--from",
        "0",
        "--to",
        "1",
        "--steps",
        "3",
    ]);
    assert!(output.status.success());
    let text = stdout_of(&output);
    assert!(text.starts_with("param,T,S,total,bound,violated\n"));
    assert_eq!(text.lines().count(), 4);
}

#[test]
fn threshold_reports_the_known_crossings() {
    let singlet = ctxlab(&["threshold", "--scenario", "singlet"]);
    assert!(singlet.status.success());
    assert!(stdout_of(&singlet).contains("visibility threshold = 0.878680"));

    let ghz = ctxlab(&["threshold", "--scenario", "ghz"]);
    assert!(ghz.status.success());
    assert!(stdout_of(&ghz).contains("visibility threshold = 0.621320"));

    let nonmax = ctxlab(&["threshold", "--scenario", "nonmax"]);
    assert!(nonmax.status.success());
    let text = stdout_of(&nonmax);
    assert!(text.contains("theta threshold = 0.414806"), "{text}");
    assert!(text.contains("d1*d2 at the crossing = 0.368835"), "{text}");
}

#[test]
fn threshold_without_crossing_exits_with_usage_error() {
    // at chi = 0 the singlet never reaches the bound
    let output = ctxlab(&["threshold", "--scenario", "singlet", "--chi", "0"]);
    assert_eq!(output.status.code(), Some(2));
    let stderr = String::from_utf8(output.stderr).unwrap();
    assert!(stderr.contains("no crossing"), "{stderr}");
}

#[test]
fn bounds_reports_for_each_model() {
    let nchvt = ctxlab(&["bounds", "--model", "nchvt", "--expr", "T"]);
    assert!(nchvt.status.success());
    assert!(stdout_of(&nchvt).contains("max = 8 over 512 assignments"));

    let nclhvt = ctxlab(&["bounds", "--model", "nclhvt", "--expr", "S"]);
    assert!(stdout_of(&nclhvt).contains("max = 10 over 2048 assignments"));

    let lhvt = ctxlab(&["bounds", "--model", "lhvt", "--expr", "TSprime"]);
    assert!(stdout_of(&lhvt).contains("max = 18"));

    let table = ctxlab(&["bounds", "--model", "table", "--expr", "Sprime"]);
    assert!(stdout_of(&table).contains("12 exactly"));

    let chsh = ctxlab(&["bounds", "--model", "nclhvt", "--expr", "chsh"]);
    let text = stdout_of(&chsh);
    assert_eq!(text.matches("max = 2 over").count(), 3);

    let bellsum = ctxlab(&["bounds", "--model", "nclhvt", "--expr", "bellsum"]);
    assert_eq!(stdout_of(&bellsum).matches("max = 6 over").count(), 2);
}

#[test]
fn invalid_model_expression_pair_is_a_usage_error() {
    let output = ctxlab(&["bounds", "--model", "table", "--expr", "T"]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn scenario_config_runs_and_writes_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let report_path = dir.path().join("report.json");
    let config_path = dir.path().join("config.json");
    std::fs::write(
        &config_path,
        format!(
            r#"{{"scenario_kind":"ghz","visibility":0.8,"output_path":{:?}}}"#,
            report_path.to_str().unwrap()
        ),
    )
    .unwrap();
    let output = ctxlab(&["scenario", "--config", config_path.to_str().unwrap()]);
    assert!(output.status.success());
    assert!(stdout_of(&output).contains("scenario: ghz"));
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report_path).unwrap()).unwrap();
    assert_eq!(report["scenario_kind"], "ghz");
    assert_eq!(report["visibility"], 0.8);
    assert_eq!(report["s_terms"].as_array().unwrap().len(), 12);
}

#[test]
fn unknown_config_keys_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let config_path = dir.path().join("config.json");
    std::fs::write(
        &config_path,
        r#"{"scenario_kind":"singlet","visibilty":0.9}"#,
    )
    .unwrap();
    let output = ctxlab(&["scenario", "--config", config_path.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(2));
    let stderr = String::from_utf8(output.stderr).unwrap();
    assert!(stderr.contains("unknown field"), "{stderr}");
}

#[test]
fn missing_required_scenario_field_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let config_path = dir.path().join("config.json");
    std::fs::write(&config_path, r#"{"scenario_kind":"nonmax"}"#).unwrap();
    let output = ctxlab(&["scenario", "--config", config_path.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn unknown_subcommand_is_a_usage_error() {
    let output = ctxlab(&["frobnicate"]);
    assert_eq!(output.status.code(), Some(2));
}
