use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use steadydim::nondegen::AnalysisReport;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_steadydim"))
        .args(args)
        .env_remove("STEADYDIM_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(name: &str) -> String {
    fixture(name).to_string_lossy().into_owned()
}

#[test]
fn analyze_text_reports_conclusions() {
    let o = run(&["analyze", &path("calcium.crn")]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("conclusion_f: generic dimension n-s = 1"));
    assert!(stdout(&o).contains("conclusion_F: generically finite"));

    let o = run(&["analyze", &path("catalytic.crn")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("conclusion_f: empty or higher-dimensional for almost all rate constants"));
}

#[test]
fn missing_file_exits_one() {
    let o = run(&["analyze", "missing.crn"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("missing.crn"));
}

#[test]
fn parse_error_exits_one_with_location() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.crn");
    fs::write(&bad, "A -> B\nA -> A\n").unwrap();
    let o = run(&["analyze", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["analyze"]).status.code(), Some(1));
    assert_eq!(run(&["analyze", &path("calcium.crn"), "--retries", "0"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn matrices_of_single_reaction() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("xy.crn");
    fs::write(&file, "X -> Y\n").unwrap();
    let o = run(&["matrices", "--json", file.to_str().unwrap()]);
    assert!(o.status.success());
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["gamma"], serde_json::json!([["-1"], ["1"]]));
    assert_eq!(v["B"], serde_json::json!([["1"], ["0"]]));
    assert_eq!(v["W"], serde_json::json!([["1", "1"]]));
}

#[test]
fn matrices_row_basis_is_proportional() {
    let o = run(&["matrices", "--json", &path("quadratic.crn")]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let row: Vec<i64> = v["N"][0]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e.as_str().unwrap().parse().unwrap())
        .collect();
    assert_eq!(row[1], -2 * row[0]);
    assert_eq!(row[2], row[0]);
    assert_ne!(row[0], 0);
}

#[test]
fn check_point_reports_degeneracy() {
    let o = run(&["check-point", &path("quadratic.crn"), "--kappa", "1,1,1", "--x", "1,1"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("steady state: yes; degenerate: yes"));

    let o = run(&["check-point", &path("calcium.crn"), "--kappa", "1,1,1,2,1,1", "--x", "1,1,1,1"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("degenerate: no"));

    let o = run(&["check-point", &path("quadratic.crn"), "--kappa", "1,1,1", "--x", "2,3", "--json"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["residual_zero"], Value::Bool(false));
    assert_eq!(v["residual"], serde_json::json!(["6"]));
}

#[test]
fn check_point_rejects_bad_vectors() {
    let f = path("quadratic.crn");
    assert_eq!(run(&["check-point", &f, "--kappa", "0,1,1", "--x", "1,1"]).status.code(), Some(1));
    assert_eq!(run(&["check-point", &f, "--kappa", "1,-1,1", "--x", "1,1"]).status.code(), Some(1));
    assert_eq!(run(&["check-point", &f, "--kappa", "1,1", "--x", "1,1"]).status.code(), Some(1));
    assert_eq!(run(&["check-point", &f, "--kappa", "1,a,1", "--x", "1,1"]).status.code(), Some(1));
    assert_eq!(run(&["check-point", &f, "--kappa", "1,1,1", "--x", "1/0,1"]).status.code(), Some(1));
}

#[test]
fn json_is_seed_deterministic_and_round_trips() {
    let f = path("weakly_reversible.crn");
    let a = run(&["analyze", "--json", "--seed", "17", &f]);
    let b = run(&["analyze", "--json", "--seed", "17", &f]);
    assert_eq!(a.stdout, b.stdout);
    let report: AnalysisReport = serde_json::from_slice(&a.stdout).unwrap();
    let again = serde_json::to_string_pretty(&report).unwrap();
    assert_eq!(again.trim_end(), stdout(&a).trim_end());

    let env = Command::new(env!("CARGO_BIN_EXE_steadydim"))
        .args(["analyze", "--json", &f])
        .env("STEADYDIM_SEED", "17")
        .output()
        .unwrap();
    assert_eq!(env.stdout, a.stdout);
    assert_ne!(run(&["analyze", "--json", "--seed", "18", &f]).stdout, a.stdout);
}

#[test]
fn text_and_json_agree() {
    let f = path("calcium.crn");
    let json = run(&["analyze", "--json", "--seed", "3", &f]);
    let text = stdout(&run(&["analyze", "--seed", "3", &f]));
    let report: AnalysisReport = serde_json::from_slice(&json.stdout).unwrap();
    for v in [&report.f_verdict, &report.class_verdict] {
        for w in [&v.witness_u, &v.witness_h, &v.witness_w].into_iter().flatten() {
            assert!(text.contains(&steadydim::rational::format_vector(w)));
        }
    }
    assert!(text.contains("f_test: nondegenerate exists"));
    assert!(text.contains("F_test: nondegenerate exists"));
}

#[test]
fn batch_mode_emits_sorted_json_lines() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["calcium.crn", "catalytic.crn", "quadratic.crn"] {
        fs::copy(fixture(name), dir.path().join(name)).unwrap();
    }
    fs::write(dir.path().join("notes.txt"), "ignored").unwrap();
    let o = run(&["analyze", "--seed", "4", dir.path().to_str().unwrap()]);
    assert!(o.status.success());
    let lines: Vec<Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    let paths: Vec<&str> = lines.iter().map(|l| l["path"].as_str().unwrap()).collect();
    assert_eq!(paths, ["calcium.crn", "catalytic.crn", "quadratic.crn"]);
    assert_eq!(
        lines[1]["report"]["conclusions"]["steady_state_variety"],
        "empty_or_higher_dimensional"
    );
    let again = run(&["analyze", "--seed", "4", dir.path().to_str().unwrap()]);
    assert_eq!(again.stdout, o.stdout);

    fs::write(dir.path().join("broken.crn"), "A -> -> B\n").unwrap();
    let o = run(&["analyze", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o).lines().count(), 4);
    assert!(stdout(&o).lines().next().unwrap().contains("\"error\""));
}
