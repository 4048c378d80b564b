//! End-to-end tests of the `projlogic` binary: exit codes, report output,
//! file ingestion, and byte-level determinism.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn binary() -> &'static str {
    env!("CARGO_BIN_EXE_projlogic")
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(binary())
        .args(args)
        .env("SOURCE_DATE_EPOCH", "1700000000")
        .output()
        .expect("binary runs")
}

#[test]
fn verify_star_passes_and_emits_required_checks() {
    let dir = tempfile::tempdir().unwrap();
    let report_path = dir.path().join("star.json");
    let out = run(&[
        "verify",
        "star",
        "--dim",
        "2",
        "--seed",
        "3",
        "--samples",
        "2000",
        "--report",
        report_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report = projlogic::parse_report(&report_path).unwrap();
    assert!(report.all_passed());
    assert!(
        report.checks.iter().any(|c| c.name == "star_closed_vs_geometric"),
        "star suite must include the closed-vs-geometric identity check"
    );
}

#[test]
fn logic_suite_with_family_file_reports_distributivity_witness() {
    let dir = tempfile::tempdir().unwrap();
    let report_path = dir.path().join("logic.json");
    let out = run(&[
        "verify",
        "logic",
        "--dim",
        "2",
        "--seed",
        "5",
        "--samples",
        "500",
        "--family",
        fixture("spin2.json").to_str().unwrap(),
        "--report",
        report_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report = projlogic::parse_report(&report_path).unwrap();
    let witness_check = report
        .checks
        .iter()
        .find(|c| c.name == "distributivity_classification")
        .expect("distributivity check present");
    assert!(witness_check.passed);
    assert!(
        witness_check.details.contains("witness triple"),
        "details: {}",
        witness_check.details
    );
}

#[test]
fn failing_tolerance_gives_exit_one() {
    let out = run(&[
        "verify",
        "dynamics",
        "--dim",
        "2",
        "--seed",
        "1",
        "--samples",
        "500",
        "--tol",
        "flow=1e-18",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("FAIL"), "stderr: {stderr}");
}

#[test]
fn usage_and_ingestion_errors_give_exit_two() {
    let out = run(&["verify", "bogus-suite"]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["verify", "star", "--dim", "11"]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["verify", "star", "--tol", "nonsense=1.0"]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&[
        "verify",
        "logic",
        "--dim",
        "2",
        "--family",
        "/nonexistent/family.json",
    ]);
    assert_eq!(out.status.code(), Some(2));

    // Corrupt (non-Hermitian) operator file.
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(
        &bad,
        r#"{"dim": 2, "re": [[0.0, 1.0], [0.0, 0.0]], "im": [[0.0, 0.0], [0.0, 0.0]]}"#,
    )
    .unwrap();
    let out = run(&[
        "verify",
        "star",
        "--dim",
        "2",
        "--samples",
        "500",
        "--operators",
        bad.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn operators_files_join_the_corpus() {
    let out = run(&[
        "verify",
        "star",
        "--dim",
        "2",
        "--seed",
        "3",
        "--samples",
        "500",
        "--operators",
        fixture("p_e1.json").to_str().unwrap(),
        fixture("p_plus.json").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn reports_are_byte_identical_across_runs_and_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for (name, threads) in [("a", "1"), ("b", "1"), ("c", "4")] {
        let path = dir.path().join(format!("report_{name}.json"));
        let out = run(&[
            "verify",
            "all",
            "--dim",
            "2",
            "--seed",
            "7",
            "--samples",
            "500",
            "--threads",
            threads,
            "--report",
            path.to_str().unwrap(),
        ]);
        assert_eq!(
            out.status.code(),
            Some(0),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
        outputs.push(std::fs::read(&path).unwrap());
    }
    assert_eq!(outputs[0], outputs[1], "same seed, same bytes");
    assert_eq!(outputs[0], outputs[2], "thread count must not change bytes");
}

#[test]
fn stdout_report_matches_file_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let args_common = [
        "verify", "tnorm", "--dim", "2", "--seed", "9", "--samples", "500",
    ];
    let to_stdout = run(&args_common);
    assert_eq!(to_stdout.status.code(), Some(0));
    let mut args_file: Vec<&str> = args_common.to_vec();
    args_file.extend(["--report", path.to_str().unwrap()]);
    let to_file = run(&args_file);
    assert_eq!(to_file.status.code(), Some(0));
    assert_eq!(to_stdout.stdout, std::fs::read(&path).unwrap());
}
