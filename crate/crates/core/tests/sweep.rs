mod common;

use std::fs;
use std::path::Path;
use std::process::{Command, Stdio};
use std::time::Duration;

use egyptian::sweep::{emit_report, parse_report, sweep_range, ReportFormat, SweepConfig, SweepError};
use egyptian::{Method, Status};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_egyptian"))
}

fn config(start: u128, end: u128, workers: usize) -> SweepConfig {
    SweepConfig {
        workers,
        ..SweepConfig::new(start, end)
    }
}

#[test]
fn worker_count_does_not_change_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let mut reports = Vec::new();
    for workers in [1, 2, 4, 7] {
        for format in [ReportFormat::Csv, ReportFormat::Json] {
            let path = dir.path().join(format!("r{workers}.{format:?}"));
            let cfg = SweepConfig {
                report_path: Some(path.clone()),
                report_format: format,
                ..config(3, 2500, workers)
            };
            sweep_range(&cfg).unwrap();
            reports.push((format, fs::read(&path).unwrap()));
        }
    }
    for (format, bytes) in &reports {
        let first = &reports.iter().find(|(f, _)| f == format).unwrap().1;
        assert_eq!(bytes, first);
    }
}

#[test]
fn method_tags_are_stable_and_hard_n_avoid_closed_forms() {
    let a = sweep_range(&config(2, 3000, 3)).unwrap();
    let b = sweep_range(&config(2, 3000, 1)).unwrap();
    assert_eq!(a, b);
    for r in &a {
        assert_eq!(r.hard, common::is_hard(r.n as u64), "n = {}", r.n);
        if r.hard {
            assert!(
                matches!(r.method, Method::Theorem4 | Method::Theorem3Search | Method::Oracle),
                "n = {}: {:?}",
                r.n,
                r.method
            );
        }
        if r.status == Status::Solved {
            assert!(common::sums_to(r.triple().unwrap(), 4, r.n));
        }
    }
    assert_eq!(a[0].status, Status::NoDistinctSolution);
    assert!(a[1..].iter().all(|r| r.status == Status::Solved));
}

fn checkpointed(start: u128, end: u128, workers: usize, cp: &Path) -> SweepConfig {
    SweepConfig {
        checkpoint_path: Some(cp.to_owned()),
        ..config(start, end, workers)
    }
}

#[test]
fn resuming_from_any_record_boundary_matches_an_uninterrupted_run() {
    let dir = tempfile::tempdir().unwrap();
    let full_cp = dir.path().join("full.jsonl");
    let expected = sweep_range(&checkpointed(3, 3200, 2, &full_cp)).unwrap();
    let text = fs::read_to_string(&full_cp).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), expected.len());

    for cut in [0, 1, 999, 1000, 1001, 2345, lines.len() - 1, lines.len()] {
        let cp = dir.path().join(format!("cut{cut}.jsonl"));
        let mut prefix: String = lines[..cut].iter().map(|l| format!("{l}\n")).collect();
        // Torn write after the boundary.
        if cut < lines.len() {
            prefix.push_str(&lines[cut][..lines[cut].len() / 2]);
        }
        fs::write(&cp, prefix).unwrap();
        let resumed = sweep_range(&checkpointed(3, 3200, 3, &cp)).unwrap();
        assert_eq!(resumed, expected, "cut = {cut}");
        assert_eq!(fs::read_to_string(&cp).unwrap(), text, "cut = {cut}");
    }
}

#[test]
fn checkpoint_for_a_different_range_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cp = dir.path().join("cp.jsonl");
    sweep_range(&checkpointed(3, 50, 1, &cp)).unwrap();
    assert!(matches!(
        sweep_range(&checkpointed(10, 50, 1, &cp)),
        Err(SweepError::Checkpoint { .. })
    ));
}

#[test]
fn unwritable_paths_fail_before_computing() {
    let start = std::time::Instant::now();
    let cfg = SweepConfig {
        report_path: Some("/nonexistent/dir/report.csv".into()),
        ..config(3, 100_000_000, 1)
    };
    assert!(matches!(sweep_range(&cfg), Err(SweepError::Io { .. })));
    let cfg = SweepConfig {
        checkpoint_path: Some("/nonexistent/dir/cp.jsonl".into()),
        ..config(3, 100_000_000, 1)
    };
    assert!(matches!(sweep_range(&cfg), Err(SweepError::Io { .. })));
    assert!(start.elapsed() < Duration::from_secs(1));
}

#[test]
fn report_round_trip_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let records = sweep_range(&config(2, 400, 2)).unwrap();
    for format in [ReportFormat::Csv, ReportFormat::Json] {
        let path = dir.path().join("r");
        emit_report(&records, format, &path).unwrap();
        assert_eq!(parse_report(&path).unwrap(), (format, records.clone()));
    }
}

#[test]
fn cli_sweep_row_count_and_stats() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("out.csv");
    let status = bin()
        .args(["sweep", "3", "1000", "--format", "csv", "--report"])
        .arg(&report)
        .stdout(Stdio::null())
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let text = fs::read_to_string(&report).unwrap();
    assert_eq!(text.lines().count(), 1 + 998);
    assert_eq!(text.lines().next(), Some("n,method,x1,x2,x3,status,hard"));

    let out = bin().arg("stats").arg(&report).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("records: 998"), "{stdout}");
}

#[test]
fn cli_exit_codes() {
    let code = |args: &[&str]| bin().args(args).output().unwrap().status.code();
    assert_eq!(code(&["decompose", "7"]), Some(0));
    assert_eq!(code(&["decompose", "2"]), Some(1));
    assert_eq!(code(&["decompose", "x"]), Some(2));
    assert_eq!(code(&["sweep", "3"]), Some(2));
    assert_eq!(code(&["stats", "/nonexistent.csv"]), Some(3));
}

#[test]
fn killed_cli_sweep_resumes_to_the_same_report() {
    let dir = tempfile::tempdir().unwrap();
    let cp = dir.path().join("cp.jsonl");
    let resumed = dir.path().join("resumed.json");
    let clean = dir.path().join("clean.json");
    let args = ["sweep", "3", "40000", "--workers", "2", "--format", "json"];

    let mut child = bin()
        .args(args)
        .arg("--checkpoint")
        .arg(&cp)
        .stdout(Stdio::null())
        .spawn()
        .unwrap();
    std::thread::sleep(Duration::from_millis(150));
    let _ = child.kill();
    child.wait().unwrap();

    let ok = bin()
        .args(args)
        .arg("--checkpoint")
        .arg(&cp)
        .arg("--report")
        .arg(&resumed)
        .status()
        .unwrap();
    assert!(ok.success());
    let ok = bin().args(args).arg("--report").arg(&clean).status().unwrap();
    assert!(ok.success());
    assert_eq!(fs::read(&resumed).unwrap(), fs::read(&clean).unwrap());
}
