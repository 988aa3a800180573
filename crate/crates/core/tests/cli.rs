//! Runs the built binary and checks exit codes, stderr, and output shape.

use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_admissible"))
        .args(args)
        .output()
        .expect("spawn")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn count_reports_exact_values() {
    let out = run(&["count", "--degree", "3", "--height", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["command"], "count");
    assert_eq!(v["results"]["exact_count"], 21);
    assert_eq!(v["exact"], true);
    assert!(out.stdout.ends_with(b"\n"));
}

#[test]
fn lower_bound_violation_is_reported_not_raised() {
    let out = run(&["count", "--degree", "4", "--height", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["results"]["exact_count"], 0);
    assert_eq!(v["results"]["lower_violated"], true);
}

#[test]
fn envelope_keys_are_ordered() {
    let out = run(&["primes", "--below", "20"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let pos: Vec<usize> = [
        "\"command\"",
        "\"parameters\"",
        "\"results\"",
        "\"toolkit_version\"",
        "\"exact\"",
    ]
    .iter()
    .map(|k| text.find(k).unwrap_or_else(|| panic!("missing {k}")))
    .collect();
    assert!(pos.windows(2).all(|w| w[0] < w[1]), "{text}");
}

#[test]
fn csv_has_header_row() {
    let out = run(&["--format", "csv", "primes", "--below", "12"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 6, "{text}");
    assert!(lines[0].chars().any(|c| c.is_alphabetic()));
}

#[test]
fn enumerate_streams_lines_and_marks_truncation() {
    let out = run(&[
        "enumerate",
        "--degree",
        "3",
        "--height",
        "6",
        "--limit",
        "5",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 6);
    let last: Value = serde_json::from_str(lines[5]).unwrap();
    assert_eq!(last["truncated"], true);
    assert_eq!(last["emitted"], 5);
    assert_eq!(last["total"], 21);
}

#[test]
fn usage_errors_exit_two_with_json_on_stderr() {
    for args in [
        &["count", "--degree", "0", "--height", "3"][..],
        &["fp-audit", "--degree", "3", "--primes", "4"][..],
        &["count", "--degree", "3"][..],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
        if args.len() > 3 {
            let err: Value = serde_json::from_slice(&out.stderr).unwrap();
            assert!(err["error"]["kind"].is_string());
            assert!(err["error"]["message"].is_string());
        }
    }
}

#[test]
fn limit_errors_exit_three() {
    let out = run(&[
        "--max-enum",
        "10",
        "enumerate",
        "--degree",
        "3",
        "--height",
        "6",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "enumeration_too_large");
}

#[test]
fn help_goes_to_stdout() {
    let out = run(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(!out.stdout.is_empty());
}
