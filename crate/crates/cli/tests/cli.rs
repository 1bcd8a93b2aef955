//! End-to-end tests of the `jpl` binary: output shape, determinism, and the
//! exit-code contract.

use std::process::{Command, Output};

fn jpl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jpl")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

#[test]
fn char_list_csv_matches_enumeration() {
    let out = jpl(&["char", "list", "--bound", "8", "--format", "csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "discriminant,modulus,parity");
    let ds: Vec<&str> = lines[1..].iter().map(|l| l.split(',').next().unwrap()).collect();
    assert_eq!(ds, ["-3", "-4", "5", "-7", "-8", "8"]);
    // RFC 4180: CRLF line endings
    assert!(text.contains("\r\n"));
}

#[test]
fn zeros_json_contains_three_roots() {
    let out = jpl(&["xi", "zeros", "--z-max", "30"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.matches("\"root\"").count(), 3);
    for prefix in ["1.41347251", "2.10220396", "2.50108575"] {
        assert!(text.contains(prefix), "missing root starting {prefix} in {text}");
    }
}

#[test]
fn identical_configs_produce_identical_bytes() {
    for format in ["json", "csv"] {
        let a = jpl(&["jensen", "fn", "--n", "1", "--x-grid", "0:4:1", "--format", format]);
        let b = jpl(&["jensen", "fn", "--n", "1", "--x-grid", "0:4:1", "--format", format]);
        assert!(a.status.success() && b.status.success());
        assert_eq!(a.stdout, b.stdout, "{format} output must be byte-identical");
    }
}

#[test]
fn workers_env_does_not_change_output() {
    let base = jpl(&["jensen", "fn", "--n", "2", "--x-grid", "0:6:1"]);
    let forced = Command::new(env!("CARGO_BIN_EXE_jpl"))
        .args(["jensen", "fn", "--n", "2", "--x-grid", "0:6:1"])
        .env("JPL_WORKERS", "1")
        .output()
        .expect("binary runs");
    assert!(base.status.success() && forced.status.success());
    assert_eq!(base.stdout, forced.stdout);
}

#[test]
fn exit_code_contract() {
    // 0: passing checks
    assert_eq!(jpl(&["char", "theta-check", "--d", "-4"]).status.code(), Some(0));
    // 2: usage error (unknown flag, handled by the parser)
    assert_eq!(jpl(&["xi", "eval", "--nope", "1"]).status.code(), Some(2));
    // 2: domain error (not a fundamental discriminant)
    let bad = jpl(&["char", "theta-check", "--d", "6"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(!String::from_utf8(bad.stderr).unwrap().is_empty());
    // 3: output I/O failure
    let io = jpl(&["char", "list", "--bound", "8", "--out", "/nonexistent/dir/report.json"]);
    assert_eq!(io.status.code(), Some(3));
}

#[test]
fn out_flag_writes_the_payload() {
    let dir = std::env::temp_dir().join(format!("jpl-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("list.csv");
    let out = jpl(&[
        "char",
        "list",
        "--bound",
        "8",
        "--format",
        "csv",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert!(written.starts_with("discriminant,modulus,parity"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn discriminant_sweep_streams_partial_reports() {
    let dir = std::env::temp_dir().join(format!("jpl-sweep-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("sweep.csv");
    let out = jpl(&[
        "phi",
        "scan",
        "--kind",
        "character",
        "--d-bound",
        "12",
        "--t-max",
        "1",
        "--step",
        "0.1",
        "--format",
        "csv",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    // bound 12: {-3, -4, 5, -7, -8, 8, -11, 12} -> 8 rows plus the header
    assert_eq!(text.lines().filter(|l| !l.is_empty()).count(), 9);
    std::fs::remove_dir_all(&dir).unwrap();
}
