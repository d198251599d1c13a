//! End-to-end checks of the `psl` binary: exit codes, file outputs, and the
//! resume workflow.

use std::path::Path;
use std::process::{Command, Output};

fn psl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_psl"))
        .args(args)
        .output()
        .expect("spawn psl")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn scan_writes_hits_and_checkpoint() {
    let dir = tempfile::tempdir().unwrap();
    let hits = dir.path().join("hits.csv");
    let cp = dir.path().join("cp.json");
    let out = psl(&[
        "scan",
        "--max-n",
        "1000",
        "--emit",
        hits.to_str().unwrap(),
        "--checkpoint",
        cp.to_str().unwrap(),
        "--pi-points",
        "100,1000",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&hits).unwrap();
    // header + 141 hit rows
    assert_eq!(text.lines().count(), 142);
    assert!(text.starts_with("m,k,q\n1,1,5\n"));
    let cp_text = std::fs::read_to_string(&cp).unwrap();
    assert!(cp_text.contains("\"variant\":\"plain\""));
    assert!(cp_text.contains("\"n_last\":\"1000\""));
    let s = stdout(&out);
    assert!(s.contains("n=100 pi_n=23"));
    assert!(s.contains("n=1000 pi_n=141"));
}

#[test]
fn resume_reproduces_cold_run_byte_for_byte() {
    let dir = tempfile::tempdir().unwrap();
    let cold = dir.path().join("cold.csv");
    let cp_cold = dir.path().join("cold.json");
    assert!(psl(&[
        "scan", "--max-n", "3000",
        "--emit", cold.to_str().unwrap(),
        "--checkpoint", cp_cold.to_str().unwrap(),
        "--cadence", "3000",
    ])
    .status
    .success());

    let warm = dir.path().join("warm.csv");
    let cp_warm = dir.path().join("warm.json");
    assert!(psl(&[
        "scan", "--max-n", "1500",
        "--emit", warm.to_str().unwrap(),
        "--checkpoint", cp_warm.to_str().unwrap(),
    ])
    .status
    .success());
    assert!(psl(&[
        "scan", "--max-n", "3000", "--resume",
        "--emit", warm.to_str().unwrap(),
        "--checkpoint", cp_warm.to_str().unwrap(),
        "--cadence", "3000",
    ])
    .status
    .success());

    let a = std::fs::read(&cold).unwrap();
    let b = std::fs::read(&warm).unwrap();
    assert_eq!(a, b, "resumed hits differ from cold scan");
    assert_eq!(
        std::fs::read(&cp_cold).unwrap(),
        std::fs::read(&cp_warm).unwrap()
    );
}

#[test]
fn tampered_checkpoint_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let hits = dir.path().join("hits.csv");
    let cp = dir.path().join("cp.json");
    assert!(psl(&[
        "scan", "--max-n", "1200",
        "--emit", hits.to_str().unwrap(),
        "--checkpoint", cp.to_str().unwrap(),
    ])
    .status
    .success());
    // flip one digit of the digest
    let text = std::fs::read_to_string(&cp).unwrap();
    let tampered = if text.contains("\"digest\":\"1") {
        text.replace("\"digest\":\"1", "\"digest\":\"2")
    } else {
        text.replace("\"digest\":\"", "\"digest\":\"1")
    };
    std::fs::write(&cp, tampered).unwrap();
    let out = psl(&[
        "scan", "--max-n", "2000", "--resume",
        "--emit", hits.to_str().unwrap(),
        "--checkpoint", cp.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn table_commands_emit_expected_cells() {
    let dir = tempfile::tempdir().unwrap();
    let hits = dir.path().join("hits.csv");
    assert!(psl(&[
        "scan", "--max-n", "1000",
        "--emit", hits.to_str().unwrap(),
    ])
    .status
    .success());

    let out = psl(&[
        "table", "2",
        "--hits", hits.to_str().unwrap(),
        "--points", "100,1000",
        "--scanned-to", "1000",
    ]);
    assert!(out.status.success());
    let s = stdout(&out);
    assert!(s.contains("100,1.05919,0.920000"), "{s}");
    assert!(s.contains("1000,0.973993"), "{s}");

    let out = psl(&[
        "table", "5",
        "--hits", hits.to_str().unwrap(),
        "--points", "100",
        "--format", "markdown",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("| 100 | 22 |"));

    // a point beyond the stated extent is a data error (exit 3)
    let out = psl(&[
        "table", "1",
        "--hits", hits.to_str().unwrap(),
        "--points", "5000",
        "--scanned-to", "1000",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn verify_suites_and_exit_codes() {
    let out = psl(&["verify", "--suite", "prop-5.1", "--max-n", "5000"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("result: PASS"));

    let out = psl(&["verify", "--suite", "no-such-suite", "--max-n", "100"]);
    assert_eq!(out.status.code(), Some(2));

    // a suite whose claim is genuinely false in range exits 1
    let out = psl(&["verify", "--suite", "conj-4.6", "--max-n", "100"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("result: FAIL"));

    let out = psl(&["verify", "--suite", "list"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("conj-4.12"));
}

#[test]
fn small_subcommands() {
    let out = psl(&["li", "--x", "2"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "0.000000000");

    let out = psl(&["solve-mk", "--k", "23", "--q", "109147"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("M_23 = 1.178935"));

    let out = psl(&["bounds", "--rule", "mandl", "--max-n", "2000"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("0 violations"));

    // usage errors exit 2
    let out = psl(&["scan", "--max-n", "100", "--cadence", "10"]);
    assert_eq!(out.status.code(), Some(2));
    let out = psl(&["scan", "--max-n", "100", "--variant", "bogus"]);
    assert_eq!(out.status.code(), Some(2));
    let out = psl(&["table", "9", "--hits", "/nonexistent.csv"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn series_from_hits_file() {
    let dir = tempfile::tempdir().unwrap();
    let hits = dir.path().join("hits.csv");
    assert!(psl(&["scan", "--max-n", "100", "--emit", hits.to_str().unwrap()])
        .status
        .success());
    let out = psl(&[
        "series", "--kind", "inv-pi", "--upto", "10",
        "--hits", hits.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let s = stdout(&out);
    assert!(s.contains("partial sum to 10 = 3.550000"), "{s}");
    assert!(s.contains("comparator = 2.650949"), "{s}");

    let out = psl(&[
        "series", "--kind", "k-log2-over-q", "--upto", "5",
        "--hits", hits.to_str().unwrap(),
    ]);
    assert!(stdout(&out).contains("partial sum to 5 = 0.229949"));

    // not enough hits for a large request
    let out = psl(&[
        "series", "--kind", "k-log2-over-q", "--upto", "5000",
        "--hits", hits.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn environment_cap_is_respected() {
    let dir = tempfile::tempdir().unwrap();
    let hits: &Path = &dir.path().join("h.csv");
    let out = Command::new(env!("CARGO_BIN_EXE_psl"))
        .env("PSL_MAX_SIEVE", "50000")
        .args([
            "scan",
            "--max-n",
            "1000000",
            "--emit",
            hits.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stderr).contains("capacity"));
}
