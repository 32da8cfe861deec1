//! Acceptance gate for the CLI: reports must be reproducible byte for byte.

use std::process::Command;

#[test]
fn criterion_9_deterministic_json() {
    let run = || {
        let out = Command::new(env!("CARGO_BIN_EXE_verify"))
            .args(["all", "--probes", "2", "--seed", "3", "--format", "json"])
            .output()
            .expect("running verify");
        assert!(out.status.success(), "verify all failed: {}", String::from_utf8_lossy(&out.stderr));
        out.stdout
    };
    let first = run();
    let second = run();
    let ok = first == second && !first.is_empty();
    println!(
        "ACCEPTANCE 9: [{}] two `verify all` runs with identical flags emit byte-identical JSON",
        if ok { "pass" } else { "FAIL" }
    );
    assert!(ok);
}

#[test]
fn out_of_range_is_usage_error() {
    let out = Command::new(env!("CARGO_BIN_EXE_verify"))
        .args(["stellar", "--n", "5"])
        .output()
        .expect("running verify");
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unwritable_output_path_is_io_error() {
    let out = Command::new(env!("CARGO_BIN_EXE_verify"))
        .args(["dupont", "--n", "1", "--out", "/nonexistent-dir/report.json"])
        .output()
        .expect("running verify");
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn claim_suites_keep_exit_zero() {
    let out = Command::new(env!("CARGO_BIN_EXE_verify"))
        .args(["collapse", "--n", "2", "--face", "0,1", "--format", "json"])
        .output()
        .expect("running verify");
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\"kind\": \"claim\""));
}
