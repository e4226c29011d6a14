use std::fs;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn logpade(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_logpade"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn verify_passes_with_exit_zero() {
    let out = logpade(&["verify", "--m", "2", "--n-max", "3", "--json"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report = json(&out);
    assert_eq!(report["status"], "pass");
    assert_eq!(report["mode"], "verify");
}

#[test]
fn injected_fault_exits_one() {
    let out = logpade(&["verify", "--m", "2", "--n-max", "2", "--inject-fault"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn input_errors_exit_two() {
    for args in [
        &["constants", "--m", "2", "--alpha", "-3/1"][..],
        &["constants", "--m", "2", "--alpha", "banana"],
        &["padic-audit", "--m", "2", "--alpha", "5"],
        &["padic-audit", "--m", "2", "--alpha", "1/2", "--p", "5"],
        &["audit", "--m", "9", "--height-max", "10"],
        &["verify", "--no-such-flag"],
    ] {
        let out = logpade(args);
        assert_eq!(
            out.status.code(),
            Some(2),
            "{args:?}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
}

#[test]
fn construct_emits_the_system() {
    let out = logpade(&["construct", "--m", "2", "--n", "0", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert!(
        doc.to_string().contains("1/6"),
        "leading remainder coefficient 1/6 present"
    );
}

#[test]
fn out_file_matches_stdout_and_config_file_is_merged() {
    let dir = TempDir::new().unwrap();
    let config = dir.path().join("audit.toml");
    fs::write(&config, "m = 2\nalpha = \"1/10\"\nheight-max = 8\nno-search = true\n").unwrap();
    let out_path = dir.path().join("report.json");
    let out = logpade(&[
        "audit",
        "--config",
        config.to_str().unwrap(),
        "--out",
        out_path.to_str().unwrap(),
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let written = fs::read(&out_path).unwrap();
    assert_eq!(written, out.stdout);
    let report: Value = serde_json::from_slice(&written).unwrap();
    assert_eq!(report["config"]["height_max"], 8);

    // command-line flags override the file
    let out = logpade(&[
        "audit",
        "--config",
        config.to_str().unwrap(),
        "--height-max",
        "4",
        "--json",
    ]);
    assert_eq!(json(&out)["config"]["height_max"], 4);
}

#[test]
fn unknown_config_keys_are_rejected() {
    let dir = TempDir::new().unwrap();
    let config = dir.path().join("bad.toml");
    fs::write(&config, "heigth-max = 8\n").unwrap();
    let out = logpade(&["audit", "--config", config.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn constants_reports_inapplicable_criterion_without_failing() {
    let out = logpade(&["constants", "--m", "3", "--alpha", "1/10", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["payload"]["measure"]["criterion_inapplicable"], true);
}

#[test]
fn dn_mode_passes() {
    let out = logpade(&["dn", "--n-max", "300"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(!out.stdout.is_empty());
}
