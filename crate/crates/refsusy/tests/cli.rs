//! End-to-end tests of the command-line interface.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_refsusy"))
}

fn repo_config(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../configs")
        .join(name)
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("refsusy-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn identities_suite_passes() {
    let report = tmp("identities.json");
    let out = bin()
        .args(["identities", "--report"])
        .arg(&report)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("PASS anticommutator-expansion-upper"));
    assert!(text.contains("PASS dependency-3"));
    assert!(text.contains("overall: PASS"));
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(json["schema_version"], 1);
    assert_eq!(json["overall"], "pass");
    assert!(json["entries"][0]["anchor"].is_string());
}

#[test]
fn verify_full_suite_on_smooth_models() {
    for cfg in ["one_fold_harmonic.json", "case3_1.json"] {
        let spectra = tmp(&format!("{cfg}.csv"));
        let out = bin()
            .args(["verify", "--suite", "all", "--config"])
            .arg(repo_config(cfg))
            .args(["--points", "400"])
            .arg("--emit-spectra")
            .arg(&spectra)
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0), "{cfg}: {}", stdout(&out));
        let text = stdout(&out);
        assert!(text.contains("PASS intertwining "), "{cfg}: {text}");
        assert!(text.contains("PASS spectral-pairing"), "{cfg}: {text}");
        let csv = std::fs::read_to_string(&spectra).unwrap();
        assert!(csv.starts_with("index,lambda_plus,lambda_minus,gap,matched\n"));
        assert!(csv.lines().count() > 1);
    }
}

#[test]
fn verify_symbolic_suite_on_all_closed_cases() {
    for cfg in [
        "case1.json",
        "case2.json",
        "case3_2.json",
        "case4.json",
        "case5.json",
    ] {
        let out = bin()
            .args(["verify", "--suite", "symbolic", "--config"])
            .arg(repo_config(cfg))
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0), "{cfg}: {}", stdout(&out));
        assert!(stdout(&out).contains("overall: PASS"), "{cfg}");
    }
}

#[test]
fn verify_reports_failure_for_formal_constant_family() {
    let report = tmp("case33.json");
    let out = bin()
        .args(["verify", "--suite", "symbolic", "--config"])
        .arg(repo_config("case3_3.json"))
        .arg("--report")
        .arg(&report)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("FAIL intertwining"), "{text}");
    assert!(text.contains("overall: FAIL"), "{text}");
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(json["overall"], "fail");
}

#[test]
fn strict_mode_rejects_formal_constant_family() {
    let out = bin()
        .args(["verify", "--strict-case33", "--config"])
        .arg(repo_config("case3_3.json"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error:"));
}

#[test]
fn missing_config_is_a_usage_error() {
    let out = bin()
        .args(["verify", "--config", "/nonexistent/nope.json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
