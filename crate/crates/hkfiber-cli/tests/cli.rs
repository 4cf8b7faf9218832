//! End-to-end checks of the hkverify binary: exit codes, report files,
//! determinism, and the fault-injection self-test.

use std::path::PathBuf;
use std::process::Command;

fn hkverify() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hkverify"))
}

fn tmp(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("hkverify_test_{}_{name}", std::process::id()));
    p
}

#[test]
fn verify_suite_writes_report_and_exits_zero() {
    let out = tmp("lemma26.json");
    let status = hkverify()
        .args([
            "verify", "--suite", "lemma26", "--n", "2", "--samples", "20", "--seed", "5",
            "--report",
        ])
        .arg(&out)
        .status()
        .expect("spawn hkverify");
    assert!(status.success());
    let doc: serde_json::Value =
        serde_json::from_slice(&std::fs::read(&out).expect("report written")).unwrap();
    assert_eq!(doc["passed"], serde_json::json!(true));
    assert_eq!(doc["suite"], serde_json::json!("lemma26"));
    assert_eq!(doc["schema_version"], serde_json::json!(1));
    let _ = std::fs::remove_file(&out);
}

#[test]
fn identical_configs_give_byte_identical_reports_modulo_wall_time() {
    let (o1, o2) = (tmp("det1.json"), tmp("det2.json"));
    for out in [&o1, &o2] {
        let status = hkverify()
            .args([
                "verify", "--suite", "lemma72", "--n", "2", "--samples", "30", "--seed", "11",
                "--report",
            ])
            .arg(out)
            .status()
            .expect("spawn");
        assert!(status.success());
    }
    let mut a: serde_json::Value =
        serde_json::from_slice(&std::fs::read(&o1).unwrap()).unwrap();
    let mut b: serde_json::Value =
        serde_json::from_slice(&std::fs::read(&o2).unwrap()).unwrap();
    a["wall_time_ms"] = serde_json::json!(0);
    b["wall_time_ms"] = serde_json::json!(0);
    assert_eq!(
        serde_json::to_string(&a).unwrap(),
        serde_json::to_string(&b).unwrap()
    );
    let _ = std::fs::remove_file(&o1);
    let _ = std::fs::remove_file(&o2);
}

#[test]
fn fault_injection_fails_with_exit_one_and_counterexample() {
    let out = tmp("fault.json");
    let status = hkverify()
        .args([
            "verify", "--suite", "lemma52", "--n", "2", "--samples", "5", "--seed", "5",
            "--fault-inject", "--report",
        ])
        .arg(&out)
        .status()
        .expect("spawn");
    assert_eq!(status.code(), Some(1));
    let doc: serde_json::Value =
        serde_json::from_slice(&std::fs::read(&out).unwrap()).unwrap();
    assert_eq!(doc["passed"], serde_json::json!(false));
    let failures = doc["failures"].as_array().unwrap();
    assert!(!failures.is_empty(), "no counterexample stored");
    assert!(failures[0]["witness"].is_object() || failures[0]["witness"].is_string());
    let _ = std::fs::remove_file(&out);
}

#[test]
fn configuration_errors_exit_two() {
    // Hypothesis N >= 3 unmet.
    let status = hkverify()
        .args(["verify", "--suite", "lemma52", "--n", "1", "--samples", "5"])
        .status()
        .expect("spawn");
    assert_eq!(status.code(), Some(2));
    // Unknown suite.
    let status = hkverify()
        .args(["verify", "--suite", "lemma99", "--samples", "5"])
        .status()
        .expect("spawn");
    assert_eq!(status.code(), Some(2));
}

#[test]
fn list_prints_registry() {
    let out = hkverify().arg("list").output().expect("spawn");
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    for name in ["conventions", "lemma26", "lemma52", "hodge_riemann"] {
        assert!(text.contains(name), "missing suite {name}");
    }
}

#[test]
fn float_backend_runs_within_tolerance() {
    let out = tmp("float.json");
    let status = hkverify()
        .args([
            "verify", "--suite", "lemma52", "--n", "2", "--rank", "3", "--samples", "15",
            "--seed", "5", "--backend", "float", "--tolerance", "1e-9", "--report",
        ])
        .arg(&out)
        .status()
        .expect("spawn");
    assert!(status.success());
    let _ = std::fs::remove_file(&out);
}
