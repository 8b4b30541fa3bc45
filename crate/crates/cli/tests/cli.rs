use std::process::{Command, Output};

use serde_json::Value;

fn grsd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_grsd"))
        .args(args)
        .env_remove("GRSD_EXHAUSTIVE_BOUND")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.push("--json");
    let out = grsd(&all);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_str(&stdout(&out)).expect("valid JSON")
}

#[test]
fn count_z7_euclidean() {
    let out = grsd(&["count", "--p", "2", "--r", "2", "--s", "1", "--group", "Z7", "--dual", "euclidean"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "3\n");
}

#[test]
fn exists_z3_over_f3_is_false() {
    let out = grsd(&["exists", "--p", "3", "--r", "1", "--group", "Z3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "false\n");
}

#[test]
fn verify_small_bound_passes() {
    let out = grsd(&["verify", "--max-ring-size", "1024"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).ends_with(" 0 failed\n"));
}

#[test]
fn json_documents_have_stable_keys() {
    let invocations: &[&[&str]] = &[
        &["gr", "info", "--p", "2", "--r", "2", "--s", "2"],
        &["classes", "--p", "2", "--s", "2", "--group", "Z15"],
        &["count", "--p", "2", "--r", "2", "--group", "Z2xZ3", "--dual", "none"],
        &["exists", "--p", "2", "--r", "1", "--s", "2", "--group", "Z2", "--dual", "hermitian"],
        &["construct", "--p", "3", "--r", "2", "--group", "Z2"],
        &["enumerate", "--p", "2", "--r", "2", "--group", "Z2"],
        &["table", "--p", "2", "--lengths", "1..4", "--format", "json"],
        &["verify", "--max-ring-size", "64"],
    ];
    for args in invocations {
        let v = json(args);
        for key in ["parameters", "result", "breakdown"] {
            assert!(v.get(key).is_some(), "{args:?} lacks {key}");
        }
        assert!(v["breakdown"].is_array());
    }
}

#[test]
fn count_json_records_providers() {
    let v = json(&["count", "--p", "2", "--r", "2", "--group", "Z6", "--dual", "euclidean"]);
    assert_eq!(v["result"]["count"], "3");
    assert_eq!(v["parameters"]["provider"], "auto");
    let rows = v["breakdown"].as_array().unwrap();
    assert!(!rows.is_empty());
    assert!(rows.iter().all(|r| r["provider"].is_string()));

    let brute = json(&["count", "--p", "2", "--r", "2", "--group", "Z6", "--dual", "euclidean", "--provider", "brute"]);
    assert_eq!(brute["result"]["count"], "3");
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["verify", "--max-ring-size", "256", "--json"][..],
        &["enumerate", "--p", "2", "--r", "2", "--group", "Z3", "--json"][..],
        &["classes", "--p", "3", "--s", "2", "--group", "Z2xZ4"][..],
    ] {
        assert_eq!(grsd(args).stdout, grsd(args).stdout, "{args:?}");
    }
}

#[test]
fn table_csv_has_fixed_header_and_empty_cells() {
    let out = grsd(&["table", "--p", "2", "--r", "2", "--s", "1", "--lengths", "1..3"]);
    assert_eq!(stdout(&out), "n,NC,NEC,NHC\n1,3,1,\n2,7,1,\n3,9,1,\n");
}

#[test]
fn enumerate_methods_agree_on_semisimple_ring() {
    let brute = json(&["enumerate", "--p", "2", "--r", "2", "--group", "Z7", "--dual", "euclidean"]);
    let dec = json(&["enumerate", "--p", "2", "--r", "2", "--group", "Z7", "--dual", "euclidean", "--method", "decomposition"]);
    assert_eq!(brute["result"]["count"], "3");
    assert_eq!(dec["result"]["count"], "3");
}

#[test]
fn construct_reports_a_verified_code() {
    let v = json(&["construct", "--p", "2", "--r", "1", "--s", "2", "--group", "Z2xZ7", "--dual", "hermitian"]);
    assert_eq!(v["result"]["self_dual"], true);
}

#[test]
fn errors_exit_with_two() {
    for args in [
        &["frobnicate"][..],
        &["count", "--p", "4", "--r", "1", "--group", "Z3"][..],
        &["count", "--p", "2", "--r", "1", "--group", "Q8"][..],
        &["count", "--p", "2", "--group", "Z3"][..],
        &["exists", "--p", "3", "--r", "1", "--group", "Z3", "--dual", "hermitian"][..],
        &["table", "--p", "2", "--lengths", "5..2"][..],
        &["construct", "--p", "3", "--r", "1", "--group", "Z3"][..],
    ] {
        let out = grsd(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn bound_override_is_honoured() {
    let out = Command::new(env!("CARGO_BIN_EXE_grsd"))
        .args(["enumerate", "--p", "2", "--r", "2", "--group", "Z8"])
        .env("GRSD_EXHAUSTIVE_BOUND", "16")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("bound"));
}
