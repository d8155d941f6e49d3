use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = mmk::cli::run(std::iter::once("mmk").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> Value {
    let (code, out, err) = run(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    serde_json::from_str(&out).unwrap()
}

fn binary(args: &[&str], workers: &str) -> (i32, Vec<u8>) {
    let output = Command::new(env!("CARGO_BIN_EXE_mmk"))
        .args(args)
        .env("MMK_WORKERS", workers)
        .output()
        .unwrap();
    (output.status.code().unwrap(), output.stdout)
}

#[test]
fn modular_data_json() {
    let v = json(&["modular-data", "--level", "1"]);
    assert_eq!(v["c"], "1/1");
    assert_eq!(v["t"][0], "23/24");
    assert_eq!(v["algebra"]["type"], "su2");
    let v = json(&["modular-data", "--algebra", "minimal", "--m", "3"]);
    assert_eq!(v["labels"].as_array().unwrap().len(), 3);
    assert_eq!(v["c"], "1/2");
}

#[test]
fn fusion_json() {
    let v = json(&["fusion", "--m", "3", "--left", "2,2", "--right", "2,2"]);
    assert_eq!(v["left"], serde_json::json!([1, 2]));
    assert_eq!(v["result"], serde_json::json!([[1, 1], [1, 3]]));
    let v = json(&["fusion", "--level", "4", "--left", "2", "--right", "2"]);
    assert_eq!(v["result"], serde_json::json!([0, 2, 4]));
}

#[test]
fn enumerate_labels_su2_level_10() {
    let v = json(&["invariants", "enumerate", "--algebra", "su2", "--level", "10", "--format", "json"]);
    let mut labels: Vec<&str> = v.as_array().unwrap().iter().map(|x| x["label"].as_str().unwrap()).collect();
    labels.sort();
    assert_eq!(labels, ["A11", "D7", "E6"]);
}

#[test]
fn enumerated_invariants_pass_check() {
    let dir = tempfile::tempdir().unwrap();
    for args in [["--m", "11"], ["--level", "16"]] {
        let (code, out, _) = run(&["invariants", "enumerate", args[0], args[1]]);
        assert_eq!(code, 0);
        let path = dir.path().join("z.json");
        std::fs::write(&path, &out).unwrap();
        let v = json(&["invariants", "check", "--input", path.to_str().unwrap()]);
        assert!(v.as_array().unwrap().iter().all(|x| x["valid"] == true));
    }
}

#[test]
fn check_reports_violations_with_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"algebra":{"type":"su2","level":2},"Z":[[1,1,0],[0,1,0],[0,0,1]]}"#).unwrap();
    let (code, out, _) = run(&["invariants", "check", "--input", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["valid"], false);
    assert_eq!(v["violation"]["kind"], "T-support");
}

#[test]
fn label_command() {
    let dir = tempfile::tempdir().unwrap();
    let (_, out, _) = run(&["invariants", "enumerate", "--m", "11"]);
    let all: Value = serde_json::from_str(&out).unwrap();
    let e6 = all.as_array().unwrap().iter().find(|x| x["label"] == "(A10,E6)").unwrap();
    let path = dir.path().join("e6.json");
    std::fs::write(&path, e6.to_string()).unwrap();
    let v = json(&["invariants", "label", "--input", path.to_str().unwrap()]);
    assert_eq!(v["label"], "(A10,E6)");
    assert_eq!(v["typeI"], true);
    assert_eq!(v["blocks"].as_array().unwrap().len(), 15);

    let (_, out, _) = run(&["invariants", "enumerate", "--level", "16"]);
    let all: Value = serde_json::from_str(&out).unwrap();
    let e7 = all.as_array().unwrap().iter().find(|x| x["label"] == "E7").unwrap();
    std::fs::write(&path, e7.to_string()).unwrap();
    let v = json(&["invariants", "label", "--input", path.to_str().unwrap()]);
    assert_eq!(v["typeI"], false);
    assert!(v["blocks"].is_null());
}

#[test]
fn classify_outputs() {
    let v = json(&["classify", "--m", "5"]);
    let sectors: Vec<u64> = v.as_array().unwrap().iter().map(|e| e["counts"]["ambichiral"].as_u64().unwrap()).collect();
    assert_eq!(sectors, [10, 6]);
    let v = json(&["classify", "--algebra", "su2", "--level", "28"]);
    let labels: Vec<&str> = v.as_array().unwrap().iter().map(|e| e["label"].as_str().unwrap()).collect();
    assert_eq!(labels, ["A29", "D16", "E8"]);
    let v = json(&["classify", "--max-m", "12"]);
    assert_eq!(v.as_array().unwrap().len(), 20);
    let (code, out, _) = run(&["classify", "--m", "11", "--format", "csv"]);
    assert_eq!(code, 0);
    assert!(out.lines().any(|l| l.contains("\"(A10,E6)\",I,4.732050808")));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["bogus"][..],
        &["modular-data", "--level", "3", "--m", "4"],
        &["modular-data", "--algebra", "minimal", "--level", "3"],
        &["modular-data"],
        &["modular-data", "--m", "2"],
        &["modular-data", "--level", "0"],
        &["tables", "--which", "nope"],
        &["tables", "--which", "min-I", "--format", "json"],
        &["invariants", "check", "--input", "/nonexistent/z.json"],
        &["invariants", "enumerate", "--m", "20"],
        &["fusion", "--m", "3", "--left", "x", "--right", "1,1"],
        &["classify", "--max-m", "5", "--level", "3"],
    ] {
        let (code, _, err) = run(args);
        assert_eq!(code, 2, "{args:?}");
        assert!(!err.trim().is_empty(), "{args:?}");
        assert_eq!(err.trim().lines().count(), 1, "{args:?}: {err}");
    }
}

#[test]
fn verify_passes() {
    let (code, out, _) = run(&["verify", "--max-m", "12"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.lines().filter(|l| l.starts_with("PASS")).count() >= 8);
    assert!(!out.contains("FAIL"));
}

#[test]
fn output_is_independent_of_worker_count() {
    for args in [
        &["tables", "--which", "min-I"][..],
        &["invariants", "enumerate", "--m", "12"],
        &["invariants", "enumerate", "--level", "28"],
        &["classify", "--max-m", "12", "--format", "csv"],
    ] {
        let (c1, one) = binary(args, "1");
        let (c4, four) = binary(args, "4");
        assert_eq!((c1, c4), (0, 0), "{args:?}");
        assert_eq!(one, four, "{args:?}");
    }
    let (code, _) = binary(&["tables", "--which", "min-I"], "zero");
    assert_eq!(code, 2);
}
