use serde_json::Value;
use std::process::{Command, Output};

fn tyang(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tyang")).args(args).env_remove("TYANG_CACHE_DIR").output().expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    tyang(args).status.code().expect("exit code")
}

fn payload(args: &[&str]) -> Vec<u8> {
    let out = tyang(args);
    assert_eq!(out.status.code(), Some(0));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["schema"], "tyang-report/1");
    serde_json::to_vec(&doc["payload"]).unwrap()
}

#[test]
fn passing_checks_exit_zero() {
    assert_eq!(code(&["check", "classical", "--type", "A2", "--K", "2"]), 0);
    assert_eq!(code(&["check", "flatness", "--type", "A1", "--n", "3", "--L", "3"]), 0);
    assert_eq!(code(&["check", "table1", "--type", "G2"]), 0);
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(code(&["check", "classical", "--type", "BOGUS"]), 1);
    assert_eq!(code(&["check", "nosuch", "--type", "A2"]), 1);
    assert_eq!(code(&["check", "classical", "--type", "A2", "--K", "0"]), 1);
    assert_eq!(code(&["all", "--types", ""]), 1);
    assert_eq!(code(&["all", "--types", "A1,BOGUS"]), 1);
    assert_eq!(code(&["frobnicate"]), 1);
    assert_eq!(code(&["--help"]), 0);
}

#[test]
fn inconclusive_exits_three_and_still_writes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let p = path.to_str().unwrap();
    // truncation too small for the realization
    assert_eq!(code(&["check", "classical", "--type", "A2", "--K", "1", "--D", "1", "--format", "json", "--output", p]), 3);
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["payload"]["status"], "INCONCLUSIVE");
    assert!(doc["payload"]["summary"]["inconclusive"].as_u64().unwrap() > 0);
}

#[test]
fn cache_roundtrip_and_corruption() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    assert_eq!(code(&["cache", "build", "--type", "G2", "--cache-dir", d]), 0);
    let file = dir.path().join("G2.json");
    assert!(file.exists());
    let verify = Command::new(env!("CARGO_BIN_EXE_tyang"))
        .args(["cache", "verify", "--type", "G2"])
        .env("TYANG_CACHE_DIR", d)
        .output()
        .unwrap();
    assert_eq!(verify.status.code(), Some(0));

    let mut bytes = std::fs::read(&file).unwrap();
    let i = bytes.len() / 2 + bytes[bytes.len() / 2..].iter().position(|b| b.is_ascii_digit()).unwrap();
    bytes[i] = if bytes[i] == b'7' { b'3' } else { b'7' };
    std::fs::write(&file, &bytes).unwrap();
    assert_eq!(code(&["cache", "verify", "--type", "G2", "--cache-dir", d]), 2);

    std::fs::write(&file, b"{ not json").unwrap();
    assert_eq!(code(&["cache", "verify", "--type", "G2", "--cache-dir", d]), 2);
    assert_eq!(code(&["cache", "verify", "--type", "A3", "--cache-dir", d]), 2);
}

#[test]
fn all_payloads_are_byte_identical() {
    let args = ["all", "--types", "A1,A2", "--K", "1", "--window", "2", "--format", "json"];
    let a = payload(&args);
    assert_eq!(a, payload(&args));
    let doc: Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(doc["status"], "PASS");
    let suites: Vec<&str> = doc["reports"].as_array().unwrap().iter().map(|r| r["suite"].as_str().unwrap()).collect();
    assert!(suites.contains(&"reduced") && suites.contains(&"flatness") && !suites.contains(&"g2"));
}

#[test]
fn rank_three_covers_commuting_pairs() {
    let out = tyang(&["check", "reduced", "--type", "A3", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    let keys: Vec<&str> = doc["payload"]["records"].as_array().unwrap().iter().map(|r| r["key"].as_str().unwrap()).collect();
    assert!(keys.iter().any(|k| k.starts_with("forward ty3")));
    assert!(keys.iter().any(|k| k.starts_with("backward f_serre0")));
}
