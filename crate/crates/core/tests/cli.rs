mod common;

use common::fixture_path;
use serde_json::Value;
use std::process::{Command, Output};

fn cyclo2(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cyclo2")).args(args).output().unwrap()
}

fn json(args: &[&str]) -> (Vec<u8>, Value) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = cyclo2(&all);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let value = serde_json::from_slice(&out.stdout).unwrap();
    (out.stdout, value)
}

fn input(name: &str) -> String {
    fixture_path(name).to_string_lossy().into_owned()
}

#[test]
fn every_fixture_loads() {
    for name in ["f2", "fx", "fxy", "fxyz", "f4", "dual"] {
        let path = input(name);
        let out = cyclo2(&["--input", &path, "--max-internal", "1", "--max-homological", "1", "--columns", "2"]);
        assert!(out.status.success(), "{name}: {}", String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn ground_field_hcminus_is_periodic() {
    let path = input("f2");
    let (_, v) = json(&["--input", &path, "--theory", "hcminus", "--max-internal", "0", "--max-homological", "6"]);
    assert_eq!(v["schema"], 1);
    let rows = v["result"].as_array().unwrap();
    assert!(!rows.is_empty());
    for row in rows {
        let n = row["n"].as_i64().unwrap();
        let expected = u64::from(n <= 0 && n % 2 == 0);
        assert_eq!(row["dim"].as_u64().unwrap(), expected, "n = {n}");
    }
    for n in [0, -2, -4, -6] {
        assert!(rows.iter().any(|r| r["n"] == n && r["dim"] == 1));
    }
}

#[test]
fn json_output_is_byte_identical_across_runs() {
    let path = input("fx");
    let args = ["--input", &path, "--command", "verify-approx", "--theory", "hcminus", "--max-internal", "3", "--max-homological", "3", "--seed", "11"];
    let (first, v) = json(&args);
    let (second, _) = json(&args);
    assert_eq!(first, second);
    assert_eq!(v["schema"], 1);
}

#[test]
fn inhomogeneous_relation_is_rejected_as_user_error() {
    let path = input("inhomogeneous");
    let out = cyclo2(&["--input", &path]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("homogeneous"));
}

#[test]
fn missing_file_is_a_user_error() {
    let out = cyclo2(&["--input", "/nonexistent/algebra.alg"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn every_command_runs() {
    let path = input("fx");
    for command in ["compute", "verify-approx", "spectral", "tables"] {
        let out = cyclo2(&["--input", &path, "--command", command, "--max-internal", "2", "--max-homological", "2"]);
        assert!(out.status.success(), "{command}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(!out.stdout.is_empty());
    }
}
