use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_reidemeister"))
        .args(args)
        .env_remove("REIDEMEISTER_SEED")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn write_matrix(dir: &TempDir, name: &str, n: usize, entries: &[&str]) -> String {
    let path = dir.path().join(name);
    let body = serde_json::json!({ "n": n, "entries": entries });
    fs::write(&path, body.to_string()).unwrap();
    path.to_str().unwrap().to_string()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn factor_then_verify() {
    let dir = TempDir::new().unwrap();
    let a = write_matrix(&dir, "a.json", 2, &["2", "1", "1", "1"]);
    let cert = dir.path().join("cert.json");
    let out = run(&["factor", &a, "--seed", "3", "--out", p(&cert)]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let out = run(&["verify", p(&cert)]);
    assert_eq!(code(&out), 0);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "verified");
}

#[test]
fn tampered_certificate_fails() {
    let dir = TempDir::new().unwrap();
    let a = write_matrix(&dir, "a.json", 2, &["1", "2", "3", "4"]);
    let out = run(&["factor", &a]);
    assert_eq!(code(&out), 0);
    let mut cert: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    cert["target"]["entries"][0] = "5".into();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, cert.to_string()).unwrap();
    assert_eq!(code(&run(&["verify", p(&bad)])), 1);

    fs::write(&bad, "{ not json").unwrap();
    assert_eq!(code(&run(&["verify", p(&bad)])), 3);
}

#[test]
fn factor_is_reproducible() {
    let dir = TempDir::new().unwrap();
    let a = write_matrix(&dir, "a.json", 3, &["2", "1", "0", "1", "1", "0", "0", "0", "3"]);
    let first = run(&["factor", &a, "--seed", "11"]);
    let second = run(&["factor", &a, "--seed", "11"]);
    assert_eq!(code(&first), 0);
    assert_eq!(first.stdout, second.stdout);

    let env = Command::new(env!("CARGO_BIN_EXE_reidemeister"))
        .args(["factor", &a])
        .env("REIDEMEISTER_SEED", "11")
        .output()
        .unwrap();
    assert_eq!(env.stdout, first.stdout);
}

#[test]
fn shift_and_witness_output_parses() {
    let dir = TempDir::new().unwrap();
    let a = write_matrix(&dir, "a.json", 2, &["1", "1", "0", "1"]);
    let out = run(&["shift", &a, "--seed", "5"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["diagonal"].as_array().unwrap().len(), 2);

    let x = write_matrix(&dir, "x.json", 2, &["0", "1", "1", "0"]);
    let out = run(&["witness", &x]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["t"]["entries"][0], "t1_1_1");
    assert_eq!(v["phiT"]["entries"][0], "t1_1_2");
}

#[test]
fn finite_gl1_f9_frobenius() {
    let out = run(&["finite", "reidemeister", "--kind", "GL", "--n", "1", "--p", "3", "--k", "2", "--auto", "frobenius:1"]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stdout).contains("R = 2"));

    let json = run(&["finite", "reidemeister", "--n", "2", "--p", "3", "--format", "json", "--threads", "1"]);
    let v: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    assert_eq!(v["reidemeisterNumber"], 8);
    let par = run(&["finite", "reidemeister", "--n", "2", "--p", "3", "--format", "json", "--threads", "2"]);
    assert_eq!(json.stdout, par.stdout);
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    // singular input and syntax errors are input errors
    let s = write_matrix(&dir, "s.json", 2, &["1", "2", "2", "4"]);
    assert_eq!(code(&run(&["factor", &s])), 3);
    let e = write_matrix(&dir, "e.json", 1, &["1 + * 2"]);
    assert_eq!(code(&run(&["witness", &e])), 3);
    assert_eq!(code(&run(&["witness", p(&dir.path().join("missing.json"))])), 3);
    // a non-rational entry cannot be factored
    let alg = write_matrix(&dir, "alg.json", 1, &["alg(x^2-2, 1, 2)"]);
    assert_eq!(code(&run(&["factor", &alg])), 3);

    // a cubic eigenvalue factor with complex roots is outside the supported splittings
    let c = write_matrix(&dir, "c.json", 3, &["1", "2", "0", "0", "1", "3", "1", "0", "2"]);
    assert_eq!(code(&run(&["factor", &c, "--seed", "11"])), 2);
    assert_eq!(code(&run(&["finite", "reidemeister", "--n", "2", "--p", "5", "--k", "2"])), 2);
    assert_eq!(code(&run(&["finite", "reidemeister", "--n", "3", "--p", "3", "--cap", "100"])), 4);
    assert_eq!(code(&run(&["finite", "reidemeister", "--n", "2", "--p", "3", "--auto", "rotate"])), 3);
    assert_eq!(code(&run(&["finite", "reidemeister", "--n", "2", "--p", "3", "--auto", "transpose-inverse"])), 3);
    assert_eq!(
        code(&run(&["finite", "width", "--n", "2", "--p", "3", "--auto", "transpose-inverse", "--exploratory"])),
        0
    );
}

#[test]
fn failed_factor_leaves_no_file() {
    let dir = TempDir::new().unwrap();
    let s = write_matrix(&dir, "s.json", 2, &["1", "2", "2", "4"]);
    let cert = dir.path().join("cert.json");
    assert_eq!(code(&run(&["factor", &s, "--out", p(&cert)])), 3);
    assert!(!cert.exists());
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 1);
}

#[test]
fn selftest_passes() {
    let out = run(&["selftest", "--seed", "2"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
    assert!(String::from_utf8_lossy(&out.stdout).lines().all(|l| l.contains("PASS")));
}
