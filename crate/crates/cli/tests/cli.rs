//! End-to-end tests of the `fermsig` binary: exit codes, determinism,
//! golden output, and the trivial-mode examples.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_fermsig"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("fermsig-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

/// Parses one CSV column (by header name) as f64.
fn column(csv: &str, name: &str) -> Vec<f64> {
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let idx = header.iter().position(|h| *h == name).expect("column exists");
    lines
        .map(|l| l.split(',').nth(idx).unwrap().parse().unwrap())
        .collect()
}

#[test]
fn verify_default_config_is_deterministic_and_passes() {
    let out1 = tmp("verify1.json");
    let out2 = tmp("verify2.json");
    let s1 = run(&["verify", "--out", out1.to_str().unwrap()]);
    assert_eq!(s1.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&s1.stderr));
    let s2 = bin()
        .args(["verify", "--out", out2.to_str().unwrap()])
        .env("FERMSIG_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(s2.status.code(), Some(0));
    let b1 = std::fs::read(&out1).unwrap();
    let b2 = std::fs::read(&out2).unwrap();
    assert_eq!(b1, b2, "reports are not byte-identical");
    let report: serde_json::Value = serde_json::from_slice(&b1).unwrap();
    assert_eq!(report["schema_version"], "1");
    assert_eq!(report["all_pass"], true);
}

#[test]
fn verify_degraded_tolerance_fails_oracle_equivalence() {
    let out = tmp("verify_bad.json");
    let s = run(&["verify", "--set", "rtol=1e-2", "--out", out.to_str().unwrap()]);
    assert_eq!(s.status.code(), Some(1));
    let report: serde_json::Value =
        serde_json::from_slice(&std::fs::read(&out).unwrap()).unwrap();
    assert_eq!(report["all_pass"], false);
    let oracle = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "oracle_equivalence")
        .unwrap();
    assert_eq!(oracle["pass"], false);
    assert!(oracle["measured"].as_f64().unwrap() > 1e-3);
}

#[test]
fn evolve_matches_golden_trajectory() {
    let out = tmp("golden.csv");
    let s = run(&[
        "evolve",
        "--set", "lambda_list=[1.5]",
        "--set", "mass_list=[1.0]",
        "--set", "time_grid.start=-5",
        "--set", "time_grid.stop=5",
        "--set", "time_grid.steps=21",
        "--set", "rtol=1e-12",
        "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(s.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&s.stderr));
    let got = std::fs::read(&out).unwrap();
    let golden =
        std::fs::read(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data/golden_evolve.csv"))
            .unwrap();
    assert_eq!(got, golden, "trajectory differs from the golden file");
}

#[test]
fn evolve_trivial_mode_has_constant_norm() {
    let out = tmp("trivial.csv");
    let s = run(&[
        "evolve",
        "--set", "lambda_list=[0]",
        "--set", "mass_list=[1.0]",
        "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(s.status.code(), Some(0));
    let csv = std::fs::read_to_string(&out).unwrap();
    for n in column(&csv, "norm") {
        assert!((n - 1.0).abs() < 1e-9, "norm {n} drifted");
    }
}

#[test]
fn evolve_ultrastatic_phase_advances_at_omega() {
    // Cauchy data on the positive-frequency eigenvector of lambda=3, m=4,
    // so u(t) = e^{-5it} u0 and the phase advances at omega = 5
    let out = tmp("phase.csv");
    let s = run(&[
        "evolve",
        "--set", "spacetime=ultrastatic",
        "--set", "lambda_list=[3]",
        "--set", "mass_list=[4.0]",
        "--set", "cauchy_data=[0.9486832980505138,0.0,0.31622776601683794,0.0]",
        "--set", "time_grid.start=0",
        "--set", "time_grid.stop=0.5",
        "--set", "time_grid.steps=6",
        "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(s.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&s.stderr));
    let csv = std::fs::read_to_string(&out).unwrap();
    let phases = column(&csv, "phase_u1");
    for w in phases.windows(2) {
        let rate = (w[1] - w[0]) / 0.1;
        assert!((rate + 5.0).abs() < 1e-9, "phase rate {rate}, expected -5");
    }
}

#[test]
fn signature_json_output_is_well_formed() {
    let out = tmp("signature.json");
    let s = run(&[
        "signature",
        "--set", "format=json",
        "--set", "lambda_list=[0,1.5]",
        "--set", "mass_list=[1.0,2.0]",
        "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(s.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&s.stderr));
    let doc: serde_json::Value =
        serde_json::from_slice(&std::fs::read(&out).unwrap()).unwrap();
    assert_eq!(doc["schema_version"], "1");
    assert_eq!(doc["command"], "signature");
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 4);
    let cols: Vec<&str> = doc["columns"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c.as_str().unwrap())
        .collect();
    let nu = cols.iter().position(|c| *c == "nu").unwrap();
    // the trivial mode has nu = 1 at every mass
    for row in &rows[..2] {
        assert!((row[nu].as_f64().unwrap() - 1.0).abs() < 1e-10);
    }
}

#[test]
fn signature_ultrastatic_nu_is_one() {
    let out = tmp("us.csv");
    let s = run(&[
        "signature",
        "--set", "spacetime=ultrastatic",
        "--set", "lambda_list=[-2.5,0,1.5,3]",
        "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(s.status.code(), Some(0));
    let csv = std::fs::read_to_string(&out).unwrap();
    for nu in column(&csv, "nu") {
        assert!((nu - 1.0).abs() < 1e-13);
    }
}

#[test]
fn exit_code_contract() {
    // malformed config file
    let bad = tmp("bad.json");
    std::fs::write(&bad, "{not json").unwrap();
    assert_eq!(run(&["evolve", "--config", bad.to_str().unwrap()]).status.code(), Some(2));
    // missing config file
    assert_eq!(run(&["evolve", "--config", "/nonexistent.json"]).status.code(), Some(2));
    // empty lambda list
    assert_eq!(run(&["verify", "--set", "lambda_list=[]"]).status.code(), Some(2));
    // unknown configuration key
    assert_eq!(run(&["evolve", "--set", "bogus=1"]).status.code(), Some(2));
    // lambda outside the de Sitter budget
    assert_eq!(run(&["evolve", "--set", "lambda_list=[10.5]"]).status.code(), Some(2));
    // non-half-integer de Sitter lambda
    assert_eq!(run(&["evolve", "--set", "lambda_list=[0.7]"]).status.code(), Some(2));
    // sweep needs de Sitter
    assert_eq!(run(&["sweep", "--set", "spacetime=ultrastatic"]).status.code(), Some(2));
    // invalid thread override
    assert_eq!(
        bin().args(["evolve"]).env("FERMSIG_THREADS", "zero").output().unwrap().status.code(),
        Some(2)
    );
}

#[test]
fn sweep_reports_unitary_scattering_data() {
    let out = tmp("sweep.csv");
    let s = run(&[
        "sweep",
        "--set", "lambda_list=[1.5,2.5]",
        "--set", "mass_list=[1.0,1.5]",
        "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(s.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&s.stderr));
    let csv = std::fs::read_to_string(&out).unwrap();
    for name in ["defect_plus", "defect_minus"] {
        for d in column(&csv, name) {
            assert!(d < 1e-9, "{name} = {d}");
        }
    }
    // rows sorted by lambda then m
    let lam = column(&csv, "lambda");
    assert_eq!(lam, vec![1.5, 1.5, 2.5, 2.5]);
}
