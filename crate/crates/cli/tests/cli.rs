use std::f64::consts::PI;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_diraccomb"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn csv_rows(out: &Output) -> Vec<csv::StringRecord> {
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    csv::Reader::from_reader(out.stdout.as_slice())
        .records()
        .map(|r| r.unwrap())
        .collect()
}

fn field(row: &csv::StringRecord, i: usize) -> f64 {
    row[i].parse().unwrap()
}

#[test]
fn mixed_energy_is_pi_over_48() {
    let out = run(&["energy", "--omega", "0", "--gamma", "0", "--a", "1"]);
    let rows = csv_rows(&out);
    assert_eq!(rows.len(), 1);
    assert!((field(&rows[0], 3) - PI / 48.0).abs() < 1e-8);
}

#[test]
fn free_comb_energy_is_zero() {
    let rows = csv_rows(&run(&["energy", "--w0", "0", "--w1", "0"]));
    assert!(field(&rows[0], 3).abs() < 1e-10);
}

#[test]
fn csv_header_order_is_fixed() {
    let out = run(&["scan-couplings", "--gamma-count", "2", "--omega-count", "2"]);
    let header = String::from_utf8(out.stdout).unwrap();
    assert!(header.starts_with("gamma,omega,energy,abs_err,sign\n"));
}

#[test]
fn scan_couplings_corners_and_order() {
    let out = run(&[
        "scan-couplings",
        "--a",
        "0.5",
        "--gamma-min",
        "0",
        "--gamma-max",
        "1e6",
        "--gamma-count",
        "2",
        "--omega-min",
        "-1",
        "--omega-max",
        "0",
        "--omega-count",
        "2",
    ]);
    let rows = csv_rows(&out);
    let pts: Vec<(f64, f64)> = rows.iter().map(|r| (field(r, 0), field(r, 1))).collect();
    assert_eq!(pts, vec![(0.0, -1.0), (0.0, 0.0), (1e6, -1.0), (1e6, 0.0)]);
    assert!(field(&rows[0], 2).abs() < 1e-10);
    assert_eq!(&rows[0][4], "0");
    assert!((field(&rows[1], 2) - PI / 24.0).abs() < 1e-8);
    assert_eq!(&rows[1][4], "1");
    let dirichlet = -PI / 12.0;
    assert!(((field(&rows[2], 2) - dirichlet) / dirichlet).abs() < 1e-3);
    assert_eq!(&rows[2][4], "-1");
}

#[test]
fn json_and_csv_agree_to_the_bit() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("e.json");
    let out = run(&[
        "energy",
        "--w0",
        "5",
        "--w1",
        "0.5",
        "--a",
        "2",
        "--format",
        "json",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["command"], "energy");
    assert!(doc["tolerances"]["abs_tol"].is_number());
    assert!(doc["version"].is_string());
    let from_json = doc["results"][0]["energy"].as_f64().unwrap();
    assert!(from_json < 0.0 && from_json.is_finite());

    let rows = csv_rows(&run(&["energy", "--w0", "5", "--w1", "0.5", "--a", "2"]));
    assert_eq!(field(&rows[0], 3).to_bits(), from_json.to_bits());
}

#[test]
fn ratio_is_positive_and_finite() {
    let rows = csv_rows(&run(&["ratio-w0", "--w0-count", "6"]));
    assert_eq!(rows.len(), 6);
    for r in &rows {
        let ratio = field(r, 3);
        assert!(ratio.is_finite() && ratio > 0.0);
    }
}

#[test]
fn free_bands_touch() {
    let rows = csv_rows(&run(&[
        "bands",
        "--w0",
        "0",
        "--w1",
        "0",
        "--n-bands",
        "3",
        "--theta-points",
        "3",
    ]));
    let edges: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| field(r, 1) == 0.0)
        .map(|r| (field(r, 4), field(r, 5)))
        .collect();
    assert_eq!(edges.len(), 3);
    for w in edges.windows(2) {
        assert!((w[0].1 - w[1].0).abs() < 1e-9);
    }
}

#[test]
fn scan_a_decays() {
    let rows = csv_rows(&run(&[
        "scan-a",
        "--w0",
        "5",
        "--w1",
        "0.5",
        "--a-min",
        "1",
        "--a-max",
        "8",
        "--a-count",
        "4",
        "--log",
    ]));
    let mags: Vec<f64> = rows.iter().map(|r| field(r, 3).abs()).collect();
    assert!(mags.windows(2).all(|w| w[1] < w[0]), "{mags:?}");
}

#[test]
fn domain_errors_exit_2() {
    for args in [
        &["energy", "--omega", "0", "--gamma", "-1"][..],
        &["energy", "--omega", "2", "--gamma", "1"],
        &["energy", "--w0", "1", "--gamma", "1"],
        &["energy", "--w0", "1", "--w1", "0", "--a", "0"],
        &[
            "scan-a", "--w0", "1", "--w1", "0", "--a-min", "2", "--a-max", "1",
        ],
        &["ratio-w0", "--w0-max", "2"],
        &["bands", "--w0", "1", "--w1", "0", "--n-bands", "0"],
    ] {
        let out = run(args);
        assert_eq!(
            out.status.code(),
            Some(2),
            "{args:?}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
}

#[test]
fn unmet_tolerance_exits_3() {
    let out = run(&[
        "energy",
        "--w0",
        "5",
        "--w1",
        "0.5",
        "--max-subdivisions",
        "1",
        "--abs-tol",
        "1e-15",
        "--rel-tol",
        "1e-15",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn verify_is_reproducible() {
    let a = run(&["verify", "--seed", "7", "--format", "json"]);
    let b = run(&["verify", "--seed", "7", "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
    let doc: Value = serde_json::from_slice(&a.stdout).unwrap();
    let reports = doc["results"].as_array().unwrap();
    assert_eq!(reports.len(), 10);
    let all_pass = reports.iter().all(|r| r["passed"] == true);
    assert_eq!(a.status.code(), Some(if all_pass { 0 } else { 3 }));
}
