use std::fs;
use std::process::{Command, Output};

fn spiked(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spiked")).args(args).output().expect("binary runs")
}

fn spectrum_rows(path: &std::path::Path) -> Vec<(usize, f64, f64)> {
    let text = fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("k,E,dE"));
    lines
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            (f[0].parse().unwrap(), f[1].parse().unwrap(), f[2].parse().unwrap())
        })
        .collect()
}

#[test]
fn pps_spectrum_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("pps.csv");
    let o = spiked(&[
        "spectrum", "--method", "pps", "--omega", "1", "--a", "0.5", "--ell", "5", "--emax", "26",
        "--fit-points", "100", "--output", out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let rows = spectrum_rows(&out);
    assert_eq!(rows[0].0, 0);
    assert!((rows[0].2 - 0.005038139).abs() < 1e-9, "{:?}", rows[0]);
}

#[test]
fn matrix_spectrum_large_ell() {
    let o = spiked(&["spectrum", "--method", "matrix", "--omega", "1", "--a2", "1.0", "--ell", "40", "--size", "100"]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    let e0: f64 = text.lines().nth(1).unwrap().split(',').nth(1).unwrap().parse().unwrap();
    assert!((e0 - 41.50031254).abs() < 1e-8, "{e0}");
}

#[test]
fn det_spectrum_single_term() {
    let o = spiked(&["spectrum", "--method", "det", "--omega", "1", "--a", "0.5", "--ell", "5", "--n", "0", "--window", "6", "7", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let de = v["levels"][0]["dE"].as_f64().unwrap();
    assert!((de - 0.005042540).abs() < 1e-9, "{de}");
}

#[test]
fn output_is_deterministic() {
    let args = ["spectrum", "--method", "matrix", "--a", "0.5", "--ell", "6", "--size", "60"];
    assert_eq!(spiked(&args).stdout, spiked(&args).stdout);
}

#[test]
fn fig1_header_and_shape() {
    let o = spiked(&["fig1", "--a", "0.5", "--ell", "5", "--points", "2001"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = String::from_utf8(o.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("r,psi0,psi1,psi2,psi3,psi4,psi5"));
    assert_eq!(lines.count(), 2001);
}

#[test]
fn reproduce_table3_reports_cells() {
    let o = spiked(&["reproduce", "--table", "3", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["cells"].as_array().unwrap().len(), 50);
}

#[test]
fn check_is_machine_readable() {
    let o = spiked(&["check", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let checks = v.as_array().unwrap();
    assert!(checks.iter().any(|c| c["name"].as_str().unwrap().starts_with("bessel")));
    assert!(checks.iter().all(|c| c["pass"].is_boolean()));
}

#[test]
fn bad_arguments_exit_2() {
    assert_eq!(spiked(&["spectrum", "--ell", "5"]).status.code(), Some(2));
    assert_eq!(spiked(&["spectrum", "--a", "0.5", "--ell", "5", "--method", "det"]).status.code(), Some(2));
    assert_eq!(spiked(&["spectrum", "--a=-1", "--ell", "5"]).status.code(), Some(2));
    assert_eq!(spiked(&["reproduce", "--table", "9"]).status.code(), Some(2));
}

#[test]
fn computation_error_exits_1() {
    let o = spiked(&["spectrum", "--method", "det", "--a", "0.5", "--ell", "5", "--n", "2", "--window", "7", "6"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("invalid bracket"));
}
