use std::process::{Command, Output};

fn buresgeo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_buresgeo"))
        .args(args)
        .env_remove("BURESGEO_MAX_CUTOFF")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn distance_reports_fidelity() {
    let o = buresgeo(&[
        "distance",
        "--s1",
        "beta=2,r=0,theta=0",
        "--s2",
        "beta=2,r=0.5,theta=0",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("fidelity_trace: 0.907002553"), "{out}");
    assert!(out.contains("bures_distance_sq: 0.185994893"), "{out}");
}

#[test]
fn distance_json_is_machine_readable() {
    let o = buresgeo(&[
        "--format", "json", "distance", "--s1", "beta=2", "--s2", "beta=4",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!((v["fidelity_trace"].as_f64().unwrap() - 0.951646304).abs() < 1e-9);
}

#[test]
fn bad_beta_is_an_input_error() {
    let o = buresgeo(&["distance", "--s1", "beta=-1,r=0,theta=0", "--s2", "beta=1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(
        stderr(&o).contains("beta must be positive"),
        "{}",
        stderr(&o)
    );
}

#[test]
fn metric_values_and_degeneracy() {
    let o = buresgeo(&["metric", "--s", "beta=2,r=0.3,theta=0.1"]);
    let out = stdout(&o);
    assert!(out.contains("g_bb: 0.0575420996"), "{out}");
    assert!(out.contains("g_rr: 0.824027137"), "{out}");
    assert!(out.contains("g_tt: 0.334001093"), "{out}");
    let o = buresgeo(&["metric", "--s", "beta=2,r=0,theta=0"]);
    assert!(stdout(&o).contains("coordinate degeneracy at r=0"));
}

#[test]
fn scan_csv_is_deterministic_and_matches_json() {
    let args = [
        "scan",
        "--beta-min",
        "0.1",
        "--beta-max",
        "10",
        "--steps",
        "100",
    ];
    let a = buresgeo(&args);
    let b = buresgeo(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let csv = stdout(&a);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "beta,u,r_scalar,abs_r,g_bb,g_rr,g_tt");
    assert_eq!(lines.len(), 101);

    let j = buresgeo(&[
        "--format",
        "json",
        "scan",
        "--beta-min",
        "0.1",
        "--beta-max",
        "10",
        "--steps",
        "100",
    ]);
    let rows: Vec<serde_json::Value> = serde_json::from_str(&stdout(&j)).unwrap();
    assert_eq!(rows.len(), 100);
    for (line, row) in lines[1..].iter().zip(&rows) {
        let r: f64 = line.split(',').nth(2).unwrap().parse().unwrap();
        assert_eq!(r, row["r_scalar"].as_f64().unwrap());
    }
}

#[test]
fn scan_writes_file_and_reports_io_errors() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("scan.csv");
    let o = buresgeo(&[
        "--out",
        path.to_str().unwrap(),
        "scan",
        "--beta-min",
        "1",
        "--beta-max",
        "2",
        "--steps",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap().lines().count(), 3);

    let bad = dir.path().join("missing").join("scan.csv");
    let o = buresgeo(&[
        "--out",
        bad.to_str().unwrap(),
        "scan",
        "--beta-min",
        "1",
        "--beta-max",
        "2",
        "--steps",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn scan_rejects_bad_range() {
    let o = buresgeo(&[
        "scan",
        "--beta-min",
        "5",
        "--beta-max",
        "1",
        "--steps",
        "10",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn nmin_cases() {
    let o = buresgeo(&[
        "nmin",
        "--s1",
        "beta=2,r=0,theta=0",
        "--s2",
        "beta=2,r=0.5,theta=0",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("n_min: 6\n"));
    assert!(stdout(&o).contains("infinitesimal bound"));
    let o = buresgeo(&["nmin", "--ds-sq", "0.01"]);
    assert!(stdout(&o).starts_with("n_min: 100\n"));
    let o = buresgeo(&["nmin", "--s1", "beta=3,r=0.2", "--s2", "beta=3,r=0.2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn curvature_command() {
    let o = buresgeo(&["curvature", "--beta", "2", "--numeric"]);
    let out = stdout(&o);
    assert!(out.contains("r_scalar: -7.24489352"), "{out}");
    let o = buresgeo(&["--format", "json", "curvature", "--extrema"]);
    let v: Vec<serde_json::Value> = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(
        v.iter()
            .filter(|r| r["kind"].as_str().unwrap().starts_with("interior"))
            .count(),
        1
    );
}

#[test]
fn verify_small_grid_passes_with_errata() {
    let o = buresgeo(&[
        "--format", "json", "verify", "--grid", "small", "--tol", "1e-6",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let s = &v["summary"];
    assert_eq!(s["failed"], 0);
    assert_eq!(s["total"], s["passed"]);
    let errata = v["errata"].as_array().unwrap();
    for id in [
        "fidelity-numerator",
        "eigenbasis-metric-indices",
        "u-chart-conformal-factor",
    ] {
        assert!(
            errata.iter().any(|e| e.as_str().unwrap().starts_with(id)),
            "{id}"
        );
    }
}

#[test]
fn verify_below_numerical_floor_fails_cleanly() {
    let o = buresgeo(&["verify", "--grid", "small", "--tol", "1e-15"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL fidelity"));
}

#[test]
fn verify_reports_cutoff_exhaustion() {
    let o = Command::new(env!("CARGO_BIN_EXE_buresgeo"))
        .args(["verify", "--grid", "small"])
        .env("BURESGEO_MAX_CUTOFF", "64")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(4), "{}", stderr(&o));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(
        buresgeo(&["distance", "--s1", "beta=1"]).status.code(),
        Some(2)
    );
    assert_eq!(
        buresgeo(&["metric", "--s", "beta=1,zeta=2"]).status.code(),
        Some(2)
    );
}
