//! End-to-end checks of the command-line surface: exit codes, output
//! schemas, and determinism.

use std::process::{Command, Output};

fn grstat(args: &[&str]) -> Output {
    let cache = std::env::temp_dir().join("grstat-cli-test-cache");
    Command::new(env!("CARGO_BIN_EXE_grstat"))
        .args(args)
        .env("GRSTAT_CACHE_DIR", &cache)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn tw_quantile_json_schema() {
    let out = grstat(&["tw", "--beta", "1", "--quantile", "0.95", "--no-cache"]);
    let v = stdout_json(&out);
    assert_eq!(v["schema_version"], "1");
    assert_eq!(v["command"], "tw");
    assert_eq!(v["inputs"]["beta"], 1);
    let s = v["results"]["s"].as_f64().unwrap();
    assert!((s - 0.98).abs() < 0.01);
    assert!(v["caveats"].as_array().unwrap().is_empty());
}

#[test]
fn tw_default_grid_has_121_points() {
    let out = grstat(&["tw", "--beta", "1", "--no-cache"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "s,F");
    assert_eq!(lines.len(), 1 + 121, "default grid is -6(0.1)6");
    // Strictly increasing F column.
    let mut prev = -1.0;
    for line in &lines[1..] {
        let f: f64 = line.split(',').nth(1).unwrap().parse().unwrap();
        assert!(f >= prev);
        prev = f;
    }
}

#[test]
fn crit_pvalue_round_trip_through_binary() {
    let crit = stdout_json(&grstat(&[
        "crit", "--p", "20", "--m", "160", "--n", "40", "--alpha", "0.05", "--no-cache",
    ]));
    let theta = crit["results"]["theta_critical"].as_f64().unwrap();
    let pv = stdout_json(&grstat(&[
        "pvalue", "--p", "20", "--m", "160", "--n", "40", "--theta", &format!("{theta:.17e}"),
        "--no-cache",
    ]));
    let p_value = pv["results"]["p_value"].as_f64().unwrap();
    assert!((p_value - 0.05).abs() < 1e-6, "round trip p-value {p_value}");
}

#[test]
fn pvalue_emits_odd_dimension_caveat() {
    let v = stdout_json(&grstat(&[
        "pvalue", "--p", "5", "--m", "40", "--n", "10", "--theta", "0.6", "--no-cache",
    ]));
    let caveats = v["caveats"].as_array().unwrap();
    assert!(caveats.iter().any(|c| c.as_str().unwrap().contains("odd dimension")));
    let even = stdout_json(&grstat(&[
        "pvalue", "--p", "4", "--m", "40", "--n", "10", "--theta", "0.6", "--no-cache",
    ]));
    assert!(even["caveats"].as_array().unwrap().is_empty());
}

#[test]
fn validation_failures_exit_2() {
    // m < p.
    let out = grstat(&["pvalue", "--p", "5", "--m", "4", "--n", "10", "--theta", "0.5", "--no-cache"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("singular"));
    // theta outside (0,1).
    let out = grstat(&["pvalue", "--p", "5", "--m", "40", "--n", "10", "--theta", "1.5", "--no-cache"]);
    assert_eq!(out.status.code(), Some(2));
    // bad beta.
    let out = grstat(&["tw", "--beta", "3", "--s", "0.0", "--no-cache"]);
    assert_eq!(out.status.code(), Some(2));
    // infeasible dictionary translation names the constraint.
    let out = grstat(&[
        "pvalue", "--setting", "cca", "--pvars", "8", "--qvars", "10", "--nobs", "15",
        "--mean-correct", "--theta", "0.5", "--no-cache",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("at least p"));
}

#[test]
fn table_csv_is_deterministic() {
    let args = [
        "table", "--p", "5", "--m", "40", "--n", "10", "--reps", "400", "--seed", "7",
        "--chunks", "4", "--no-cache",
    ];
    let a = grstat(&args);
    let b = grstat(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout, "same flags must give identical output");
    let text = String::from_utf8(a.stdout).unwrap();
    assert!(text.starts_with("percentile,tw_s,estimate,se\n"));
    assert_eq!(text.lines().count(), 10);
}

#[test]
fn simulate_plot_data_shape() {
    let out = grstat(&[
        "simulate", "--p", "5", "--m", "40", "--n", "10", "--reps", "200", "--seed", "3",
        "--plot-data", "--scale", "theta", "--no-cache",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "empirical,theoretical");
    assert_eq!(lines.len(), 201);
    let mut prev = f64::NEG_INFINITY;
    for line in &lines[1..] {
        let second: f64 = line.split(',').nth(1).unwrap().parse().unwrap();
        assert!(second > prev, "theoretical quantiles increase");
        prev = second;
    }
}

#[test]
fn spectrum_csv_shape() {
    let out = grstat(&[
        "spectrum", "--p", "3", "--m", "12", "--n", "6", "--draws", "4", "--seed", "2", "--no-cache",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("draw,index,theta\n"));
    assert_eq!(text.lines().count(), 1 + 4 * 3);
}

#[test]
fn rate_check_csv_shape() {
    let out = grstat(&["lg-check", "--n-list", "20,40", "--a", "2", "--b", "1", "--no-cache"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "N,sup_error,ratio");
    assert_eq!(lines.len(), 3);
    assert!(lines[1].ends_with(','), "first row has empty ratio");
    // Bad ladder rejected.
    let bad = grstat(&["lg-check", "--n-list", "40,20", "--no-cache"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn cache_round_trip_consistency() {
    let dir = std::env::temp_dir().join(format!("grstat-cache-{}", std::process::id()));
    let run = |extra: &[&str]| {
        let mut args = vec!["tw", "--beta", "2", "--s", "0.0"];
        args.extend_from_slice(extra);
        Command::new(env!("CARGO_BIN_EXE_grstat"))
            .args(&args)
            .env("GRSTAT_CACHE_DIR", &dir)
            .output()
            .expect("binary runs")
    };
    let fresh = run(&[]); // populates the cache
    let cached = run(&[]); // reads it back
    let nocache = run(&["--no-cache"]);
    let f = |o: &Output| {
        serde_json::from_slice::<serde_json::Value>(&o.stdout).unwrap()["results"]["F"]
            .as_f64()
            .unwrap()
    };
    assert!(dir.join("tw-v1-grid-10-10-0.05.csv").exists(), "cache file written");
    assert!((f(&fresh) - f(&cached)).abs() < 1e-9);
    assert!((f(&fresh) - f(&nocache)).abs() < 1e-9);
    let _ = std::fs::remove_dir_all(&dir);
}
