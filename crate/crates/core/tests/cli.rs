use std::fs;
use std::path::Path;

use distgame::cli::{metadata_path, run_command, EXIT_CONFIG, EXIT_NUMERICAL, EXIT_OK};
use distgame::peak_prevalence_analytic;

fn run(args: &[&str]) -> i32 {
    run_command(std::iter::once("distgame").chain(args.iter().copied()))
}

fn rows(path: &Path) -> Vec<Vec<String>> {
    fs::read_to_string(path)
        .unwrap()
        .lines()
        .map(|l| l.split(',').map(str::to_owned).collect())
        .collect()
}

fn col(rows: &[Vec<String>], k: usize) -> Vec<f64> {
    rows[1..].iter().map(|r| r[k].parse().unwrap()).collect()
}

#[test]
fn simulate_writes_trajectory_and_metadata() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("traj.csv");
    let code = run(&[
        "simulate", "--r0", "2.67", "--gamma-inv", "8.5", "--n", "10000", "--i0", "0.001",
        "--delta", "0", "--tf", "180", "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_OK);
    let r = rows(&out);
    assert_eq!(r[0].join(","), "t,S,I,R");
    assert_eq!(r.len(), 362);
    let peak = col(&r, 2).into_iter().fold(0.0, f64::max) / 1e4;
    let expected = peak_prevalence_analytic(2.67, 0.999, 0.001).unwrap();
    assert!((peak - expected).abs() < 0.005);

    let meta: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(metadata_path(&out)).unwrap()).unwrap();
    assert_eq!(meta["command"], "simulate");
    assert_eq!(meta["config"]["r0"], 2.67);
    assert!(meta["version"].is_string() && meta["elapsed_ms"].is_number());
}

#[test]
fn full_distancing_keeps_susceptibles_constant() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("d1.csv");
    assert_eq!(run(&["simulate", "--delta", "1", "--out", out.to_str().unwrap()]), EXIT_OK);
    assert!(col(&rows(&out), 1).iter().all(|&s| s == 9990.0));
}

#[test]
fn cost_field_from_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("baseline.json");
    let out = dir.path().join("phi.csv");
    fs::write(&cfg, format!(r#"{{"r0": 2.67, "gamma_inv": 8.5, "output": {:?}}}"#, out)).unwrap();
    assert_eq!(run(&["cost-field", "--config", cfg.to_str().unwrap()]), EXIT_OK);
    let r = rows(&out);
    assert_eq!(r[0].join(","), "delta,t,value");
    assert_eq!(r.len(), 1 + 21 * 361);
    for row in &r[1..] {
        match row[0].as_str() {
            "0" => assert_eq!(row[2], "inf"),
            "1" => assert_eq!(row[2], "0"),
            _ => {}
        }
    }
}

#[test]
fn flags_and_config_give_identical_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    let cfg = dir.path().join("c.json");
    fs::write(
        &cfg,
        format!(r#"{{"delta": 0.25, "tf": 60, "c_d": 2, "c_i": 500, "output": {:?}}}"#, b),
    )
    .unwrap();
    for cmd in ["simulate", "strategy", "total-cost", "field"] {
        let flags = ["--delta", "0.25", "--tf", "60", "--c-d", "2", "--c-i", "500"];
        let mut args = vec![cmd];
        args.extend(flags);
        args.extend(["--out", a.to_str().unwrap()]);
        assert_eq!(run(&args), EXIT_OK);
        assert_eq!(run(&[cmd, "--config", cfg.to_str().unwrap()]), EXIT_OK);
        assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap(), "{cmd}");
        // rerun is byte-identical too
        assert_eq!(run(&args), EXIT_OK);
        assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap(), "{cmd} rerun");
    }
}

#[test]
fn every_subcommand_writes_its_schema() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        ("simulate", "t,S,I,R"),
        ("sweep-grid", "r0,gamma_inv,t,S,I,R"),
        ("field", "delta,t,value"),
        ("utility-field", "delta,t,value"),
        ("cost-field", "delta,t,value"),
        ("strategy", "t,r_i,j_distance,j_not,preferred"),
        ("total-cost", "delta,c_d,c_i,dt_cost,total_cost"),
    ];
    for (cmd, header) in cases {
        let out = dir.path().join(format!("{cmd}.csv"));
        let code = run(&[cmd, "--tf", "30", "--delta-values", "0,0.5,1", "--out", out.to_str().unwrap()]);
        assert_eq!(code, EXIT_OK, "{cmd}");
        let r = rows(&out);
        assert_eq!(r[0].join(","), header, "{cmd}");
        assert!(r.len() > 1);
        assert!(metadata_path(&out).exists());
    }
    let sweep = rows(&dir.path().join("sweep-grid.csv"));
    assert_eq!(sweep.len(), 1 + 30 * 61);
    let strat = rows(&dir.path().join("strategy.csv"));
    assert!(strat[1..]
        .iter()
        .all(|r| ["distance", "not_distance", "indifferent"].contains(&r[4].as_str())));
}

#[test]
fn json_format() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("traj.json");
    assert_eq!(run(&["simulate", "--tf", "10", "--format", "json", "--out", out.to_str().unwrap()]), EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["states"].as_array().unwrap().len(), 21);
}

#[test]
fn config_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.csv");
    let out = out.to_str().unwrap();
    assert_eq!(run(&["simulate", "--gamma-inv", "-2", "--out", out]), EXIT_CONFIG);
    assert_eq!(run(&["simulate", "--delta", "abc", "--out", out]), EXIT_CONFIG);
    assert_eq!(run(&["simulate", "--bogus", "1", "--out", out]), EXIT_CONFIG);
    assert_eq!(run(&["simulate"]), EXIT_CONFIG);
    assert_eq!(run(&["frobnicate"]), EXIT_CONFIG);
    assert_eq!(run(&["total-cost", "--dt-cost", "0.3", "--out", out]), EXIT_CONFIG);
    let cfg = dir.path().join("bad.json");
    fs::write(&cfg, r#"{"r0": 2.67, "colour": "blue"}"#).unwrap();
    assert_eq!(run(&["simulate", "--config", cfg.to_str().unwrap(), "--out", out]), EXIT_CONFIG);
    assert_eq!(run(&["simulate", "--config", "/nonexistent.json", "--out", out]), EXIT_CONFIG);
}

#[test]
fn numerical_failure_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.csv");
    let code = run(&[
        "sweep-grid", "--r0-values", "400", "--gamma-inv-values", "0.2", "--dt-internal", "0.5",
        "--tf", "10", "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_NUMERICAL);
}
