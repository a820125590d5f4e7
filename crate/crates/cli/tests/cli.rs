use std::fs::File;
use std::path::Path;
use std::process::{Command, Output};

use pursuit::engine::read_trace_json;
use pursuit::fixtures;
use serde_json::Value;

fn pursuit(dir: &Path, args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_pursuit"));
    cmd.args(args).arg("--out-dir").arg(dir);
    for (k, _) in std::env::vars().filter(|(k, _)| k.starts_with("PURSUIT_")) {
        cmd.env_remove(k);
    }
    cmd.envs(env.iter().copied());
    cmd.output().unwrap()
}

fn summary(dir: &Path) -> Value {
    serde_json::from_reader(File::open(dir.join("summary.json")).unwrap()).unwrap()
}

fn assert_ok(out: &Output) {
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
}

fn header(path: &Path) -> String {
    std::fs::read_to_string(path).unwrap().lines().next().unwrap().to_string()
}

#[test]
fn simulate_exports_matching_json_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = pursuit(dir.path(), &["simulate", "--game", "3", "--evader", "e-replanning"], &[]);
    assert_ok(&out);
    let trace = read_trace_json(File::open(dir.path().join("trace.json")).unwrap()).unwrap();
    let csv = std::fs::read_to_string(dir.path().join("trace.csv")).unwrap();
    assert_eq!(csv.lines().count(), trace.samples.len() + 1);
    assert_eq!(header(&dir.path().join("trace.csv")), "t,ex,ey,p1x,p1y,p2x,p2y,p3x,p3y");
    assert!(trace.captured());
    let s = summary(dir.path());
    assert_eq!(s["passed"], true);
    assert_eq!(s["trace_schema_version"], 1);
    assert_eq!(s["config"]["evader"], "e-replanning");
}

#[test]
fn every_evader_name_runs() {
    for ev in ["e", "greedy", "fixed:1.0", "perturbed:1:-10"] {
        let dir = tempfile::tempdir().unwrap();
        assert_ok(&pursuit(dir.path(), &["simulate", "--evader", ev], &[]));
    }
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(pursuit(dir.path(), &["simulate", "--evader", "sideways"], &[]).status.code(), Some(2));
}

#[test]
fn config_file_players_reach_bounds() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("game.json");
    let players = serde_json::to_value(fixtures::right_345()).unwrap();
    std::fs::write(&cfg, serde_json::json!({ "players": players }).to_string()).unwrap();
    let out = pursuit(dir.path(), &["bounds", "--config", cfg.to_str().unwrap()], &[]);
    assert_ok(&out);
    let b: Value = serde_json::from_reader(File::open(dir.path().join("bounds.json")).unwrap()).unwrap();
    let m_d = b["bounds"]["m_d"].as_f64().unwrap();
    let lower = b["bounds"]["b_lower"].as_f64().unwrap();
    assert!((m_d - 53.0 / 12.0).abs() < 1e-12, "{m_d}");
    assert!((lower - 4.033_160).abs() < 1e-6, "{lower}");
    assert!(String::from_utf8_lossy(&out.stdout).contains("4.41667"));
}

#[test]
fn flag_beats_env_beats_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.json");
    std::fs::write(&cfg, r#"{"seed": 1, "n_games": 50}"#).unwrap();
    let c = cfg.to_str().unwrap();

    assert_ok(&pursuit(dir.path(), &["montecarlo", "--config", c], &[]));
    assert_eq!(summary(dir.path())["config"]["seed"], 1);

    assert_ok(&pursuit(dir.path(), &["montecarlo", "--config", c], &[("PURSUIT_SEED", "2")]));
    assert_eq!(summary(dir.path())["config"]["seed"], 2);

    assert_ok(&pursuit(dir.path(), &["montecarlo", "--config", c, "--seed", "3"], &[("PURSUIT_SEED", "2")]));
    let s = summary(dir.path());
    assert_eq!(s["config"]["seed"], 3);
    assert_eq!(s["results"]["summary"]["n_games"], 50);

    // PURSUIT_CONFIG and PURSUIT_N_GAMES work without flags
    assert_ok(&pursuit(dir.path(), &["montecarlo"], &[("PURSUIT_CONFIG", c), ("PURSUIT_N_GAMES", "7")]));
    assert_eq!(summary(dir.path())["results"]["summary"]["n_games"], 7);
}

#[test]
fn montecarlo_csv_has_versioned_header() {
    let dir = tempfile::tempdir().unwrap();
    assert_ok(&pursuit(dir.path(), &["montecarlo", "--n-games", "200"], &[]));
    let h = header(&dir.path().join("montecarlo.csv"));
    assert!(h.starts_with("index,ex,ey,") && h.ends_with(",i_star,bp_over_md"), "{h}");
    let s = summary(dir.path());
    assert_eq!(s["csv_schema_version"], 1);
    assert_eq!(s["results"]["sampler"]["law"]["kind"], "log_radial");
}

#[test]
fn sweeps_write_their_tables() {
    let dir = tempfile::tempdir().unwrap();
    assert_ok(&pursuit(dir.path(), &["sweep", "--grid", "0.5,0.1,0.02"], &[]));
    assert_eq!(header(&dir.path().join("sweep_right.csv")), "s,l,m_d,b_lower,md_over_b");

    let out = pursuit(dir.path(), &["sweep", "--family", "flat", "--grid", "0.1,0.01"], &[("PURSUIT_GRID", "9")]);
    assert_ok(&out);
    let rows = std::fs::read_to_string(dir.path().join("sweep_flat.csv")).unwrap();
    assert_eq!(rows.lines().count(), 3);

    let out = pursuit(dir.path(), &["sweep"], &[("PURSUIT_FAMILY", "flat"), ("PURSUIT_GRID", "0.2,0.05")]);
    assert_ok(&out);
    assert_eq!(summary(dir.path())["config"]["grid"], serde_json::json!([0.2, 0.05]));
}

#[test]
fn table2_passes_on_sampled_games() {
    let dir = tempfile::tempdir().unwrap();
    assert_ok(&pursuit(dir.path(), &["table2", "--n-games", "5"], &[]));
    assert_eq!(header(&dir.path().join("table2_curve.csv")), "game,theta,case,closed,finite_difference,residual");
    let games = std::fs::read_to_string(dir.path().join("table2_games.csv")).unwrap();
    assert_eq!(games.lines().count(), 6);
}

#[test]
fn failed_assertion_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("short.json");
    std::fs::write(&cfg, r#"{"max_time": 0.01}"#).unwrap();
    let out = pursuit(dir.path(), &["simulate", "--config", cfg.to_str().unwrap()], &[]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("FAIL evader captured"));
    assert_eq!(summary(dir.path())["passed"], false);
}

#[test]
fn bad_input_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.json");
    std::fs::write(&cfg, r#"{"seeed": 1}"#).unwrap();
    assert_eq!(pursuit(dir.path(), &["bounds", "--config", cfg.to_str().unwrap()], &[]).status.code(), Some(2));
    assert_eq!(pursuit(dir.path(), &["sweep", "--grid", "0.1,0.5"], &[]).status.code(), Some(2));
    assert_eq!(pursuit(dir.path(), &["montecarlo", "--n-games", "0"], &[]).status.code(), Some(2));
    assert_eq!(pursuit(dir.path(), &["bounds", "--config", "/nonexistent.json"], &[]).status.code(), Some(2));
}

#[test]
fn repeated_seed_gives_identical_csv() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    for d in [&a, &b] {
        assert_ok(&pursuit(d.path(), &["montecarlo", "--n-games", "300", "--seed", "11"], &[]));
    }
    let read = |d: &tempfile::TempDir| std::fs::read(d.path().join("montecarlo.csv")).unwrap();
    assert_eq!(read(&a), read(&b));
}

#[test]
fn inadmissible_players_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("outside.json");
    std::fs::write(&cfg, r#"{"players": {"evader": [5.0, 5.0], "pursuers": [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]}}"#)
        .unwrap();
    for cmd in ["simulate", "bounds"] {
        let out = pursuit(dir.path(), &[cmd, "--config", cfg.to_str().unwrap()], &[]);
        assert_eq!(out.status.code(), Some(2));
        assert!(String::from_utf8_lossy(&out.stderr).contains("strictly inside the pursuers' convex hull"));
    }
}

#[test]
fn simulate_reports_closed_forms() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("eq.json");
    let players = serde_json::to_value(fixtures::equilateral()).unwrap();
    std::fs::write(&cfg, serde_json::json!({ "players": players }).to_string()).unwrap();
    let out = pursuit(dir.path(), &["simulate", "--config", cfg.to_str().unwrap()], &[]);
    assert_ok(&out);
    let text = String::from_utf8_lossy(&out.stdout).to_string();
    assert!(text.contains("M_D         1.00000") && text.contains("B/M_D       0.866025"), "{text}");
    let t = summary(dir.path())["results"]["capture"]["time"].as_f64().unwrap();
    assert!((t - 1.0).abs() < 0.02, "{t}");
}
