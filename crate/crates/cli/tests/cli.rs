use std::fs;
use std::process::Command;

use lle_cli::report::{field, parse};
use lle_cli::{cmd_generate, cmd_run, cmd_sweep_eps, ExperimentConfig, ModeKind};
use lle_core::dataset::load_csv;

fn lle() -> Command {
    Command::new(env!("CARGO_BIN_EXE_lle"))
}

#[test]
fn generate_writes_one_row_per_point() {
    let dir = tempfile::tempdir().unwrap();
    let config = ExperimentConfig { n_points: 250, out: dir.path().to_path_buf(), ..Default::default() };
    let path = cmd_generate(&config).unwrap();
    let cloud = load_csv(&path).unwrap();
    assert_eq!(cloud.len(), 250);
    assert!(cloud.params().is_some());
}

#[test]
fn generate_is_deterministic_and_seed_sensitive() {
    let dir = tempfile::tempdir().unwrap();
    let write = |seed: u64, sub: &str, hole: bool| {
        let c = ExperimentConfig { n_points: 100, seed, hole, out: dir.path().join(sub), ..Default::default() };
        fs::read(cmd_generate(&c).unwrap()).unwrap()
    };
    assert_eq!(write(4, "a", true), write(4, "b", true));
    assert_ne!(write(4, "a", true), write(5, "c", true));
    assert_eq!(write(4, "d", false), write(4, "e", false));
}

#[test]
fn single_ratio_sweep_matches_run() {
    let dir = tempfile::tempdir().unwrap();
    let base = ExperimentConfig { n_points: 300, k: 10, eps_ratio: 1e-2, ..Default::default() };
    let run_cfg = ExperimentConfig { out: dir.path().join("run"), mode: ModeKind::Regularized, ..base.clone() };
    cmd_run(&run_cfg).unwrap();
    let sweep_cfg = ExperimentConfig { out: dir.path().join("sweep"), mode: ModeKind::Exact, ..base };
    cmd_sweep_eps(&sweep_cfg, &[1e-2]).unwrap();
    for file in ["report.csv", "embedding.csv", "pattern.csv"] {
        let a = fs::read_to_string(dir.path().join("run").join(file)).unwrap();
        let b = fs::read_to_string(dir.path().join("sweep/eps_00").join(file)).unwrap();
        assert_eq!(a, b, "{file}");
    }
    let summary = fs::read_to_string(dir.path().join("sweep/summary.csv")).unwrap();
    assert_eq!(summary.lines().count(), 2);
}

#[test]
fn empty_sweep_is_a_config_error() {
    let config = ExperimentConfig::default();
    let err = cmd_sweep_eps(&config, &[]).unwrap_err();
    assert_eq!(err.exit_code(), 2);
}

#[test]
fn k_not_below_n_exits_with_config_code() {
    let dir = tempfile::tempdir().unwrap();
    let out = lle()
        .args(["run", "--n", "12", "--k", "12", "--out"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("k must be less than"));
}

#[test]
fn unknown_embedding_exits_with_config_code() {
    let out = lle().args(["run", "--embed", "e9"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn rank_deficient_input_exits_with_numerical_code() {
    // points on a line through the origin: rank(X) = 1 < d = 2
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("line.csv");
    let mut text = String::from("x1,x2\n");
    for i in 1..=30 {
        text.push_str(&format!("{},{}\n", i as f64 * 0.37, i as f64 * 0.74));
    }
    fs::write(&input, text).unwrap();
    let out = lle()
        .args(["run", "--k", "4", "--input"])
        .arg(&input)
        .arg("--out")
        .arg(dir.path().join("o"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("exp.cfg");
    fs::write(&cfg, "n=200\nk=8\nmode=exact\nembed=e1\nseed=9\n").unwrap();
    let out_dir = dir.path().join("o");
    let out = lle()
        .args(["run", "--config"])
        .arg(&cfg)
        .args(["--k", "10", "--out"])
        .arg(&out_dir)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let rows = parse(&fs::read_to_string(out_dir.join("report.csv")).unwrap());
    assert_eq!(field(&rows[0], "k"), Some("10"));
    assert_eq!(field(&rows[0], "n_points"), Some("200"));
    assert_eq!(field(&rows[0], "embedding"), Some("e1"));
    assert_eq!(field(&rows[0], "mode"), Some("exact"));
    assert_eq!(field(&rows[0], "d_out"), Some("18"));
    let svg = fs::read_to_string(out_dir.join("scatter.svg")).unwrap();
    assert_eq!(svg.matches("<circle").count(), 200);
}

#[test]
fn run_accepts_a_generated_file_as_input() {
    let dir = tempfile::tempdir().unwrap();
    let gen = ExperimentConfig { n_points: 150, out: dir.path().join("g"), ..Default::default() };
    let path = cmd_generate(&gen).unwrap();
    let from_file = ExperimentConfig { input: Some(path), k: 8, out: dir.path().join("a"), ..Default::default() };
    let direct = ExperimentConfig { n_points: 150, k: 8, out: dir.path().join("b"), ..Default::default() };
    cmd_run(&from_file).unwrap();
    cmd_run(&direct).unwrap();
    let a = fs::read_to_string(dir.path().join("a/embedding.csv")).unwrap();
    let b = fs::read_to_string(dir.path().join("b/embedding.csv")).unwrap();
    assert_eq!(a, b);
}
