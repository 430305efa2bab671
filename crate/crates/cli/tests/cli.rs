//! End-to-end behavior of the command-line interface.

use std::path::Path;
use std::process::{Command, Output};

use cechmv::seed_count_from_rho;

fn binary() -> &'static str {
    env!("CARGO_BIN_EXE_cechmv")
}

fn run(args: &[&str]) -> Output {
    Command::new(binary())
        .args(args)
        .env_remove(cechmv_cli::DATA_DIR_ENV)
        .output()
        .expect("binary runs")
}

fn write_demo(dir: &Path) -> String {
    let path = dir.join("demo.txt");
    std::fs::write(&path, "a b\na c\nb c\nd e\na d\n").unwrap();
    path.to_string_lossy().into_owned()
}

fn stdout_json(out: &Output) -> serde_json::Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid JSON on stdout")
}

#[test]
fn select_with_defaults_emits_valid_json() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_demo(dir.path());
    let out = run(&["--input", &input, "select", "--seeds", "1"]);
    let json = stdout_json(&out);
    assert_eq!(json["schema_version"], 1);
    assert_eq!(json["graph"]["nodes"], 5);
    assert_eq!(json["graph"]["edges"], 5);
    assert_eq!(json["params"]["alpha"], 0.7);
    assert_eq!(json["params"]["beta"], 2.0);
    assert_eq!(json["params"]["mu"], 0.15);
    assert_eq!(json["seeds"].as_array().unwrap().len(), 1);
}

#[test]
fn seed_ratio_follows_the_floor_rule() {
    assert_eq!(seed_count_from_rho(4941, 0.03), 148);
    assert_eq!(seed_count_from_rho(5, 0.03), 1);

    let dir = tempfile::tempdir().unwrap();
    let input = write_demo(dir.path());
    let out = run(&["--input", &input, "select", "--rho", "0.5"]);
    let json = stdout_json(&out);
    assert_eq!(json["params"]["seed_count"], 2);
}

#[test]
fn missing_file_fails_in_the_load_stage() {
    let out = run(&["--input", "/nonexistent/graph.txt", "select", "--seeds", "1"]);
    assert!(!out.status.success());
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("load"), "stderr was: {stderr}");
}

#[test]
fn unknown_flags_are_rejected() {
    let out = run(&["select", "--definitely-not-a-flag"]);
    assert!(!out.status.success());
}

#[test]
fn help_lists_every_subcommand() {
    let out = run(&["--help"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    for name in ["score", "communities", "select", "simulate", "benchmark"] {
        assert!(text.contains(name), "help is missing {name}");
    }
    for sub in ["select", "simulate", "benchmark"] {
        let out = run(&[sub, "--help"]);
        assert!(out.status.success());
    }
}

#[test]
fn unknown_benchmark_method_fails_in_the_benchmark_stage() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_demo(dir.path());
    let out = run(&["--input", &input, "benchmark", "--methods", "degree,magic"]);
    assert!(!out.status.success());
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("benchmark"), "stderr was: {stderr}");
    assert!(stderr.contains("magic"), "stderr was: {stderr}");
}

#[test]
fn invalid_alpha_fails_in_the_score_stage() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_demo(dir.path());
    let out = run(&["--input", &input, "select", "--seeds", "1", "--alpha", "1.0"]);
    assert!(!out.status.success());
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("score"), "stderr was: {stderr}");
}

#[test]
fn config_file_layers_under_flags() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_demo(dir.path());
    let config_path = dir.path().join("run.toml");
    std::fs::write(
        &config_path,
        "alpha = 0.5\nbeta = 3.0\nrng_seed = 7\nstrategy = \"eager\"\n",
    )
    .unwrap();
    let config = config_path.to_string_lossy();

    // config values apply when no flag is given
    let out = run(&["--input", &input, "--config", &config, "select", "--seeds", "1"]);
    let json = stdout_json(&out);
    assert_eq!(json["params"]["alpha"], 0.5);
    assert_eq!(json["params"]["beta"], 3.0);
    assert_eq!(json["params"]["rng_seed"], 7);
    assert_eq!(json["params"]["strategy"], "eager");

    // flags override the file
    let out = run(&[
        "--input", &input, "--config", &config, "select", "--seeds", "1", "--alpha", "0.9",
        "--strategy", "lazy",
    ]);
    let json = stdout_json(&out);
    assert_eq!(json["params"]["alpha"], 0.9);
    assert_eq!(json["params"]["beta"], 3.0);
    assert_eq!(json["params"]["strategy"], "lazy");
}

#[test]
fn config_input_supplies_the_graph_path() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_demo(dir.path());
    let config_path = dir.path().join("run.toml");
    std::fs::write(&config_path, format!("input = {input:?}\n")).unwrap();
    let out = run(&[
        "--config",
        &config_path.to_string_lossy(),
        "select",
        "--seeds",
        "1",
    ]);
    assert!(out.status.success());
}

#[test]
fn malformed_config_fails_in_the_config_stage() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_demo(dir.path());
    let config_path = dir.path().join("run.toml");
    std::fs::write(&config_path, "alpha = \"lots\"\nnot_a_field = 1\n").unwrap();
    let out = run(&[
        "--input", &input, "--config", &config_path.to_string_lossy(), "select",
    ]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("config"));
}

#[test]
fn data_dir_env_var_resolves_relative_inputs() {
    let dir = tempfile::tempdir().unwrap();
    write_demo(dir.path());
    let out = Command::new(binary())
        .args(["--input", "demo.txt", "select", "--seeds", "1"])
        .env(cechmv_cli::DATA_DIR_ENV, dir.path())
        .current_dir("/")
        .output()
        .expect("binary runs");
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
}

#[test]
fn score_csv_is_sorted_by_score_then_label() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_demo(dir.path());
    let out = run(&["--input", &input, "score"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "node_label,ks,nc,nc_n,hce,hce_n,dschi");
    let order: Vec<&str> = lines[1..]
        .iter()
        .map(|l| l.split(',').next().unwrap())
        .collect();
    // a and d carry entropy; b and c tie and sort by label
    assert_eq!(order, vec!["a", "d", "b", "c", "e"]);
}

#[test]
fn partition_round_trips_through_the_cli() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_demo(dir.path());
    let partition_path = dir.path().join("partition.json");

    let out = run(&[
        "--input",
        &input,
        "communities",
        "--output",
        &partition_path.to_string_lossy(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&partition_path).unwrap();
    let json: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert!(json["communities"].is_array());

    let out = run(&[
        "--input",
        &input,
        "select",
        "--seeds",
        "2",
        "--partition",
        &partition_path.to_string_lossy(),
    ]);
    let json = stdout_json(&out);
    assert_eq!(json["params"]["partition_source"], "file");
    assert_eq!(json["seeds"].as_array().unwrap().len(), 2);
}

#[test]
fn simulate_accepts_seed_files_in_both_formats() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_demo(dir.path());

    let select_json = dir.path().join("seeds.json");
    let out = run(&[
        "--input",
        &input,
        "select",
        "--seeds",
        "2",
        "--output",
        &select_json.to_string_lossy(),
    ]);
    assert!(out.status.success());

    let out = run(&[
        "--input",
        &input,
        "simulate",
        "--seeds-file",
        &select_json.to_string_lossy(),
        "--runs",
        "10",
    ]);
    let json = stdout_json(&out);
    assert_eq!(json["seeds"].as_array().unwrap().len(), 2);
    assert!(json["final_scale"].as_f64().unwrap() >= 2.0 / 5.0);

    let plain = dir.path().join("seeds.txt");
    std::fs::write(&plain, "a\nd\n").unwrap();
    let out = run(&[
        "--input",
        &input,
        "simulate",
        "--seeds-file",
        &plain.to_string_lossy(),
        "--runs",
        "10",
    ]);
    let json = stdout_json(&out);
    assert_eq!(json["seeds"], serde_json::json!(["a", "d"]));
}

#[test]
fn unknown_seed_label_fails_in_the_simulate_stage() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_demo(dir.path());
    let plain = dir.path().join("seeds.txt");
    std::fs::write(&plain, "a\nzz\n").unwrap();
    let out = run(&[
        "--input",
        &input,
        "simulate",
        "--seeds-file",
        &plain.to_string_lossy(),
    ]);
    assert!(!out.status.success());
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("simulate"), "stderr was: {stderr}");
}

#[test]
fn benchmark_writes_all_three_output_files() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_demo(dir.path());
    let csv = dir.path().join("records.csv");
    let json = dir.path().join("records.json");
    let traj = dir.path().join("trajectories.csv");
    let out = run(&[
        "--input",
        &input,
        "benchmark",
        "--methods",
        "cechmv,degree",
        "--runs",
        "10",
        "--rho",
        "0.2",
        "--output-csv",
        &csv.to_string_lossy(),
        "--output-json",
        &json.to_string_lossy(),
        "--trajectories-csv",
        &traj.to_string_lossy(),
    ]);
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );

    let csv_text = std::fs::read_to_string(&csv).unwrap();
    assert!(csv_text.starts_with("method,F_tc,runtime_s,BI\n"));
    assert_eq!(csv_text.lines().count(), 3);

    let json_value: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(json_value["records"].as_array().unwrap().len(), 2);
    assert_eq!(json_value["records"][0]["method"], "cechmv");

    let traj_text = std::fs::read_to_string(&traj).unwrap();
    assert!(traj_text.starts_with("t,cechmv,degree\n"));
}

#[test]
fn simulate_trajectory_csv_matches_json() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_demo(dir.path());
    let traj = dir.path().join("trajectory.csv");
    let out = run(&[
        "--input",
        &input,
        "simulate",
        "--rho",
        "0.2",
        "--runs",
        "10",
        "--trajectory-csv",
        &traj.to_string_lossy(),
    ]);
    let json = stdout_json(&out);
    let csv_text = std::fs::read_to_string(&traj).unwrap();
    let rows = csv_text.lines().count() - 1;
    assert_eq!(rows, json["trajectory"].as_array().unwrap().len());
}
