use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_ghz-chsh"));
    c.env_remove("BELL_THREADS");
    c
}

fn config(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("configs").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn schema() -> jsonschema::Validator {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("schema/report.schema.json");
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&schema).expect("schema compiles")
}

/// Runs the command, checks the exit code is 0 and the report matches the
/// schema.
fn report(args: &[&str]) -> Value {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).expect("stdout is JSON");
    let errors: Vec<String> =
        schema().iter_errors(&v).map(|e| format!("{e} at {}", e.instance_path)).collect();
    assert!(errors.is_empty(), "{args:?}: {errors:?}");
    assert_eq!(v["passed"], Value::Bool(true));
    v
}

fn close(v: &Value, expected: f64, tol: f64) -> bool {
    (v.as_f64().expect("number") - expected).abs() <= tol
}

const TSIRELSON: f64 = 2.0 * std::f64::consts::SQRT_2;

#[test]
fn eval_reference_and_all_x() {
    let r = config("reference_n4.json");
    let v = report(&["eval", r.to_str().unwrap()]);
    assert!(close(&v["result"]["i_n"], TSIRELSON, 1e-10));
    assert!(close(&v["result"]["i_n_operator"], TSIRELSON, 1e-10));
    assert_eq!(v["result"]["saturating"], Value::Bool(true));
    assert_eq!(v["manifest"]["command"], "eval");

    let v = report(&["eval", config("all_x_n2.json").to_str().unwrap()]);
    assert!(close(&v["result"]["i_n"], 2.0, 1e-12));
    assert_eq!(v["result"]["saturating"], Value::Bool(false));
}

#[test]
fn eval_errors() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ \"n\": 2, ").unwrap();
    assert_eq!(run(&["eval", bad.to_str().unwrap()]).status.code(), Some(2));

    let unknown = dir.path().join("unknown.json");
    let text = std::fs::read_to_string(config("all_x_n2.json")).unwrap().replacen('{', "{\"extra\": 0, ", 1);
    std::fs::write(&unknown, text).unwrap();
    assert_eq!(run(&["eval", unknown.to_str().unwrap()]).status.code(), Some(2));

    assert_eq!(run(&["eval", "/nonexistent/config.json"]).status.code(), Some(2));

    let big = dir.path().join("big.json");
    let angle = r#"{"alpha":0.3,"phi":0.1}"#;
    let list = vec![angle; 15].join(",");
    std::fs::write(&big, format!(r#"{{"n":16,"a0":[{list}],"a1":[{list}],"b0":{angle},"b1":{angle}}}"#))
        .unwrap();
    assert_eq!(run(&["eval", big.to_str().unwrap()]).status.code(), Some(3));
}

#[test]
fn reduce_reference_and_excluded() {
    let v = report(&["reduce", config("reference_n4.json").to_str().unwrap()]);
    assert!(close(&v["result"]["i_n"], TSIRELSON, 1e-10));
    assert!(close(&v["result"]["i_2"], TSIRELSON, 1e-10));
    assert_eq!(v["result"]["i_2_dominates"], Value::Bool(true));
    assert_eq!(run(&["reduce", config("excluded_n3.json").to_str().unwrap()]).status.code(), Some(4));
}

#[test]
fn degeneracy_counts_and_errors() {
    let v = report(&["degeneracy", "--case", "1", "--n", "6"]);
    assert_eq!(v["result"]["multiplicity"], 16);
    assert_eq!(v["result"]["agreement"], "agree");
    assert_eq!(v["result"]["basis"].as_array().unwrap().len(), 16);

    let v = report(&["degeneracy", "--case", "5", "--n", "4", "--phi-primes", "0,0,1.5707963268"]);
    assert_eq!(v["result"]["multiplicity"], 4);
    assert_eq!(v["result"]["spectral_multiplicity"], 4);

    let v = report(&["degeneracy", "--case", "5", "--n", "4", "--phi-primes", "-1.5707963268,0,0"]);
    assert_eq!(v["result"]["multiplicity"], 4);

    assert_eq!(run(&["degeneracy", "--case", "1", "--n", "5"]).status.code(), Some(5));
    let phase = ["degeneracy", "--case", "5", "--n", "4", "--phi-primes", "0,0,0.3"];
    assert_eq!(run(&phase).status.code(), Some(5));
    assert_eq!(run(&["degeneracy", "--case", "1", "--n", "16"]).status.code(), Some(3));
    assert_eq!(run(&["degeneracy", "--case", "7", "--n", "4"]).status.code(), Some(2));
}

#[test]
fn game_values() {
    let v = report(&["game", "--strategy", "optimal"]);
    let optimal = (2.0 + std::f64::consts::SQRT_2) / 4.0;
    assert!(close(&v["result"]["success_probability"], optimal, 1e-12));
    assert!(close(&v["result"]["chsh_star"]["success_probability"], optimal, 1e-12));
    assert_eq!(v["result"]["monte_carlo"], Value::Null);

    let v = report(&["game", "--strategy", "identity", "--game", "chsh_star"]);
    assert!(close(&v["result"]["success_probability"], 0.75, 1e-12));

    let args = ["game", "--strategy", "optimal", "--shots", "100000", "--seed", "42", "--reproducible"];
    let a = run(&args);
    let b = bin().args(args).env("BELL_THREADS", "3").output().unwrap();
    assert_eq!(a.stdout, b.stdout);
    let v = report(&args);
    assert_eq!(v["manifest"]["seed"], 42);
    assert!(v["result"]["monte_carlo"]["z_score"].as_f64().unwrap() < 5.0);
}

#[test]
fn game_strategy_files() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("s.json");
    let strategy =
        ghz_chsh_cli::strategy::StrategyFile::from_strategy(&ghz_chsh::games::ChshStrategy::optimal());
    std::fs::write(&good, serde_json::to_string(&strategy).unwrap()).unwrap();
    let arg = format!("file:{}", good.display());
    let v = report(&["game", "--strategy", &arg]);
    assert!(close(&v["result"]["i_value"], TSIRELSON, 1e-12));

    let mut bad = strategy.clone();
    bad.alice[0][0][0] = [3.0, 0.0];
    let bad_path = dir.path().join("bad.json");
    std::fs::write(&bad_path, serde_json::to_string(&bad).unwrap()).unwrap();
    let arg = format!("file:{}", bad_path.display());
    assert_eq!(run(&["game", "--strategy", &arg]).status.code(), Some(2));
    assert_eq!(run(&["game", "--strategy", "best"]).status.code(), Some(2));
    assert_eq!(run(&["game", "--strategy", "optimal", "--shots", "0"]).status.code(), Some(2));
}

#[test]
fn scan_reports() {
    let args = ["scan", "--n", "3,4", "--samples", "10000", "--seed", "7", "--reproducible"];
    let v = report(&args);
    assert_eq!(v["result"]["counterexamples"], 0);
    let again = run(&args);
    let threaded = bin().args(args).env("BELL_THREADS", "4").output().unwrap();
    assert_eq!(serde_json::to_vec_pretty(&v).unwrap(), again.stdout.trim_ascii_end());
    assert_eq!(again.stdout, threaded.stdout);
    assert_eq!(run(&["scan", "--samples", "0"]).status.code(), Some(2));
    assert_eq!(run(&["scan", "--threads", "0"]).status.code(), Some(2));
}

#[test]
fn example_n4_report() {
    let v = report(&["example-n4"]);
    let r = &v["result"];
    assert_eq!(r["multiplicity"], 4);
    assert_eq!(r["agreement"], "agree");
    let states = r["states"].as_array().unwrap();
    assert_eq!(states.len(), 4);
    for s in states {
        assert!(s["fidelity"].as_f64().unwrap() >= 1.0 - 1e-10);
    }
}

#[test]
fn csv_output() {
    let out = run(&["degeneracy", "--case", "1", "--n", "4", "--format", "csv", "--reproducible"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("key,value"));
    let basis_rows = text.lines().filter(|l| l.starts_with("result.basis[")).count();
    assert_eq!(basis_rows, 4);
    assert!(text.lines().any(|l| l == "result.multiplicity,4"));
    assert!(text.lines().any(|l| l == "manifest.wall_time_ms,0"));
}

#[test]
fn digest_tracks_input() {
    let a = report(&["scan", "--n", "3", "--samples", "10", "--seed", "1"]);
    let b = report(&["scan", "--n", "3", "--samples", "10", "--seed", "2"]);
    let c = report(&["scan", "--n", "3", "--samples", "10", "--seed", "1", "--format", "json"]);
    assert_ne!(a["manifest"]["config_digest"], b["manifest"]["config_digest"]);
    assert_eq!(a["manifest"]["config_digest"], c["manifest"]["config_digest"]);
}

#[test]
fn schema_rejects_malformed_reports() {
    let mut v = report(&["example-n4", "--reproducible"]);
    let validator = schema();
    assert!(validator.is_valid(&v));
    v["result"]["states"][0]["amplitudes"][0]["bits"] = Value::from("01x1");
    assert!(!validator.is_valid(&v));
    let mut v = report(&["game", "--strategy", "identity"]);
    v["manifest"]["config_digest"] = Value::from("abc");
    assert!(!validator.is_valid(&v));
    let mut v = report(&["scan", "--n", "3", "--samples", "5"]);
    v["result"].as_object_mut().unwrap().remove("counterexamples");
    assert!(!validator.is_valid(&v));
}
