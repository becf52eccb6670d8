use std::path::PathBuf;
use std::process::{Command, Output};

use jsonschema::JSONSchema;
use serde_json::{json, Value};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_fdecomp"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn fdecomp")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn schema(name: &str) -> JSONSchema {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("schemas")
        .join(format!("{name}.schema.json"));
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    JSONSchema::compile(&doc).expect("schema compiles")
}

/// Runs a JSON command, checks exit 0 and validates against `schema_name`.
fn run_json(schema_name: &str, args: &[&str]) -> Value {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let s = schema(schema_name);
    if let Err(errors) = s.validate(&v) {
        let msgs: Vec<String> = errors.map(|e| e.to_string()).collect();
        panic!("{schema_name} output failed its schema: {msgs:?}\n{v}");
    }
    v
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["--version"]).status.code(), Some(0));
    assert_eq!(run(&["seq", "--help"]).status.code(), Some(0));
}

#[test]
fn fibonacci_csv() {
    let out = run(&["seq", "--rule", "constant:1", "--count", "10", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let expected = "n,value\n0,1\n1,2\n2,3\n3,5\n4,8\n5,13\n6,21\n7,34\n8,55\n9,89\n";
    assert_eq!(stdout(&out), expected);
}

#[test]
fn seq_json_uses_strings() {
    let v = run_json("seq", &["seq", "--rule", "bbin:3", "--count", "19"]);
    let terms: Vec<&str> = v["terms"].as_array().unwrap().iter().map(|t| t.as_str().unwrap()).collect();
    assert_eq!(terms[18], "2911");
    let big = run_json("seq", &["seq", "--rule", "constant:1", "--start", "300", "--count", "1"]);
    assert!(big["terms"][0].as_str().unwrap().len() > 60);
}

#[test]
fn decomp_golden() {
    let out = run(&["decomp", "--rule", "bbin:3", "--x", "100", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        "{\"x\":\"100\",\"indices\":[10,2],\"summands\":[\"97\",\"3\"]}\n"
    );
    run_json("decomp", &["decomp", "--rule", "factorial", "--x", "0"]);
    let v = run_json(
        "decomp",
        &["decomp", "--rule", "constant:1", "--x", "123456789012345678901234567890"],
    );
    assert_eq!(v["x"], "123456789012345678901234567890");
}

#[test]
fn decomp_plain_and_csv() {
    let plain = stdout(&run(&["decomp", "--rule", "constant:1", "--x", "100", "--format", "plain"]));
    assert_eq!(plain, "100 = 89 (a_9) + 8 (a_4) + 3 (a_2)\n");
    let csv = stdout(&run(&["decomp", "--rule", "constant:1", "--x", "100", "--format", "csv"]));
    assert_eq!(csv, "index,summand\n9,89\n4,8\n2,3\n");
}

#[test]
fn check_unique_on_three_rules() {
    for rule in ["constant:1", "bbin:3", "factorial"] {
        let v = run_json("check-unique", &["check-unique", "--rule", rule, "--x-max", "2000"]);
        assert_eq!(v["status"], "unique", "{rule}");
        assert_eq!(v["checked"], 2001);
    }
}

#[test]
fn check_unique_budget_exhaustion_exits_two() {
    let out = bin()
        .args(["check-unique", "--rule", "constant:1", "--x-max", "50"])
        .env("FDECOMP_ORACLE_BUDGET", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["status"], "budget_exceeded");
    assert!(schema("check-unique").is_valid(&v));
}

#[test]
fn check_unique_reports_counterexample() {
    // with the cap below the greedy top index the oracle cannot find it
    let out = run(&["check-unique", "--rule", "constant:1", "--x-max", "10", "--index-cap", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["status"], "counterexample");
    assert_eq!(v["counterexample"]["x"], "5");
    assert!(schema("check-unique").is_valid(&v));
}

#[test]
fn recurrence_three_bin() {
    let v = run_json("recurrence", &["recurrence", "--rule", "bbin:3"]);
    assert_eq!(v["coefficients"], json!(["0", "0", "4", "0", "0", "-1"]));
    assert_eq!(v["order"], 6);
    assert_eq!(v["valid_from"], 6);
    assert_eq!(v["nonneg_feasible"], "unknown_beyond_30");
}

#[test]
fn recurrence_fibonacci_is_nonnegative() {
    let v = run_json("recurrence", &["recurrence", "--rule", "constant:1"]);
    assert_eq!(v["coefficients"], json!(["1", "1"]));
    assert_eq!(v["nonneg_feasible"], true);
    assert_eq!(v["nonneg_degree"], 2);
}

#[test]
fn recurrence_without_minimization() {
    let v = run_json(
        "recurrence",
        &["recurrence", "--rule", "bbin:3", "--minimize", "false", "--nonneg-max-degree", "5"],
    );
    assert_eq!(v["order"], 18);
    assert_eq!(v["minimized"], false);
    assert_eq!(v["nonneg_feasible"], "unknown_beyond_5");
}

#[test]
fn recurrence_rejects_factorial() {
    let out = run(&["recurrence", "--rule", "factorial"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
}

#[test]
fn rule_file_is_accepted() {
    let dir = std::env::temp_dir().join(format!("fdecomp-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("rule.json");
    std::fs::write(&path, r#"{"kind":"periodic","pattern":[1,1,2]}"#).unwrap();
    let v = run_json("decomp", &["decomp", "--rule", path.to_str().unwrap(), "--x", "100"]);
    assert_eq!(v["indices"], json!([10, 2]));
    std::fs::write(&path, r#"{"kind":"periodic"}"#).unwrap();
    let out = run(&["decomp", "--rule", path.to_str().unwrap(), "--x", "100"]);
    assert_eq!(out.status.code(), Some(1));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        &["bogus"][..],
        &["seq", "--rule", "constant:1", "--unknown-flag"],
        &["seq", "--rule", "nonsense"],
        &["decomp", "--rule", "constant:1", "--x", "-5"],
        &["stats", "--system", "bbin:2", "--n", "3"],
        &["stats", "--system", "base:3", "--n", "3"],
        &["nonneg", "--charpoly", "5"],
        &["seq", "--rule", "constant:1", "--format", "xml"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn stats_table_csv() {
    let out = run(&["stats", "--system", "bbin:3", "--n", "2", "--emit", "table"]);
    assert_eq!(stdout(&out), "n,k,count\n2,0,1\n2,1,6\n2,2,8\n");
    let out = run(&["stats", "--system", "factorial", "--n", "3", "--emit", "table"]);
    assert_eq!(stdout(&out), "n,k,count\n3,0,1\n3,1,6\n3,2,11\n3,3,6\n");
}

#[test]
fn stats_moments_exact_json() {
    let v = run_json(
        "stats",
        &["stats", "--system", "bbin:3", "--n", "2", "--exact", "--format", "json", "--all"],
    );
    assert_eq!(v["rows"][1]["mean"], "3/4");
    assert_eq!(v["rows"][1]["variance"], "3/16");
    assert_eq!(v["rows"][2]["mean"], "22/15");
}

#[test]
fn stats_ks_json() {
    let v = run_json(
        "stats",
        &["stats", "--system", "bbin:3", "--n", "100", "--emit", "ks", "--format", "json"],
    );
    let ks = v["rows"][0]["ks"].as_f64().unwrap();
    assert!(ks > 0.0 && ks < 0.1);
    let v = run_json(
        "stats",
        &["stats", "--system", "factorial", "--n", "0", "--emit", "ks", "--format", "json"],
    );
    assert!(v["rows"][0]["ks"].is_null());
}

#[test]
fn nonneg_examples() {
    let v = run_json("nonneg", &["nonneg", "--charpoly", "1,0,0,-4,0,0,1"]);
    assert_eq!(v["feasible"], false);
    assert_eq!(v["max_degree"], 30);
    let v = run_json("nonneg", &["nonneg", "--charpoly", "1,-1,-1", "--max-degree", "10"]);
    assert_eq!(v["feasible"], true);
    assert_eq!(v["degree"], 2);
    assert_eq!(v["multiplier"], json!(["1"]));
    let v = run_json("nonneg", &["nonneg", "--charpoly", "1,-2", "--max-degree", "5"]);
    assert_eq!(v["degree"], 1);
    let v = run_json("nonneg", &["nonneg", "--rule", "bbin:4", "--max-degree", "16"]);
    assert_eq!(v["charpoly"], "x^8 - 5x^4 + 1");
    assert_eq!(v["feasible"], false);
}

#[test]
fn output_is_deterministic() {
    let args = ["recurrence", "--rule", "periodic:2,0,1", "--format", "json"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let args = ["stats", "--system", "bbin:4", "--n", "30", "--emit", "ks", "--all"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}
