use std::path::PathBuf;
use std::process::{Command, Output};

fn specs() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../specs")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_specrepair")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).trim().to_string()
}

#[test]
fn count_worked_example() {
    let o = run(&["count", "--formula", "G (p -> X q)", "--alphabet", "p,q", "--bound", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "108");
    let o = run(&["count", "--formula", "G (p -> X q)", "--alphabet", "p,q", "--bound", "4", "--exact"]);
    assert_eq!(stdout(&o), "351");
}

#[test]
fn count_false_is_zero() {
    let o = run(&["count", "--formula", "false", "--alphabet", "p", "--bound", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "0");
}

#[test]
fn count_writes_hoa() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a.hoa");
    let o = run(&["count", "--formula", "G (p -> X q)", "--bound", "3", "--dump-hoa", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(std::fs::read_to_string(&path).unwrap().starts_with("HOA: v1"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["count", "--formula", "G (p", "--bound", "4"]).status.code(), Some(2));
    assert_eq!(run(&["count", "--formula", "p", "--alphabet", "q"]).status.code(), Some(2));
    assert_eq!(run(&["count"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    let spec = specs().join("arbiter.spec");
    let o = run(&["repair", "--spec", spec.to_str().unwrap(), "--alpha", "0.9", "--seed", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(run(&["check", "--spec", "/nonexistent.spec"]).status.code(), Some(2));
    assert_eq!(run(&["check", "--formula", "p", "--backend", "builtin:0"]).status.code(), Some(2));
}

#[test]
fn check_verdicts() {
    let o = run(&["check", "--spec", specs().join("arbiter.spec").to_str().unwrap()]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(1), "unrealizable"));
    let o = run(&["check", "--spec", specs().join("arbiter_fair.spec").to_str().unwrap()]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), "realizable"));
    let o = run(&["check", "--formula", "G p && F !p"]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(1), "unsatisfiable"));
}

#[cfg(unix)]
#[test]
fn failing_external_backend_exits_3() {
    let spec = specs().join("arbiter.spec");
    let o = run(&["check", "--spec", spec.to_str().unwrap(), "--backend", "external:false {formula}"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn repair_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let spec = specs().join("arbiter.spec");
    let args = [
        "repair", "--spec", spec.to_str().unwrap(), "--seed", "7", "--alpha", "0.7", "--beta", "0.1", "--gamma", "0.2",
        "--population", "10", "--max-individuals", "30", "--jobs", "1", "--out", out.to_str().unwrap(),
    ];
    let o = run(&args);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(report["config"]["seed"], 7);
    assert!(!report["repairs"].as_array().unwrap().is_empty());
    assert_eq!(report["repairs"][0]["rank"], 1);
    assert_eq!(report["stats"]["individualsEvaluated"], 30);

    let compared = run(&[
        "compare",
        "--report",
        out.to_str().unwrap(),
        "--reference",
        specs().join("arbiter_fair.spec").to_str().unwrap(),
    ]);
    assert_eq!(compared.status.code(), Some(0));
    let summary: serde_json::Value = serde_json::from_str(&stdout(&compared)).unwrap();
    assert!(summary["equivalent"].as_u64().unwrap() >= 1);
}

#[test]
fn same_seed_same_repairs() {
    let spec = specs().join("arbiter.spec");
    let args = ["random-baseline", "--spec", spec.to_str().unwrap(), "--seed", "3", "--population", "10", "--max-individuals", "20", "--jobs", "1"];
    let strip = |o: &Output| {
        let mut v: serde_json::Value = serde_json::from_str(&stdout(o)).unwrap();
        v["stats"]["wallClockSeconds"] = serde_json::Value::Null;
        v
    };
    assert_eq!(strip(&run(&args)), strip(&run(&args)));
}

#[test]
fn missing_seed_is_generated_and_printed() {
    let o = run(&["ranking-study", "--sets", "1", "--formulas", "4", "--bound", "4", "--min-bound", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stderr).contains("seed: "));
    assert!(stdout(&o).starts_with("set  k"));
}

#[test]
fn compare_spec_files() {
    let o = run(&[
        "compare",
        "--ours",
        specs().join("arbiter_mutex.spec").to_str().unwrap(),
        "--reference",
        specs().join("arbiter_fair.spec").to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let summary: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(summary["unique"], 1);
}
