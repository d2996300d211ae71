use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::{json, Value};

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/corpus").join(name)
}

fn hermiso(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_hermiso"))
        .args(args)
        .env_remove("HERMISO_PRECISION")
        .env_remove("HERMISO_SEED")
        .env_remove("HERMISO_THREADS")
        .env_remove("HERMISO_FORMAT")
        .env_remove("HERMISO_TIMINGS")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn lines(o: &Output) -> Vec<Value> {
    String::from_utf8(o.stdout.clone()).unwrap().lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn hyperbolic_plane_over_q5() {
    let o = hermiso(&["isotropy"], r#"{"eps":1,"algebra":{"kind":"padic","p":5,"prec":8},"diag":[1,-1]}"#);
    assert_eq!(o.status.code(), Some(0));
    let v = &lines(&o)[0];
    assert_eq!(v["version"], 1);
    assert_eq!(v["verdict"], true);
    assert_eq!(v["witness"].as_array().unwrap().len(), 2);
}

#[test]
fn unit_pi_classification() {
    let input = r#"{"p":5,"symbol":{"left":{"nonsquare":true,"exp_pi":0,"exp_delta":0},"right":{"nonsquare":true,"exp_pi":1,"exp_delta":0}}}"#;
    let o = hermiso(&["classify-quaternion"], input);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(lines(&o)[0]["shape"], "UnitPi");
}

#[test]
fn selftest_suite_exit_status() {
    let o = hermiso(&["--seed", "7", "selftest", "--suite", "tables", "--suite", "flags"], "");
    assert_eq!(o.status.code(), Some(0));
    let v = &lines(&o)[0];
    assert_eq!(v["passed"], true);
    assert_eq!(v["suites"].as_array().unwrap().len(), 2);
    assert!(v["suites"][0].get("elapsed_ms").is_none());
}

#[test]
fn golden_table_rows() {
    for name in ["tables", "mixed"] {
        let input = std::fs::read_to_string(corpus(&format!("{name}.jsonl"))).unwrap();
        let golden = std::fs::read_to_string(corpus(&format!("{name}.golden.jsonl"))).unwrap();
        let o = hermiso(&["run"], &input);
        assert_eq!(String::from_utf8(o.stdout).unwrap(), golden, "{name}");
    }
}

#[test]
fn forbidden_row_is_a_mathematical_error() {
    let o = hermiso(&["params"], r#"{"p":5,"shape":"PiDeltaMixed","kind":"second","lambda":"w"}"#);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(lines(&o)[0]["error"]["kind"], "CombinationForbidden");
    assert!(!o.stderr.is_empty());
}

#[test]
fn runs_are_byte_identical() {
    let input = std::fs::read_to_string(corpus("mixed.jsonl")).unwrap();
    let a = hermiso(&["--seed", "9", "run"], &input);
    let b = hermiso(&["--seed", "9", "--threads", "1", "run"], &input);
    let c = hermiso(&["--seed", "9", "--threads", "4", "run"], &input);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
    let o = r#"{"p":5,"shape":"UnitDelta","kind":"first","samples":30}"#;
    assert_eq!(hermiso(&["--seed", "5", "order-check"], o).stdout, hermiso(&["--seed", "5", "order-check"], o).stdout);
}

#[test]
fn exit_codes() {
    let schema = hermiso(&["isotropy"], r#"{"eps":1,"algebra":{"kind":"padic","p":5},"diag":"x"}"#);
    assert_eq!(schema.status.code(), Some(1));
    let not_json = hermiso(&["isotropy"], "{");
    assert_eq!(not_json.status.code(), Some(1));
    let degenerate = hermiso(&["isotropy"], r#"{"eps":1,"algebra":{"kind":"padic","p":5,"prec":4},"gram":[[0,0],[0,1]]}"#);
    assert_eq!(degenerate.status.code(), Some(2));
    assert_eq!(lines(&degenerate)[0]["error"]["kind"], "Degenerate");
    let fuzzy = r#"{"eps":1,"algebra":{"kind":"padic","p":5,"prec":4},"gram":[[1,1],[1,{"val":0,"unit":[1]}]]}"#;
    let precision = hermiso(&["isotropy"], fuzzy);
    assert_eq!(precision.status.code(), Some(3));
    assert_eq!(lines(&precision)[0]["error"]["kind"], "InsufficientPrecision");
}

#[test]
fn run_takes_the_worst_exit_code() {
    let jobs = [
        json!({"verb": "isotropy", "input": {"eps": 1, "algebra": {"kind": "padic", "p": 5}, "diag": [1, -1]}}),
        json!({"verb": "params", "input": {"p": 5, "shape": "PiDeltaMixed", "kind": "second", "lambda": "w"}}),
        json!({"verb": "nonsense", "input": {}}),
    ];
    let input: String = jobs.iter().map(|j| format!("{j}\n")).collect();
    let o = hermiso(&["run"], &input);
    assert_eq!(o.status.code(), Some(2));
    let out = lines(&o);
    assert_eq!(out.len(), 3);
    assert_eq!(out[0]["verdict"], true);
    assert_eq!(out[2]["error"]["exit"], 1);
}

#[test]
fn env_overrides_and_text_format() {
    let input = r#"{"eps":1,"algebra":{"kind":"padic","p":5},"diag":[1,-1]}"#;
    let o = Command::new(env!("CARGO_BIN_EXE_hermiso"))
        .args(["isotropy", "--input", corpus("hyperbolic.json").to_str().unwrap()])
        .env("HERMISO_FORMAT", "text")
        .env("HERMISO_PRECISION", "3")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.starts_with("isotropy: "), "{text}");
    assert!(text.contains("verdict=true"));
    // precision 3 leaves three unit digits
    assert!(text.contains("[1,0,0]"), "{text}");
    assert_eq!(std::fs::read_to_string(corpus("hyperbolic.json")).unwrap().trim(), input);
}

#[test]
fn reproducer_files_are_jobs() {
    let line = json!({"verb": "selftest", "input": {"suites": ["tables"]}, "seed": 11, "failure": "recorded message"});
    let o = hermiso(&["run"], &format!("{line}\n"));
    assert_eq!(o.status.code(), Some(0));
    let v = &lines(&o)[0];
    assert_eq!(v["verb"], "selftest");
    assert_eq!(v["suites"][0]["seed"], 11);
}
