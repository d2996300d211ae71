use std::path::PathBuf;

use serde::Deserialize;
use serde_json::{json, Value};

use hermiso::error::{Error, Result};
use hermiso::suites::{run_suite, suite_by_name, suite_names, suites, SuiteReport};

use super::{Ctx, Verb};
use crate::codec::parse;

pub struct SelfTest;

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct SelfTestInput {
    /// Suite names; all suites when empty.
    #[serde(default)]
    pub suites: Vec<String>,
    #[serde(default)]
    pub repro_dir: Option<PathBuf>,
}

/// Writes one standalone file per failing instance. Suites are
/// deterministic in the seed, so the file names the rerun.
fn write_reproducers(dir: &PathBuf, r: &SuiteReport) -> Result<Vec<String>> {
    std::fs::create_dir_all(dir).map_err(|e| Error::MalformedRequest(format!("repro dir: {e}")))?;
    let mut out = Vec::new();
    for (k, f) in r.failures.iter().enumerate() {
        let path = dir.join(format!("{}-{}-{k}.json", r.suite, r.seed));
        let doc = json!({
            "verb": "selftest",
            "input": {"suites": [r.suite]},
            "seed": r.seed,
            "failure": f,
        });
        std::fs::write(&path, format!("{doc}\n")).map_err(|e| Error::MalformedRequest(format!("{}: {e}", path.display())))?;
        out.push(path.display().to_string());
    }
    Ok(out)
}

pub fn run_selected(input: &SelfTestInput, seed: u64) -> Result<(Vec<SuiteReport>, Vec<String>)> {
    let chosen = if input.suites.is_empty() {
        suites()
    } else {
        input
            .suites
            .iter()
            .map(|n| {
                suite_by_name(n)
                    .ok_or_else(|| Error::MalformedRequest(format!("unknown suite {n:?}; expected one of {:?}", suite_names())))
            })
            .collect::<Result<Vec<_>>>()?
    };
    let mut reports = Vec::new();
    let mut files = Vec::new();
    for s in chosen {
        let r = run_suite(s.as_ref(), seed);
        if let Some(dir) = &input.repro_dir {
            files.extend(write_reproducers(dir, &r)?);
        }
        reports.push(r);
    }
    Ok((reports, files))
}

/// Per-suite summary; timings only when asked, so that reports stay
/// byte-identical across runs.
pub fn summary(r: &SuiteReport, timings: bool) -> Value {
    let mut v = json!({
        "suite": r.suite,
        "seed": r.seed,
        "passed": r.passed(),
        "cases": r.cases,
        "required": r.required,
        "undecided": r.undecided,
        "failures": r.failures,
        "notes": r.notes,
    });
    if timings {
        v["elapsed_ms"] = json!(r.elapsed_ms as u64);
        v["limit_ms"] = json!(r.limit_ms.map(|l| l as u64));
    }
    v
}

impl Verb for SelfTest {
    fn name(&self) -> &'static str {
        "selftest"
    }
    fn run(&self, input: &Value, ctx: &Ctx) -> Result<Value> {
        let i: SelfTestInput = if input.is_null() { SelfTestInput::default() } else { parse(input)? };
        let (reports, files) = run_selected(&i, ctx.seed)?;
        let passed = reports.iter().all(|r| r.passed());
        Ok(json!({
            "passed": passed,
            "suites": reports.iter().map(|r| summary(r, ctx.timings)).collect::<Vec<_>>(),
            "reproducers": files,
        }))
    }
    fn exit_code(&self, out: &Value) -> i32 {
        if out["passed"] == json!(true) {
            0
        } else {
            2
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_reproducer_per_failure() {
        let dir = std::env::temp_dir().join(format!("hermiso-repro-{}", std::process::id()));
        let r = SuiteReport {
            suite: "tables",
            seed: 11,
            cases: 3,
            required: 3,
            undecided: 0,
            failures: vec!["first".into(), "second".into()],
            elapsed_ms: 0,
            limit_ms: None,
            notes: vec![],
        };
        let files = write_reproducers(&dir, &r).unwrap();
        assert_eq!(files.len(), 2);
        let doc: Value = serde_json::from_str(&std::fs::read_to_string(&files[1]).unwrap()).unwrap();
        assert_eq!(doc, json!({"verb": "selftest", "input": {"suites": ["tables"]}, "seed": 11, "failure": "second"}));
        assert!(files[0].ends_with("tables-11-0.json"));
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
