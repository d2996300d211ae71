//! `hermiso`: line-delimited JSON in, one JSON report per line out.

use std::io::{BufRead, BufReader, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use hermiso::error::Error;

mod algebra;
mod codec;
mod verbs;

use verbs::{verb_by_name, Ctx};

const REPORT_VERSION: u32 = 1;

#[derive(Parser)]
#[command(name = "hermiso", version, about = "Isotropy of hermitian forms over local fields and surface germs")]
struct Cli {
    /// Working precision in uniformizer digits, for fields without "prec".
    #[arg(long, global = true, env = "HERMISO_PRECISION", default_value_t = 16)]
    precision: u32,
    /// Seed for randomized suites and sampling.
    #[arg(long, global = true, env = "HERMISO_SEED", default_value_t = 0)]
    seed: u64,
    /// Worker threads (all cores by default).
    #[arg(long, global = true, env = "HERMISO_THREADS")]
    threads: Option<usize>,
    #[arg(long, global = true, env = "HERMISO_FORMAT", value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Add wall-clock timings to reports (makes output run-dependent).
    #[arg(long, global = true, env = "HERMISO_TIMINGS")]
    timings: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct InputArgs {
    /// Read documents from this file instead of stdin.
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide isotropy of a form and return a witness.
    Isotropy(InputArgs),
    /// Split a form into its two residue forms.
    Larmour(InputArgs),
    /// Normal shape of a monomial quaternion symbol.
    ClassifyQuaternion(InputArgs),
    /// Tame residues of a symbol at pi and delta.
    Residue(InputArgs),
    /// Blow up the closed point once, or normalize until every chart is a leaf.
    Blowup(InputArgs),
    /// Verify maximality of the standard order.
    OrderCheck(InputArgs),
    /// Parameter pair (pi_D, delta_D) for a table row.
    Params(InputArgs),
    /// Non-emptiness of a flag variety of isotropic subspaces.
    Phs(InputArgs),
    /// Jobs {"verb", "input", "seed"?}, one per line.
    Run(InputArgs),
    /// Run the acceptance suites.
    Selftest {
        /// Suite to run; repeat for several, omit for all.
        #[arg(long = "suite")]
        suites: Vec<String>,
        /// Write one reproducer file per failing instance here.
        #[arg(long)]
        repro_dir: Option<PathBuf>,
    },
}

impl Cmd {
    fn verb(&self) -> Option<&'static str> {
        Some(match self {
            Cmd::Isotropy(_) => "isotropy",
            Cmd::Larmour(_) => "larmour",
            Cmd::ClassifyQuaternion(_) => "classify-quaternion",
            Cmd::Residue(_) => "residue",
            Cmd::Blowup(_) => "blowup",
            Cmd::OrderCheck(_) => "order-check",
            Cmd::Params(_) => "params",
            Cmd::Phs(_) => "phs",
            Cmd::Run(_) | Cmd::Selftest { .. } => return None,
        })
    }

    fn input(&self) -> Option<&InputArgs> {
        match self {
            Cmd::Isotropy(i)
            | Cmd::Larmour(i)
            | Cmd::ClassifyQuaternion(i)
            | Cmd::Residue(i)
            | Cmd::Blowup(i)
            | Cmd::OrderCheck(i)
            | Cmd::Params(i)
            | Cmd::Phs(i)
            | Cmd::Run(i) => Some(i),
            Cmd::Selftest { .. } => None,
        }
    }
}

/// A report line and its exit status.
struct Line {
    body: Value,
    exit: i32,
}

fn error_line(verb: Option<&str>, e: &Error) -> Line {
    let body = json!({
        "version": REPORT_VERSION,
        "verb": verb,
        "error": {"kind": e.kind(), "message": e.to_string(), "exit": e.exit_code()},
    });
    Line { body, exit: e.exit_code() }
}

fn run_verb(name: &str, input: &Value, ctx: &Ctx) -> Line {
    let start = Instant::now();
    let res = verb_by_name(name).and_then(|v| {
        let out = v.run(input, ctx)?;
        let exit = v.exit_code(&out);
        Ok((out, exit))
    });
    let mut line = match res {
        Ok((out, exit)) => {
            let mut m = Map::new();
            m.insert("version".into(), json!(REPORT_VERSION));
            m.insert("verb".into(), json!(name));
            match out {
                Value::Object(o) => m.extend(o),
                other => {
                    m.insert("result".into(), other);
                }
            }
            Line { body: Value::Object(m), exit }
        }
        Err(e) => error_line(Some(name), &e),
    };
    if ctx.timings {
        line.body["elapsed_ms"] = json!(start.elapsed().as_millis() as u64);
    }
    line
}

/// A line of `run` input: `{"verb": ..., "input": ..., "seed": ...}`.
/// Reproducer files also carry the recorded `"failure"`, which is ignored.
fn run_job(doc: &Value, ctx: &Ctx) -> Line {
    let Some(obj) = doc.as_object() else {
        return error_line(None, &Error::Schema("a job is an object".into()));
    };
    if let Some(k) = obj.keys().find(|k| !matches!(k.as_str(), "verb" | "input" | "seed" | "failure")) {
        return error_line(None, &Error::Schema(format!("unknown job field {k:?}")));
    }
    let Some(verb) = obj.get("verb").and_then(Value::as_str) else {
        return error_line(None, &Error::Schema("a job needs a string \"verb\"".into()));
    };
    let mut ctx = ctx.clone();
    match obj.get("seed") {
        None => {}
        Some(s) => match s.as_u64() {
            Some(s) => ctx.seed = s,
            None => return error_line(Some(verb), &Error::Schema("\"seed\" is a 64-bit unsigned integer".into())),
        },
    }
    run_verb(verb, obj.get("input").unwrap_or(&Value::Null), &ctx)
}

fn read_lines(input: &InputArgs) -> std::io::Result<Vec<String>> {
    let reader: Box<dyn Read> = match &input.input {
        Some(p) => Box::new(std::fs::File::open(p)?),
        None => Box::new(std::io::stdin()),
    };
    let mut out = Vec::new();
    for line in BufReader::new(reader).lines() {
        let line = line?;
        if !line.trim().is_empty() {
            out.push(line);
        }
    }
    Ok(out)
}

fn render(v: &Value, format: Format) -> String {
    match format {
        Format::Json => v.to_string(),
        Format::Text => {
            let Some(o) = v.as_object() else { return v.to_string() };
            let verb = o.get("verb").and_then(Value::as_str).unwrap_or("-");
            let fields: Vec<String> = o
                .iter()
                .filter(|(k, _)| !matches!(k.as_str(), "verb" | "version"))
                .map(|(k, x)| match x {
                    Value::String(s) => format!("{k}={s}"),
                    _ => format!("{k}={x}"),
                })
                .collect();
            format!("{verb}: {}", fields.join(" "))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("hermiso: {e}");
            return ExitCode::from(1);
        }
    }
    let ctx = Ctx { precision: cli.precision, seed: cli.seed, timings: cli.timings };
    let lines: Vec<Line> = match &cli.cmd {
        Cmd::Selftest { suites, repro_dir } => {
            let input = json!({"suites": suites, "repro_dir": repro_dir});
            vec![run_verb("selftest", &input, &ctx)]
        }
        cmd => {
            let docs = match read_lines(cmd.input().expect("every other command reads input")) {
                Ok(d) => d,
                Err(e) => {
                    eprintln!("hermiso: {e}");
                    return ExitCode::from(1);
                }
            };
            let verb = cmd.verb();
            docs.par_iter()
                .map(|s| match serde_json::from_str::<Value>(s) {
                    Err(e) => error_line(verb, &Error::Schema(format!("not JSON: {e}"))),
                    Ok(doc) => match verb {
                        Some(v) => run_verb(v, &doc, &ctx),
                        None => run_job(&doc, &ctx),
                    },
                })
                .collect()
        }
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let mut worst = 0;
    for l in &lines {
        if writeln!(out, "{}", render(&l.body, cli.format)).is_err() {
            return ExitCode::from(1);
        }
        if let Some(msg) = l.body.get("error").and_then(|e| e.get("message")) {
            eprintln!("hermiso: {}", msg.as_str().unwrap_or_default());
        }
        worst = worst.max(l.exit);
    }
    ExitCode::from(worst as u8)
}
