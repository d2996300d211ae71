//! Runs every suite once with a fixed seed and prints one line per suite.

use hermiso::suites::{run_suite, suites};

const SEED: u64 = 20_240_601;

fn main() {
    let mut failed = 0;
    for (k, s) in suites().iter().enumerate() {
        let r = run_suite(s.as_ref(), SEED);
        let status = if r.passed() { "PASS" } else { "FAIL" };
        let limit = r.limit_ms.map_or(String::new(), |l| format!(" (limit {} ms)", l));
        println!(
            "[{status}] {}. {:<14} cases {:>5}/{:<5} undecided {:>3} failures {:>3} {:>7} ms{limit}",
            k + 1,
            r.suite,
            r.cases,
            r.required,
            r.undecided,
            r.failures.len(),
            r.elapsed_ms,
        );
        for f in r.failures.iter().take(5) {
            println!("    {f}");
        }
        if !r.passed() {
            failed += 1;
        }
    }
    if failed > 0 {
        println!("{failed} suite(s) failed");
        std::process::exit(1);
    }
}
