//! Seeded end-to-end checks, each comparing a decision procedure against an
//! independent oracle. Selected by name at runtime.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;

pub mod gen;
mod checks;

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub seed: u64,
    /// Instances with a definite outcome.
    pub cases: usize,
    pub required: usize,
    /// Instances the oracle left undecided (never counted as agreement).
    pub undecided: usize,
    pub failures: Vec<String>,
    pub elapsed_ms: u128,
    pub limit_ms: Option<u128>,
    pub notes: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.cases >= self.required && self.limit_ms.is_none_or(|l| self.elapsed_ms <= l)
    }
}

/// What a suite body records; timing and the verdict are filled in by
/// [`run_suite`].
#[derive(Debug, Default)]
pub struct Tally {
    pub cases: usize,
    pub undecided: usize,
    pub failures: Vec<String>,
    pub notes: Vec<String>,
}

impl Tally {
    pub fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    pub fn fail(&mut self, what: String) {
        self.cases += 1;
        self.failures.push(what);
    }
}

pub trait Suite: Send + Sync {
    fn name(&self) -> &'static str;
    fn description(&self) -> &'static str;
    fn required(&self) -> usize;
    fn limit_ms(&self) -> Option<u128>;
    fn body(&self, rng: &mut ChaCha8Rng, tally: &mut Tally) -> Result<()>;
}

pub fn run_suite(s: &dyn Suite, seed: u64) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tally = Tally::default();
    let start = Instant::now();
    if let Err(e) = s.body(&mut rng, &mut tally) {
        tally.failures.push(format!("aborted: {e}"));
    }
    SuiteReport {
        suite: s.name(),
        seed,
        cases: tally.cases,
        required: s.required(),
        undecided: tally.undecided,
        failures: tally.failures,
        elapsed_ms: start.elapsed().as_millis(),
        limit_ms: s.limit_ms(),
        notes: tally.notes,
    }
}

pub fn suites() -> Vec<Box<dyn Suite>> {
    checks::all()
}

pub fn suite_names() -> Vec<&'static str> {
    suites().iter().map(|s| s.name()).collect()
}

pub fn suite_by_name(name: &str) -> Option<Box<dyn Suite>> {
    suites().into_iter().find(|s| s.name() == name)
}

/// A fresh seed for a sub-generator, so that suites can run parts in
/// parallel without sharing one stream.
pub(crate) fn fork(rng: &mut ChaCha8Rng) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(rng.gen())
}
