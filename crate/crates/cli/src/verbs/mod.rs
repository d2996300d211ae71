//! One handler object per verb, looked up by name at runtime.

use serde_json::Value;

use hermiso::error::{Error, Result};

mod forms;
mod orders;
mod phs;
mod selftest;
mod surface;

pub use selftest::SelfTest;

/// Settings shared by every job.
#[derive(Debug, Clone)]
pub struct Ctx {
    pub precision: u32,
    pub seed: u64,
    pub timings: bool,
}

pub trait Verb: Send + Sync {
    fn name(&self) -> &'static str;
    fn run(&self, input: &Value, ctx: &Ctx) -> Result<Value>;
    /// Exit status of a successful run.
    fn exit_code(&self, _out: &Value) -> i32 {
        0
    }
}

pub fn verbs() -> Vec<Box<dyn Verb>> {
    vec![
        Box::new(forms::Isotropy),
        Box::new(forms::Larmour),
        Box::new(surface::Classify),
        Box::new(surface::Residue),
        Box::new(surface::BlowUpVerb),
        Box::new(orders::OrderCheck),
        Box::new(orders::Params),
        Box::new(phs::Phs),
        Box::new(SelfTest),
    ]
}

pub fn verb_names() -> Vec<&'static str> {
    verbs().iter().map(|v| v.name()).collect()
}

pub fn verb_by_name(name: &str) -> Result<Box<dyn Verb>> {
    verbs()
        .into_iter()
        .find(|v| v.name() == name)
        .ok_or_else(|| Error::Schema(format!("unknown verb {name:?}; expected one of {:?}", verb_names())))
}
