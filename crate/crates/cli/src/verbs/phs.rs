use serde::Deserialize;
use serde_json::{json, Value};

use hermiso::error::{Error, Result};
use hermiso::phs::{
    enumerate_flags, flag_nonempty, invariants_of_finite_form, validate, Component, FlagRequest,
    FormContext, LocalInvariants,
};

use super::{Ctx, Verb};
use crate::algebra::finite_form;
use crate::codec::parse;

pub struct Phs;

/// Either `context` with `invariants`, or a finite `form` whose invariants
/// are computed and whose flags are also counted.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PhsInput {
    indices: Vec<u32>,
    #[serde(default)]
    component: Component,
    #[serde(default)]
    allow_boundary: bool,
    #[serde(default)]
    context: Option<FormContext>,
    #[serde(default)]
    invariants: Option<LocalInvariants>,
    #[serde(default)]
    form: Option<Value>,
}

impl Verb for Phs {
    fn name(&self) -> &'static str {
        "phs"
    }
    fn run(&self, input: &Value, _ctx: &Ctx) -> Result<Value> {
        let i: PhsInput = parse(input)?;
        let (context, invariants, form) = match (i.context, i.invariants, &i.form) {
            (Some(c), Some(l), None) => (c, l, None),
            (None, None, Some(f)) => {
                let h = finite_form(f)?;
                let (c, l) = invariants_of_finite_form(&h)?;
                (c, l, Some(h))
            }
            _ => return Err(Error::Schema("give either \"context\" and \"invariants\", or a finite \"form\"".into())),
        };
        let req = FlagRequest { indices: i.indices, component: i.component, context, allow_boundary: i.allow_boundary };
        let v = validate(&req)?;
        let verdict = flag_nonempty(&req, &invariants)?;
        let mut out = json!({
            "verdict": verdict,
            "boundary": v.boundary,
            "group_rank": context.group_rank(),
            "context": context,
            "invariants": invariants,
        });
        if let Some(h) = form {
            let c = enumerate_flags(&h, &req.indices, req.component)?;
            out["count"] = json!(c.count);
            out["searched"] = json!(c.searched);
        }
        Ok(out)
    }
}
