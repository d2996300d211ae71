use serde::Deserialize;
use serde_json::{json, Value};

use hermiso::error::{Error, Result};
use hermiso::hermitian::finite::{finite_strategies, FiniteForm, EXHAUSTIVE_LIMIT};
use hermiso::hermitian::{find_isotropic_vector_finite, is_isotropic_finite, HermitianForm};
use hermiso::local::{decider_by_name, larmour_split};

use super::{Ctx, Verb};
use crate::algebra::{dispatch_form, FormJob};
use crate::codec::{parse, AlgCodec, Codec};

pub struct Isotropy;
pub struct Larmour;

#[derive(Deserialize)]
struct Method {
    #[serde(default)]
    method: Option<String>,
}

struct Decide(Option<String>);

fn encode_finite(h: &FiniteForm, x: &[hermiso::field::Fe]) -> Value {
    Value::Array(x.iter().map(|c| h.alg.ring.encode(c)).collect())
}

impl FormJob for Decide {
    fn local<A: AlgCodec>(&self, h: &HermitianForm<A>) -> Result<Value> {
        let method = self.0.as_deref().unwrap_or("residue");
        let v = decider_by_name::<A>(method)?.decide(h)?;
        let witness = v.witness.map(|x| Value::Array(x.iter().map(|c| h.alg.encode(c)).collect()));
        Ok(json!({"verdict": v.isotropic, "witness": witness, "method": method}))
    }

    fn finite(&self, h: &FiniteForm) -> Result<Value> {
        let search = (h.alg.ring.order() as u128).saturating_pow(h.rank() as u32);
        let (method, verdict) = match self.0.as_deref() {
            None => {
                let m = if search <= EXHAUSTIVE_LIMIT { "exhaustive" } else { "classical" };
                (m, is_isotropic_finite(h)?)
            }
            Some(name) => {
                let s = finite_strategies().into_iter().find(|s| s.name() == name).ok_or_else(|| {
                    Error::MalformedRequest(format!("unknown method {name:?}; expected \"exhaustive\" or \"classical\""))
                })?;
                (s.name(), s.is_isotropic(h)?)
            }
        };
        let witness = if verdict && search <= EXHAUSTIVE_LIMIT {
            find_isotropic_vector_finite(h)?.map(|x| encode_finite(h, &x))
        } else {
            None
        };
        Ok(json!({"verdict": verdict, "witness": witness, "method": method}))
    }
}

/// Splits the `method` key off a form document.
fn method_and_form(input: &Value) -> Result<(Option<String>, Value)> {
    let mut form = input.clone();
    let m: Method = parse(&json!({"method": form.get("method").cloned()}))?;
    if let Some(o) = form.as_object_mut() {
        o.remove("method");
    }
    Ok((m.method, form))
}

impl Verb for Isotropy {
    fn name(&self) -> &'static str {
        "isotropy"
    }
    fn run(&self, input: &Value, ctx: &Ctx) -> Result<Value> {
        let (method, form) = method_and_form(input)?;
        dispatch_form(&form, ctx.precision, &Decide(method))
    }
}

struct Split;

impl FormJob for Split {
    fn local<A: AlgCodec>(&self, h: &HermitianForm<A>) -> Result<Value> {
        let s = larmour_split(h)?;
        let enc = |v: &[A::Elem]| Value::Array(v.iter().map(|c| h.alg.encode(c)).collect::<Vec<_>>());
        let res = |f: &FiniteForm| {
            json!({"diag": encode_finite(f, &f.diagonal()), "involution": if f.alg.conj { "frobenius" } else { "identity" }})
        };
        Ok(json!({
            "verdict": s.verdict()?,
            "split": {
                "eps_prime": s.eps_prime,
                "pi_d": h.alg.encode(&s.pi_d),
                "h1": enc(&s.h1),
                "h2": enc(&s.h2),
                "residue1": res(&s.residue1),
                "residue2": res(&s.residue2),
            }
        }))
    }

    fn finite(&self, _h: &FiniteForm) -> Result<Value> {
        Err(Error::MalformedRequest("larmour needs a form over a complete discretely valued field".into()))
    }
}

impl Verb for Larmour {
    fn name(&self) -> &'static str {
        "larmour"
    }
    fn run(&self, input: &Value, ctx: &Ctx) -> Result<Value> {
        dispatch_form(input, ctx.precision, &Split)
    }
}
