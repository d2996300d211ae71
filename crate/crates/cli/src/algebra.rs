//! Algebra and form descriptors, and dispatch to the matching generic code.

use serde::Deserialize;
use serde_json::{Map, Value};

use hermiso::algebra::{FieldInv, InvAlgebra};
use hermiso::error::{Error, Result};
use hermiso::field::{Cdvf, PureExt};
use hermiso::hermitian::finite::FiniteForm;
use hermiso::hermitian::HermitianForm;
use hermiso::local::{FieldAlg, QuatLocal};
use hermiso::quaternion::{Involution, QuatAlgebra};

use crate::codec::{decode_quat, parse, schema, AlgCodec, Codec, FieldDesc, FieldKind};

/// Something to do with a form, whatever its algebra.
pub trait FormJob {
    fn local<A: AlgCodec>(&self, h: &HermitianForm<A>) -> Result<Value>;
    fn finite(&self, h: &FiniteForm) -> Result<Value>;
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FormJson {
    #[serde(default = "plus_one")]
    eps: i8,
    algebra: Value,
    #[serde(default)]
    diag: Option<Vec<Value>>,
    #[serde(default)]
    gram: Option<Vec<Vec<Value>>>,
}

fn plus_one() -> i8 {
    1
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct QuatJson {
    #[serde(default = "one")]
    version: u32,
    #[allow(dead_code)]
    kind: String,
    // read by `base_desc` before the algebra is built
    #[allow(dead_code)]
    field: FieldDesc,
    a: Value,
    b: Value,
    #[serde(rename = "L", default)]
    l: Option<ExtJson>,
    #[serde(default)]
    involution: Option<Value>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ExtJson {
    lambda: Value,
}

fn one() -> u32 {
    1
}

/// Splits the keys that extend a field descriptor off the object.
fn field_with_extras(v: &Value) -> Result<(FieldDesc, Option<ExtJson>, Option<Value>)> {
    let mut obj: Map<String, Value> = v.as_object().cloned().ok_or_else(|| schema("algebra must be an object"))?;
    let l = obj.remove("L").map(|x| parse::<ExtJson>(&x)).transpose()?;
    let inv = obj.remove("involution");
    Ok((parse(&Value::Object(obj))?, l, inv))
}

fn form_entries<A: InvAlgebra>(
    alg: A,
    f: &FormJson,
    decode: impl Fn(&A, &Value) -> Result<A::Elem>,
) -> Result<HermitianForm<A>> {
    match (&f.diag, &f.gram) {
        (Some(d), None) => {
            let entries = d.iter().map(|x| decode(&alg, x)).collect::<Result<Vec<_>>>()?;
            HermitianForm::diag(alg, f.eps, entries)
        }
        (None, Some(g)) => {
            let gram = g
                .iter()
                .map(|row| row.iter().map(|x| decode(&alg, x)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            HermitianForm::from_gram(alg, f.eps, gram)
        }
        _ => Err(schema("a form needs exactly one of \"diag\" and \"gram\"")),
    }
}

fn run_local<A: AlgCodec, J: FormJob>(alg: A, f: &FormJson, job: &J) -> Result<Value> {
    let h = form_entries(alg, f, |a, x| a.decode(x))?;
    job.local(&h)
}

fn involution<R: Codec>(alg: &QuatAlgebra<R>, v: Option<&Value>, second: bool) -> Result<Involution<R::Elem>> {
    let unsupported = |m: &str| Error::UnsupportedInvolution(m.into());
    match v {
        None if second => Ok(Involution::second_kind()),
        None => Ok(Involution::canonical()),
        Some(Value::String(s)) => match (s.as_str(), second) {
            ("second-kind", true) => Ok(Involution::second_kind()),
            ("second-kind", false) => Err(unsupported("a second-kind involution needs \"L\"")),
            (_, true) => Err(unsupported("over \"L\" the involution is \"second-kind\"")),
            ("canonical", _) => Ok(Involution::canonical()),
            ("orthogonal-i", _) => Ok(Involution::orthogonal_i()),
            ("orthogonal-j", _) => Ok(Involution::orthogonal_j()),
            _ => Err(schema(format!("unknown involution {s:?}"))),
        },
        Some(Value::Object(o)) if o.len() == 1 && o.contains_key("int") => {
            if second {
                return Err(unsupported("Int(s) twists are supported for first-kind involutions"));
            }
            let s = decode_quat(alg.ring(), &o["int"])?;
            alg.twisted(&Involution::canonical(), &s)
        }
        Some(other) => Err(schema(format!("involution must be a name or {{\"int\": q}}, got {other}"))),
    }
}

fn with_base<K: Cdvf + Codec, J: FormJob>(k: K, alg: &Value, f: &FormJson, job: &J) -> Result<Value> {
    let is_quat = alg.get("kind").and_then(Value::as_str) == Some("quat");
    if !is_quat {
        let (_, l, inv) = field_with_extras(alg)?;
        if inv.is_some() {
            return Err(schema("fields take no \"involution\"; add \"L\" for the conjugation of K(sqrt(lambda))"));
        }
        return match l {
            None => run_local(FieldAlg::new(k, false), f, job),
            Some(l) => {
                let lambda = k.decode(&l.lambda)?;
                run_local(FieldAlg::new(PureExt::new(k, 2, lambda)?, true), f, job)
            }
        };
    }
    let q: QuatJson = parse(alg)?;
    if q.version != 1 {
        return Err(schema(format!("unsupported descriptor version {}", q.version)));
    }
    match q.l {
        None => {
            let a = QuatAlgebra::new(k.clone(), k.decode(&q.a)?, k.decode(&q.b)?)?;
            let inv = involution(&a, q.involution.as_ref(), false)?;
            run_local(QuatLocal::new(a, inv)?, f, job)
        }
        Some(l) => {
            let lambda = k.decode(&l.lambda)?;
            let ext = PureExt::new(k, 2, lambda)?;
            let a = QuatAlgebra::new(ext.clone(), ext.decode(&q.a)?, ext.decode(&q.b)?)?;
            let inv = involution(&a, q.involution.as_ref(), true)?;
            run_local(QuatLocal::new(a, inv)?, f, job)
        }
    }
}

fn base_desc(alg: &Value) -> Result<FieldDesc> {
    if alg.get("kind").and_then(Value::as_str) == Some("quat") {
        let f = alg.get("field").ok_or_else(|| schema("quaternion descriptors need \"field\""))?;
        return parse(f);
    }
    Ok(field_with_extras(alg)?.0)
}

/// A finite field with the identity, or `F_{p^2}` with Frobenius when the
/// descriptor says `"involution": "frobenius"`.
pub fn finite_form(v: &Value) -> Result<FiniteForm> {
    let f: FormJson = parse(v)?;
    let (desc, l, inv) = field_with_extras(&f.algebra)?;
    if desc.kind != FieldKind::Finite {
        return Err(schema("expected a finite field descriptor"));
    }
    if l.is_some() {
        return Err(schema("finite fields take \"involution\": \"frobenius\" instead of \"L\""));
    }
    let field = desc.finite()?;
    let conj = match inv {
        None => false,
        Some(Value::String(s)) if s == "identity" => false,
        Some(Value::String(s)) if s == "frobenius" && field.degree() == 2 => true,
        _ => return Err(schema("finite involution is \"identity\" or (for deg 2) \"frobenius\"")),
    };
    form_entries(FieldInv::finite(field, conj), &f, |a, x| a.ring.decode(x))
}

pub fn dispatch_form<J: FormJob>(v: &Value, default_prec: u32, job: &J) -> Result<Value> {
    let f: FormJson = parse(v)?;
    let desc = base_desc(&f.algebra)?;
    desc.check_version()?;
    match desc.kind {
        FieldKind::Finite => job.finite(&finite_form(v)?),
        FieldKind::Padic => with_base(desc.padic(default_prec)?, &f.algebra, &f, job),
        FieldKind::Laurent => with_base(desc.laurent(default_prec)?, &f.algebra, &f, job),
    }
}
