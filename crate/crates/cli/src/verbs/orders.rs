use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;
use serde_json::{json, Value};

use hermiso::error::{Error, Result};
use hermiso::orders::sample::random_element;
use hermiso::orders::{
    build_parameters, verify_maximality, AlgebraSpec, FirstKindInvolution, Kind, OrderBasis, ParameterPair,
    SQuatElem, SurfacePrime,
};
use hermiso::surface::QuatShape;
use hermiso::symbolic::{LambdaShape, Laurent2Ring};

use super::{Ctx, Verb};
use crate::codec::parse;

pub struct Params;
pub struct OrderCheck;

#[derive(Deserialize, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
enum KindName {
    First,
    Second,
}

#[derive(Deserialize, Clone, Copy)]
#[serde(rename_all = "kebab-case")]
enum InvName {
    Canonical,
    OrthogonalI,
    OrthogonalJ,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SpecInput {
    p: u32,
    shape: QuatShape,
    kind: KindName,
    #[serde(default)]
    lambda: Option<LambdaShape>,
    #[serde(default)]
    u: Option<i64>,
    #[serde(default)]
    v: Option<i64>,
    #[serde(default)]
    w: Option<i64>,
    #[serde(default)]
    involution: Option<InvName>,
    #[serde(default)]
    division_constants: bool,
    #[serde(default)]
    shrunk: bool,
    #[serde(default)]
    samples: usize,
}

impl SpecInput {
    fn spec(&self, r: &Laurent2Ring) -> Result<AlgebraSpec> {
        let kind = match (self.kind, self.lambda) {
            (KindName::First, None) => Kind::First,
            (KindName::Second, Some(l)) => Kind::Second(l),
            (KindName::First, Some(_)) => return Err(Error::Schema("\"lambda\" is for kind \"second\"".into())),
            (KindName::Second, None) => return Err(Error::Schema("kind \"second\" needs \"lambda\"".into())),
        };
        if self.involution.is_some() && kind != Kind::First {
            return Err(Error::UnsupportedInvolution("second-kind tables use the involution fixed by L/K".into()));
        }
        let mut spec = if self.division_constants {
            if self.u.is_some() || self.v.is_some() || self.w.is_some() {
                return Err(Error::Schema("\"division_constants\" chooses u, v, w itself".into()));
            }
            // no constants in {1, n} make D ramify where its shape says
            AlgebraSpec::division_constants(r, self.shape, kind).ok_or(Error::NotDivision)?
        } else {
            AlgebraSpec::new(self.p, self.shape, kind)
        };
        spec.u = self.u.unwrap_or(spec.u);
        spec.v = self.v.unwrap_or(spec.v);
        spec.w = self.w.unwrap_or(spec.w);
        for (name, c) in [("u", spec.u), ("v", spec.v), ("w", spec.w)] {
            if c.rem_euclid(self.p as i64) == 0 {
                return Err(Error::HypothesisViolation(format!("{name} must be a unit mod {}", self.p)));
            }
        }
        spec.involution = match self.involution.unwrap_or(InvName::Canonical) {
            InvName::Canonical => FirstKindInvolution::Canonical,
            InvName::OrthogonalI => FirstKindInvolution::OrthogonalI,
            InvName::OrthogonalJ => FirstKindInvolution::OrthogonalJ,
        };
        Ok(spec)
    }

    fn build(&self) -> Result<(AlgebraSpec, OrderBasis, ParameterPair)> {
        if self.p == 2 {
            return Err(Error::UnsupportedBase("residue characteristic 2".into()));
        }
        let r = Laurent2Ring::new(self.p)?;
        let spec = self.spec(&r)?;
        let (o, pp) = build_parameters(&r, &spec)?;
        Ok((spec, o, pp))
    }
}

fn quat(x: &SQuatElem) -> Value {
    Value::Array(x.iter().map(|c| Value::String(c.to_string())).collect())
}

fn spec_json(s: &AlgebraSpec) -> Value {
    json!({"u": s.u, "v": s.v, "w": s.w})
}

impl Verb for Params {
    fn name(&self) -> &'static str {
        "params"
    }
    fn run(&self, input: &Value, _ctx: &Ctx) -> Result<Value> {
        let i: SpecInput = parse(input)?;
        if i.shrunk || i.samples > 0 {
            return Err(Error::Schema("\"shrunk\" and \"samples\" belong to order-check".into()));
        }
        let (spec, _, p) = i.build()?;
        Ok(json!({
            "constants": spec_json(&spec),
            "shape": p.shape,
            "i": quat(&p.i),
            "j": quat(&p.j),
            "pi_d": quat(&p.pi_d),
            "delta_d": quat(&p.delta_d),
            "e0": p.e0,
            "e1": p.e1,
            "signs": p.signs,
            "product_sign": p.product_sign,
            "u0": p.u0.to_string(),
            "u1": p.u1.to_string(),
            "checks": p.checks,
        }))
    }
}

impl Verb for OrderCheck {
    fn name(&self) -> &'static str {
        "order-check"
    }
    fn run(&self, input: &Value, ctx: &Ctx) -> Result<Value> {
        let i: SpecInput = parse(input)?;
        let (spec, full, p) = i.build()?;
        let o = if i.shrunk { full.shrunk() } else { full };
        let report = verify_maximality(&o, p.shape)?;
        let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
        let mut agree = 0;
        let mut disagree = Vec::new();
        for k in 0..i.samples {
            let prime = if k % 2 == 0 { SurfacePrime::Pi } else { SurfacePrime::Delta };
            let x = random_element(&o, &mut rng, 1);
            if o.contains_at(&x, prime)? == o.nrd_integral_at(&x, prime) {
                agree += 1;
            } else {
                disagree.push(json!({"prime": prime, "element": quat(&x)}));
            }
        }
        Ok(json!({
            "constants": spec_json(&spec),
            "shape": p.shape,
            "shrunk": i.shrunk,
            "report": report,
            "samples": {"count": i.samples, "agree": agree, "disagree": disagree},
        }))
    }
}
