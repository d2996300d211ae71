use serde::Deserialize;
use serde_json::{json, Value};

use hermiso::error::{Error, Result};
use hermiso::surface::{blow_up, normalize_model, Chart, MonomialElement, Prime, SurfaceBase, Symbol2D};

use super::{Ctx, Verb};
use crate::codec::parse;

pub struct Classify;
pub struct Residue;
pub struct BlowUpVerb;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SymbolInput {
    p: u32,
    symbol: Symbol2D,
    #[serde(default)]
    prime: Option<Prime>,
    #[serde(default)]
    lambda: Option<MonomialElement>,
    #[serde(default)]
    chart: Option<Chart>,
    #[serde(default)]
    max_depth: Option<u32>,
}

fn base(p: u32) -> Result<SurfaceBase> {
    if p == 2 {
        return Err(Error::UnsupportedBase("residue characteristic 2".into()));
    }
    SurfaceBase::new(p)
}

fn only(input: &SymbolInput, verb: &str, allowed: [bool; 3]) -> Result<()> {
    let given = [input.prime.is_some(), input.lambda.is_some() || input.chart.is_some(), input.max_depth.is_some()];
    let names = ["prime", "lambda/chart", "max_depth"];
    for k in 0..3 {
        if given[k] && !allowed[k] {
            return Err(Error::Schema(format!("{verb} takes no {:?}", names[k])));
        }
    }
    Ok(())
}

impl Verb for Classify {
    fn name(&self) -> &'static str {
        "classify-quaternion"
    }
    fn run(&self, input: &Value, _ctx: &Ctx) -> Result<Value> {
        let i: SymbolInput = parse(input)?;
        only(&i, self.name(), [false, false, false])?;
        let (shape, rep) = base(i.p)?.classify_quaternion(&i.symbol)?;
        Ok(json!({"shape": shape, "representative": rep, "display": rep.to_string()}))
    }
}

impl Verb for Residue {
    fn name(&self) -> &'static str {
        "residue"
    }
    fn run(&self, input: &Value, _ctx: &Ctx) -> Result<Value> {
        let i: SymbolInput = parse(input)?;
        only(&i, self.name(), [true, false, false])?;
        let k = base(i.p)?;
        Ok(match i.prime {
            Some(pr) => json!({"prime": pr, "residue": k.residue_at(&i.symbol, pr)}),
            None => json!({"pi": k.residue_at(&i.symbol, Prime::Pi), "delta": k.residue_at(&i.symbol, Prime::Delta)}),
        })
    }
}

impl Verb for BlowUpVerb {
    fn name(&self) -> &'static str {
        "blowup"
    }
    fn run(&self, input: &Value, _ctx: &Ctx) -> Result<Value> {
        let i: SymbolInput = parse(input)?;
        only(&i, self.name(), [false, true, true])?;
        let k = base(i.p)?;
        let lambda = i.lambda.unwrap_or(MonomialElement::unit(false));
        match i.chart {
            Some(chart) => {
                if i.max_depth.is_some() {
                    return Err(Error::Schema("\"chart\" blows up once; drop \"max_depth\"".into()));
                }
                let b = blow_up(&k, &i.symbol, &lambda, chart)?;
                Ok(json!({"blowup": b, "substitution": chart.substitution(), "display": b.symbol.to_string()}))
            }
            None => {
                let t = normalize_model(&k, &i.symbol, &lambda, i.max_depth.unwrap_or(3))?;
                Ok(json!({"depth": t.depth(), "leaves": t.leaves().len(), "tree": t}))
            }
        }
    }
}
