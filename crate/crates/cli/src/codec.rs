//! JSON encodings of field elements, descriptors and forms.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use hermiso::error::{Error, Result};
use hermiso::field::laurent::LaurentElem;
use hermiso::field::padic::PadicElem;
use hermiso::field::{Cdvf, Fe, FiniteField, Laurent, Padic, PureExt, Ring, EXACT};
use hermiso::local::{FieldAlg, LocalAlgebra, QuatLocal};
use hermiso::quaternion::QuatElem;

pub fn schema(msg: impl Into<String>) -> Error {
    Error::Schema(msg.into())
}

pub fn parse<T: for<'de> Deserialize<'de>>(v: &Value) -> Result<T> {
    serde_json::from_value(v.clone()).map_err(|e| schema(e.to_string()))
}

/// Element encoding for one ring.
pub trait Codec: Ring {
    fn decode(&self, v: &Value) -> Result<Self::Elem>;
    fn encode(&self, x: &Self::Elem) -> Value;
}

fn int_of(v: &Value) -> Option<i64> {
    v.as_i64()
}

#[derive(Deserialize)]
struct SeriesJson {
    val: Value,
    #[serde(default)]
    unit: Vec<Value>,
}

fn series_parts(v: &Value) -> Result<(i64, Vec<Value>)> {
    let s: SeriesJson = parse(v)?;
    if s.val == json!("inf") {
        return Ok((i64::MAX, vec![]));
    }
    let val = s.val.as_i64().ok_or_else(|| schema("element \"val\" must be an integer or \"inf\""))?;
    Ok((val, s.unit))
}

impl Codec for Padic {
    fn decode(&self, v: &Value) -> Result<PadicElem> {
        if let Some(n) = int_of(v) {
            return Ok(self.from_int(n));
        }
        let (val, unit) = series_parts(v)?;
        if val == i64::MAX {
            return Ok(self.zero());
        }
        let digits = unit
            .iter()
            .map(|d| d.as_u64().map(|d| d as u32).ok_or_else(|| schema("p-adic digits are non-negative integers")))
            .collect::<Result<Vec<_>>>()?;
        self.from_digits(val, &digits)
    }

    fn encode(&self, x: &PadicElem) -> Value {
        match self.valuation(x) {
            None => match self.abs_precision(x) {
                a if a >= EXACT / 2 => json!({"val": "inf", "unit": []}),
                a => json!({"val": "inf", "unit": [], "abs": a}),
            },
            Some(v) => json!({"val": v, "unit": self.unit_digits(x)}),
        }
    }
}

impl Codec for FiniteField {
    fn decode(&self, v: &Value) -> Result<Fe> {
        let p = self.p() as i64;
        if let Some(n) = int_of(v) {
            return Ok(self.elem(n));
        }
        match v.as_array().map(|a| a.as_slice()) {
            Some([a, b]) if self.degree() == 2 => {
                let (a, b) = (a.as_i64(), b.as_i64());
                match (a, b) {
                    (Some(a), Some(b)) => Ok(Fe::new(a.rem_euclid(p) as u32, b.rem_euclid(p) as u32)),
                    _ => Err(schema("F_{p^2} elements are [a, b] with integer entries")),
                }
            }
            _ => Err(schema(format!("not an element of F_{}^{}: {v}", self.p(), self.degree()))),
        }
    }

    fn encode(&self, x: &Fe) -> Value {
        if self.degree() == 1 {
            json!(x.a)
        } else {
            json!([x.a, x.b])
        }
    }
}

impl Codec for Laurent {
    fn decode(&self, v: &Value) -> Result<LaurentElem> {
        if let Some(n) = int_of(v) {
            return Ok(self.from_int(n));
        }
        let (val, unit) = series_parts(v)?;
        if val == i64::MAX {
            return Ok(self.zero());
        }
        let f = self.field();
        let coeffs = unit.iter().map(|d| f.decode(d)).collect::<Result<Vec<_>>>()?;
        Ok(self.series(val, &coeffs))
    }

    fn encode(&self, x: &LaurentElem) -> Value {
        let f = self.field();
        if x.coeffs.is_empty() {
            return json!({"val": "inf", "unit": []});
        }
        json!({"val": x.val, "unit": x.coeffs.iter().map(|c| f.encode(c)).collect::<Vec<_>>()})
    }
}

impl<C: Cdvf + Codec> Codec for PureExt<C> {
    fn decode(&self, v: &Value) -> Result<Vec<C::Elem>> {
        match v.as_array() {
            Some(a) => {
                if a.len() > self.degree() {
                    return Err(schema(format!("extension elements have at most {} coordinates", self.degree())));
                }
                let mut out = self.zero();
                for (k, c) in a.iter().enumerate() {
                    out[k] = self.base().decode(c)?;
                }
                Ok(out)
            }
            None => Ok(self.embed(&self.base().decode(v)?)),
        }
    }

    fn encode(&self, x: &Vec<C::Elem>) -> Value {
        Value::Array(x.iter().map(|c| self.base().encode(c)).collect())
    }
}

/// Element encoding for an algebra with involution.
pub trait AlgCodec: LocalAlgebra {
    fn decode(&self, v: &Value) -> Result<Self::Elem>;
    fn encode(&self, x: &Self::Elem) -> Value;
}

impl<C: Cdvf + Codec> AlgCodec for FieldAlg<C> {
    fn decode(&self, v: &Value) -> Result<C::Elem> {
        self.field().decode(v)
    }
    fn encode(&self, x: &C::Elem) -> Value {
        self.field().encode(x)
    }
}

pub fn decode_quat<R: Codec>(r: &R, v: &Value) -> Result<QuatElem<R::Elem>> {
    match v.as_array() {
        Some(a) if a.len() == 4 => {
            let c = a.iter().map(|x| r.decode(x)).collect::<Result<Vec<_>>>()?;
            Ok(std::array::from_fn(|k| c[k].clone()))
        }
        Some(_) => Err(schema("quaternions are arrays of 4 coordinates [x0, x1, x2, x3] in the basis 1, i, j, ij")),
        None => {
            let c = r.decode(v)?;
            Ok([c, r.zero(), r.zero(), r.zero()])
        }
    }
}

impl<C: Cdvf + Codec> AlgCodec for QuatLocal<C> {
    fn decode(&self, v: &Value) -> Result<QuatElem<C::Elem>> {
        decode_quat(self.algebra().ring(), v)
    }
    fn encode(&self, x: &QuatElem<C::Elem>) -> Value {
        let r = self.algebra().ring();
        Value::Array(x.iter().map(|c| r.encode(c)).collect())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldKind {
    Padic,
    Laurent,
    Finite,
}

/// `{"kind":"padic","p":5,"prec":16}`, `{"kind":"laurent","p":3,"deg":1,"prec":16}`
/// or `{"kind":"finite","p":3,"deg":2}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldDesc {
    #[serde(default = "one")]
    pub version: u32,
    pub kind: FieldKind,
    pub p: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub deg: Option<u8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prec: Option<u32>,
}

fn one() -> u32 {
    1
}

impl FieldDesc {
    pub fn check_version(&self) -> Result<()> {
        if self.version != 1 {
            return Err(schema(format!("unsupported descriptor version {}", self.version)));
        }
        Ok(())
    }

    pub fn finite(&self) -> Result<FiniteField> {
        FiniteField::new(self.p, self.deg.unwrap_or(1))
    }

    pub fn padic(&self, default_prec: u32) -> Result<Padic> {
        if self.deg.is_some_and(|d| d != 1) {
            return Err(schema("p-adic fields have no \"deg\" other than 1"));
        }
        Padic::new(self.p as u64, self.prec.unwrap_or(default_prec))
    }

    pub fn laurent(&self, default_prec: u32) -> Result<Laurent> {
        Laurent::new(self.finite()?, self.prec.unwrap_or(default_prec))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn padic_round_trip() {
        let k = Padic::new(5, 8).unwrap();
        for v in [json!(7), json!(-3), json!({"val": 2, "unit": [1, 4, 0, 2]}), json!({"val": "inf", "unit": []})] {
            let x = k.decode(&v).unwrap();
            assert_eq!(k.decode(&k.encode(&x)).unwrap(), x, "{v}");
        }
        assert!(k.decode(&json!({"val": 0, "unit": [7]})).is_err());
    }

    #[test]
    fn laurent_round_trip() {
        let k = Laurent::new(FiniteField::quadratic(3), 6).unwrap();
        let v = json!({"val": -1, "unit": [[1, 2], 0, [0, 1]]});
        let x = k.decode(&v).unwrap();
        assert_eq!(x.val, -1);
        assert_eq!(k.decode(&k.encode(&x)).unwrap(), x);
    }

    #[test]
    fn field_descriptor() {
        let d: FieldDesc = serde_json::from_value(json!({"kind": "laurent", "p": 3, "deg": 1, "prec": 16})).unwrap();
        assert_eq!(d.version, 1);
        assert_eq!(d.laurent(8).unwrap().precision(), 16);
        assert!(serde_json::from_value::<FieldDesc>(json!({"kind": "real", "p": 3})).is_err());
    }
}
