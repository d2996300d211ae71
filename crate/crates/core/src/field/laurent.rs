//! Laurent series `F_q((t))` at capped relative precision.

use super::{Cdvf, Fe, FiniteField, Ring, EXACT};
use crate::error::{Error, Result};

/// Involution carried by the series field (used when the field arises as a
/// residue field of a quadratic extension).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LaurentConj {
    #[default]
    None,
    /// Frobenius on the `F_{p^2}` coefficients.
    Frobenius,
    /// `t -> -t`.
    NegateT,
}

/// `t^val * (c_0 + c_1 t + ...)` with `c_0 != 0`; empty `coeffs` encodes zero
/// known modulo `t^val`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaurentElem {
    pub val: i64,
    pub coeffs: Vec<Fe>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Laurent {
    field: FiniteField,
    prec: u32,
    conj: LaurentConj,
}

impl Laurent {
    pub fn new(field: FiniteField, prec: u32) -> Result<Self> {
        if prec == 0 {
            return Err(Error::UnsupportedBase("precision must be at least 1".into()));
        }
        Ok(Laurent { field, prec, conj: LaurentConj::None })
    }

    pub fn with_conj(mut self, conj: LaurentConj) -> Result<Self> {
        if conj == LaurentConj::Frobenius && self.field.degree() != 2 {
            return Err(Error::UnsupportedInvolution("Frobenius needs F_{p^2} coefficients".into()));
        }
        self.conj = conj;
        Ok(self)
    }

    pub fn field(&self) -> FiniteField {
        self.field
    }

    pub fn zero_to(&self, abs: i64) -> LaurentElem {
        LaurentElem { val: if abs >= EXACT / 2 { EXACT } else { abs }, coeffs: vec![] }
    }

    /// Builds `sum coeffs[k] t^(val + k)` at full precision (trailing entries
    /// beyond the precision are dropped).
    pub fn series(&self, val: i64, coeffs: &[Fe]) -> LaurentElem {
        let n = coeffs.len().max(self.prec as usize);
        let mut c: Vec<Fe> = coeffs.to_vec();
        c.resize(n, Fe::default());
        self.normalize(val, c, EXACT)
    }

    pub fn monomial(&self, c: Fe, e: i64) -> LaurentElem {
        if c.is_zero() {
            return self.zero();
        }
        let mut coeffs = vec![Fe::default(); self.prec as usize];
        coeffs[0] = c;
        LaurentElem { val: e, coeffs }
    }

    fn normalize(&self, val: i64, mut c: Vec<Fe>, abs: i64) -> LaurentElem {
        let lead = c.iter().position(|x| !x.is_zero());
        match lead {
            None => self.zero_to(abs),
            Some(k) => {
                c.drain(..k);
                let v = val + k as i64;
                let rel = (abs - v).min(self.prec as i64).max(0) as usize;
                c.truncate(rel);
                LaurentElem { val: v, coeffs: c }
            }
        }
    }

    fn abs_of(&self, x: &LaurentElem) -> i64 {
        x.val.saturating_add(x.coeffs.len() as i64)
    }
}

impl Ring for Laurent {
    type Elem = LaurentElem;

    fn zero(&self) -> LaurentElem {
        self.zero_to(EXACT)
    }

    fn one(&self) -> LaurentElem {
        self.monomial(self.field.one(), 0)
    }

    fn from_int(&self, n: i64) -> LaurentElem {
        self.monomial(self.field.elem(n), 0)
    }

    fn add(&self, x: &LaurentElem, y: &LaurentElem) -> LaurentElem {
        let abs = self.abs_of(x).min(self.abs_of(y));
        let terms: Vec<&LaurentElem> = [x, y].into_iter().filter(|e| !e.coeffs.is_empty()).collect();
        let Some(v) = terms.iter().map(|e| e.val).min() else {
            return self.zero_to(abs);
        };
        if abs <= v {
            return self.zero_to(abs);
        }
        let n = (abs - v) as usize;
        let mut c = vec![Fe::default(); n];
        for e in terms {
            let off = (e.val - v) as usize;
            for (k, a) in e.coeffs.iter().enumerate() {
                if off + k < n {
                    c[off + k] = self.field.add(&c[off + k], a);
                }
            }
        }
        self.normalize(v, c, abs)
    }

    fn neg(&self, x: &LaurentElem) -> LaurentElem {
        LaurentElem { val: x.val, coeffs: x.coeffs.iter().map(|c| self.field.neg(c)).collect() }
    }

    fn mul(&self, x: &LaurentElem, y: &LaurentElem) -> LaurentElem {
        if x.coeffs.is_empty() || y.coeffs.is_empty() {
            return self.zero_to(x.val.saturating_add(y.val));
        }
        let rel = x.coeffs.len().min(y.coeffs.len());
        let mut c = vec![Fe::default(); rel];
        for (i, a) in x.coeffs.iter().take(rel).enumerate() {
            for (j, b) in y.coeffs.iter().take(rel - i).enumerate() {
                c[i + j] = self.field.add(&c[i + j], &self.field.mul(a, b));
            }
        }
        let v = x.val + y.val;
        self.normalize(v, c, v + rel as i64)
    }

    fn is_zero(&self, x: &LaurentElem) -> bool {
        x.coeffs.is_empty()
    }

    fn is_exact_zero(&self, x: &LaurentElem) -> bool {
        x.coeffs.is_empty() && self.abs_of(x) >= EXACT / 2
    }

    fn inv(&self, x: &LaurentElem) -> Option<LaurentElem> {
        let c0inv = self.field.inv(x.coeffs.first()?)?;
        let n = x.coeffs.len();
        let mut out = vec![Fe::default(); n];
        out[0] = c0inv;
        for k in 1..n {
            let mut s = Fe::default();
            for j in 1..=k {
                s = self.field.add(&s, &self.field.mul(&x.coeffs[j], &out[k - j]));
            }
            out[k] = self.field.neg(&self.field.mul(&s, &c0inv));
        }
        Some(LaurentElem { val: -x.val, coeffs: out })
    }

    fn conj(&self, x: &LaurentElem) -> LaurentElem {
        match self.conj {
            LaurentConj::None => x.clone(),
            LaurentConj::Frobenius => LaurentElem {
                val: x.val,
                coeffs: x.coeffs.iter().map(|c| self.field.frobenius(c)).collect(),
            },
            LaurentConj::NegateT => LaurentElem {
                val: x.val,
                coeffs: x
                    .coeffs
                    .iter()
                    .enumerate()
                    .map(|(k, c)| if (x.val + k as i64) % 2 != 0 { self.field.neg(c) } else { *c })
                    .collect(),
            },
        }
    }

    fn has_conj(&self) -> bool {
        self.conj != LaurentConj::None
    }

    fn weight(&self, x: &LaurentElem) -> Option<i64> {
        self.valuation(x)
    }
}

impl Cdvf for Laurent {
    fn residue_field(&self) -> FiniteField {
        self.field
    }

    fn precision(&self) -> u32 {
        self.prec
    }

    fn uniformizer(&self) -> LaurentElem {
        self.monomial(self.field.one(), 1)
    }

    fn valuation(&self, x: &LaurentElem) -> Option<i64> {
        (!x.coeffs.is_empty()).then_some(x.val)
    }

    fn abs_precision(&self, x: &LaurentElem) -> i64 {
        self.abs_of(x)
    }

    fn residue(&self, x: &LaurentElem) -> Result<Fe> {
        if x.coeffs.is_empty() {
            return if x.val >= 1 {
                Ok(Fe::default())
            } else {
                Err(Error::precision("residue of an element known to no digits"))
            };
        }
        match x.val {
            v if v > 0 => Ok(Fe::default()),
            0 => Ok(x.coeffs[0]),
            _ => Err(Error::HypothesisViolation("residue of a non-integral element".into())),
        }
    }

    fn lift(&self, r: &Fe) -> LaurentElem {
        self.monomial(*r, 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_of_one_minus_t() {
        let f = FiniteField::prime(3);
        let l = Laurent::new(f, 6).unwrap();
        let x = l.series(0, &[f.one(), f.elem(-1)]);
        let y = l.inv(&x).unwrap();
        assert!(y.coeffs.iter().all(|c| *c == f.one()));
        assert_eq!(l.mul(&x, &y), l.one());
    }

    #[test]
    fn negate_t_is_an_involution() {
        let f = FiniteField::prime(5);
        let l = Laurent::new(f, 5).unwrap().with_conj(LaurentConj::NegateT).unwrap();
        let x = l.series(-1, &[f.elem(2), f.elem(3), f.elem(1)]);
        let y = l.conj(&x);
        assert_ne!(x, y);
        assert_eq!(l.conj(&y), x);
        let t = l.uniformizer();
        assert_eq!(l.conj(&t), l.neg(&t));
    }
}
