//! Laurent polynomials in two variables `pi`, `delta` over `F_p`: the
//! elements of `R = F_p[[pi, delta]]` (and its fraction field) that the
//! symbolic layer ever needs.

use std::collections::BTreeMap;
use std::fmt;

use crate::field::{Fe, FiniteField, Ring};

/// `sum c_(a,b) pi^a delta^b` with nonzero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Laurent2 {
    terms: BTreeMap<(i32, i32), u32>,
}

impl fmt::Display for Laurent2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let var = |name: &str, e: i32| match e {
            0 => None,
            1 => Some(name.to_string()),
            _ => Some(format!("{name}^{e}")),
        };
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(&(a, b), &c)| {
                let mut fs: Vec<String> = var("pi", a).into_iter().chain(var("delta", b)).collect();
                if c != 1 || fs.is_empty() {
                    fs.insert(0, c.to_string());
                }
                fs.join("*")
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Laurent2 {
    pub fn terms(&self) -> impl Iterator<Item = (&(i32, i32), &u32)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, a: i32, b: i32) -> u32 {
        self.terms.get(&(a, b)).copied().unwrap_or(0)
    }

    /// `pi`-adic valuation (minimal `pi` exponent); `None` for zero.
    pub fn v_pi(&self) -> Option<i32> {
        self.terms.keys().map(|k| k.0).min()
    }

    pub fn v_delta(&self) -> Option<i32> {
        self.terms.keys().map(|k| k.1).min()
    }

    /// No negative exponents: an element of `R`.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|&(a, b)| a >= 0 && b >= 0)
    }

    pub fn constant_term(&self) -> u32 {
        self.coeff(0, 0)
    }

    /// A unit of `R`: polynomial with nonzero constant term.
    pub fn is_unit(&self) -> bool {
        self.is_polynomial() && self.constant_term() != 0
    }

    /// The single term of a monomial.
    pub fn as_monomial(&self) -> Option<(u32, i32, i32)> {
        if self.terms.len() == 1 {
            let (&(a, b), &c) = self.terms.iter().next().unwrap();
            Some((c, a, b))
        } else {
            None
        }
    }

    pub fn degree_bound(&self) -> i32 {
        self.terms.keys().map(|&(a, b)| a.abs() + b.abs()).max().unwrap_or(0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Laurent2Ring {
    field: FiniteField,
}

impl Laurent2Ring {
    pub fn new(p: u32) -> crate::error::Result<Self> {
        Ok(Laurent2Ring { field: FiniteField::new(p, 1)? })
    }

    pub fn field(&self) -> FiniteField {
        self.field
    }

    pub fn p(&self) -> u32 {
        self.field.p()
    }

    pub fn monomial(&self, c: i64, a: i32, b: i32) -> Laurent2 {
        let c = self.field.elem(c).a;
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert((a, b), c);
        }
        Laurent2 { terms }
    }

    pub fn constant(&self, c: i64) -> Laurent2 {
        self.monomial(c, 0, 0)
    }

    pub fn pi(&self) -> Laurent2 {
        self.monomial(1, 1, 0)
    }

    pub fn delta(&self) -> Laurent2 {
        self.monomial(1, 0, 1)
    }

    /// Substitutes `pi = 0` in an element without negative `pi` powers:
    /// coefficients of `delta^b`.
    pub fn reduce_pi(&self, f: &Laurent2) -> BTreeMap<i32, u32> {
        f.terms.iter().filter(|(k, _)| k.0 == 0).map(|(k, &c)| (k.1, c)).collect()
    }

    /// Substitutes `delta = 0`: coefficients of `pi^a`.
    pub fn reduce_delta(&self, f: &Laurent2) -> BTreeMap<i32, u32> {
        f.terms.iter().filter(|(k, _)| k.1 == 0).map(|(k, &c)| (k.0, c)).collect()
    }

    /// Multiplies by `pi^a delta^b`.
    pub fn shift(&self, f: &Laurent2, a: i32, b: i32) -> Laurent2 {
        Laurent2 { terms: f.terms.iter().map(|(&(x, y), &c)| ((x + a, y + b), c)).collect() }
    }

    /// Applies a substitution `pi^a delta^b -> pi^{f(a,b)} delta^{g(a,b)}`
    /// given as a map on exponents; coefficients of colliding terms add.
    pub fn map_exponents(&self, f: &Laurent2, m: impl Fn(i32, i32) -> (i32, i32)) -> Laurent2 {
        let mut out = Laurent2::default();
        for (&(a, b), &c) in &f.terms {
            let key = m(a, b);
            let cur = out.coeff(key.0, key.1);
            let s = (cur + c) % self.p();
            if s == 0 {
                out.terms.remove(&key);
            } else {
                out.terms.insert(key, s);
            }
        }
        out
    }

    pub fn scale(&self, f: &Laurent2, c: u32) -> Laurent2 {
        let c = c % self.p();
        if c == 0 {
            return Laurent2::default();
        }
        Laurent2 {
            terms: f.terms.iter().map(|(&k, &x)| (k, ((x as u64 * c as u64) % self.p() as u64) as u32)).collect(),
        }
    }

    pub fn fe(&self, c: u32) -> Fe {
        Fe::new(c % self.p(), 0)
    }
}

impl Ring for Laurent2Ring {
    type Elem = Laurent2;

    fn zero(&self) -> Laurent2 {
        Laurent2::default()
    }

    fn one(&self) -> Laurent2 {
        self.constant(1)
    }

    fn from_int(&self, n: i64) -> Laurent2 {
        self.constant(n)
    }

    fn add(&self, x: &Laurent2, y: &Laurent2) -> Laurent2 {
        let p = self.p();
        let mut terms = x.terms.clone();
        for (&k, &c) in &y.terms {
            let s = (terms.get(&k).copied().unwrap_or(0) + c) % p;
            if s == 0 {
                terms.remove(&k);
            } else {
                terms.insert(k, s);
            }
        }
        Laurent2 { terms }
    }

    fn neg(&self, x: &Laurent2) -> Laurent2 {
        let p = self.p();
        Laurent2 { terms: x.terms.iter().map(|(&k, &c)| (k, p - c)).collect() }
    }

    fn mul(&self, x: &Laurent2, y: &Laurent2) -> Laurent2 {
        let p = self.p() as u64;
        let mut acc: BTreeMap<(i32, i32), u64> = BTreeMap::new();
        for (&(a1, b1), &c1) in &x.terms {
            for (&(a2, b2), &c2) in &y.terms {
                let e = acc.entry((a1 + a2, b1 + b2)).or_insert(0);
                *e = (*e + c1 as u64 * c2 as u64) % p;
            }
        }
        Laurent2 { terms: acc.into_iter().filter(|&(_, c)| c != 0).map(|(k, c)| (k, c as u32)).collect() }
    }

    fn is_zero(&self, x: &Laurent2) -> bool {
        x.is_zero()
    }

    /// Only monomials are invertible here.
    fn inv(&self, x: &Laurent2) -> Option<Laurent2> {
        let (c, a, b) = x.as_monomial()?;
        let ci = self.field.inv(&Fe::new(c, 0))?.a;
        let mut terms = BTreeMap::new();
        terms.insert((-a, -b), ci);
        Some(Laurent2 { terms })
    }

    fn weight(&self, x: &Laurent2) -> Option<i64> {
        if x.is_zero() {
            None
        } else {
            Some(x.terms.len() as i64)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display() {
        let r = Laurent2Ring::new(5).unwrap();
        let f = r.add(&r.add(&r.one(), &r.pi()), &r.monomial(3, 2, -1));
        assert_eq!(f.to_string(), "1 + pi + 3*pi^2*delta^-1");
        assert_eq!(r.zero().to_string(), "0");
    }

    #[test]
    fn arithmetic_and_valuations() {
        let r = Laurent2Ring::new(5).unwrap();
        let f = r.add(&r.one(), &r.pi());
        let g = r.sub(&r.one(), &r.pi());
        let fg = r.mul(&f, &g);
        // (1 + pi)(1 - pi) = 1 - pi^2
        assert_eq!(fg, r.sub(&r.one(), &r.monomial(1, 2, 0)));
        assert!(fg.is_unit());
        let m = r.monomial(3, 2, -1);
        let mi = r.inv(&m).unwrap();
        assert_eq!(r.mul(&m, &mi), r.one());
        assert!(r.inv(&f).is_none());
        assert_eq!(r.mul(&m, &f).v_pi(), Some(2));
        assert_eq!(r.mul(&m, &f).v_delta(), Some(-1));
    }
}
