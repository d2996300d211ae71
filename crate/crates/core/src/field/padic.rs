//! `Q_p` at capped relative precision.

use serde::{Deserialize, Serialize};

use super::{is_odd_prime, Cdvf, Fe, FiniteField, Ring, EXACT};
use crate::error::{Error, Result};

/// `p^val * unit` with `unit` known modulo `p^rel`. `rel == 0` encodes zero
/// known modulo `p^val`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PadicElem {
    pub val: i64,
    pub unit: u64,
    pub rel: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Padic {
    p: u64,
    prec: u32,
    pows: Vec<u64>,
}

pub(crate) fn vp(mut n: u128, p: u128) -> u32 {
    let mut k = 0;
    while n % p == 0 {
        n /= p;
        k += 1;
    }
    k
}

pub(crate) fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(m as i128) as u64)
}

impl Padic {
    pub fn new(p: u64, prec: u32) -> Result<Self> {
        if !is_odd_prime(p) || p > 46_000 {
            return Err(Error::UnsupportedBase(format!("p = {p} must be an odd prime below 46000")));
        }
        if prec == 0 {
            return Err(Error::UnsupportedBase("precision must be at least 1".into()));
        }
        let mut pows = vec![1u64];
        for _ in 0..prec {
            let next = pows.last().unwrap().checked_mul(p).filter(|&x| x < (1u64 << 62));
            match next {
                Some(x) => pows.push(x),
                None => {
                    return Err(Error::UnsupportedBase(format!(
                        "p^{prec} does not fit the 62-bit unit representation"
                    )))
                }
            }
        }
        Ok(Padic { p, prec, pows })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn zero_to(&self, abs: i64) -> PadicElem {
        PadicElem { val: if abs >= EXACT / 2 { EXACT } else { abs }, unit: 0, rel: 0 }
    }

    /// `p^val * unit` at full precision; `unit` is reduced and must be prime to `p`.
    pub fn elem(&self, val: i64, unit: i64) -> PadicElem {
        let m = self.pows[self.prec as usize];
        let u = unit.rem_euclid(m as i64) as u64;
        assert!(u % self.p != 0, "unit part divisible by p");
        PadicElem { val, unit: u, rel: self.prec }
    }

    /// Base-p digits of the unit part, least significant first.
    pub fn unit_digits(&self, x: &PadicElem) -> Vec<u32> {
        let mut u = x.unit;
        (0..x.rel)
            .map(|_| {
                let d = (u % self.p) as u32;
                u /= self.p;
                d
            })
            .collect()
    }

    pub fn from_digits(&self, val: i64, digits: &[u32]) -> Result<PadicElem> {
        if digits.is_empty() || digits.iter().all(|&d| d == 0) {
            return Ok(self.zero_to(if digits.is_empty() { EXACT } else { val + digits.len() as i64 }));
        }
        let rel = digits.len().min(self.prec as usize);
        let mut u: u64 = 0;
        for &d in digits[..rel].iter().rev() {
            if d as u64 >= self.p {
                return Err(Error::Schema(format!("digit {d} out of range for p = {}", self.p)));
            }
            u = u * self.p + d as u64;
        }
        let k = vp(u as u128, self.p as u128);
        Ok(PadicElem { val: val + k as i64, unit: u / self.pows[k as usize], rel: rel as u32 - k })
    }

    /// Integer representative `p^val * unit` when `val >= 0`.
    pub fn to_integer(&self, x: &PadicElem) -> Option<i128> {
        if x.rel == 0 {
            return Some(0);
        }
        if x.val < 0 {
            return None;
        }
        (self.p as i128).checked_pow(x.val as u32).and_then(|s| s.checked_mul(x.unit as i128))
    }

    fn normalize(&self, val: i64, s: u128, n: u32, abs: i64) -> PadicElem {
        if s == 0 {
            return self.zero_to(abs);
        }
        let k = vp(s, self.p as u128);
        PadicElem { val: val + k as i64, unit: (s / self.pows[k as usize] as u128) as u64, rel: n - k }
    }

    fn truncate(&self, x: &PadicElem, abs: i64) -> PadicElem {
        if x.rel == 0 {
            return self.zero_to(x.val.min(abs));
        }
        let rel_max = abs - x.val;
        if rel_max <= 0 {
            return self.zero_to(abs);
        }
        let rel = (x.rel as i64).min(rel_max) as u32;
        PadicElem { val: x.val, unit: x.unit % self.pows[rel as usize], rel }
    }
}

impl Ring for Padic {
    type Elem = PadicElem;

    fn zero(&self) -> PadicElem {
        self.zero_to(EXACT)
    }

    fn one(&self) -> PadicElem {
        PadicElem { val: 0, unit: 1, rel: self.prec }
    }

    fn from_int(&self, n: i64) -> PadicElem {
        if n == 0 {
            return self.zero();
        }
        let k = vp(n.unsigned_abs() as u128, self.p as u128);
        let m = self.pows[self.prec as usize] as i128;
        let u = ((n as i128) / (self.p as i128).pow(k)).rem_euclid(m) as u64;
        PadicElem { val: k as i64, unit: u, rel: self.prec }
    }

    fn add(&self, x: &PadicElem, y: &PadicElem) -> PadicElem {
        if x.rel == 0 {
            return self.truncate(y, x.val);
        }
        if y.rel == 0 {
            return self.truncate(x, y.val);
        }
        let v = x.val.min(y.val);
        let abs = (x.val + x.rel as i64).min(y.val + y.rel as i64);
        let n = (abs - v) as u32;
        let m = self.pows[n as usize] as u128;
        let term = |e: &PadicElem| -> u128 {
            let shift = (e.val - v) as u32;
            if shift >= n {
                0
            } else {
                (e.unit as u128 * self.pows[shift as usize] as u128) % m
            }
        };
        let s = (term(x) + term(y)) % m;
        self.normalize(v, s, n, abs)
    }

    fn neg(&self, x: &PadicElem) -> PadicElem {
        if x.rel == 0 {
            return x.clone();
        }
        let m = self.pows[x.rel as usize];
        PadicElem { val: x.val, unit: (m - x.unit % m) % m, rel: x.rel }
    }

    fn mul(&self, x: &PadicElem, y: &PadicElem) -> PadicElem {
        match (x.rel, y.rel) {
            (0, 0) => self.zero_to(x.val.saturating_add(y.val)),
            (0, _) => self.zero_to(x.val.saturating_add(y.val)),
            (_, 0) => self.zero_to(y.val.saturating_add(x.val)),
            _ => {
                let rel = x.rel.min(y.rel);
                let m = self.pows[rel as usize] as u128;
                let u = (x.unit as u128 * y.unit as u128) % m;
                PadicElem { val: x.val + y.val, unit: u as u64, rel }
            }
        }
    }

    fn is_zero(&self, x: &PadicElem) -> bool {
        x.rel == 0
    }

    fn is_exact_zero(&self, x: &PadicElem) -> bool {
        x.rel == 0 && x.val >= EXACT / 2
    }

    fn inv(&self, x: &PadicElem) -> Option<PadicElem> {
        if x.rel == 0 {
            return None;
        }
        let u = inv_mod(x.unit, self.pows[x.rel as usize])?;
        Some(PadicElem { val: -x.val, unit: u, rel: x.rel })
    }

    fn weight(&self, x: &PadicElem) -> Option<i64> {
        self.valuation(x)
    }
}

impl Cdvf for Padic {
    fn residue_field(&self) -> FiniteField {
        FiniteField::prime(self.p as u32)
    }

    fn precision(&self) -> u32 {
        self.prec
    }

    fn uniformizer(&self) -> PadicElem {
        PadicElem { val: 1, unit: 1, rel: self.prec }
    }

    fn valuation(&self, x: &PadicElem) -> Option<i64> {
        (x.rel > 0).then_some(x.val)
    }

    fn abs_precision(&self, x: &PadicElem) -> i64 {
        x.val + x.rel as i64
    }

    fn residue(&self, x: &PadicElem) -> Result<Fe> {
        if x.rel == 0 {
            return if x.val >= 1 {
                Ok(Fe::new(0, 0))
            } else {
                Err(Error::precision("residue of an element known to no digits"))
            };
        }
        match x.val {
            v if v > 0 => Ok(Fe::new(0, 0)),
            0 => Ok(Fe::new((x.unit % self.p) as u32, 0)),
            _ => Err(Error::HypothesisViolation("residue of a non-integral element".into())),
        }
    }

    fn lift(&self, r: &Fe) -> PadicElem {
        self.from_int(r.a as i64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_matches_integers() {
        let q = Padic::new(5, 8).unwrap();
        let m = 5i128.pow(8);
        for a in [-37i64, 1, 2, 25, 130, 7777] {
            for b in [3i64, -50, 625, 11] {
                let s = q.add(&q.from_int(a), &q.from_int(b));
                let prod = q.mul(&q.from_int(a), &q.from_int(b));
                assert_eq!(q.to_integer(&s).unwrap().rem_euclid(m), ((a + b) as i128).rem_euclid(m));
                assert_eq!(q.to_integer(&prod).unwrap().rem_euclid(m), ((a * b) as i128).rem_euclid(m));
            }
        }
    }

    #[test]
    fn cancellation_loses_relative_precision() {
        let q = Padic::new(3, 4).unwrap();
        let x = q.from_int(1);
        let y = q.from_int(1 + 27);
        let d = q.sub(&y, &x);
        assert_eq!(q.valuation(&d), Some(3));
        assert_eq!(d.rel, 1);
        let z = q.sub(&x, &x);
        assert!(q.is_zero(&z));
        assert_eq!(q.abs_precision(&z), 4);
        assert!(q.certified_valuation(&z).is_err());
    }

    #[test]
    fn inverse_and_residue() {
        let q = Padic::new(7, 10).unwrap();
        let x = q.elem(-2, 3);
        let y = q.inv(&x).unwrap();
        assert_eq!(q.mul(&x, &y), q.one());
        assert_eq!(q.unit_residue(&x).unwrap(), Fe::new(3, 0));
        assert!(q.residue(&x).is_err());
    }

    #[test]
    fn digits_round_trip() {
        let q = Padic::new(3, 6).unwrap();
        let x = q.elem(2, 200);
        let d = q.unit_digits(&x);
        assert_eq!(q.from_digits(2, &d).unwrap(), x);
    }
}
