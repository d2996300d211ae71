use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Laurent2, Laurent2Ring};
use crate::field::Ring;

/// Type of the radicand of a second-kind centre `L = K(sqrt(lambda))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LambdaShape {
    #[serde(rename = "w")]
    W,
    #[serde(rename = "w_pi")]
    WPi,
    #[serde(rename = "w_delta")]
    WDelta,
}

/// `a + b sqrt(lambda)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct SElem {
    pub a: Laurent2,
    pub b: Laurent2,
}

impl fmt::Display for SElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.a.is_zero() {
            write!(f, "({})*sqrt(lambda)", self.b)
        } else {
            write!(f, "{} + ({})*sqrt(lambda)", self.a, self.b)
        }
    }
}

/// `K = Frac(R)` (no radicand) or `L = K(sqrt(lambda))` with
/// `lambda = w`, `w pi` or `w delta` for a constant `w`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceField {
    base: Laurent2Ring,
    lambda: Option<(LambdaShape, Laurent2)>,
}

impl SurfaceField {
    pub fn base_field(base: Laurent2Ring) -> Self {
        SurfaceField { base, lambda: None }
    }

    pub fn extension(base: Laurent2Ring, shape: LambdaShape, w: i64) -> Self {
        let lambda = match shape {
            LambdaShape::W => base.constant(w),
            LambdaShape::WPi => base.monomial(w, 1, 0),
            LambdaShape::WDelta => base.monomial(w, 0, 1),
        };
        SurfaceField { base, lambda: Some((shape, lambda)) }
    }

    pub fn base(&self) -> &Laurent2Ring {
        &self.base
    }

    pub fn shape(&self) -> Option<LambdaShape> {
        self.lambda.as_ref().map(|l| l.0)
    }

    pub fn lambda(&self) -> Option<&Laurent2> {
        self.lambda.as_ref().map(|l| &l.1)
    }

    pub fn embed(&self, a: Laurent2) -> SElem {
        SElem { a, b: Laurent2::default() }
    }

    pub fn monomial(&self, c: i64, a: i32, b: i32) -> SElem {
        self.embed(self.base.monomial(c, a, b))
    }

    pub fn sqrt_lambda(&self) -> Option<SElem> {
        self.lambda.as_ref().map(|_| SElem { a: Laurent2::default(), b: self.base.one() })
    }

    /// The prime of `S` over `pi`: `sqrt(lambda)` when `lambda = w pi`.
    pub fn pi_prime(&self) -> SElem {
        match self.shape() {
            Some(LambdaShape::WPi) => self.sqrt_lambda().unwrap(),
            _ => self.embed(self.base.pi()),
        }
    }

    pub fn delta_prime(&self) -> SElem {
        match self.shape() {
            Some(LambdaShape::WDelta) => self.sqrt_lambda().unwrap(),
            _ => self.embed(self.base.delta()),
        }
    }

    pub fn norm(&self, x: &SElem) -> Laurent2 {
        let r = &self.base;
        match self.lambda() {
            None => x.a.clone(),
            Some(l) => r.sub(&r.mul(&x.a, &x.a), &r.mul(l, &r.mul(&x.b, &x.b))),
        }
    }

    /// Element of the integral closure `S = R + R sqrt(lambda)`.
    pub fn is_integral(&self, x: &SElem) -> bool {
        x.a.is_polynomial() && x.b.is_polynomial()
    }

    pub fn is_unit(&self, x: &SElem) -> bool {
        self.is_integral(x) && self.norm(x).is_unit()
    }

    pub fn is_scalar(&self, x: &SElem) -> bool {
        x.b.is_zero()
    }

    /// Valuation at the prime of `S` over `pi`.
    pub fn v_pi_prime(&self, x: &SElem) -> Option<i32> {
        let n = self.norm(x).v_pi()?;
        Some(match self.shape() {
            Some(LambdaShape::WPi) => n,
            None => n,
            _ => n / 2,
        })
    }

    pub fn v_delta_prime(&self, x: &SElem) -> Option<i32> {
        let n = self.norm(x).v_delta()?;
        Some(match self.shape() {
            Some(LambdaShape::WDelta) => n,
            None => n,
            _ => n / 2,
        })
    }
}

impl Ring for SurfaceField {
    type Elem = SElem;

    fn zero(&self) -> SElem {
        SElem::default()
    }

    fn one(&self) -> SElem {
        self.embed(self.base.one())
    }

    fn from_int(&self, n: i64) -> SElem {
        self.embed(self.base.from_int(n))
    }

    fn add(&self, x: &SElem, y: &SElem) -> SElem {
        SElem { a: self.base.add(&x.a, &y.a), b: self.base.add(&x.b, &y.b) }
    }

    fn neg(&self, x: &SElem) -> SElem {
        SElem { a: self.base.neg(&x.a), b: self.base.neg(&x.b) }
    }

    fn mul(&self, x: &SElem, y: &SElem) -> SElem {
        let r = &self.base;
        let mut a = r.mul(&x.a, &y.a);
        if let Some(l) = self.lambda() {
            a = r.add(&a, &r.mul(l, &r.mul(&x.b, &y.b)));
        }
        let b = r.add(&r.mul(&x.a, &y.b), &r.mul(&x.b, &y.a));
        SElem { a, b }
    }

    fn is_zero(&self, x: &SElem) -> bool {
        x.a.is_zero() && x.b.is_zero()
    }

    /// Defined when the norm is a monomial.
    fn inv(&self, x: &SElem) -> Option<SElem> {
        if self.lambda.is_none() {
            return Some(self.embed(self.base.inv(&x.a)?));
        }
        let ni = self.base.inv(&self.norm(x))?;
        let c = self.conj(x);
        Some(SElem { a: self.base.mul(&c.a, &ni), b: self.base.mul(&c.b, &ni) })
    }

    fn conj(&self, x: &SElem) -> SElem {
        SElem { a: x.a.clone(), b: self.base.neg(&x.b) }
    }

    fn has_conj(&self) -> bool {
        self.lambda.is_some()
    }

    fn weight(&self, x: &SElem) -> Option<i64> {
        if self.is_zero(x) {
            None
        } else {
            Some(x.a.degree_bound().max(x.b.degree_bound()) as i64)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn norm_is_multiplicative_and_primes_have_valuation_one() {
        let r = Laurent2Ring::new(5).unwrap();
        for shape in [LambdaShape::W, LambdaShape::WPi, LambdaShape::WDelta] {
            let l = SurfaceField::extension(r, shape, 2);
            let x = SElem { a: r.add(&r.one(), &r.pi()), b: r.delta() };
            let y = SElem { a: r.monomial(3, 1, 1), b: r.one() };
            assert_eq!(l.norm(&l.mul(&x, &y)), r.mul(&l.norm(&x), &l.norm(&y)));
            assert_eq!(l.v_pi_prime(&l.pi_prime()), Some(1));
            assert_eq!(l.v_delta_prime(&l.delta_prime()), Some(1));
            let s = l.sqrt_lambda().unwrap();
            assert_eq!(l.mul(&s, &s), l.embed(l.lambda().unwrap().clone()));
            let si = l.inv(&s).unwrap();
            assert_eq!(l.mul(&s, &si), l.one());
            assert_eq!(l.conj(&l.conj(&x)), x);
        }
        let k = SurfaceField::base_field(r);
        let m = k.monomial(3, 1, -2);
        assert_eq!(k.mul(&m, &k.inv(&m).unwrap()), k.one());
    }
}
