//! Prime fields `F_p` and their quadratic extensions `F_p[x]/(x^2 - u)`,
//! with `u` the least quadratic non-residue mod `p`.

use serde::{Deserialize, Serialize};

use super::{is_odd_prime, Ring};
use crate::error::{Error, Result};

/// An element `a + b*x` of `F_p` (b = 0) or `F_{p^2}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Fe {
    pub a: u32,
    pub b: u32,
}

impl Fe {
    pub const fn new(a: u32, b: u32) -> Self {
        Fe { a, b }
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FiniteField {
    p: u32,
    deg: u8,
    nonres: u32,
}

fn modpow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

/// Least positive quadratic non-residue modulo an odd prime.
pub fn least_nonresidue(p: u32) -> u32 {
    (2..p)
        .find(|&n| modpow(n as u64, (p as u64 - 1) / 2, p as u64) == p as u64 - 1)
        .expect("odd prime has a non-residue")
}

impl FiniteField {
    pub fn new(p: u32, deg: u8) -> Result<Self> {
        if !is_odd_prime(p as u64) {
            return Err(Error::UnsupportedBase(format!("{p} is not an odd prime")));
        }
        if p > 46_000 {
            return Err(Error::UnsupportedBase(format!("prime {p} too large for u32 field arithmetic")));
        }
        if deg != 1 && deg != 2 {
            return Err(Error::UnsupportedBase(format!("residue degree {deg} not supported")));
        }
        Ok(FiniteField { p, deg, nonres: least_nonresidue(p) })
    }

    pub fn prime(p: u32) -> Self {
        Self::new(p, 1).expect("odd prime")
    }

    pub fn quadratic(p: u32) -> Self {
        Self::new(p, 2).expect("odd prime")
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u8 {
        self.deg
    }

    /// The fixed non-square `u` of the prime field.
    pub fn nonresidue(&self) -> u32 {
        self.nonres
    }

    pub fn order(&self) -> u64 {
        (self.p as u64).pow(self.deg as u32)
    }

    /// The same prime, degree one.
    pub fn prime_field(&self) -> FiniteField {
        FiniteField { deg: 1, ..*self }
    }

    pub fn extension(&self) -> FiniteField {
        FiniteField { deg: 2, ..*self }
    }

    pub fn elem(&self, n: i64) -> Fe {
        Fe::new(n.rem_euclid(self.p as i64) as u32, 0)
    }

    /// The generator `x` with `x^2 = u` (degree two only).
    pub fn generator(&self) -> Fe {
        debug_assert_eq!(self.deg, 2);
        Fe::new(0, 1)
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> + '_ {
        let p = self.p;
        let top = if self.deg == 2 { p } else { 1 };
        (0..top).flat_map(move |b| (0..p).map(move |a| Fe::new(a, b)))
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = Fe> + '_ {
        self.elements().filter(|x| !x.is_zero())
    }

    fn addp(&self, x: u32, y: u32) -> u32 {
        ((x as u64 + y as u64) % self.p as u64) as u32
    }

    fn mulp(&self, x: u32, y: u32) -> u32 {
        ((x as u64 * y as u64) % self.p as u64) as u32
    }

    fn negp(&self, x: u32) -> u32 {
        if x == 0 {
            0
        } else {
            self.p - x
        }
    }

    pub fn norm(&self, x: &Fe) -> Fe {
        // x * frob(x) = a^2 - u b^2
        let a2 = self.mulp(x.a, x.a);
        let b2 = self.mulp(self.mulp(x.b, x.b), self.nonres);
        Fe::new(self.addp(a2, self.negp(b2)), 0)
    }

    /// Frobenius `x -> x^p`, the nontrivial automorphism over `F_p`.
    pub fn frobenius(&self, x: &Fe) -> Fe {
        Fe::new(x.a, self.negp(x.b))
    }

    pub fn pow_fe(&self, x: &Fe, e: u64) -> Fe {
        self.pow(x, e)
    }

    pub fn is_square(&self, x: &Fe) -> bool {
        if x.is_zero() {
            return true;
        }
        self.pow(x, (self.order() - 1) / 2) == self.one()
    }

    /// Legendre-type character: 1 for nonzero squares, -1 otherwise, 0 at 0.
    pub fn quadratic_character(&self, x: &Fe) -> i32 {
        if x.is_zero() {
            0
        } else if self.is_square(x) {
            1
        } else {
            -1
        }
    }

    pub fn sqrt(&self, x: &Fe) -> Option<Fe> {
        if !self.is_square(x) {
            return None;
        }
        if self.deg == 1 {
            return (0..self.p).map(|a| Fe::new(a, 0)).find(|r| self.mul(r, r) == *x);
        }
        self.elements().find(|r| self.mul(r, r) == *x)
    }

    /// Embeds a prime-field element (degree-two fields only).
    pub fn embed(&self, x: &Fe) -> Fe {
        Fe::new(x.a, 0)
    }
}

impl Ring for FiniteField {
    type Elem = Fe;

    fn zero(&self) -> Fe {
        Fe::new(0, 0)
    }

    fn one(&self) -> Fe {
        Fe::new(1, 0)
    }

    fn from_int(&self, n: i64) -> Fe {
        self.elem(n)
    }

    fn add(&self, x: &Fe, y: &Fe) -> Fe {
        Fe::new(self.addp(x.a, y.a), self.addp(x.b, y.b))
    }

    fn neg(&self, x: &Fe) -> Fe {
        Fe::new(self.negp(x.a), self.negp(x.b))
    }

    fn mul(&self, x: &Fe, y: &Fe) -> Fe {
        if self.deg == 1 {
            return Fe::new(self.mulp(x.a, y.a), 0);
        }
        let a = self.addp(self.mulp(x.a, y.a), self.mulp(self.mulp(x.b, y.b), self.nonres));
        let b = self.addp(self.mulp(x.a, y.b), self.mulp(x.b, y.a));
        Fe::new(a, b)
    }

    fn is_zero(&self, x: &Fe) -> bool {
        x.is_zero()
    }

    fn inv(&self, x: &Fe) -> Option<Fe> {
        if x.is_zero() {
            return None;
        }
        // x^{-1} = frob(x) / N(x)
        let n = self.norm(x).a;
        let ninv = modpow(n as u64, self.p as u64 - 2, self.p as u64) as u32;
        let f = self.frobenius(x);
        Some(Fe::new(self.mulp(f.a, ninv), self.mulp(f.b, ninv)))
    }

    fn conj(&self, x: &Fe) -> Fe {
        if self.deg == 2 {
            self.frobenius(x)
        } else {
            *x
        }
    }

    fn has_conj(&self) -> bool {
        self.deg == 2
    }
}
