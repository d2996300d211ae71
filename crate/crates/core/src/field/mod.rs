//! Scalar rings used throughout the crate.
//!
//! Rings are objects: elements are plain data and every operation goes
//! through the parent (`&self`). Complete discretely valued fields implement
//! [`Cdvf`] on top of [`Ring`] and track precision in their elements, so ring
//! arithmetic never fails; precision problems surface when a valuation or a
//! residue is requested.

use std::fmt::Debug;

use crate::error::{Error, Result};

pub mod ext;
pub mod finite;
pub mod laurent;
pub mod padic;
pub mod square;

pub use ext::PureExt;
pub use finite::{least_nonresidue, Fe, FiniteField};
pub use laurent::{Laurent, LaurentConj};
pub use padic::Padic;

/// Absolute precision carried by exact zeros.
pub const EXACT: i64 = i64::MAX / 8;

pub trait Ring: Clone + Debug + Send + Sync {
    type Elem: Clone + Debug + PartialEq + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_int(&self, n: i64) -> Self::Elem;
    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn neg(&self, x: &Self::Elem) -> Self::Elem;
    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    /// Exact zero, or zero up to the tracked precision.
    fn is_zero(&self, x: &Self::Elem) -> bool;
    /// Zero with nothing left to precision.
    fn is_exact_zero(&self, x: &Self::Elem) -> bool {
        self.is_zero(x)
    }
    fn inv(&self, x: &Self::Elem) -> Option<Self::Elem>;

    fn sub(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        self.add(x, &self.neg(y))
    }

    /// The ring's distinguished automorphism of order <= 2 (identity unless
    /// the ring is a quadratic extension carrying one).
    fn conj(&self, x: &Self::Elem) -> Self::Elem {
        x.clone()
    }

    fn has_conj(&self) -> bool {
        false
    }

    /// Ordering key used for pivot choice: smaller is "more invertible".
    /// `None` for zero.
    fn weight(&self, x: &Self::Elem) -> Option<i64> {
        if self.is_zero(x) {
            None
        } else {
            Some(0)
        }
    }

    fn pow(&self, x: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut acc = self.one();
        let mut base = x.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Integer power, negative exponents through `inv`.
    fn zpow(&self, x: &Self::Elem, e: i64) -> Option<Self::Elem> {
        if e >= 0 {
            Some(self.pow(x, e as u64))
        } else {
            self.inv(x).map(|y| self.pow(&y, e.unsigned_abs()))
        }
    }
}

/// A complete discretely valued field with finite residue field of odd
/// characteristic, at bounded precision.
pub trait Cdvf: Ring {
    fn residue_field(&self) -> FiniteField;
    /// Working relative precision in uniformizer digits.
    fn precision(&self) -> u32;
    fn uniformizer(&self) -> Self::Elem;
    /// `None` when the element is zero up to its tracked precision.
    fn valuation(&self, x: &Self::Elem) -> Option<i64>;
    /// Absolute precision: the element is known modulo uniformizer^abs.
    fn abs_precision(&self, x: &Self::Elem) -> i64;
    /// Reduction of an integral element modulo the maximal ideal.
    fn residue(&self, x: &Self::Elem) -> Result<Fe>;
    /// A (non-canonical, deterministic) lift of a residue.
    fn lift(&self, r: &Fe) -> Self::Elem;

    fn certified_valuation(&self, x: &Self::Elem) -> Result<i64> {
        self.valuation(x)
            .ok_or_else(|| Error::precision("element is zero up to working precision"))
    }

    /// Residue of `x / uniformizer^v(x)`.
    fn unit_residue(&self, x: &Self::Elem) -> Result<Fe> {
        let v = self.certified_valuation(x)?;
        let pi_inv = self
            .zpow(&self.uniformizer(), -v)
            .ok_or_else(|| Error::precision("uniformizer not invertible"))?;
        let u = self.mul(x, &pi_inv);
        let r = self.residue(&u)?;
        if r.is_zero() {
            return Err(Error::precision("unit part lost at working precision"));
        }
        Ok(r)
    }

    /// Splits off `uniformizer^v`: returns `(v, unit)`.
    fn unit_part(&self, x: &Self::Elem) -> Result<(i64, Self::Elem)> {
        let v = self.certified_valuation(x)?;
        let pi_inv = self
            .zpow(&self.uniformizer(), -v)
            .ok_or_else(|| Error::precision("uniformizer not invertible"))?;
        Ok((v, self.mul(x, &pi_inv)))
    }
}

impl<R: Ring> Ring for std::sync::Arc<R> {
    type Elem = R::Elem;
    fn zero(&self) -> R::Elem {
        (**self).zero()
    }
    fn one(&self) -> R::Elem {
        (**self).one()
    }
    fn from_int(&self, n: i64) -> R::Elem {
        (**self).from_int(n)
    }
    fn add(&self, x: &R::Elem, y: &R::Elem) -> R::Elem {
        (**self).add(x, y)
    }
    fn neg(&self, x: &R::Elem) -> R::Elem {
        (**self).neg(x)
    }
    fn mul(&self, x: &R::Elem, y: &R::Elem) -> R::Elem {
        (**self).mul(x, y)
    }
    fn is_zero(&self, x: &R::Elem) -> bool {
        (**self).is_zero(x)
    }
    fn is_exact_zero(&self, x: &R::Elem) -> bool {
        (**self).is_exact_zero(x)
    }
    fn inv(&self, x: &R::Elem) -> Option<R::Elem> {
        (**self).inv(x)
    }
    fn sub(&self, x: &R::Elem, y: &R::Elem) -> R::Elem {
        (**self).sub(x, y)
    }
    fn conj(&self, x: &R::Elem) -> R::Elem {
        (**self).conj(x)
    }
    fn has_conj(&self) -> bool {
        (**self).has_conj()
    }
    fn weight(&self, x: &R::Elem) -> Option<i64> {
        (**self).weight(x)
    }
}

impl<C: Cdvf> Cdvf for std::sync::Arc<C> {
    fn residue_field(&self) -> FiniteField {
        (**self).residue_field()
    }
    fn precision(&self) -> u32 {
        (**self).precision()
    }
    fn uniformizer(&self) -> C::Elem {
        (**self).uniformizer()
    }
    fn valuation(&self, x: &C::Elem) -> Option<i64> {
        (**self).valuation(x)
    }
    fn abs_precision(&self, x: &C::Elem) -> i64 {
        (**self).abs_precision(x)
    }
    fn residue(&self, x: &C::Elem) -> Result<Fe> {
        (**self).residue(x)
    }
    fn lift(&self, r: &Fe) -> C::Elem {
        (**self).lift(r)
    }
}

pub(crate) fn is_odd_prime(p: u64) -> bool {
    if p < 3 || p % 2 == 0 {
        return false;
    }
    let mut d = 3;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}
