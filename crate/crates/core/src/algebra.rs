//! Algebras with involution: the scalars of hermitian forms.

use std::fmt::Debug;

use crate::field::Ring;

pub trait InvAlgebra: Clone + Debug + Send + Sync {
    type Elem: Clone + Debug + PartialEq + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_int(&self, n: i64) -> Self::Elem;
    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn neg(&self, x: &Self::Elem) -> Self::Elem;
    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn inv(&self, x: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, x: &Self::Elem) -> bool;
    fn is_exact_zero(&self, x: &Self::Elem) -> bool {
        self.is_zero(x)
    }
    /// The involution.
    fn sigma(&self, x: &Self::Elem) -> Self::Elem;
    /// Pivot key; smaller means preferred. `None` for zero.
    fn key(&self, x: &Self::Elem) -> Option<i64>;
    /// A small deterministic set of nonzero elements used by searches.
    fn sample_units(&self) -> Vec<Self::Elem>;
    /// Degree: square root of the dimension over the centre.
    fn degree(&self) -> usize {
        1
    }

    fn sub(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        self.add(x, &self.neg(y))
    }

    fn scale_int(&self, x: &Self::Elem, n: i64) -> Self::Elem {
        self.mul(&self.from_int(n), x)
    }
}

/// A commutative ring viewed as an algebra, with either the identity or the
/// ring's own conjugation as involution.
#[derive(Debug, Clone)]
pub struct FieldInv<R: Ring> {
    pub ring: R,
    pub conj: bool,
    extra: Vec<R::Elem>,
}

impl<R: Ring> FieldInv<R> {
    pub fn new(ring: R, conj: bool) -> Self {
        FieldInv { ring, conj, extra: Vec::new() }
    }

    pub fn identity(ring: R) -> Self {
        Self::new(ring, false)
    }

    /// Adds elements (e.g. a generator over the fixed field) to the search
    /// sample.
    pub fn with_samples(mut self, extra: Vec<R::Elem>) -> Self {
        self.extra = extra;
        self
    }
}

impl<R: Ring> InvAlgebra for FieldInv<R> {
    type Elem = R::Elem;

    fn zero(&self) -> R::Elem {
        self.ring.zero()
    }
    fn one(&self) -> R::Elem {
        self.ring.one()
    }
    fn from_int(&self, n: i64) -> R::Elem {
        self.ring.from_int(n)
    }
    fn add(&self, x: &R::Elem, y: &R::Elem) -> R::Elem {
        self.ring.add(x, y)
    }
    fn neg(&self, x: &R::Elem) -> R::Elem {
        self.ring.neg(x)
    }
    fn mul(&self, x: &R::Elem, y: &R::Elem) -> R::Elem {
        self.ring.mul(x, y)
    }
    fn inv(&self, x: &R::Elem) -> Option<R::Elem> {
        self.ring.inv(x)
    }
    fn is_zero(&self, x: &R::Elem) -> bool {
        self.ring.is_zero(x)
    }
    fn is_exact_zero(&self, x: &R::Elem) -> bool {
        self.ring.is_exact_zero(x)
    }
    fn sigma(&self, x: &R::Elem) -> R::Elem {
        if self.conj {
            self.ring.conj(x)
        } else {
            x.clone()
        }
    }
    fn key(&self, x: &R::Elem) -> Option<i64> {
        self.ring.weight(x)
    }
    fn sample_units(&self) -> Vec<R::Elem> {
        let mut v: Vec<R::Elem> =
            (1..=4).map(|n| self.ring.from_int(n)).filter(|x| !self.ring.is_zero(x)).collect();
        for e in &self.extra {
            v.push(e.clone());
            v.push(self.ring.add(e, &self.ring.one()));
        }
        v
    }
    fn sub(&self, x: &R::Elem, y: &R::Elem) -> R::Elem {
        self.ring.sub(x, y)
    }
}

impl FieldInv<crate::field::FiniteField> {
    /// `F_q` with the identity, or `F_{p^2}` with Frobenius when `conj`.
    pub fn finite(f: crate::field::FiniteField, conj: bool) -> Self {
        let extra = if f.degree() == 2 { vec![f.generator()] } else { Vec::new() };
        FieldInv::new(f, conj && f.degree() == 2).with_samples(extra)
    }
}
