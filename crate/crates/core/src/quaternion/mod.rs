//! Quaternion algebras `(a, b)` with `i^2 = a`, `j^2 = b`, `ij = -ji`, and
//! their involutions.

use crate::algebra::InvAlgebra;
use crate::error::{Error, Result};
use crate::field::Ring;

pub mod division;

pub use division::{extend_valuation, is_division, residue_algebra, AlgebraValuation, DivisionData, ResidueAlgebra, ResidueInvolution};

/// Coordinates `(x0, x1, x2, x3)` of `x0 + x1 i + x2 j + x3 ij`.
pub type QuatElem<E> = [E; 4];

#[derive(Debug, Clone)]
pub struct QuatAlgebra<R: Ring> {
    ring: R,
    a: R::Elem,
    b: R::Elem,
}

impl<R: Ring> QuatAlgebra<R> {
    pub fn new(ring: R, a: R::Elem, b: R::Elem) -> Result<Self> {
        if ring.is_zero(&a) || ring.is_zero(&b) {
            return Err(Error::ZeroEntry);
        }
        Ok(QuatAlgebra { ring, a, b })
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn a(&self) -> &R::Elem {
        &self.a
    }

    pub fn b(&self) -> &R::Elem {
        &self.b
    }

    pub fn elem(&self, x0: R::Elem, x1: R::Elem, x2: R::Elem, x3: R::Elem) -> QuatElem<R::Elem> {
        [x0, x1, x2, x3]
    }

    pub fn scalar(&self, c: R::Elem) -> QuatElem<R::Elem> {
        let z = self.ring.zero();
        [c, z.clone(), z.clone(), z]
    }

    /// Basis element `1, i, j, ij` for `k = 0..4`.
    pub fn basis(&self, k: usize) -> QuatElem<R::Elem> {
        std::array::from_fn(|m| if m == k { self.ring.one() } else { self.ring.zero() })
    }

    /// Square of the basis element `k` (a scalar).
    pub fn basis_square(&self, k: usize) -> R::Elem {
        let r = &self.ring;
        match k {
            0 => r.one(),
            1 => self.a.clone(),
            2 => self.b.clone(),
            _ => r.neg(&r.mul(&self.a, &self.b)),
        }
    }

    pub fn zero(&self) -> QuatElem<R::Elem> {
        std::array::from_fn(|_| self.ring.zero())
    }

    pub fn one(&self) -> QuatElem<R::Elem> {
        self.basis(0)
    }

    pub fn add(&self, x: &QuatElem<R::Elem>, y: &QuatElem<R::Elem>) -> QuatElem<R::Elem> {
        std::array::from_fn(|k| self.ring.add(&x[k], &y[k]))
    }

    pub fn sub(&self, x: &QuatElem<R::Elem>, y: &QuatElem<R::Elem>) -> QuatElem<R::Elem> {
        std::array::from_fn(|k| self.ring.sub(&x[k], &y[k]))
    }

    pub fn neg(&self, x: &QuatElem<R::Elem>) -> QuatElem<R::Elem> {
        std::array::from_fn(|k| self.ring.neg(&x[k]))
    }

    pub fn scale(&self, c: &R::Elem, x: &QuatElem<R::Elem>) -> QuatElem<R::Elem> {
        std::array::from_fn(|k| self.ring.mul(c, &x[k]))
    }

    pub fn mul(&self, x: &QuatElem<R::Elem>, y: &QuatElem<R::Elem>) -> QuatElem<R::Elem> {
        let r = &self.ring;
        let m = |u: &R::Elem, v: &R::Elem| r.mul(u, v);
        let ab = m(&self.a, &self.b);
        let z0 = r.add(
            &r.add(&m(&x[0], &y[0]), &m(&self.a, &m(&x[1], &y[1]))),
            &r.sub(&m(&self.b, &m(&x[2], &y[2])), &m(&ab, &m(&x[3], &y[3]))),
        );
        let z1 = r.add(
            &r.add(&m(&x[0], &y[1]), &m(&x[1], &y[0])),
            &m(&self.b, &r.sub(&m(&x[3], &y[2]), &m(&x[2], &y[3]))),
        );
        let z2 = r.add(
            &r.add(&m(&x[0], &y[2]), &m(&x[2], &y[0])),
            &m(&self.a, &r.sub(&m(&x[1], &y[3]), &m(&x[3], &y[1]))),
        );
        let z3 = r.add(
            &r.add(&m(&x[0], &y[3]), &m(&x[3], &y[0])),
            &r.sub(&m(&x[1], &y[2]), &m(&x[2], &y[1])),
        );
        [z0, z1, z2, z3]
    }

    pub fn nrd(&self, x: &QuatElem<R::Elem>) -> R::Elem {
        let r = &self.ring;
        let sq = |u: &R::Elem| r.mul(u, u);
        let t0 = sq(&x[0]);
        let t1 = r.mul(&self.a, &sq(&x[1]));
        let t2 = r.mul(&self.b, &sq(&x[2]));
        let t3 = r.mul(&r.mul(&self.a, &self.b), &sq(&x[3]));
        r.add(&r.sub(&r.sub(&t0, &t1), &t2), &t3)
    }

    pub fn trd(&self, x: &QuatElem<R::Elem>) -> R::Elem {
        self.ring.add(&x[0], &x[0])
    }

    pub fn canonical(&self, x: &QuatElem<R::Elem>) -> QuatElem<R::Elem> {
        let r = &self.ring;
        [x[0].clone(), r.neg(&x[1]), r.neg(&x[2]), r.neg(&x[3])]
    }

    pub fn is_zero(&self, x: &QuatElem<R::Elem>) -> bool {
        x.iter().all(|c| self.ring.is_zero(c))
    }

    pub fn inv(&self, x: &QuatElem<R::Elem>) -> Option<QuatElem<R::Elem>> {
        let n = self.nrd(x);
        let ninv = self.ring.inv(&n)?;
        Some(self.scale(&ninv, &self.canonical(x)))
    }

    /// Applies the ring's conjugation coordinatewise.
    pub fn conj_scalars(&self, x: &QuatElem<R::Elem>) -> QuatElem<R::Elem> {
        std::array::from_fn(|k| self.ring.conj(&x[k]))
    }
}

/// An involution `x -> s * phi(x) * s^{-1}`, where `phi` sends
/// `x0 + x1 i + x2 j + x3 ij` to `t(x0) + si t(x1) i + sj t(x2) j - si sj t(x3) ij`
/// with `t` the scalar conjugation (second kind) or the identity.
#[derive(Debug, Clone, PartialEq)]
pub struct Involution<E> {
    pub si: i8,
    pub sj: i8,
    pub second_kind: bool,
    pub twist: Option<(QuatElem<E>, QuatElem<E>)>,
}

impl<E: Clone> Involution<E> {
    pub fn canonical() -> Self {
        Involution { si: -1, sj: -1, second_kind: false, twist: None }
    }

    /// `Int(i) o canonical`: fixes `j` and `ij`, negates `i`.
    pub fn orthogonal_i() -> Self {
        Involution { si: -1, sj: 1, second_kind: false, twist: None }
    }

    /// `Int(j) o canonical`: fixes `i` and `ij`, negates `j`.
    pub fn orthogonal_j() -> Self {
        Involution { si: 1, sj: -1, second_kind: false, twist: None }
    }

    /// `canonical (x) conjugation` on `D0 (x) L`.
    pub fn second_kind() -> Self {
        Involution { si: -1, sj: -1, second_kind: true, twist: None }
    }

    pub fn is_first_kind(&self) -> bool {
        !self.second_kind
    }
}

impl<R: Ring> QuatAlgebra<R> {
    /// The involution `Int(s) o tau`, where `Int(s)(x) = s x s^{-1}`.
    pub fn twisted(&self, base: &Involution<R::Elem>, s: &QuatElem<R::Elem>) -> Result<Involution<R::Elem>> {
        let sinv = self.inv(s).ok_or_else(|| Error::UnsupportedInvolution("Int(s) with s not invertible".into()))?;
        let (s2, s2inv) = match &base.twist {
            None => (s.clone(), sinv),
            Some((t, tinv)) => (self.mul(s, t), self.mul(tinv, &sinv)),
        };
        let inv = Involution { twist: Some((s2, s2inv)), ..base.clone() };
        Ok(inv)
    }

    pub fn apply(&self, inv: &Involution<R::Elem>, x: &QuatElem<R::Elem>) -> QuatElem<R::Elem> {
        let r = &self.ring;
        let t = |c: &R::Elem| if inv.second_kind { r.conj(c) } else { c.clone() };
        let sgn = |c: R::Elem, s: i8| if s < 0 { r.neg(&c) } else { c };
        let y = [
            t(&x[0]),
            sgn(t(&x[1]), inv.si),
            sgn(t(&x[2]), inv.sj),
            sgn(t(&x[3]), -inv.si * inv.sj),
        ];
        match &inv.twist {
            None => y,
            Some((s, sinv)) => self.mul(&self.mul(s, &y), sinv),
        }
    }
}

/// A quaternion algebra together with an involution.
#[derive(Debug, Clone)]
pub struct Quat<R: Ring> {
    pub alg: QuatAlgebra<R>,
    pub inv: Involution<R::Elem>,
}

impl<R: Ring> Quat<R> {
    pub fn new(alg: QuatAlgebra<R>, inv: Involution<R::Elem>) -> Self {
        Quat { alg, inv }
    }
}

impl<R: Ring> InvAlgebra for Quat<R> {
    type Elem = QuatElem<R::Elem>;

    fn zero(&self) -> Self::Elem {
        self.alg.zero()
    }
    fn one(&self) -> Self::Elem {
        self.alg.one()
    }
    fn from_int(&self, n: i64) -> Self::Elem {
        self.alg.scalar(self.alg.ring.from_int(n))
    }
    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        self.alg.add(x, y)
    }
    fn neg(&self, x: &Self::Elem) -> Self::Elem {
        self.alg.neg(x)
    }
    fn sub(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        self.alg.sub(x, y)
    }
    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        self.alg.mul(x, y)
    }
    fn inv(&self, x: &Self::Elem) -> Option<Self::Elem> {
        self.alg.inv(x)
    }
    fn is_zero(&self, x: &Self::Elem) -> bool {
        self.alg.is_zero(x)
    }
    fn is_exact_zero(&self, x: &Self::Elem) -> bool {
        x.iter().all(|c| self.alg.ring().is_exact_zero(c))
    }
    fn sigma(&self, x: &Self::Elem) -> Self::Elem {
        self.alg.apply(&self.inv, x)
    }
    fn key(&self, x: &Self::Elem) -> Option<i64> {
        if self.alg.is_zero(x) {
            return None;
        }
        let n = self.alg.nrd(x);
        Some(self.alg.ring.weight(&n).unwrap_or(i64::MAX / 4))
    }
    fn sample_units(&self) -> Vec<Self::Elem> {
        let b = |k| self.alg.basis(k);
        let mut v = vec![b(0), b(1), b(2), b(3)];
        for (p, q) in [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 3)] {
            v.push(self.alg.add(&b(p), &b(q)));
        }
        v.retain(|x| self.alg.inv(x).is_some());
        v
    }
    fn degree(&self) -> usize {
        2
    }
}
