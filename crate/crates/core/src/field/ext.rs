//! Simple extensions `K(θ)` with `θ^n = c` of a complete discretely valued
//! field: totally ramified when `v(c) = 1`, or the unramified quadratic
//! extension when `n = 2` and `c` is a unit with non-square residue.

use super::{Cdvf, Fe, FiniteField, Ring, EXACT};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtKind {
    Ramified,
    Unramified,
}

#[derive(Debug, Clone)]
pub struct PureExt<C: Cdvf> {
    base: C,
    n: usize,
    c: C::Elem,
    kind: ExtKind,
    /// For the unramified case: `s` in `F_p` with `s^2 * u = residue(c)`.
    sqrt_ratio: Fe,
}

impl<C: Cdvf> PureExt<C> {
    pub fn new(base: C, n: usize, c: C::Elem) -> Result<Self> {
        if n < 2 {
            return Err(Error::UnsupportedBase("extension degree must be at least 2".into()));
        }
        let v = base.certified_valuation(&c)?;
        let rf = base.residue_field();
        match v {
            1 => Ok(PureExt { base, n, c, kind: ExtKind::Ramified, sqrt_ratio: Fe::default() }),
            0 if n == 2 => {
                if rf.degree() != 1 {
                    return Err(Error::UnsupportedResidue("unramified extension of F_{p^2}".into()));
                }
                let r = base.residue(&c)?;
                if rf.is_square(&r) {
                    return Err(Error::UnsupportedBase("c is a square: K(sqrt c) is not a field".into()));
                }
                let u = rf.elem(rf.nonresidue() as i64);
                let ratio = rf.mul(&r, &rf.inv(&u).unwrap());
                let s = rf.sqrt(&ratio).expect("ratio of non-squares is a square");
                Ok(PureExt { base, n, c, kind: ExtKind::Unramified, sqrt_ratio: s })
            }
            _ => Err(Error::UnsupportedBase(format!(
                "pure extension needs v(c) = 1, or v(c) = 0 with n = 2 (got v = {v}, n = {n})"
            ))),
        }
    }

    pub fn base(&self) -> &C {
        &self.base
    }

    /// `c = theta^n`.
    pub fn radicand(&self) -> &C::Elem {
        &self.c
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> ExtKind {
        self.kind
    }

    pub fn ramification(&self) -> i64 {
        match self.kind {
            ExtKind::Ramified => self.n as i64,
            ExtKind::Unramified => 1,
        }
    }

    pub fn embed(&self, x: &C::Elem) -> Vec<C::Elem> {
        let mut v = vec![self.base.zero(); self.n];
        v[0] = x.clone();
        v
    }

    pub fn theta(&self) -> Vec<C::Elem> {
        let mut v = vec![self.base.zero(); self.n];
        v[1] = self.base.one();
        v
    }

    /// For `n = 2`: the norm `a^2 - c b^2` down to the base.
    pub fn norm2(&self, x: &[C::Elem]) -> C::Elem {
        debug_assert_eq!(self.n, 2);
        let b = &self.base;
        b.sub(&b.mul(&x[0], &x[0]), &b.mul(&self.c, &b.mul(&x[1], &x[1])))
    }

    fn term_bounds(&self, x: &[C::Elem]) -> (Option<(i64, usize)>, i64) {
        let e = self.ramification();
        let mut best: Option<(i64, usize)> = None;
        let mut abs = EXACT;
        for (i, a) in x.iter().enumerate() {
            let shift = if self.kind == ExtKind::Ramified { i as i64 } else { 0 };
            let a_abs = self.base.abs_precision(a);
            abs = abs.min(a_abs.saturating_mul(e).saturating_add(shift));
            if let Some(v) = self.base.valuation(a) {
                let w = v * e + shift;
                if best.is_none_or(|(bw, _)| w < bw) {
                    best = Some((w, i));
                }
            }
        }
        (best, abs)
    }
}

impl<C: Cdvf> Ring for PureExt<C> {
    type Elem = Vec<C::Elem>;

    fn zero(&self) -> Self::Elem {
        vec![self.base.zero(); self.n]
    }

    fn one(&self) -> Self::Elem {
        self.embed(&self.base.one())
    }

    fn from_int(&self, k: i64) -> Self::Elem {
        self.embed(&self.base.from_int(k))
    }

    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        x.iter().zip(y).map(|(a, b)| self.base.add(a, b)).collect()
    }

    fn neg(&self, x: &Self::Elem) -> Self::Elem {
        x.iter().map(|a| self.base.neg(a)).collect()
    }

    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        let b = &self.base;
        let mut out = vec![b.zero(); self.n];
        for (i, a) in x.iter().enumerate() {
            for (j, bb) in y.iter().enumerate() {
                let mut t = b.mul(a, bb);
                let k = i + j;
                if k >= self.n {
                    t = b.mul(&t, &self.c);
                }
                let slot = k % self.n;
                out[slot] = b.add(&out[slot], &t);
            }
        }
        out
    }

    fn is_zero(&self, x: &Self::Elem) -> bool {
        self.valuation(x).is_none()
    }

    fn is_exact_zero(&self, x: &Self::Elem) -> bool {
        x.iter().all(|c| self.base().is_exact_zero(c))
    }

    fn inv(&self, x: &Self::Elem) -> Option<Self::Elem> {
        let (v, u) = self.unit_part(x).ok()?;
        let r = self.residue(&u).ok()?;
        let rf = self.residue_field();
        let mut y = self.lift(&rf.inv(&r)?);
        let two = self.from_int(2);
        let steps = (64 - ((self.precision() as u64 + 2).leading_zeros())) + 1;
        for _ in 0..steps {
            let uy = self.mul(&u, &y);
            y = self.mul(&y, &self.sub(&two, &uy));
        }
        let pinv = self.zpow_uniformizer(-v)?;
        Some(self.mul(&y, &pinv))
    }

    fn conj(&self, x: &Self::Elem) -> Self::Elem {
        let mut y: Self::Elem = x.iter().map(|a| self.base.conj(a)).collect();
        if self.n == 2 {
            y[1] = self.base.neg(&y[1]);
        }
        y
    }

    fn has_conj(&self) -> bool {
        self.n == 2 || self.base.has_conj()
    }

    fn weight(&self, x: &Self::Elem) -> Option<i64> {
        self.valuation(x)
    }
}

impl<C: Cdvf> PureExt<C> {
    fn zpow_uniformizer(&self, e: i64) -> Option<Vec<C::Elem>> {
        match self.kind {
            ExtKind::Unramified => Some(self.embed(&self.base.zpow(&self.base.uniformizer(), e)?)),
            ExtKind::Ramified => {
                if e >= 0 {
                    return Some(self.pow(&self.theta(), e as u64));
                }
                // θ^{-1} = θ^{n-1} / c
                let cinv = self.base.inv(&self.c)?;
                let tinv = self.mul(&self.pow(&self.theta(), self.n as u64 - 1), &self.embed(&cinv));
                Some(self.pow(&tinv, e.unsigned_abs()))
            }
        }
    }
}

impl<C: Cdvf> Cdvf for PureExt<C> {
    fn unit_part(&self, x: &Self::Elem) -> Result<(i64, Self::Elem)> {
        let v = self.certified_valuation(x)?;
        let pinv = self.zpow_uniformizer(-v).ok_or_else(|| Error::precision("uniformizer not invertible"))?;
        Ok((v, self.mul(x, &pinv)))
    }

    fn unit_residue(&self, x: &Self::Elem) -> Result<Fe> {
        let (_, u) = self.unit_part(x)?;
        let r = self.residue(&u)?;
        if r.is_zero() {
            return Err(Error::precision("unit part lost at working precision"));
        }
        Ok(r)
    }

    fn residue_field(&self) -> FiniteField {
        match self.kind {
            ExtKind::Ramified => self.base.residue_field(),
            ExtKind::Unramified => self.base.residue_field().extension(),
        }
    }

    fn precision(&self) -> u32 {
        self.base.precision() * self.ramification() as u32
    }

    fn uniformizer(&self) -> Self::Elem {
        match self.kind {
            ExtKind::Ramified => self.theta(),
            ExtKind::Unramified => self.embed(&self.base.uniformizer()),
        }
    }

    fn valuation(&self, x: &Self::Elem) -> Option<i64> {
        let (best, abs) = self.term_bounds(x);
        best.map(|(w, _)| w).filter(|&w| w < abs)
    }

    fn abs_precision(&self, x: &Self::Elem) -> i64 {
        self.term_bounds(x).1
    }

    fn residue(&self, x: &Self::Elem) -> Result<Fe> {
        let (best, abs) = self.term_bounds(x);
        let w = match best {
            Some((w, _)) if w < abs => w,
            _ if abs >= 1 => return Ok(Fe::default()),
            _ => return Err(Error::precision("residue of an element known to no digits")),
        };
        if w < 0 {
            return Err(Error::HypothesisViolation("residue of a non-integral element".into()));
        }
        if w > 0 {
            return Ok(Fe::default());
        }
        match self.kind {
            ExtKind::Ramified => self.base.residue(&x[0]),
            ExtKind::Unramified => {
                let rf = self.base.residue_field();
                let a = self.base.residue(&x[0])?;
                let b = self.base.residue(&x[1])?;
                // θ̄ = s * x where x^2 = u
                Ok(Fe::new(a.a, rf.mul(&b, &self.sqrt_ratio).a))
            }
        }
    }

    fn lift(&self, r: &Fe) -> Self::Elem {
        match self.kind {
            ExtKind::Ramified => self.embed(&self.base.lift(r)),
            ExtKind::Unramified => {
                let rf = self.base.residue_field();
                let b = rf.mul(&Fe::new(r.b, 0), &rf.inv(&self.sqrt_ratio).unwrap());
                let mut v = self.embed(&self.base.lift(&Fe::new(r.a, 0)));
                v[1] = self.base.lift(&b);
                v
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Padic;

    #[test]
    fn cube_root_of_p() {
        let q = Padic::new(3, 8).unwrap();
        let m = PureExt::new(q.clone(), 3, q.from_int(3)).unwrap();
        let t = m.uniformizer();
        assert_eq!(m.valuation(&t), Some(1));
        assert_eq!(m.valuation(&m.embed(&q.from_int(9))), Some(6));
        let x = m.add(&m.from_int(2), &t);
        let y = m.inv(&x).unwrap();
        let one = m.mul(&x, &y);
        assert_eq!(m.residue(&one).unwrap(), Fe::new(1, 0));
        assert!(m.valuation(&m.sub(&one, &m.one())).is_none_or(|v| v >= 20));
    }

    #[test]
    fn unramified_quadratic_residue_field() {
        let q = Padic::new(5, 6).unwrap();
        let l = PureExt::new(q.clone(), 2, q.from_int(3)).unwrap();
        assert_eq!(l.residue_field().degree(), 2);
        let rf = l.residue_field();
        for r in rf.nonzero_elements() {
            assert_eq!(l.residue(&l.lift(&r)).unwrap(), r);
        }
        let th = l.theta();
        let sq = l.residue(&l.mul(&th, &th)).unwrap();
        assert_eq!(sq, Fe::new(3, 0));
    }
}
