//! Quaternion division algebras over a CDVF: the extended valuation
//! `w = v(Nrd)/2`, a basis adapted to it, and the residue division algebra.

use super::{Involution, QuatAlgebra, QuatElem};
use crate::error::{Error, Result};
use crate::field::square::hilbert_symbol;
use crate::field::{Cdvf, Fe, FiniteField, Ring};

/// `true` iff `(a, b)` is a division algebra, i.e. the Hilbert symbol is `-1`.
pub fn is_division<C: Cdvf>(alg: &QuatAlgebra<C>) -> Result<bool> {
    Ok(hilbert_symbol(alg.ring(), alg.a(), alg.b())? == -1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AlgebraValuation {
    /// Ramification index `[w(D*) : v(K*)]`.
    pub e: i64,
}

impl AlgebraValuation {
    /// `2 w(x) = v(Nrd x)`; `None` for zero.
    pub fn w2<C: Cdvf>(&self, alg: &QuatAlgebra<C>, x: &QuatElem<C::Elem>) -> Option<i64> {
        alg.ring().valuation(&alg.nrd(x))
    }
}

pub fn extend_valuation<C: Cdvf>(alg: &QuatAlgebra<C>) -> Result<AlgebraValuation> {
    if !is_division(alg)? {
        return Err(Error::NotDivision);
    }
    let k = alg.ring();
    let mut e = 1;
    for m in 1..4 {
        if k.certified_valuation(&alg.basis_square(m))?.rem_euclid(2) == 1 {
            e = 2;
        }
    }
    Ok(AlgebraValuation { e })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResidueInvolution {
    Identity,
    Frobenius,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ResidueAlgebra {
    pub field: FiniteField,
    pub involution: ResidueInvolution,
}

/// A division quaternion algebra with a basis `1, U, P, UP` where `U^2` is a
/// unit with non-square residue and `P^2` has valuation one. Then
/// `w(y0 + y1 U + y2 P + y3 UP) = min(v(y0), v(y1), v(y2) + 1/2, v(y3) + 1/2)`.
#[derive(Debug, Clone)]
pub struct DivisionData<C: Cdvf> {
    alg: QuatAlgebra<C>,
    slots: [(usize, C::Elem); 3],
    residue_field: FiniteField,
    sqrt_ratio: Fe,
}

impl<C: Cdvf> DivisionData<C> {
    pub fn new(alg: QuatAlgebra<C>) -> Result<Self> {
        if !is_division(&alg)? {
            return Err(Error::NotDivision);
        }
        let k = alg.ring().clone();
        let rf = k.residue_field();
        if rf.degree() != 1 {
            return Err(Error::UnsupportedResidue("quaternion residue over F_{p^2} would be F_{p^4}".into()));
        }
        let pi = k.uniformizer();
        let mut unr = None;
        let mut ram = None;
        for m in 1..4 {
            let s = alg.basis_square(m);
            let v = k.certified_valuation(&s)?;
            let c = k.zpow(&pi, -v.div_euclid(2)).ok_or_else(|| Error::precision("uniformizer"))?;
            if v.rem_euclid(2) == 0 && unr.is_none() {
                unr = Some((m, c));
            } else if v.rem_euclid(2) == 1 && ram.is_none() {
                ram = Some((m, c));
            }
        }
        let (unr, ram) = match (unr, ram) {
            (Some(u), Some(r)) => (u, r),
            _ => return Err(Error::NotDivision),
        };
        let u_el = alg.scale(&unr.1, &alg.basis(unr.0));
        let p_el = alg.scale(&ram.1, &alg.basis(ram.0));
        let prod = alg.mul(&u_el, &p_el);
        let m3 = 6 - unr.0 - ram.0;
        let prod_slot = (m3, prod[m3].clone());
        let su = k.residue(&alg.nrd(&u_el))?;
        // Nrd(U) = -U^2
        let su = rf.neg(&su);
        if rf.is_square(&su) {
            return Err(Error::NotDivision);
        }
        let nonres = rf.elem(rf.nonresidue() as i64);
        let ratio = rf.mul(&su, &rf.inv(&nonres).unwrap());
        let sqrt_ratio = rf.sqrt(&ratio).expect("ratio of non-squares is a square");
        Ok(DivisionData { alg, slots: [unr, ram, prod_slot], residue_field: rf.extension(), sqrt_ratio })
    }

    pub fn algebra(&self) -> &QuatAlgebra<C> {
        &self.alg
    }

    pub fn residue_field(&self) -> FiniteField {
        self.residue_field
    }

    fn slot_elem(&self, slot: usize) -> QuatElem<C::Elem> {
        let (m, c) = &self.slots[slot];
        self.alg.scale(c, &self.alg.basis(*m))
    }

    /// The unit `U` whose residue generates the residue field.
    pub fn unramified_generator(&self) -> QuatElem<C::Elem> {
        self.slot_elem(0)
    }

    /// The element `P` with `w(P) = 1/2`.
    pub fn uniformizer(&self) -> QuatElem<C::Elem> {
        self.slot_elem(1)
    }

    /// `U P`, also of `w`-value `1/2`.
    pub fn product_element(&self) -> QuatElem<C::Elem> {
        self.slot_elem(2)
    }

    /// Coordinates on the adapted basis `1, U, P, UP`.
    pub fn coords(&self, x: &QuatElem<C::Elem>) -> Result<[C::Elem; 4]> {
        let k = self.alg.ring();
        let mut y = [x[0].clone(), k.zero(), k.zero(), k.zero()];
        for (s, (m, c)) in self.slots.iter().enumerate() {
            let cinv = k.inv(c).ok_or_else(|| Error::precision("adapted basis scalar"))?;
            y[s + 1] = k.mul(&x[*m], &cinv);
        }
        Ok(y)
    }

    pub fn from_adapted(&self, y: &[C::Elem; 4]) -> QuatElem<C::Elem> {
        let k = self.alg.ring();
        let mut x = self.alg.scalar(y[0].clone());
        for (s, (m, c)) in self.slots.iter().enumerate() {
            x[*m] = k.mul(&y[s + 1], c);
        }
        x
    }

    /// `2 w(x) = v(Nrd x)`, i.e. the valuation normalized so `w(P) = 1`.
    pub fn wval(&self, x: &QuatElem<C::Elem>) -> Option<i64> {
        let k = self.alg.ring();
        let y = self.coords(x).ok()?;
        let mut best: Option<i64> = None;
        let mut abs = i64::MAX;
        for (s, c) in y.iter().enumerate() {
            let shift = if s >= 2 { 1 } else { 0 };
            abs = abs.min(k.abs_precision(c).saturating_mul(2).saturating_add(shift));
            if let Some(v) = k.valuation(c) {
                let w = 2 * v + shift;
                best = Some(best.map_or(w, |b| b.min(w)));
            }
        }
        best.filter(|&w| w < abs)
    }

    /// Reduction `R_w -> D(w) = F_{p^2}`.
    pub fn residue(&self, x: &QuatElem<C::Elem>) -> Result<Fe> {
        let k = self.alg.ring();
        let y = self.coords(x)?;
        for (s, c) in y.iter().enumerate() {
            if let Some(v) = k.valuation(c) {
                if v < 0 {
                    return Err(Error::HypothesisViolation(format!("residue of element with w < 0 (slot {s})")));
                }
            }
        }
        let rf = k.residue_field();
        let r0 = k.residue(&y[0])?;
        let r1 = k.residue(&y[1])?;
        Ok(Fe::new(r0.a, rf.mul(&r1, &self.sqrt_ratio).a))
    }

    pub fn lift(&self, r: &Fe) -> QuatElem<C::Elem> {
        let k = self.alg.ring();
        let rf = k.residue_field();
        let b = rf.mul(&Fe::new(r.b, 0), &rf.inv(&self.sqrt_ratio).unwrap());
        let y = [k.lift(&Fe::new(r.a, 0)), k.lift(&b), k.zero(), k.zero()];
        self.from_adapted(&y)
    }

    /// The involution induced on `D(w)`, computed on the residue generator.
    pub fn residue_involution(&self, inv: &Involution<C::Elem>) -> Result<ResidueInvolution> {
        let g = self.lift(&self.residue_field.generator());
        let gbar = self.residue(&g)?;
        let img = self.residue(&self.alg.apply(inv, &g))?;
        if img == gbar {
            Ok(ResidueInvolution::Identity)
        } else if img == self.residue_field.frobenius(&gbar) {
            Ok(ResidueInvolution::Frobenius)
        } else {
            Err(Error::precision("residue involution not determined at working precision"))
        }
    }
}

pub fn residue_algebra<C: Cdvf>(alg: &QuatAlgebra<C>, inv: &Involution<C::Elem>) -> Result<ResidueAlgebra> {
    let d = DivisionData::new(alg.clone())?;
    Ok(ResidueAlgebra { field: d.residue_field(), involution: d.residue_involution(inv)? })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Padic;
    use rand::{Rng as _, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn up(p: u64) -> QuatAlgebra<Padic> {
        let k = Padic::new(p, 10).unwrap();
        let u = crate::field::finite::least_nonresidue(p as u32) as i64;
        QuatAlgebra::new(k.clone(), k.from_int(u), k.from_int(p as i64)).unwrap()
    }

    fn random_elem(q: &QuatAlgebra<Padic>, rng: &mut ChaCha8Rng) -> QuatElem<crate::field::padic::PadicElem> {
        let k = q.ring();
        let p = k.from_int(k.p() as i64);
        std::array::from_fn(|_| k.mul(&k.from_int(rng.gen_range(1..1000)), &k.pow(&p, rng.gen_range(0..3))))
    }

    #[test]
    fn division_examples() {
        let k = Padic::new(5, 8).unwrap();
        let split = QuatAlgebra::new(k.clone(), k.from_int(2), k.from_int(3)).unwrap();
        assert!(!is_division(&split).unwrap());
        let one_b = QuatAlgebra::new(k.clone(), k.from_int(1), k.from_int(5)).unwrap();
        assert!(!is_division(&one_b).unwrap());
        assert!(is_division(&up(5)).unwrap());
        assert!(is_division(&up(3)).unwrap());
    }

    #[test]
    fn valuation_of_basis_and_products() {
        let q = up(5);
        let w = extend_valuation(&q).unwrap();
        assert_eq!(w.e, 2);
        assert_eq!(w.w2(&q, &q.basis(2)), Some(1));
        assert_eq!(w.w2(&q, &q.basis(1)), Some(0));
        let d = DivisionData::new(q.clone()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let x = random_elem(&q, &mut rng);
            let y = random_elem(&q, &mut rng);
            let wx = d.wval(&x).unwrap();
            let wy = d.wval(&y).unwrap();
            assert_eq!(wx, w.w2(&q, &x).unwrap());
            assert_eq!(d.wval(&q.mul(&x, &y)), Some(wx + wy));
            let s = d.wval(&q.add(&x, &y)).unwrap();
            assert!(s >= wx.min(wy));
            if wx != wy {
                assert_eq!(s, wx.min(wy));
            }
        }
    }

    #[test]
    fn residue_map_is_multiplicative_and_equivariant() {
        for p in [3, 5] {
            let q = up(p);
            let d = DivisionData::new(q.clone()).unwrap();
            let rf = d.residue_field();
            let canon = Involution::canonical();
            let tag = d.residue_involution(&canon).unwrap();
            assert_eq!(tag, ResidueInvolution::Frobenius);
            let orth = Involution::orthogonal_i();
            assert_eq!(d.residue_involution(&orth).unwrap(), ResidueInvolution::Frobenius);
            let orth_j = Involution::orthogonal_j();
            assert_eq!(d.residue_involution(&orth_j).unwrap(), ResidueInvolution::Identity);
            let mut rng = ChaCha8Rng::seed_from_u64(p);
            for _ in 0..100 {
                let x = random_elem(&q, &mut rng);
                let y = random_elem(&q, &mut rng);
                if d.wval(&x) != Some(0) || d.wval(&y) != Some(0) {
                    continue;
                }
                let rx = d.residue(&x).unwrap();
                let ry = d.residue(&y).unwrap();
                assert_eq!(d.residue(&q.mul(&x, &y)).unwrap(), rf.mul(&rx, &ry));
                let sx = d.residue(&q.apply(&canon, &x)).unwrap();
                assert_eq!(sx, rf.frobenius(&rx));
            }
            for r in rf.nonzero_elements() {
                assert_eq!(d.residue(&d.lift(&r)).unwrap(), r);
            }
        }
    }
}
