//! Isotropy over complete discretely valued fields and their quaternion
//! division algebras: the residue splitting, an exhaustive oracle, witness
//! lifting, Witt indices and odd-degree transfer.

use crate::algebra::{FieldInv, InvAlgebra};
use crate::error::{Error, Result};
use crate::field::{Cdvf, Fe, FiniteField};
use crate::quaternion::{DivisionData, Involution, Quat, QuatAlgebra, QuatElem, ResidueInvolution};

pub mod decider;
pub mod double;

pub mod lift;
pub mod larmour;
pub mod oracle;
pub mod transfer;

pub use decider::{ResidueDecider, decider_by_name, decider_names, deciders, IsotropyDecider, Verdict};
pub use double::{double_residue_isotropy, sequential_residue_isotropy, DoubleResidueReport};
pub use larmour::{larmour_split, LarmourSplit};
pub use lift::{is_certified_isotropic, newton_lift, witt_decompose_local};
pub use oracle::{oracle_isotropy, OracleOutcome};
pub use transfer::{odd_transfer_check, odd_transfer_check_field};

/// A division algebra with involution over a CDVF, with its valuation
/// normalized to have value group `Z`.
pub trait LocalAlgebra: InvAlgebra {
    /// Normalized valuation; `None` for zero up to precision.
    fn wval(&self, x: &Self::Elem) -> Option<i64>;
    /// Residue division algebra, always a finite field here.
    fn residue_field(&self) -> FiniteField;
    /// Reduction of an element with `wval >= 0`.
    fn residue(&self, x: &Self::Elem) -> Result<Fe>;
    fn lift(&self, r: &Fe) -> Self::Elem;
    /// An element of value one.
    fn uniformizer(&self) -> Self::Elem;
    /// Elements of value one among which a parameter `pi_D` with
    /// `sigma(pi_D) = +-pi_D` is sought.
    fn parameter_candidates(&self) -> Vec<Self::Elem>;
    /// The same algebra with involution `Int(s) o sigma`.
    fn twist(&self, s: &Self::Elem) -> Result<Self>;
}

/// The involution induced on the residue field.
pub fn residue_involution<A: LocalAlgebra>(alg: &A) -> Result<ResidueInvolution> {
    let rf = alg.residue_field();
    if rf.degree() == 1 {
        return Ok(ResidueInvolution::Identity);
    }
    let g = rf.generator();
    let img = alg.residue(&alg.sigma(&alg.lift(&g)))?;
    if img == g {
        Ok(ResidueInvolution::Identity)
    } else if img == rf.frobenius(&g) {
        Ok(ResidueInvolution::Frobenius)
    } else {
        Err(Error::precision("residue involution not determined at working precision"))
    }
}

/// A CDVF (possibly a quadratic extension with its conjugation) as a
/// local algebra.
#[derive(Debug, Clone)]
pub struct FieldAlg<C: Cdvf> {
    pub inner: FieldInv<C>,
}

impl<C: Cdvf> FieldAlg<C> {
    pub fn new(field: C, conj: bool) -> Self {
        let pi = field.uniformizer();
        let rf = field.residue_field();
        let mut extra = vec![pi];
        if rf.degree() == 2 {
            extra.push(field.lift(&rf.generator()));
        }
        FieldAlg { inner: FieldInv::new(field, conj).with_samples(extra) }
    }

    pub fn field(&self) -> &C {
        &self.inner.ring
    }
}

macro_rules! delegate_inv_algebra {
    ($field:ident) => {
        fn zero(&self) -> Self::Elem {
            self.$field.zero()
        }
        fn one(&self) -> Self::Elem {
            self.$field.one()
        }
        fn from_int(&self, n: i64) -> Self::Elem {
            self.$field.from_int(n)
        }
        fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
            self.$field.add(x, y)
        }
        fn neg(&self, x: &Self::Elem) -> Self::Elem {
            self.$field.neg(x)
        }
        fn sub(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
            self.$field.sub(x, y)
        }
        fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
            self.$field.mul(x, y)
        }
        fn inv(&self, x: &Self::Elem) -> Option<Self::Elem> {
            self.$field.inv(x)
        }
        fn is_zero(&self, x: &Self::Elem) -> bool {
            self.$field.is_zero(x)
        }
        fn is_exact_zero(&self, x: &Self::Elem) -> bool {
            self.$field.is_exact_zero(x)
        }
        fn sigma(&self, x: &Self::Elem) -> Self::Elem {
            self.$field.sigma(x)
        }
        fn sample_units(&self) -> Vec<Self::Elem> {
            self.$field.sample_units()
        }
        fn degree(&self) -> usize {
            self.$field.degree()
        }
    };
}

impl<C: Cdvf> InvAlgebra for FieldAlg<C> {
    type Elem = C::Elem;
    delegate_inv_algebra!(inner);
    fn key(&self, x: &C::Elem) -> Option<i64> {
        self.inner.ring.valuation(x)
    }
}

impl<C: Cdvf> LocalAlgebra for FieldAlg<C> {
    fn wval(&self, x: &C::Elem) -> Option<i64> {
        self.inner.ring.valuation(x)
    }
    fn residue_field(&self) -> FiniteField {
        self.inner.ring.residue_field()
    }
    fn residue(&self, x: &C::Elem) -> Result<Fe> {
        self.inner.ring.residue(x)
    }
    fn lift(&self, r: &Fe) -> C::Elem {
        self.inner.ring.lift(r)
    }
    fn uniformizer(&self) -> C::Elem {
        self.inner.ring.uniformizer()
    }
    fn parameter_candidates(&self) -> Vec<C::Elem> {
        let k = &self.inner.ring;
        let pi = k.uniformizer();
        let mut v = vec![pi.clone()];
        for r in k.residue_field().nonzero_elements().take(16) {
            v.push(k.mul(&pi, &k.lift(&r)));
        }
        v
    }
    fn twist(&self, _s: &C::Elem) -> Result<Self> {
        Ok(self.clone())
    }
}

/// A quaternion division algebra over a CDVF with an involution.
#[derive(Debug, Clone)]
pub struct QuatLocal<C: Cdvf> {
    pub quat: Quat<C>,
    div: DivisionData<C>,
}

impl<C: Cdvf> QuatLocal<C> {
    pub fn new(alg: QuatAlgebra<C>, inv: Involution<C::Elem>) -> Result<Self> {
        let div = DivisionData::new(alg.clone())?;
        Ok(QuatLocal { quat: Quat::new(alg, inv), div })
    }

    pub fn algebra(&self) -> &QuatAlgebra<C> {
        &self.quat.alg
    }

    pub fn division_data(&self) -> &DivisionData<C> {
        &self.div
    }
}

impl<C: Cdvf> InvAlgebra for QuatLocal<C> {
    type Elem = QuatElem<C::Elem>;
    delegate_inv_algebra!(quat);
    fn key(&self, x: &Self::Elem) -> Option<i64> {
        self.div.wval(x)
    }
}

impl<C: Cdvf> LocalAlgebra for QuatLocal<C> {
    fn wval(&self, x: &Self::Elem) -> Option<i64> {
        self.div.wval(x)
    }
    fn residue_field(&self) -> FiniteField {
        self.div.residue_field()
    }
    fn residue(&self, x: &Self::Elem) -> Result<Fe> {
        self.div.residue(x)
    }
    fn lift(&self, r: &Fe) -> Self::Elem {
        self.div.lift(r)
    }
    fn uniformizer(&self) -> Self::Elem {
        self.div.uniformizer()
    }
    fn parameter_candidates(&self) -> Vec<Self::Elem> {
        let q = &self.quat.alg;
        let p = self.div.uniformizer();
        let up = self.div.product_element();
        let u = self.div.unramified_generator();
        let mut v = vec![p.clone(), up.clone()];
        let k = q.ring();
        for r in k.residue_field().nonzero_elements().take(16) {
            let c = q.scalar(k.lift(&r));
            let unit = q.add(&c, &u);
            v.push(q.mul(&p, &unit));
            v.push(q.mul(&unit, &p));
            v.push(q.add(&p, &q.mul(&up, &c)));
        }
        v
    }
    fn twist(&self, s: &Self::Elem) -> Result<Self> {
        let inv = self.quat.alg.twisted(&self.quat.inv, s)?;
        Ok(QuatLocal { quat: Quat::new(self.quat.alg.clone(), inv), div: self.div.clone() })
    }
}

#[cfg(test)]
mod tests;
