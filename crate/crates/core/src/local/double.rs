//! Isotropy over the surface germ through two residue passes: the four
//! blocks of the parameter decomposition, each reduced to the residue
//! algebra at the closed point.

use serde::Serialize;

use super::{larmour_split, FieldAlg, QuatLocal};
use crate::algebra::FieldInv;
use crate::error::{Error, Result};
use crate::field::{Fe, FiniteField, Laurent, LaurentConj, PureExt, Ring};
use crate::hermitian::{is_isotropic_finite, HermitianForm};
use crate::orders::{quad_split4, OrderBasis, ParameterPair, SQuatElem};
use crate::surface::QuatShape;
use crate::symbolic::{LambdaShape, Laurent2, SElem};

/// The residue algebra of the order at the closed point, a finite field
/// `F_p` or `F_{p^2}`, and how to reduce elements into it.
#[derive(Debug, Clone)]
pub struct ClosedPointResidue {
    pub field: FiniteField,
    /// Basis index of the unit element generating `F_{p^2}`, if any.
    pub unit_slot: Option<usize>,
    /// `sqrt` of the square of the generator, as an element of `field`.
    pub generator: Fe,
}

fn sign_of(order: &OrderBasis, x: &SQuatElem, y: &SQuatElem) -> Option<i8> {
    if x == y {
        Some(1)
    } else if *x == order.alg.neg(y) {
        Some(-1)
    } else {
        None
    }
}

impl ClosedPointResidue {
    pub fn new(order: &OrderBasis) -> Result<Self> {
        let f = order.field();
        let alg = &order.alg;
        let p = f.base().p();
        let kp = FiniteField::prime(p);
        let unit: Vec<usize> = (1..4).filter(|&k| f.is_unit(&alg.nrd(&alg.basis(k)))).collect();
        let scalar_ext = f.shape() == Some(LambdaShape::W);
        let q = FiniteField::quadratic(p);
        let sqrt_in_q = |c: u32| -> Result<Fe> {
            let c = Fe::new(c, 0);
            if kp.is_square(&c) {
                return Err(Error::NotDivision);
            }
            // c = s^2 n with x^2 = n, so sqrt(c) = s x
            let ratio = kp.mul(&c, &kp.inv(&Fe::new(kp.nonresidue(), 0)).unwrap());
            Ok(Fe::new(0, kp.sqrt(&ratio).unwrap().a))
        };
        match (unit.as_slice(), scalar_ext) {
            ([], false) => Ok(ClosedPointResidue { field: kp, unit_slot: None, generator: Fe::new(0, 0) }),
            ([], true) => {
                let w = f.lambda().unwrap().as_monomial().unwrap().0;
                Ok(ClosedPointResidue { field: q, unit_slot: None, generator: sqrt_in_q(w)? })
            }
            ([k], false) => {
                let sq = alg.basis_square(*k);
                let c = sq.a.as_monomial().filter(|m| m.1 == 0 && m.2 == 0 && sq.b.is_zero()).ok_or_else(|| {
                    Error::HypothesisViolation("unit basis element without constant square".into())
                })?;
                Ok(ClosedPointResidue { field: q, unit_slot: Some(*k), generator: sqrt_in_q(c.0)? })
            }
            _ => Err(Error::NotDivision),
        }
    }

    fn scalar(&self, order: &OrderBasis, x: &SElem) -> Fe {
        let p = order.field().base().p();
        let a = Fe::new(x.a.constant_term(), 0);
        let mut out = if self.field.degree() == 2 { self.field.embed(&a) } else { a };
        if self.unit_slot.is_none() && self.field.degree() == 2 {
            let b = Fe::new(x.b.constant_term() % p, 0);
            out = self.field.add(&out, &self.field.mul(&self.field.embed(&b), &self.generator));
        }
        out
    }

    /// Reduction of an element of the order.
    pub fn reduce(&self, order: &OrderBasis, x: &SQuatElem) -> Result<Fe> {
        let c = order.coords(x)?;
        if !c.iter().all(|s| order.field().is_integral(s)) {
            return Err(Error::HypothesisViolation("element outside the order".into()));
        }
        let mut r = self.scalar(order, &c[0]);
        if let Some(k) = self.unit_slot {
            let t = self.scalar(order, &c[k]);
            r = self.field.add(&r, &self.field.mul(&t, &self.generator));
        }
        Ok(r)
    }

    /// Whether `Int(g) o sigma` induces the Frobenius on this field.
    pub fn is_frobenius(&self, order: &OrderBasis, g: &SQuatElem) -> Result<bool> {
        if self.field.degree() == 1 {
            return Ok(false);
        }
        match self.unit_slot {
            None => Ok(true),
            Some(k) => {
                let alg = &order.alg;
                let e = alg.basis(k);
                let gi = alg.inv(g).ok_or_else(|| Error::Inconsistent("parameter monomial not invertible".into()))?;
                let t = alg.mul(&alg.mul(g, &order.sigma(&e)), &gi);
                let s = sign_of(order, &t, &e).ok_or_else(|| Error::Inconsistent("unit element not +-fixed".into()))?;
                Ok(s < 0)
            }
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BlockResidue {
    pub m_prime: u8,
    pub n_prime: u8,
    pub rank: usize,
    pub eps: i8,
    pub frobenius: bool,
    pub isotropic: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct DoubleResidueReport {
    pub isotropic: bool,
    pub blocks: Vec<BlockResidue>,
}

fn parameter_monomial(order: &OrderBasis, params: &ParameterPair, m: u8, n: u8) -> SQuatElem {
    let alg = &order.alg;
    let mut g = alg.one();
    if m == 1 {
        g = alg.mul(&g, &params.pi_d);
    }
    if n == 1 {
        g = alg.mul(&g, &params.delta_d);
    }
    g
}

/// Isotropy of the diagonal `eps`-hermitian form `<c_1, ..., c_n>` over
/// `(D, sigma)`: one of the four double residue forms is isotropic.
pub fn double_residue_isotropy(
    entries: &[SQuatElem],
    eps: i8,
    params: &ParameterPair,
    order: &OrderBasis,
) -> Result<DoubleResidueReport> {
    let res = ClosedPointResidue::new(order)?;
    let split = quad_split4(entries, params, order)?;
    let [s0, s1, s2] = params.signs;
    let mut blocks = Vec::new();
    for (idx, block) in split.blocks.iter().enumerate() {
        let (m, n) = ((idx % 2) as u8, (idx / 2) as u8);
        if block.is_empty() {
            continue;
        }
        let g = parameter_monomial(order, params, m, n);
        let eta = if m == 1 { s0 } else { 1 } * if n == 1 { s1 } else { 1 } * if m == 1 && n == 1 { s2 } else { 1 };
        let frob = res.is_frobenius(order, &g)?;
        let vals = block.iter().map(|(_, d)| res.reduce(order, &d.theta)).collect::<Result<Vec<_>>>()?;
        let form = HermitianForm::diag(FieldInv::finite(res.field, frob), eps * eta, vals)?;
        let iso = is_isotropic_finite(&form)?;
        blocks.push(BlockResidue { m_prime: m, n_prime: n, rank: block.len(), eps: eps * eta, frobenius: frob, isotropic: iso });
    }
    Ok(DoubleResidueReport { isotropic: blocks.iter().any(|b| b.isotropic), blocks })
}

/// The same verdict by one residue pass at `pi'` into an algebra over
/// `k((delta))`, followed by the valuation splitting there. First-kind
/// division shapes only.
pub fn sequential_residue_isotropy(
    entries: &[SQuatElem],
    eps: i8,
    params: &ParameterPair,
    order: &OrderBasis,
    prec: u32,
) -> Result<bool> {
    if order.field().has_conj() {
        return Err(Error::ShapeUnsupported("sequential residues are implemented for the first kind".into()));
    }
    let split = quad_split4(entries, params, order)?;
    let alg = &order.alg;
    let pi_inv = alg.inv(&params.pi_d).ok_or_else(|| Error::Inconsistent("pi_D not invertible".into()))?;
    // entries of h = A + B pi_D with A, B free of pi_D
    let mut part: [Vec<SQuatElem>; 2] = Default::default();
    for (idx, block) in split.blocks.iter().enumerate() {
        let (m, n) = ((idx % 2) as u8, (idx / 2) as u8);
        let g = parameter_monomial(order, params, m, n);
        for (_, d) in block {
            let c = alg.mul(&d.theta, &g);
            part[m as usize].push(if m == 1 { alg.mul(&c, &pi_inv) } else { c });
        }
    }
    let p = order.field().base().p();
    let kp = FiniteField::prime(p);
    let series = |x: &Laurent2| -> Vec<Fe> {
        let r = order.field().base().reduce_pi(x);
        let top = r.keys().max().copied().unwrap_or(0).max(0) as usize;
        let mut c = vec![Fe::default(); top + 1];
        for (e, v) in r {
            c[e as usize] = Fe::new(v, 0);
        }
        c
    };
    let twist_sign = |m: usize, k: usize| -> Result<bool> {
        let e = alg.basis(k);
        let s = if m == 1 {
            alg.mul(&alg.mul(&params.pi_d, &order.sigma(&e)), &pi_inv)
        } else {
            order.sigma(&e)
        };
        Ok(sign_of(order, &s, &e).ok_or_else(|| Error::Inconsistent("generator not +-fixed".into()))? < 0)
    };
    let shape = params.shape;
    let mut verdict = false;
    for m in 0..2 {
        if part[m].is_empty() {
            continue;
        }
        let eps_m = if m == 1 { eps * params.signs[0] } else { eps };
        let iso = match shape {
            QuatShape::UnitPi => {
                // D(pi) = k((delta))(i), i^2 = u
                let q = FiniteField::quadratic(p);
                let u = alg.a().a.constant_term();
                let ratio = kp.mul(&Fe::new(u, 0), &kp.inv(&Fe::new(kp.nonresidue(), 0)).unwrap());
                let s = kp.sqrt(&ratio).ok_or(Error::NotDivision)?;
                let frob = twist_sign(m, 1)?;
                let lf = Laurent::new(q, prec)?.with_conj(if frob { LaurentConj::Frobenius } else { LaurentConj::None })?;
                let fa = FieldAlg::new(lf.clone(), frob);
                let vals = part[m]
                    .iter()
                    .map(|c| {
                        let a = series(&c[0].a);
                        let b = series(&c[1].a);
                        let n = a.len().max(b.len());
                        let co: Vec<Fe> = (0..n)
                            .map(|k| {
                                let x = a.get(k).copied().unwrap_or_default();
                                let y = b.get(k).copied().unwrap_or_default();
                                Fe::new(x.a, kp.mul(&y, &s).a)
                            })
                            .collect();
                        lf.series(0, &co)
                    })
                    .collect();
                larmour_split(&HermitianForm::diag(fa, eps_m, vals)?)?.verdict()?
            }
            QuatShape::UnitDelta => {
                // D(pi) = (u, v delta) over k((delta))
                let lf = Laurent::new(kp, prec)?;
                let a = lf.from_int(alg.a().a.constant_term() as i64);
                let b = lf.series(0, &series(&alg.b().a));
                let q = crate::quaternion::QuatAlgebra::new(lf.clone(), a, b)?;
                let inv = crate::quaternion::Involution {
                    si: if twist_sign(m, 1)? { -1 } else { 1 },
                    sj: if twist_sign(m, 2)? { -1 } else { 1 },
                    second_kind: false,
                    twist: None,
                };
                let ql = QuatLocal::new(q, inv)?;
                let vals = part[m]
                    .iter()
                    .map(|c| std::array::from_fn(|k| lf.series(0, &series(&c[k].a))))
                    .collect();
                larmour_split(&HermitianForm::diag(ql, eps_m, vals)?)?.verdict()?
            }
            QuatShape::PiDelta => {
                // D(pi) = k((delta))(j), j^2 = v delta
                let lf = Laurent::new(kp, prec)?;
                let ext = PureExt::new(lf.clone(), 2, lf.series(0, &series(&alg.b().a)))?;
                let conj = twist_sign(m, 2)?;
                let fa = FieldAlg::new(ext, conj);
                let vals = part[m]
                    .iter()
                    .map(|c| vec![lf.series(0, &series(&c[0].a)), lf.series(0, &series(&c[2].a))])
                    .collect();
                larmour_split(&HermitianForm::diag(fa, eps_m, vals)?)?.verdict()?
            }
            _ => return Err(Error::NotDivision),
        };
        verdict |= iso;
    }
    Ok(verdict)
}
