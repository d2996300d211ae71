//! Splitting `h = h1 + h2 pi_D` with unit diagonal entries and reading off
//! the two residue forms.

use super::{residue_involution, LocalAlgebra};
use crate::algebra::{FieldInv, InvAlgebra};
use crate::error::{Error, Result};
use crate::field::{Fe, FiniteField};
use crate::hermitian::finite::FiniteForm;
use crate::hermitian::{diagonalize_with_basis, is_isotropic_finite, HermitianForm, Matrix};
use crate::quaternion::ResidueInvolution;

#[derive(Debug, Clone)]
pub struct LarmourSplit<A: LocalAlgebra> {
    pub eps: i8,
    /// `sigma(pi_D) = eps_prime pi_D`.
    pub eps_prime: i8,
    pub pi_d: A::Elem,
    /// Unit entries of the first part.
    pub h1: Vec<A::Elem>,
    /// Unit entries `u` of the second part, which contributes `<u pi_D>`.
    pub h2: Vec<A::Elem>,
    /// Positions (in the diagonalized form) of the entries of each part.
    pub idx1: Vec<usize>,
    pub idx2: Vec<usize>,
    /// Diagonal entries `c_k` and the scalars `x_k` with
    /// `c_k = sigma(x_k) c'_k x_k`.
    pub diag: Vec<A::Elem>,
    pub scalers: Vec<A::Elem>,
    /// Columns: the diagonalizing basis in the coordinates of the input.
    pub basis: Matrix<A::Elem>,
    pub residue1: FiniteForm,
    pub residue2: FiniteForm,
}

impl<A: LocalAlgebra> LarmourSplit<A> {
    pub fn verdict(&self) -> Result<bool> {
        Ok(is_isotropic_finite(&self.residue1)? || is_isotropic_finite(&self.residue2)?)
    }
}

fn sign_of<A: InvAlgebra>(alg: &A, x: &A::Elem) -> Option<i8> {
    let s = alg.sigma(x);
    if alg.is_zero(&alg.sub(&s, x)) {
        Some(1)
    } else if alg.is_zero(&alg.add(&s, x)) {
        Some(-1)
    } else {
        None
    }
}

/// A parameter `pi_D` of value one with `sigma(pi_D) = +-pi_D`.
pub fn symmetric_parameter<A: LocalAlgebra>(alg: &A) -> Result<(A::Elem, i8)> {
    for c in alg.parameter_candidates() {
        if alg.wval(&c) != Some(1) {
            continue;
        }
        if let Some(s) = sign_of(alg, &c) {
            return Ok((c, s));
        }
    }
    Err(Error::NoSymmetricParameter)
}

fn residue_form<A: LocalAlgebra>(alg: &A, eps: i8, units: &[A::Elem]) -> Result<FiniteForm> {
    let rf: FiniteField = alg.residue_field();
    let conj = residue_involution(alg)? == ResidueInvolution::Frobenius;
    let entries: Vec<Fe> = units.iter().map(|u| alg.residue(u)).collect::<Result<_>>()?;
    if entries.iter().any(|r| r.is_zero()) {
        return Err(Error::precision("unit entry has zero residue"));
    }
    HermitianForm::diag(FieldInv::finite(rf, conj), eps, entries)
        .map_err(|e| Error::precision(format!("residue form is not eps-hermitian: {e}")))
}

pub fn larmour_split<A: LocalAlgebra>(h: &HermitianForm<A>) -> Result<LarmourSplit<A>> {
    let alg = &h.alg;
    let (pi_d, eps_prime) = symmetric_parameter(alg)?;
    let (d, basis) = diagonalize_with_basis(h)?;
    let diag = d.diagonal();
    let pi_inv = alg.inv(&pi_d).ok_or_else(|| Error::precision("parameter not invertible"))?;
    let mut h1 = Vec::new();
    let mut h2 = Vec::new();
    let mut idx1 = Vec::new();
    let mut idx2 = Vec::new();
    let mut scalers = Vec::new();
    for (k, c) in diag.iter().enumerate() {
        let n = alg.wval(c).ok_or_else(|| Error::precision("diagonal entry is zero up to precision"))?;
        let r = n.div_euclid(2);
        let x = zpow(alg, &pi_d, &pi_inv, r);
        let xinv = zpow(alg, &pi_d, &pi_inv, -r);
        let sxinv = alg.sigma(&xinv);
        let cp = alg.mul(&sxinv, &alg.mul(c, &xinv));
        if n.rem_euclid(2) == 0 {
            h1.push(cp);
            idx1.push(k);
        } else {
            h2.push(alg.mul(&cp, &pi_inv));
            idx2.push(k);
        }
        scalers.push(x);
    }
    let residue1 = residue_form(alg, h.eps, &h1)?;
    let tw = alg.twist(&pi_d)?;
    let residue2 = residue_form(&tw, h.eps * eps_prime, &h2)?;
    Ok(LarmourSplit { eps: h.eps, eps_prime, pi_d, h1, h2, idx1, idx2, diag, scalers, basis, residue1, residue2 })
}

pub(crate) fn zpow<A: InvAlgebra>(alg: &A, x: &A::Elem, xinv: &A::Elem, e: i64) -> A::Elem {
    let base = if e >= 0 { x } else { xinv };
    let mut acc = alg.one();
    for _ in 0..e.unsigned_abs() {
        acc = alg.mul(&acc, base);
    }
    acc
}
