//! Isotropic vectors over the CDVF from residue witnesses.

use super::larmour::{larmour_split, LarmourSplit};
use super::LocalAlgebra;
use crate::error::{Error, Result};
use crate::hermitian::{find_isotropic_vector_finite, witt_decompose, HermitianForm, WittData};

/// Newton iteration for `sum sigma(x_k) d_k x_k = 0` on a diagonal form.
/// Each step corrects one coordinate `k` for which the error `e` satisfies
/// `w(e) > w(d_k) + 2 w(x_k)`, which makes the error strictly smaller.
pub fn newton_lift<A: LocalAlgebra>(alg: &A, diag: &[A::Elem], mut x: Vec<A::Elem>) -> Result<Vec<A::Elem>> {
    let half = alg.inv(&alg.from_int(2)).ok_or_else(|| Error::UnsupportedBase("characteristic 2".into()))?;
    for _ in 0..64 {
        let mut e = alg.zero();
        for (k, d) in diag.iter().enumerate() {
            e = alg.add(&e, &alg.mul(&alg.sigma(&x[k]), &alg.mul(d, &x[k])));
        }
        let Some(we) = alg.wval(&e) else { return Ok(x) };
        let mut best: Option<(i64, usize)> = None;
        for (k, d) in diag.iter().enumerate() {
            let (Some(wx), Some(wd)) = (alg.wval(&x[k]), alg.wval(d)) else { continue };
            let margin = we - wd - 2 * wx;
            if margin > 0 && best.is_none_or(|b| margin > b.0) {
                best = Some((margin, k));
            }
        }
        let (_, k) = best.ok_or_else(|| Error::OracleUndecided("no coordinate certifies a Newton step".into()))?;
        let dinv = alg.inv(&diag[k]).ok_or(Error::Degenerate)?;
        let sxinv = alg.inv(&alg.sigma(&x[k])).ok_or(Error::Degenerate)?;
        let delta = alg.neg(&alg.mul(&dinv, &alg.mul(&sxinv, &alg.mul(&e, &half))));
        x[k] = alg.add(&x[k], &delta);
    }
    Err(Error::precision("Newton iteration did not converge"))
}

/// Lifts an isotropic vector of one residue form to an isotropic vector of
/// `h`, in the coordinates of `h`.
pub fn witness_from_split<A: LocalAlgebra>(
    h: &HermitianForm<A>,
    split: &LarmourSplit<A>,
    second: bool,
    y: &[crate::field::Fe],
) -> Result<Vec<A::Elem>> {
    let alg = &h.alg;
    let n = split.diag.len();
    let mut v = vec![alg.zero(); n];
    let (idx, pi_inv) = if second {
        (&split.idx2, Some(alg.inv(&split.pi_d).ok_or(Error::Degenerate)?))
    } else {
        (&split.idx1, None)
    };
    for (j, &k) in idx.iter().enumerate() {
        let mut z = alg.lift(&y[j]);
        if let Some(pinv) = &pi_inv {
            z = alg.mul(pinv, &alg.mul(&z, &split.pi_d));
        }
        // coordinates on e_k x_k^{-1} become coordinates on e_k
        let xinv = alg.inv(&split.scalers[k]).ok_or(Error::Degenerate)?;
        v[k] = alg.mul(&xinv, &z);
    }
    let v = newton_lift(alg, &split.diag, v)?;
    let mut out = vec![alg.zero(); n];
    for (i, row) in split.basis.iter().enumerate() {
        for (k, b) in row.iter().enumerate() {
            out[i] = alg.add(&out[i], &alg.mul(b, &v[k]));
        }
    }
    Ok(out)
}

/// `x` is nonzero and `h(x, x)` has no certified `w`-value, the same test
/// that stops the Newton iteration. Coordinates of `h(x, x)` may still carry
/// digits beyond the working precision (multiplying by `p` adds one).
pub fn is_certified_isotropic<A: LocalAlgebra>(h: &HermitianForm<A>, x: &[A::Elem]) -> bool {
    x.iter().any(|c| !h.alg.is_zero(c)) && h.alg.wval(&h.value(x)).is_none()
}

/// An isotropic vector of `h` when one exists, via the residue forms.
pub fn find_isotropic_vector_local<A: LocalAlgebra>(h: &HermitianForm<A>) -> Result<Option<Vec<A::Elem>>> {
    let split = larmour_split(h)?;
    for (second, form) in [(false, &split.residue1), (true, &split.residue2)] {
        if form.rank() == 0 {
            continue;
        }
        if let Some(y) = find_isotropic_vector_finite(form)? {
            let x = witness_from_split(h, &split, second, &y)?;
            if !is_certified_isotropic(h, &x) {
                return Err(Error::precision("lifted witness is not isotropic at working precision"));
            }
            return Ok(Some(x));
        }
    }
    Ok(None)
}

pub fn witt_decompose_local<A: LocalAlgebra>(h: &HermitianForm<A>) -> Result<WittData> {
    witt_decompose(h, find_isotropic_vector_local)
}
