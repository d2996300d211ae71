//! Witt decomposition driven by an isotropic-vector oracle.

use serde::Serialize;

use super::{HermitianForm, Matrix};
use crate::algebra::InvAlgebra;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct WittData {
    pub witt_index: usize,
    pub anisotropic_rank: usize,
    pub reduced_dim: usize,
}

/// Splits hyperbolic planes off `h` while `find` returns isotropic vectors.
/// The vectors `find` returns are trusted to be certified isotropic.
pub fn witt_decompose<A, F>(h: &HermitianForm<A>, find: F) -> Result<WittData>
where
    A: InvAlgebra,
    F: Fn(&HermitianForm<A>) -> Result<Option<Vec<A::Elem>>>,
{
    let deg = h.alg.degree();
    let mut cur = h.clone();
    let mut index = 0;
    loop {
        if cur.rank() == 0 {
            break;
        }
        let Some(x) = find(&cur)? else { break };
        // `find` certifies isotropy at its own precision
        if x.iter().all(|c| cur.alg.is_zero(c)) {
            return Err(Error::OracleUndecided("witness is the zero vector".into()));
        }
        cur = split_hyperbolic(&cur, &x)?;
        index += 1;
    }
    Ok(WittData { witt_index: index, anisotropic_rank: cur.rank(), reduced_dim: h.rank() * deg })
}

fn argmin_invertible<A: InvAlgebra>(a: &A, v: &[A::Elem], skip: Option<usize>) -> Option<usize> {
    (0..v.len())
        .filter(|&k| Some(k) != skip && a.inv(&v[k]).is_some())
        .min_by_key(|&k| (a.key(&v[k]).unwrap_or(i64::MAX), k))
}

fn axpy<A: InvAlgebra>(a: &A, z: &[A::Elem], x: &[A::Elem], c: &A::Elem) -> Vec<A::Elem> {
    // z - x c
    z.iter().zip(x).map(|(zi, xi)| a.sub(zi, &a.mul(xi, c))).collect()
}

/// Given an isotropic `x`, returns the restriction of `h` to the orthogonal
/// complement of a hyperbolic plane containing `x`.
pub(crate) fn split_hyperbolic<A: InvAlgebra>(h: &HermitianForm<A>, x: &[A::Elem]) -> Result<HermitianForm<A>> {
    let a = &h.alg;
    let n = h.rank();
    let unit = |k: usize| -> Vec<A::Elem> { (0..n).map(|i| if i == k { a.one() } else { a.zero() }).collect() };
    let hx: Vec<A::Elem> = (0..n).map(|k| h.eval(x, &unit(k))).collect();
    let k = argmin_invertible(a, &hx, None).ok_or(Error::Degenerate)?;
    let t = a.inv(&hx[k]).ok_or(Error::Degenerate)?;
    let y: Vec<A::Elem> = unit(k).iter().map(|c| a.mul(c, &t)).collect();
    // y' = y - x (eps h(y, y) / 2) makes y' isotropic with h(x, y') = 1
    let half = a.inv(&a.from_int(2)).ok_or(Error::UnsupportedBase("characteristic 2".into()))?;
    let hyy = h.value(&y);
    let c = a.mul(&if h.eps < 0 { a.neg(&hyy) } else { hyy }, &half);
    let y = axpy(a, &y, x, &c);

    // complement indices: x_{k1} invertible, then (y - x x_{k1}^{-1} y_{k1})_{k2} invertible
    let k1 = argmin_invertible(a, x, None).ok_or(Error::Degenerate)?;
    let xinv = a.inv(&x[k1]).ok_or(Error::Degenerate)?;
    let y2 = axpy(a, &y, x, &a.mul(&xinv, &y[k1]));
    let k2 = argmin_invertible(a, &y2, Some(k1)).ok_or(Error::Degenerate)?;

    // P(z) = z - x (eps h(y, z)) - y h(x, z)
    let project = |z: &[A::Elem]| -> Vec<A::Elem> {
        let hyz = h.eval(&y, z);
        let c1 = if h.eps < 0 { a.neg(&hyz) } else { hyz };
        let z1 = axpy(a, z, x, &c1);
        axpy(a, &z1, &y, &h.eval(x, z))
    };
    let cols: Vec<Vec<A::Elem>> = (0..n).filter(|&m| m != k1 && m != k2).map(|m| project(&unit(m))).collect();
    let mut basis: Matrix<A::Elem> = vec![vec![a.zero(); cols.len()]; n];
    for (j, col) in cols.iter().enumerate() {
        for i in 0..n {
            basis[i][j] = col[i].clone();
        }
    }
    Ok(h.congruence(&basis))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FieldInv;
    use crate::field::{FiniteField, Ring};
    use crate::hermitian::find_isotropic_vector_finite;

    #[test]
    fn finite_witt_indices() {
        let f = FiniteField::prime(5);
        let alg = FieldInv::finite(f, false);
        let form = |d: &[i64]| HermitianForm::diag(alg.clone(), 1, d.iter().map(|&c| f.elem(c)).collect()).unwrap();
        let w = witt_decompose(&form(&[1, -1, 1, -1]), find_isotropic_vector_finite).unwrap();
        assert_eq!((w.witt_index, w.anisotropic_rank), (2, 0));
        let w = witt_decompose(&form(&[1, -1, 1]), find_isotropic_vector_finite).unwrap();
        assert_eq!((w.witt_index, w.anisotropic_rank), (1, 1));
        // <1, 2> is anisotropic over F_5
        let w = witt_decompose(&form(&[1, 2]), find_isotropic_vector_finite).unwrap();
        assert_eq!((w.witt_index, w.anisotropic_rank), (0, 2));
        let w = witt_decompose(&form(&[1, 2, 3, 4, 1]), find_isotropic_vector_finite).unwrap();
        assert_eq!(w.witt_index, 2);
        let _ = f.one();
    }
}
