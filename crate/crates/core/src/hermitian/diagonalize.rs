//! Orthogonal bases by symmetric elimination.

use super::{identity_matrix, HermitianForm, Matrix};
use crate::algebra::InvAlgebra;
use crate::error::{Error, Result};

/// Diagonal form isometric to `h`.
pub fn diagonalize<A: InvAlgebra>(h: &HermitianForm<A>) -> Result<HermitianForm<A>> {
    diagonalize_with_basis(h).map(|(d, _)| d)
}

/// Diagonal form together with the basis change `X` (columns are the new
/// basis vectors) such that `h.congruence(X)` is that diagonal form.
pub fn diagonalize_with_basis<A: InvAlgebra>(h: &HermitianForm<A>) -> Result<(HermitianForm<A>, Matrix<A::Elem>)> {
    let a = &h.alg;
    let n = h.rank();
    let mut cur = h.clone();
    let mut basis = identity_matrix(a, n);
    let mut remaining: Vec<usize> = (0..n).collect();

    while !remaining.is_empty() {
        let k = match pick_pivot(&cur, &remaining) {
            Some(k) => k,
            None => {
                make_pivot(&mut cur, &mut basis, &remaining)?;
                pick_pivot(&cur, &remaining).ok_or_else(|| no_pivot(&cur, &remaining))?
            }
        };
        let gkk_inv = a.inv(&cur.gram()[k][k]).ok_or_else(|| no_pivot(&cur, &remaining))?;
        // v_l <- v_l - v_k g_kk^{-1} g_kl
        let mut e = identity_matrix(a, n);
        for &l in &remaining {
            if l != k {
                let t = a.mul(&gkk_inv, &cur.gram()[k][l]);
                e[k][l] = a.neg(&t);
            }
        }
        cur = cur.congruence(&e);
        basis = super::mat_mul(a, &basis, &e);
        remaining.retain(|&l| l != k);
    }

    let diag = cur.diagonal();
    if let Some(c) = diag.iter().find(|c| a.is_zero(c)) {
        return Err(if a.is_exact_zero(c) { Error::Degenerate } else { uncertified() });
    }
    Ok((HermitianForm::diag(a.clone(), h.eps, diag)?, basis))
}

fn uncertified() -> Error {
    Error::precision("radical not certified at working precision")
}

/// `Degenerate` when the remaining block is exactly zero, otherwise the
/// block only vanishes up to precision.
fn no_pivot<A: InvAlgebra>(h: &HermitianForm<A>, remaining: &[usize]) -> Error {
    let exact = remaining.iter().all(|&k| remaining.iter().all(|&l| h.alg.is_exact_zero(&h.gram()[k][l])));
    if exact {
        Error::Degenerate
    } else {
        uncertified()
    }
}

fn pick_pivot<A: InvAlgebra>(h: &HermitianForm<A>, remaining: &[usize]) -> Option<usize> {
    let a = &h.alg;
    remaining
        .iter()
        .copied()
        .filter(|&k| a.inv(&h.gram()[k][k]).is_some())
        .min_by_key(|&k| (a.key(&h.gram()[k][k]).unwrap_or(i64::MAX), k))
}

/// All remaining diagonal entries vanish: replace some `v_k` by
/// `v_k + v_l c` with `h(v_k + v_l c)` invertible.
fn make_pivot<A: InvAlgebra>(h: &mut HermitianForm<A>, basis: &mut Matrix<A::Elem>, remaining: &[usize]) -> Result<()> {
    let a = h.alg.clone();
    let n = h.rank();
    let mut best: Option<(i64, usize, usize, A::Elem)> = None;
    for &k in remaining {
        for &l in remaining {
            if k == l || a.is_zero(&h.gram()[k][l]) {
                continue;
            }
            for c in a.sample_units() {
                let mut v = vec![a.zero(); n];
                v[k] = a.one();
                v[l] = c.clone();
                let val = h.value(&v);
                if a.inv(&val).is_none() {
                    continue;
                }
                let key = a.key(&val).unwrap_or(i64::MAX);
                if best.as_ref().is_none_or(|b| key < b.0) {
                    best = Some((key, k, l, c));
                }
            }
        }
    }
    let (_, k, l, c) = best.ok_or_else(|| no_pivot(h, remaining))?;
    let mut e = super::identity_matrix(&a, n);
    e[l][k] = c;
    *h = h.congruence(&e);
    *basis = super::mat_mul(&a, basis, &e);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FieldInv;
    use crate::field::{FiniteField, Ring};
    use crate::hermitian::is_isotropic_finite;
    use crate::quaternion::{Involution, Quat, QuatAlgebra};
    use rand::{Rng as _, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn diagonal_input_is_kept() {
        let f = FiniteField::prime(7);
        let a = FieldInv::finite(f, false);
        let h = HermitianForm::diag(a, 1, vec![f.elem(1), f.elem(3), f.elem(5)]).unwrap();
        let d = diagonalize(&h).unwrap();
        assert_eq!(d.diagonal(), h.diagonal());
    }

    #[test]
    fn hyperbolic_plane_over_quaternions() {
        let f = FiniteField::prime(5);
        let q = QuatAlgebra::new(f, f.elem(2), f.elem(3)).unwrap();
        for (inv, eps) in [(Involution::canonical(), 1), (Involution::canonical(), -1), (Involution::orthogonal_i(), 1)] {
            let alg = Quat::new(q.clone(), inv);
            let h = HermitianForm::hyperbolic(alg.clone(), eps).unwrap();
            let (d, x) = diagonalize_with_basis(&h).unwrap();
            assert!(d.is_diagonal());
            assert_eq!(d.rank(), 2);
            for c in d.diagonal() {
                let s = alg.sigma(&c);
                let ec = if eps < 0 { alg.neg(&c) } else { c.clone() };
                assert_eq!(s, ec);
            }
            let back = h.congruence(&x);
            assert!(back.is_diagonal());
        }
    }

    #[test]
    fn random_hermitian_gram_over_quadratic_field() {
        let f = FiniteField::quadratic(3);
        let a = FieldInv::finite(f, true);
        let els: Vec<_> = f.elements().collect();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut done = 0;
        while done < 30 {
            let mut g = vec![vec![f.zero(); 3]; 3];
            for i in 0..3 {
                g[i][i] = f.embed(&f.elem(rng.gen_range(0..3)));
                for j in i + 1..3 {
                    g[i][j] = els[rng.gen_range(0..els.len())];
                    g[j][i] = f.frobenius(&g[i][j]);
                }
            }
            let h = HermitianForm::from_gram(a.clone(), 1, g).unwrap();
            let Ok(d) = diagonalize(&h) else { continue };
            assert!(d.is_diagonal());
            assert_eq!(
                is_isotropic_finite(&d).unwrap(),
                crate::hermitian::find_isotropic_vector_finite(&h).unwrap().is_some()
            );
            done += 1;
        }
    }
}
