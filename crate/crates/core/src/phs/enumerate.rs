//! Exhaustive count of totally isotropic flags for forms over finite fields.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use super::{Component, FormContext, InvolutionType, LocalInvariants};
use crate::algebra::InvAlgebra;
use crate::error::{Error, Result};
use crate::field::{Fe, FiniteField, Ring};
use crate::hermitian::finite::FiniteForm;
use crate::hermitian::{find_isotropic_vector_finite, witt_decompose};

/// Largest number of candidate subspaces the enumerator will visit.
pub const ENUMERATION_LIMIT: u128 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FlagCount {
    pub count: u64,
    /// Subspaces examined.
    pub searched: u64,
}

type Basis = Vec<Vec<Fe>>;

fn rref(f: &FiniteField, rows: &[Vec<Fe>]) -> Basis {
    let mut m: Basis = rows.to_vec();
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, piv);
        let inv = f.inv(&m[r][c]).unwrap();
        m[r] = m[r].iter().map(|x| f.mul(x, &inv)).collect();
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let t = m[i][c];
                let row = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&row) {
                    *x = f.sub(x, &f.mul(&t, y));
                }
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    m
}

fn det(f: &FiniteField, g: &[Vec<Fe>]) -> Fe {
    let mut m: Basis = g.to_vec();
    let n = m.len();
    let mut d = f.one();
    for c in 0..n {
        let Some(piv) = (c..n).find(|&i| !m[i][c].is_zero()) else { return f.zero() };
        if piv != c {
            m.swap(piv, c);
            d = f.neg(&d);
        }
        d = f.mul(&d, &m[c][c]);
        let inv = f.inv(&m[c][c]).unwrap();
        for i in c + 1..n {
            let t = f.mul(&m[i][c], &inv);
            let row = m[c].clone();
            for (x, y) in m[i].iter_mut().zip(&row) {
                *x = f.sub(x, &f.mul(&t, y));
            }
        }
    }
    d
}

fn gaussian_binomial(n: u32, k: u32, q: u128) -> u128 {
    let mut num = 1u128;
    let mut den = 1u128;
    for i in 0..k {
        num = num.saturating_mul(q.saturating_pow(n - i).saturating_sub(1));
        den = den.saturating_mul(q.saturating_pow(i + 1) - 1);
    }
    num / den
}

/// All `k`-dimensional subspaces of `F^n`, as reduced echelon bases in
/// lexicographic order of pivots and free entries.
fn subspaces(f: &FiniteField, n: usize, k: usize, mut visit: impl FnMut(Basis)) {
    let els: Vec<Fe> = f.elements().collect();
    let mut pivots: Vec<usize> = (0..k).collect();
    loop {
        let free: Vec<(usize, usize)> = (0..k)
            .flat_map(|r| ((pivots[r] + 1)..n).filter(|c| !pivots.contains(c)).map(move |c| (r, c)))
            .collect();
        let mut idx = vec![0usize; free.len()];
        loop {
            let mut b = vec![vec![f.zero(); n]; k];
            for (r, &p) in pivots.iter().enumerate() {
                b[r][p] = f.one();
            }
            for (t, &(r, c)) in free.iter().enumerate() {
                b[r][c] = els[idx[t]];
            }
            visit(b);
            let mut pos = free.len();
            while pos > 0 {
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < els.len() {
                    break;
                }
                idx[pos] = 0;
                if pos == 0 {
                    pos = usize::MAX;
                    break;
                }
            }
            if free.is_empty() || pos == usize::MAX {
                break;
            }
        }
        // next pivot combination
        let Some(i) = (0..k).rev().find(|&i| pivots[i] < n - k + i) else { return };
        pivots[i] += 1;
        for j in i + 1..k {
            pivots[j] = pivots[j - 1] + 1;
        }
    }
}

fn totally_isotropic(h: &FiniteForm, b: &Basis) -> bool {
    (0..b.len()).all(|i| (i..b.len()).all(|j| h.alg.is_zero(&h.eval(&b[i], &b[j]))))
}

/// Counts chains `W_1 < ... < W_r` of totally isotropic subspaces with
/// `dim W_i = indices[i]`. For `Plus`/`Minus` the top space must be maximal
/// of dimension `rank/2` in the family of (resp. not of) the first maximal
/// isotropic subspace in echelon order.
pub fn enumerate_flags(h: &FiniteForm, indices: &[u32], component: Component) -> Result<FlagCount> {
    let f = h.alg.ring;
    let n = h.rank();
    if indices.is_empty() || indices[0] == 0 || indices.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::MalformedRequest("indices must be positive and strictly increasing".into()));
    }
    let top = *indices.last().unwrap() as usize;
    if top > n {
        return Err(Error::MalformedRequest(format!("index {top} exceeds the rank {n}")));
    }
    if component != Component::None && (h.alg.conj || h.eps != 1 || n % 2 != 0 || top != n / 2) {
        return Err(Error::WrongCaseShape("components need an even-rank quadratic form and n_r = rank/2".into()));
    }
    let q = f.order() as u128;
    let limit = |b: u128| if b > ENUMERATION_LIMIT { Err(Error::SearchTooLarge(b)) } else { Ok(()) };
    limit(gaussian_binomial(n as u32, top as u32, q))?;
    let mut searched = 0u64;
    let mut tops: Vec<Basis> = Vec::new();
    subspaces(&f, n, top, |b| {
        searched += 1;
        if totally_isotropic(h, &b) {
            tops.push(b);
        }
    });
    if component != Component::None {
        let want_same = component == Component::Plus;
        let reference = tops.first().cloned();
        tops.retain(|w| {
            let r = reference.as_ref().unwrap();
            let joint: Basis = w.iter().chain(r.iter()).cloned().collect();
            let meet = 2 * top - rref(&f, &joint).len();
            ((top - meet) % 2 == 0) == want_same
        });
    }

    // Chains below each top space, counted level by level inside it.
    let per_top: u128 = indices
        .windows(2)
        .map(|w| gaussian_binomial(top as u32, w[1], q).saturating_mul(gaussian_binomial(w[1], w[0], q)))
        .sum();
    limit(per_top.saturating_mul(tops.len() as u128))?;
    let below: Vec<(u64, u64)> = tops.par_iter().map(|w| chains_below(&f, n, w, indices)).collect();
    let count = below.iter().map(|c| c.0).sum();
    searched += below.iter().map(|c| c.1).sum::<u64>();
    Ok(FlagCount { count, searched })
}

fn chains_below(f: &FiniteField, n: usize, w: &Basis, indices: &[u32]) -> (u64, u64) {
    let mut searched = 0u64;
    let mut level: HashMap<Basis, u64> = HashMap::from([(w.clone(), 1)]);
    for &d in indices.iter().rev().skip(1) {
        let mut next: HashMap<Basis, u64> = HashMap::new();
        for (u, c) in &level {
            subspaces(f, u.len(), d as usize, |coords| {
                searched += 1;
                let rows: Basis = coords
                    .iter()
                    .map(|cr| {
                        (0..n)
                            .map(|j| cr.iter().zip(u).fold(f.zero(), |acc, (a, ur)| f.add(&acc, &f.mul(a, &ur[j]))))
                            .collect()
                    })
                    .collect();
                *next.entry(rref(f, &rows)).or_default() += c;
            });
        }
        level = next;
    }
    (level.values().sum(), searched)
}

/// Context and invariants of a form over a finite field, read off directly:
/// the algebra is split and the Witt index comes from splitting off
/// hyperbolic planes.
pub fn invariants_of_finite_form(h: &FiniteForm) -> Result<(FormContext, LocalInvariants)> {
    let f = h.alg.ring;
    let n = h.rank();
    let involution = if h.alg.conj {
        InvolutionType::Unitary
    } else if h.eps == -1 {
        InvolutionType::Symplectic
    } else if n % 2 == 1 {
        InvolutionType::OddOrthogonal
    } else {
        InvolutionType::Orthogonal
    };
    let disc_trivial = involution == InvolutionType::Orthogonal && {
        let d = det(&f, h.gram());
        let sign = if (n / 2) % 2 == 1 { f.neg(&f.one()) } else { f.one() };
        f.is_square(&f.mul(&sign, &d))
    };
    let witt = witt_decompose(h, find_isotropic_vector_finite)?;
    let rdim = n as u32;
    let wi = witt.witt_index as u32;
    let ctx = FormContext { rdim, involution, disc_trivial };
    let inv = LocalInvariants {
        algebra_index: 1,
        witt_reduced_dim: wi,
        hyperbolic: 2 * wi == rdim,
        split: true,
        disc_trivial,
    };
    Ok((ctx, inv))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subspace_counts_are_gaussian_binomials() {
        for p in [3u32, 5] {
            let f = FiniteField::prime(p);
            for n in 1..=4 {
                for k in 0..=n {
                    let mut c = 0u128;
                    subspaces(&f, n, k, |_| c += 1);
                    assert_eq!(c, gaussian_binomial(n as u32, k as u32, p as u128), "p={p} n={n} k={k}");
                }
            }
        }
    }

    #[test]
    fn rref_is_canonical() {
        let f = FiniteField::prime(5);
        let a = vec![vec![f.elem(1), f.elem(2), f.elem(0)], vec![f.elem(0), f.elem(1), f.elem(3)]];
        let b = vec![vec![f.elem(1), f.elem(3), f.elem(3)], vec![f.elem(2), f.elem(4), f.elem(0)]];
        assert_eq!(rref(&f, &a), rref(&f, &b));
    }
}
