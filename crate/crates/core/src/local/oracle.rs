//! Exhaustive isotropic-vector search over a CDVF-based algebra.
//!
//! Vectors are built digit by digit, `x_k = sum_t lift(d_{k,t}) P^t` for a
//! fixed element `P` of value one. A branch is dropped once the value
//! `h(x, x)` is too large to be cancelled by the remaining digits; a vector
//! is accepted when Hensel's lemma applies to one coordinate.

use rayon::prelude::*;

use super::lift::newton_lift;
use super::LocalAlgebra;
use crate::error::{Error, Result};
use crate::field::Fe;
use crate::hermitian::{diagonalize_with_basis, HermitianForm};

#[derive(Debug, Clone, PartialEq)]
pub enum OracleOutcome<E> {
    /// An isotropic vector in the coordinates of the input form.
    Isotropic(Vec<E>),
    Anisotropic,
    /// Some branch reached the digit-depth limit without a decision.
    Undecided,
}

enum Node<E> {
    Found(Vec<E>),
    Dead,
    Open,
}

struct Search<'a, A: LocalAlgebra> {
    alg: &'a A,
    diag: Vec<A::Elem>,
    wdiag: Vec<i64>,
    min_w: i64,
    digits: Vec<A::Elem>,
    lead: usize,
    max_depth: usize,
}

impl<A: LocalAlgebra> Search<'_, A> {
    fn value(&self, x: &[A::Elem]) -> A::Elem {
        let a = self.alg;
        let mut acc = a.zero();
        for (k, d) in self.diag.iter().enumerate() {
            acc = a.add(&acc, &a.mul(&a.sigma(&x[k]), &a.mul(d, &x[k])));
        }
        acc
    }

    fn classify(&self, x: &[A::Elem], level: usize) -> Node<A::Elem> {
        let a = self.alg;
        let val = self.value(x);
        let Some(wv) = a.wval(&val) else { return Node::Found(x.to_vec()) };
        let certified = x.iter().enumerate().any(|(k, xk)| a.wval(xk).is_some_and(|wx| wv > self.wdiag[k] + 2 * wx));
        if certified {
            return match newton_lift(a, &self.diag, x.to_vec()) {
                Ok(y) => Node::Found(y),
                Err(_) => Node::Open,
            };
        }
        if wv < level as i64 + 1 + self.min_w {
            return Node::Dead;
        }
        Node::Open
    }

    fn dfs(&self, x: &mut Vec<A::Elem>, level: usize, pow: &A::Elem) -> Node<A::Elem> {
        match self.classify(x, level) {
            Node::Found(y) => return Node::Found(y),
            Node::Dead => return Node::Dead,
            Node::Open => {}
        }
        if level + 1 >= self.max_depth {
            return Node::Open;
        }
        let a = self.alg;
        let free: Vec<usize> = (0..x.len()).filter(|&k| k != self.lead).collect();
        let q = self.digits.len();
        let mut idx = vec![0usize; free.len()];
        let base = x.clone();
        let mut open = false;
        loop {
            for (j, &k) in free.iter().enumerate() {
                x[k] = a.add(&base[k], &a.mul(&self.digits[idx[j]], pow));
            }
            let next_pow = a.mul(pow, &a.uniformizer());
            match self.dfs(x, level + 1, &next_pow) {
                Node::Found(y) => return Node::Found(y),
                Node::Open => open = true,
                Node::Dead => {}
            }
            let mut pos = 0;
            while pos < idx.len() {
                idx[pos] += 1;
                if idx[pos] < q {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
            if pos == idx.len() {
                break;
            }
        }
        x.clone_from(&base);
        if open {
            Node::Open
        } else {
            Node::Dead
        }
    }
}

/// Decides isotropy of `h` by exhaustive search to `max_depth` digits.
pub fn oracle_isotropy<A: LocalAlgebra>(h: &HermitianForm<A>, max_depth: usize) -> Result<OracleOutcome<A::Elem>> {
    let alg = &h.alg;
    let n = h.rank();
    if n == 0 {
        return Ok(OracleOutcome::Anisotropic);
    }
    let (d, basis) = diagonalize_with_basis(h)?;
    // rescale entries to values 0 and 1 by powers of the uniformizer
    let pi = alg.uniformizer();
    let pi_inv = alg.inv(&pi).ok_or(Error::Degenerate)?;
    let mut diag = Vec::new();
    let mut scale = Vec::new();
    for c in d.diagonal() {
        let w = alg.wval(&c).ok_or_else(|| Error::precision("zero diagonal entry"))?;
        let r = w.div_euclid(2);
        let s = super::larmour::zpow(alg, &pi, &pi_inv, -r);
        diag.push(alg.mul(&alg.sigma(&s), &alg.mul(&c, &s)));
        scale.push(s);
    }
    let wdiag: Vec<i64> = diag.iter().map(|c| alg.wval(c).unwrap_or(i64::MAX / 4)).collect();
    let min_w = *wdiag.iter().min().unwrap();
    let rf = alg.residue_field();
    let digits: Vec<A::Elem> = rf.elements().map(|r: Fe| alg.lift(&r)).collect();

    // level-0 vectors: first unit coordinate equal to one
    let mut starts: Vec<(usize, Vec<usize>)> = Vec::new();
    let q = digits.len();
    for lead in 0..n {
        let tail = n - lead - 1;
        let total = q.pow(tail as u32);
        for code in 0..total {
            let mut c = code;
            let idx: Vec<usize> = (0..tail)
                .map(|_| {
                    let d = c % q;
                    c /= q;
                    d
                })
                .collect();
            starts.push((lead, idx));
        }
    }
    let results: Vec<Node<A::Elem>> = starts
        .par_iter()
        .map(|(lead, idx)| {
            let search = Search {
                alg,
                diag: diag.clone(),
                wdiag: wdiag.clone(),
                min_w,
                digits: digits.clone(),
                lead: *lead,
                max_depth,
            };
            let mut x = vec![alg.zero(); n];
            x[*lead] = alg.one();
            for (j, &i) in idx.iter().enumerate() {
                x[lead + 1 + j] = digits[i].clone();
            }
            search.dfs(&mut x, 0, &pi)
        })
        .collect();
    let mut open = false;
    for r in results {
        match r {
            Node::Found(y) => {
                // undo the rescaling and the diagonalization
                let v: Vec<A::Elem> = y.iter().zip(&scale).map(|(yk, s)| alg.mul(s, yk)).collect();
                let mut out = vec![alg.zero(); n];
                for (i, row) in basis.iter().enumerate() {
                    for (k, b) in row.iter().enumerate() {
                        out[i] = alg.add(&out[i], &alg.mul(b, &v[k]));
                    }
                }
                return Ok(OracleOutcome::Isotropic(out));
            }
            Node::Open => open = true,
            Node::Dead => {}
        }
    }
    Ok(if open { OracleOutcome::Undecided } else { OracleOutcome::Anisotropic })
}
