//! ε-hermitian forms `h(x, y) = sum_ij sigma(x_i) g_ij y_j` on right modules
//! over an algebra with involution.

use crate::algebra::InvAlgebra;
use crate::error::{Error, Result};

pub mod diagonalize;
pub mod finite;
pub mod trace;
pub mod witt;

pub use diagonalize::{diagonalize, diagonalize_with_basis};
pub use finite::{finite_strategies, find_isotropic_vector_finite, is_isotropic_finite, FiniteIsotropy};
pub use trace::{find_mu, scale_to_hermitian, trace_form_ext, trace_form_finite, trace_form_quat};
pub use witt::{witt_decompose, WittData};

pub type Matrix<E> = Vec<Vec<E>>;

#[derive(Debug, Clone)]
pub struct HermitianForm<A: InvAlgebra> {
    pub alg: A,
    pub eps: i8,
    gram: Matrix<A::Elem>,
}

impl<A: InvAlgebra> HermitianForm<A> {
    /// The diagonal form `<c_1, ..., c_n>`; each `c` must satisfy
    /// `sigma(c) = eps c` and be nonzero.
    pub fn diag(alg: A, eps: i8, entries: Vec<A::Elem>) -> Result<Self> {
        check_eps(eps)?;
        for c in &entries {
            if alg.is_zero(c) {
                return Err(Error::ZeroEntry);
            }
        }
        let n = entries.len();
        let mut gram = vec![vec![alg.zero(); n]; n];
        for (k, c) in entries.into_iter().enumerate() {
            gram[k][k] = c;
        }
        let h = HermitianForm { alg, eps, gram };
        h.check_symmetry()?;
        Ok(h)
    }

    pub fn from_gram(alg: A, eps: i8, gram: Matrix<A::Elem>) -> Result<Self> {
        check_eps(eps)?;
        let n = gram.len();
        if gram.iter().any(|r| r.len() != n) {
            return Err(Error::MalformedRequest("Gram matrix is not square".into()));
        }
        let h = HermitianForm { alg, eps, gram };
        h.check_symmetry()?;
        Ok(h)
    }

    fn eps_times(&self, x: &A::Elem) -> A::Elem {
        if self.eps < 0 {
            self.alg.neg(x)
        } else {
            x.clone()
        }
    }

    fn check_symmetry(&self) -> Result<()> {
        let n = self.rank();
        for i in 0..n {
            for j in i..n {
                let lhs = &self.gram[j][i];
                let rhs = self.eps_times(&self.alg.sigma(&self.gram[i][j]));
                if !self.alg.is_zero(&self.alg.sub(lhs, &rhs)) {
                    return Err(Error::HypothesisViolation(format!(
                        "Gram entry ({j},{i}) is not eps * sigma of entry ({i},{j})"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &Matrix<A::Elem> {
        &self.gram
    }

    pub fn is_diagonal(&self) -> bool {
        let n = self.rank();
        (0..n).all(|i| (0..n).all(|j| i == j || self.alg.is_zero(&self.gram[i][j])))
    }

    /// Diagonal entries (meaningful when the form is diagonal).
    pub fn diagonal(&self) -> Vec<A::Elem> {
        (0..self.rank()).map(|k| self.gram[k][k].clone()).collect()
    }

    pub fn eval(&self, x: &[A::Elem], y: &[A::Elem]) -> A::Elem {
        let a = &self.alg;
        let mut acc = a.zero();
        for (i, xi) in x.iter().enumerate() {
            if a.is_zero(xi) {
                continue;
            }
            let sx = a.sigma(xi);
            for (j, yj) in y.iter().enumerate() {
                if a.is_zero(&self.gram[i][j]) {
                    continue;
                }
                acc = a.add(&acc, &a.mul(&sx, &a.mul(&self.gram[i][j], yj)));
            }
        }
        acc
    }

    pub fn value(&self, x: &[A::Elem]) -> A::Elem {
        self.eval(x, x)
    }

    /// `sigma(X)^t G X`: the form in the basis given by the columns of `X`.
    pub fn congruence(&self, x: &Matrix<A::Elem>) -> Self {
        let a = &self.alg;
        let n = self.rank();
        let m = x.first().map_or(0, |r| r.len());
        let col = |j: usize| -> Vec<A::Elem> { (0..n).map(|i| x[i][j].clone()).collect() };
        let cols: Vec<_> = (0..m).map(col).collect();
        let mut g = vec![vec![a.zero(); m]; m];
        for i in 0..m {
            for j in 0..m {
                g[i][j] = self.eval(&cols[i], &cols[j]);
            }
        }
        HermitianForm { alg: self.alg.clone(), eps: self.eps, gram: g }
    }

    pub fn orthogonal_sum(&self, other: &Self) -> Result<Self> {
        if self.eps != other.eps {
            return Err(Error::MalformedRequest("orthogonal sum of forms with different signs".into()));
        }
        let (n, m) = (self.rank(), other.rank());
        let a = &self.alg;
        let mut g = vec![vec![a.zero(); n + m]; n + m];
        for i in 0..n {
            for j in 0..n {
                g[i][j] = self.gram[i][j].clone();
            }
        }
        for i in 0..m {
            for j in 0..m {
                g[n + i][n + j] = other.gram[i][j].clone();
            }
        }
        Ok(HermitianForm { alg: self.alg.clone(), eps: self.eps, gram: g })
    }

    /// The hyperbolic plane `[[0, 1], [eps, 0]]`.
    pub fn hyperbolic(alg: A, eps: i8) -> Result<Self> {
        check_eps(eps)?;
        let one = alg.one();
        let e = if eps < 0 { alg.neg(&one) } else { one.clone() };
        let gram = vec![vec![alg.zero(), one], vec![e, alg.zero()]];
        Ok(HermitianForm { alg, eps, gram })
    }

    /// `h(x, x) = 0` up to precision with `x` nonzero.
    pub fn is_isotropic_vector(&self, x: &[A::Elem]) -> bool {
        x.iter().any(|c| !self.alg.is_zero(c)) && self.alg.is_zero(&self.value(x))
    }

    /// Left multiplication of every entry by a central element.
    pub fn scale_central(&self, mu: &A::Elem, eps: i8) -> Self {
        let a = &self.alg;
        let gram = self.gram.iter().map(|r| r.iter().map(|c| a.mul(mu, c)).collect()).collect();
        HermitianForm { alg: self.alg.clone(), eps, gram }
    }
}

fn check_eps(eps: i8) -> Result<()> {
    if eps == 1 || eps == -1 {
        Ok(())
    } else {
        Err(Error::MalformedRequest(format!("eps must be 1 or -1, got {eps}")))
    }
}

pub fn identity_matrix<A: InvAlgebra>(alg: &A, n: usize) -> Matrix<A::Elem> {
    (0..n).map(|i| (0..n).map(|j| if i == j { alg.one() } else { alg.zero() }).collect()).collect()
}

pub fn mat_mul<A: InvAlgebra>(alg: &A, x: &Matrix<A::Elem>, y: &Matrix<A::Elem>) -> Matrix<A::Elem> {
    let n = x.len();
    let k = y.len();
    let m = y.first().map_or(0, |r| r.len());
    let mut out = vec![vec![alg.zero(); m]; n];
    for i in 0..n {
        for j in 0..m {
            let mut acc = alg.zero();
            for l in 0..k {
                acc = alg.add(&acc, &alg.mul(&x[i][l], &y[l][j]));
            }
            out[i][j] = acc;
        }
    }
    out
}
