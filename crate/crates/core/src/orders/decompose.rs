use serde::Serialize;

use super::{OrderBasis, ParameterPair, SQuatElem};
use crate::error::{Error, Result};
use crate::field::Ring;

#[derive(Debug, Clone)]
pub struct Decomposition {
    /// A unit of the order with `c = sigma(x) (theta g) x`,
    /// `x = pi_D^r delta_D^s`, `g = pi_D^m' delta_D^n'`.
    pub theta: SQuatElem,
    pub m_prime: u8,
    pub n_prime: u8,
    pub r: i64,
    pub s: i64,
    /// `sigma(x) = eps_x x`.
    pub eps_x: i8,
    /// `sigma(c) = eps_c c`.
    pub eps_c: i8,
}

fn power(order: &OrderBasis, x: &SQuatElem, e: i64) -> SQuatElem {
    let alg = &order.alg;
    let base = if e >= 0 { x.clone() } else { alg.inv(x).expect("parameters are invertible") };
    let mut acc = alg.one();
    for _ in 0..e.unsigned_abs() {
        acc = alg.mul(&acc, &base);
    }
    acc
}

fn parity_sign(s: i8, e: i64) -> i8 {
    if s < 0 && e.rem_euclid(2) == 1 {
        -1
    } else {
        1
    }
}

/// Writes `c` with `sigma(c) = +-c` and `Nrd(c)` a unit times a monomial in
/// `pi'`, `delta'` as `sigma(x) (theta pi_D^m' delta_D^n') x`.
pub fn decompose_entry(c: &SQuatElem, params: &ParameterPair, order: &OrderBasis) -> Result<Decomposition> {
    let alg = &order.alg;
    let f = order.field();
    let sc = order.sigma(c);
    let eps_c = if sc == *c {
        1
    } else if sc == alg.neg(c) {
        -1
    } else {
        return Err(Error::HypothesisViolation("sigma(c) is not +-c".into()));
    };
    let n = alg.nrd(c);
    if f.is_zero(&n) {
        return Err(Error::HypothesisViolation("c is not invertible".into()));
    }
    let (vp, vd) = (f.v_pi_prime(&n).unwrap() as i64, f.v_delta_prime(&n).unwrap() as i64);
    let mono = f.mul(&super::zpow_scalar(f, &f.pi_prime(), vp as i32), &super::zpow_scalar(f, &f.delta_prime(), vd as i32));
    let uc = f.mul(&n, &f.inv(&mono).unwrap());
    if !f.is_unit(&uc) {
        return Err(Error::HypothesisViolation("Nrd(c) is not a unit times a monomial".into()));
    }
    let (e0, e1) = (params.e0 as i64, params.e1 as i64);
    if (vp * e0) % 2 != 0 || (vd * e1) % 2 != 0 {
        return Err(Error::HypothesisViolation("valuation of Nrd(c) not in the value group".into()));
    }
    let (m, nn) = (vp * e0 / 2, vd * e1 / 2);
    let (r, m_prime) = (m.div_euclid(2), m.rem_euclid(2));
    let (s, n_prime) = (nn.div_euclid(2), nn.rem_euclid(2));
    let [s0, s1, s2] = params.signs;
    let eps_x = parity_sign(s0, r) * parity_sign(s1, s) * parity_sign(s2, r * s);
    let x = alg.mul(&power(order, &params.pi_d, r), &power(order, &params.delta_d, s));
    let g = alg.mul(&power(order, &params.pi_d, m_prime), &power(order, &params.delta_d, n_prime));
    let xinv = alg.inv(&x).ok_or_else(|| Error::Inconsistent("x not invertible".into()))?;
    let ginv = alg.inv(&g).ok_or_else(|| Error::Inconsistent("g not invertible".into()))?;
    let mut theta = alg.mul(&alg.mul(&alg.mul(&xinv, c), &xinv), &ginv);
    if eps_x < 0 {
        theta = alg.neg(&theta);
    }
    if order.sigma(&x) != if eps_x > 0 { x.clone() } else { alg.neg(&x) } {
        return Err(Error::Inconsistent("sigma(x) sign mismatch".into()));
    }
    if !order.is_unit(&theta)? {
        return Err(Error::NotUnit("theta is not a unit of the order".into()));
    }
    let back = alg.mul(&alg.mul(&order.sigma(&x), &alg.mul(&theta, &g)), &x);
    if back != *c {
        return Err(Error::Inconsistent("reconstruction c = sigma(x) theta g x failed".into()));
    }
    Ok(Decomposition { theta, m_prime: m_prime as u8, n_prime: n_prime as u8, r, s, eps_x, eps_c })
}

/// Entries grouped by `(m', n')`: blocks `(0,0)`, `(1,0)`, `(0,1)`, `(1,1)`.
#[derive(Debug, Clone)]
pub struct QuadSplit {
    pub blocks: [Vec<(usize, Decomposition)>; 4],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BlockSizes(pub [usize; 4]);

impl QuadSplit {
    pub fn sizes(&self) -> BlockSizes {
        BlockSizes(std::array::from_fn(|k| self.blocks[k].len()))
    }
}

pub fn quad_split4(entries: &[SQuatElem], params: &ParameterPair, order: &OrderBasis) -> Result<QuadSplit> {
    let mut blocks: [Vec<(usize, Decomposition)>; 4] = Default::default();
    for (k, c) in entries.iter().enumerate() {
        let d = decompose_entry(c, params, order)?;
        blocks[(d.m_prime + 2 * d.n_prime) as usize].push((k, d));
    }
    Ok(QuadSplit { blocks })
}
