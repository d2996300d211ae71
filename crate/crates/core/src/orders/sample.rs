//! Random elements for property checks.

use rand::Rng;

use super::{OrderBasis, ParameterPair, SQuatElem};
use crate::field::Ring;
use crate::symbolic::{Laurent2, SElem};

/// A polynomial with exponents in `0..=deg`, each term present with
/// probability one half.
pub fn random_poly<G: Rng>(order: &OrderBasis, rng: &mut G, deg: i32) -> Laurent2 {
    let r = order.field().base();
    let mut acc = r.zero();
    for a in 0..=deg {
        for b in 0..=deg {
            if rng.gen_bool(0.5) {
                acc = r.add(&acc, &r.monomial(rng.gen_range(1..r.p() as i64), a, b));
            }
        }
    }
    acc
}

pub fn random_scalar<G: Rng>(order: &OrderBasis, rng: &mut G, deg: i32) -> SElem {
    let f = order.field();
    let a = random_poly(order, rng, deg);
    let b = if f.has_conj() { random_poly(order, rng, deg) } else { Laurent2::default() };
    SElem { a, b }
}

/// `sum s_k e_k` with random integral `s_k`.
pub fn random_element<G: Rng>(order: &OrderBasis, rng: &mut G, deg: i32) -> SQuatElem {
    let alg = &order.alg;
    let e = order.basis();
    let mut x = alg.zero();
    for ek in &e {
        x = alg.add(&x, &alg.scale(&random_scalar(order, rng, deg), ek));
    }
    x
}

/// A random unit of the order.
pub fn random_unit<G: Rng>(order: &OrderBasis, rng: &mut G, deg: i32) -> SQuatElem {
    loop {
        let x = random_element(order, rng, deg);
        if order.field().is_unit(&order.alg.nrd(&x)) {
            return x;
        }
    }
}

fn power(order: &OrderBasis, x: &SQuatElem, e: i64) -> SQuatElem {
    let alg = &order.alg;
    let base = if e >= 0 { x.clone() } else { alg.inv(x).expect("invertible parameter") };
    (0..e.unsigned_abs()).fold(alg.one(), |acc, _| alg.mul(&acc, &base))
}

/// `c = sigma(z) (kappa e g0) z` with `z` a unit times parameter powers,
/// `g0` a parameter monomial, `e` a standard basis element with
/// `sigma(e g0) = +-e g0` and `kappa` a unit of `R` times a monomial.
pub fn random_symmetric_entry<G: Rng>(order: &OrderBasis, params: &ParameterPair, rng: &mut G) -> SQuatElem {
    let alg = &order.alg;
    let f = order.field();
    let r = f.base();
    let unit = random_unit(order, rng, 1);
    let z = alg.mul(
        &unit,
        &alg.mul(&power(order, &params.pi_d, rng.gen_range(-1..=2)), &power(order, &params.delta_d, rng.gen_range(-1..=2))),
    );
    let mut g0 = alg.mul(&power(order, &params.pi_d, rng.gen_range(0..=1)), &power(order, &params.delta_d, rng.gen_range(0..=1)));
    let eg = alg.mul(&alg.basis(rng.gen_range(0..4)), &g0);
    let s = order.sigma(&eg);
    if s == eg || s == alg.neg(&eg) {
        g0 = eg;
    }
    let mut kappa = r.constant(rng.gen_range(1..r.p() as i64));
    if rng.gen_bool(0.5) {
        kappa = r.add(&kappa, &r.monomial(rng.gen_range(1..r.p() as i64), 1, 1));
    }
    let kappa = r.shift(&kappa, rng.gen_range(-1..=1), rng.gen_range(-1..=1));
    let kg = alg.scale(&f.embed(kappa), &g0);
    alg.mul(&alg.mul(&order.sigma(&z), &kg), &z)
}
