//! Orders in quaternion algebras over valuation rings and over the surface
//! germ, the parameter pairs `(pi_D, delta_D)` and the decomposition of
//! diagonal entries into units times parameter monomials.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Cdvf, Ring};
use crate::quaternion::{Involution, QuatAlgebra, QuatElem};
use crate::surface::QuatShape;
use crate::symbolic::{SElem, SurfaceField};

mod decompose;
mod params;
pub mod sample;

pub use decompose::{decompose_entry, quad_split4, Decomposition, QuadSplit};
pub use params::{build_parameters, table_specs, AlgebraSpec, FirstKindInvolution, Kind, ParameterPair};

pub type SQuat = QuatAlgebra<SurfaceField>;
pub type SQuatElem = QuatElem<SElem>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum SurfacePrime {
    #[serde(rename = "pi")]
    Pi,
    #[serde(rename = "delta")]
    Delta,
}

impl SurfacePrime {
    pub fn valuation(&self, f: &SurfaceField, x: &SElem) -> Option<i32> {
        match self {
            SurfacePrime::Pi => f.v_pi_prime(x),
            SurfacePrime::Delta => f.v_delta_prime(x),
        }
    }

    pub fn element(&self, f: &SurfaceField) -> SElem {
        match self {
            SurfacePrime::Pi => f.pi_prime(),
            SurfacePrime::Delta => f.delta_prime(),
        }
    }
}

/// `Lambda = sum S s_k b_k` for the standard basis `b = (1, i, j, ij)` and
/// scalars `s_k` of `L`.
#[derive(Debug, Clone)]
pub struct OrderBasis {
    pub alg: SQuat,
    pub inv: Involution<SElem>,
    pub scalers: [SElem; 4],
}

impl OrderBasis {
    pub fn standard(alg: SQuat, inv: Involution<SElem>) -> Self {
        let one = alg.ring().one();
        OrderBasis { alg, inv, scalers: [one.clone(), one.clone(), one.clone(), one] }
    }

    /// `S + S pi' i + S j + S pi' ij`: a proper suborder.
    pub fn shrunk(&self) -> Self {
        let f = self.field();
        let p = f.pi_prime();
        let mut s = self.scalers.clone();
        s[1] = f.mul(&s[1], &p);
        s[3] = f.mul(&s[3], &p);
        OrderBasis { scalers: s, ..self.clone() }
    }

    pub fn field(&self) -> &SurfaceField {
        self.alg.ring()
    }

    pub fn basis(&self) -> [SQuatElem; 4] {
        std::array::from_fn(|k| self.alg.scale(&self.scalers[k], &self.alg.basis(k)))
    }

    /// Coordinates with respect to the order basis.
    pub fn coords(&self, x: &SQuatElem) -> Result<[SElem; 4]> {
        let f = self.field();
        let mut out: [SElem; 4] = Default::default();
        for k in 0..4 {
            let si = f
                .inv(&self.scalers[k])
                .ok_or_else(|| Error::HypothesisViolation("order scalars must have monomial norm".into()))?;
            out[k] = f.mul(&x[k], &si);
        }
        Ok(out)
    }

    pub fn contains(&self, x: &SQuatElem) -> Result<bool> {
        Ok(self.coords(x)?.iter().all(|c| self.field().is_integral(c)))
    }

    /// `x in Lambda` with `Nrd(x)` a unit of `S`.
    pub fn is_unit(&self, x: &SQuatElem) -> Result<bool> {
        Ok(self.contains(x)? && self.field().is_unit(&self.alg.nrd(x)))
    }

    pub fn sigma(&self, x: &SQuatElem) -> SQuatElem {
        self.alg.apply(&self.inv, x)
    }

    /// `det(Trd(e_k e_l))` of the order basis.
    pub fn discriminant(&self) -> SElem {
        let f = self.field();
        let e = self.basis();
        let m: Vec<Vec<SElem>> =
            (0..4).map(|k| (0..4).map(|l| self.alg.trd(&self.alg.mul(&e[k], &e[l]))).collect()).collect();
        det(f, &m)
    }

    /// Membership at the completion at `prime`, by coordinates.
    pub fn contains_at(&self, x: &SQuatElem, prime: SurfacePrime) -> Result<bool> {
        let f = self.field();
        Ok(self.coords(x)?.iter().all(|c| f.is_zero(c) || prime.valuation(f, c).unwrap() >= 0))
    }

    /// `v_P(Nrd x) >= 0`, the division-algebra membership criterion.
    pub fn nrd_integral_at(&self, x: &SQuatElem, prime: SurfacePrime) -> bool {
        let n = self.alg.nrd(x);
        self.field().is_zero(&n) || prime.valuation(self.field(), &n).unwrap() >= 0
    }
}

fn det(f: &SurfaceField, m: &[Vec<SElem>]) -> SElem {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = f.zero();
    for c in 0..n {
        if f.is_zero(&m[0][c]) {
            continue;
        }
        let minor: Vec<Vec<SElem>> =
            m[1..].iter().map(|row| row.iter().enumerate().filter(|&(k, _)| k != c).map(|(_, x)| x.clone()).collect()).collect();
        let t = f.mul(&m[0][c], &det(f, &minor));
        acc = if c % 2 == 0 { f.add(&acc, &t) } else { f.sub(&acc, &t) };
    }
    acc
}

/// Membership in the unique maximal order of a division quaternion algebra
/// over a complete discretely valued field: `v(Nrd x) >= 0`.
pub fn membership<C: Cdvf>(alg: &QuatAlgebra<C>, x: &QuatElem<C::Elem>) -> Result<bool> {
    let n = alg.nrd(x);
    let k = alg.ring();
    if k.is_zero(&n) && k.abs_precision(&n) >= 0 {
        return Ok(true);
    }
    Ok(k.certified_valuation(&n)? >= 0)
}

/// Membership in `R_v + R_v i + R_v j + R_v ij`: integral coordinates.
pub fn coordinate_membership<C: Cdvf>(alg: &QuatAlgebra<C>, x: &QuatElem<C::Elem>) -> Result<bool> {
    let k = alg.ring();
    for c in x {
        if k.is_zero(c) {
            if k.abs_precision(c) < 0 {
                return Err(Error::precision("coordinate known only to negative valuation"));
            }
            continue;
        }
        if k.valuation(c).unwrap() < 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimeReport {
    pub prime: SurfacePrime,
    /// `D` ramifies at the prime: the tame residue of `(a, b)` is nontrivial.
    pub ramified: bool,
    pub disc_valuation: i32,
    pub expected_disc_valuation: i32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MaximalityReport {
    pub basis_integral: bool,
    pub sigma_stable: bool,
    pub closed_under_products: bool,
    pub unit_away_from_primes: bool,
    pub primes: Vec<PrimeReport>,
    pub maximal: bool,
}

/// Checks that `Lambda` is an order whose discriminant is a unit away from
/// `pi`, `delta` and has the valuation of a maximal order at each of them.
pub fn verify_maximality(order: &OrderBasis, shape: QuatShape) -> Result<MaximalityReport> {
    if shape == QuatShape::PiDeltaMixed {
        return Err(Error::ShapeUnsupported(
            "(u, v pi delta) has no parameter pair; blow up the closed point first".into(),
        ));
    }
    let f = order.field();
    let alg = &order.alg;
    let e = order.basis();
    let basis_integral = e.iter().all(|x| f.is_integral(&alg.nrd(x)) && f.is_integral(&alg.trd(x)));
    let mut sigma_stable = true;
    let mut closed = true;
    for k in 0..4 {
        sigma_stable &= order.contains(&order.sigma(&e[k]))?;
        for l in 0..4 {
            closed &= order.contains(&alg.mul(&e[k], &e[l]))?;
        }
    }
    let d = order.discriminant();
    let (vp, vd) = (f.v_pi_prime(&d).unwrap_or(0), f.v_delta_prime(&d).unwrap_or(0));
    let mono = f.mul(&zpow_scalar(f, &f.pi_prime(), vp), &zpow_scalar(f, &f.delta_prime(), vd));
    let unit_away = f.inv(&mono).map(|mi| f.is_unit(&f.mul(&d, &mi))).unwrap_or(false);
    let mut primes = Vec::new();
    for (prime, v) in [(SurfacePrime::Pi, vp), (SurfacePrime::Delta, vd)] {
        let ramified = ramified_at(alg, prime);
        primes.push(PrimeReport {
            prime,
            ramified,
            disc_valuation: v,
            expected_disc_valuation: if ramified { 2 } else { 0 },
        });
    }
    let maximal = basis_integral
        && sigma_stable
        && closed
        && unit_away
        && primes.iter().all(|p| p.disc_valuation == p.expected_disc_valuation);
    Ok(MaximalityReport { basis_integral, sigma_stable, closed_under_products: closed, unit_away_from_primes: unit_away, primes, maximal })
}

pub(crate) fn zpow_scalar(f: &SurfaceField, x: &SElem, e: i32) -> SElem {
    if e >= 0 {
        f.pow(x, e as u64)
    } else {
        f.pow(&f.inv(x).expect("monomial scalar"), e.unsigned_abs() as u64)
    }
}

/// Whether `(a, b)` ramifies at the prime of `S` over `pi` or `delta`.
///
/// `a`, `b` are `c pi^x delta^y` with `c` constant. The tame residue at the
/// prime of `R` is `c' t^k` in `k((t))`; over `S` it becomes trivial when
/// `L/K` ramifies there, loses `c'` when the residue field grows to
/// `F_{p^2}`, and loses `t^k` when `lambda` reduces to `w t`.
pub fn ramified_at(alg: &SQuat, prime: SurfacePrime) -> bool {
    use crate::symbolic::LambdaShape as L;
    let f = alg.ring();
    let k = f.base().field();
    let mono = |x: &SElem| -> (u32, i32, i32) {
        assert!(x.b.is_zero(), "algebra constants lie in K");
        let (c, a, b) = x.a.as_monomial().expect("monomial algebra constants");
        match prime {
            SurfacePrime::Pi => (c, a, b),
            SurfacePrime::Delta => (c, b, a),
        }
    };
    let (ca, va, oa) = mono(alg.a());
    let (cb, vb, ob) = mono(alg.b());
    let odd = |n: i32| n.rem_euclid(2) == 1;
    let mut c = crate::field::Fe::new(1, 0);
    if odd(va) && odd(vb) {
        c = k.neg(&c);
    }
    if odd(vb) {
        c = k.mul(&c, &crate::field::Fe::new(ca, 0));
    }
    if odd(va) {
        c = k.mul(&c, &crate::field::Fe::new(cb, 0));
    }
    let nonsquare = !k.is_square(&c);
    let t_odd = odd(oa * vb - ob * va);
    let extension_ramified =
        matches!((f.shape(), prime), (Some(L::WPi), SurfacePrime::Pi) | (Some(L::WDelta), SurfacePrime::Delta));
    if extension_ramified {
        return false;
    }
    match f.shape() {
        None => nonsquare || t_odd,
        Some(L::W) => t_odd,
        // the residue field is k((s)) with s^2 = w t, so t^k contributes w^k
        Some(_) => {
            let w = f.lambda().unwrap().as_monomial().unwrap().0;
            nonsquare ^ (t_odd && !k.is_square(&crate::field::Fe::new(w, 0)))
        }
    }
}

#[cfg(test)]
mod tests;
