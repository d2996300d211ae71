use serde::{Deserialize, Serialize};

use super::{OrderBasis, SQuat, SQuatElem};
use crate::error::{Error, Result};
use crate::field::{least_nonresidue, Ring};
use crate::quaternion::{Involution, QuatAlgebra};
use crate::surface::QuatShape;
use crate::symbolic::{LambdaShape, Laurent2Ring, SElem, SurfaceField};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Kind {
    First,
    Second(LambdaShape),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FirstKindInvolution {
    Canonical,
    OrthogonalI,
    OrthogonalJ,
}

/// `D0` of the given shape with constants `u`, `v`, and for the second kind
/// the centre `L = K(sqrt(lambda))` with constant `w`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraSpec {
    pub shape: QuatShape,
    pub kind: Kind,
    pub u: i64,
    pub v: i64,
    pub w: i64,
    pub involution: FirstKindInvolution,
}

impl AlgebraSpec {
    /// `u` and `w` the least non-residue, `v = 1`, canonical involution.
    pub fn new(p: u32, shape: QuatShape, kind: Kind) -> Self {
        let n = least_nonresidue(p) as i64;
        AlgebraSpec { shape, kind, u: n, v: 1, w: n, involution: FirstKindInvolution::Canonical }
    }

    /// Constants in `{1, n}` (`n` the least non-residue, `w = n` when
    /// `lambda` is a unit) for which `D` ramifies wherever its shape says, so
    /// that the standard order is maximal. `None` when no choice works.
    pub fn division_constants(r: &Laurent2Ring, shape: QuatShape, kind: Kind) -> Option<Self> {
        let n = least_nonresidue(r.p()) as i64;
        let ws: &[i64] = if kind == Kind::Second(LambdaShape::W) { &[n] } else { &[n, 1] };
        for &w in ws {
            for u in [n, 1] {
                for v in [1, n] {
                    let spec = AlgebraSpec { shape, kind, u, v, w, involution: FirstKindInvolution::Canonical };
                    let Ok((o, p)) = build_parameters(r, &spec) else { continue };
                    let ok = super::verify_maximality(&o, p.shape).map(|m| m.maximal).unwrap_or(false);
                    if ok {
                        return Some(spec);
                    }
                }
            }
        }
        None
    }
}

#[derive(Debug, Clone)]
pub struct ParameterPair {
    /// Shape of `D` over `S` in the primes `pi'`, `delta'`.
    pub shape: QuatShape,
    /// The chosen `i`, `j` written in `D0 (x) L`.
    pub i: SQuatElem,
    pub j: SQuatElem,
    pub pi_d: SQuatElem,
    pub delta_d: SQuatElem,
    pub e0: u8,
    pub e1: u8,
    /// `sigma(pi_D) = e0 pi_D`, `sigma(delta_D) = e1 delta_D`,
    /// `pi_D delta_D = e2 delta_D pi_D`.
    pub signs: [i8; 3],
    /// `sigma(pi_D delta_D) = s pi_D delta_D`.
    pub product_sign: i8,
    pub u0: SElem,
    pub u1: SElem,
    /// The identities checked by direct computation.
    pub checks: Vec<String>,
}

fn sign_of(alg: &SQuat, x: &SQuatElem, y: &SQuatElem) -> Option<i8> {
    if x == y {
        Some(1)
    } else if *x == alg.neg(y) {
        Some(-1)
    } else {
        None
    }
}

fn scalar_of(alg: &SQuat, x: &SQuatElem) -> Option<SElem> {
    let f = alg.ring();
    (1..4).all(|k| f.is_zero(&x[k])).then(|| x[0].clone())
}

fn d0_constants(r: &Laurent2Ring, spec: &AlgebraSpec) -> (crate::symbolic::Laurent2, crate::symbolic::Laurent2) {
    let (u, v) = (spec.u, spec.v);
    match spec.shape {
        QuatShape::UnitUnit => (r.constant(u), r.constant(v)),
        QuatShape::UnitPi => (r.constant(u), r.monomial(v, 1, 0)),
        QuatShape::UnitDelta => (r.constant(u), r.monomial(v, 0, 1)),
        QuatShape::PiDelta => (r.monomial(u, 1, 0), r.monomial(v, 0, 1)),
        QuatShape::PiDeltaMixed => (r.constant(u), r.monomial(v, 1, 1)),
    }
}

/// Which of `i0`, `j0` gets replaced by `(1/t)(x0 sqrt(lambda))`, and `t`.
fn twisted_slot(lambda: LambdaShape, d0: QuatShape) -> Result<Option<(usize, bool)>> {
    use LambdaShape as L;
    use QuatShape as Q;
    Ok(match (lambda, d0) {
        (L::W, Q::PiDeltaMixed) => {
            return Err(Error::CombinationForbidden(
                "lambda a unit with D0 = (u, v pi delta) admits no invariant parameters; blow up first".into(),
            ))
        }
        (L::WPi, Q::UnitPi) | (L::WPi, Q::PiDeltaMixed) => Some((2, true)),
        (L::WPi, Q::PiDelta) => Some((1, true)),
        (L::WDelta, Q::UnitDelta) | (L::WDelta, Q::PiDelta) | (L::WDelta, Q::PiDeltaMixed) => Some((2, false)),
        _ => None,
    })
}

/// Builds `D`, the order `Lambda = S<1, i, j, ij>` and `(pi_D, delta_D)`,
/// verifying every identity of the pair by computation.
pub fn build_parameters(r: &Laurent2Ring, spec: &AlgebraSpec) -> Result<(OrderBasis, ParameterPair)> {
    let (a0, b0) = d0_constants(r, spec);
    let mut checks = Vec::new();
    let (alg, inv, i, j) = match spec.kind {
        Kind::First => {
            if spec.shape == QuatShape::PiDeltaMixed {
                return Err(Error::ShapeUnsupported(
                    "(u, v pi delta) has no parameter pair; blow up the closed point first".into(),
                ));
            }
            let f = SurfaceField::base_field(*r);
            let alg = QuatAlgebra::new(f.clone(), f.embed(a0), f.embed(b0))?;
            let inv = match spec.involution {
                FirstKindInvolution::Canonical => Involution::canonical(),
                FirstKindInvolution::OrthogonalI => Involution::orthogonal_i(),
                FirstKindInvolution::OrthogonalJ => Involution::orthogonal_j(),
            };
            let (i, j) = (alg.basis(1), alg.basis(2));
            (alg, inv, i, j)
        }
        Kind::Second(lambda) => {
            let f = SurfaceField::extension(*r, lambda, spec.w);
            let d0 = QuatAlgebra::new(f.clone(), f.embed(a0), f.embed(b0))?;
            let sigma0 = Involution::second_kind();
            let mut ij = [d0.basis(1), d0.basis(2)];
            if let Some((slot, by_pi)) = twisted_slot(lambda, spec.shape)? {
                let t = if by_pi { f.embed(r.pi()) } else { f.embed(r.delta()) };
                let c = f.mul(&f.sqrt_lambda().unwrap(), &f.inv(&t).unwrap());
                ij[slot - 1] = d0.scale(&c, &ij[slot - 1]);
                checks.push(format!("{} = (1/{})({}0 sqrt(lambda))", ["i", "j"][slot - 1], if by_pi { "pi" } else { "delta" }, ["i", "j"][slot - 1]));
            }
            let [i, j] = ij;
            let a = scalar_of(&d0, &d0.mul(&i, &i)).ok_or_else(|| Error::Inconsistent("i^2 is not central".into()))?;
            let b = scalar_of(&d0, &d0.mul(&j, &j)).ok_or_else(|| Error::Inconsistent("j^2 is not central".into()))?;
            if d0.mul(&i, &j) != d0.neg(&d0.mul(&j, &i)) {
                return Err(Error::Inconsistent("i and j do not anticommute".into()));
            }
            checks.push("i^2, j^2 central and ij = -ji".into());
            let si = sign_of(&d0, &d0.apply(&sigma0, &i), &i)
                .ok_or_else(|| Error::Inconsistent("sigma(i) is not +-i".into()))?;
            let sj = sign_of(&d0, &d0.apply(&sigma0, &j), &j)
                .ok_or_else(|| Error::Inconsistent("sigma(j) is not +-j".into()))?;
            checks.push(format!("sigma(i) = {}i, sigma(j) = {}j", pm(si), pm(sj)));
            let alg = QuatAlgebra::new(f, a, b)?;
            let inv = Involution { si, sj, second_kind: true, twist: None };
            (alg, inv, i, j)
        }
    };
    let order = OrderBasis::standard(alg, inv);
    let pair = parameters_for(&order, i, j, checks)?;
    Ok((order, pair))
}

fn pm(s: i8) -> &'static str {
    if s > 0 {
        "+"
    } else {
        "-"
    }
}

/// Reads the shape of `(a, b)` over `S` and takes `pi_D`, `delta_D` to be
/// the basis element whose square has odd valuation, or the prime itself.
fn parameters_for(order: &OrderBasis, i: SQuatElem, j: SQuatElem, mut checks: Vec<String>) -> Result<ParameterPair> {
    let alg = &order.alg;
    let f = order.field();
    let val = |x: &SElem| (f.v_pi_prime(x).unwrap(), f.v_delta_prime(x).unwrap());
    let (va, vb) = (val(alg.a()), val(alg.b()));
    let mut slot_pi = None;
    let mut slot_delta = None;
    for (k, (p, d)) in [(1usize, va), (2, vb)] {
        if !(0..=1).contains(&p) || !(0..=1).contains(&d) {
            return Err(Error::ShapeUnsupported(format!("basis square with valuations ({p}, {d}) is not in normal form")));
        }
        if p == 1 {
            if slot_pi.replace(k).is_some() {
                return Err(Error::ShapeUnsupported("both slots divisible by pi'".into()));
            }
        }
        if d == 1 {
            if slot_delta.replace(k).is_some() {
                return Err(Error::ShapeUnsupported("both slots divisible by delta'".into()));
            }
        }
    }
    let shape = match (slot_pi, slot_delta) {
        (None, None) => QuatShape::UnitUnit,
        (Some(_), None) => QuatShape::UnitPi,
        (None, Some(_)) => QuatShape::UnitDelta,
        (Some(x), Some(y)) if x != y => QuatShape::PiDelta,
        _ => {
            return Err(Error::ShapeUnsupported(
                "(u, v pi delta) has no parameter pair; blow up the closed point first".into(),
            ))
        }
    };
    let pick = |slot: Option<usize>, prime: SElem| match slot {
        Some(k) => (alg.basis(k), 2u8),
        None => (alg.scalar(prime), 1u8),
    };
    let (pi_d, e0) = pick(slot_pi, f.pi_prime());
    let (delta_d, e1) = pick(slot_delta, f.delta_prime());

    let unit_part = |x: &SQuatElem, prime: SElem, e: u8, name: &str, checks: &mut Vec<String>| -> Result<SElem> {
        let n = alg.nrd(x);
        let m = if e == 2 { prime } else { f.mul(&prime, &prime) };
        let u = f.mul(&n, &f.inv(&m).unwrap());
        if !f.is_unit(&u) {
            return Err(Error::Inconsistent(format!("Nrd({name}) is not a unit times the prime power")));
        }
        checks.push(format!("Nrd({name}) = u * {}^{} with u a unit of S", if name == "pi_D" { "pi'" } else { "delta'" }, 2 / e));
        Ok(u)
    };
    let u0 = unit_part(&pi_d, f.pi_prime(), e0, "pi_D", &mut checks)?;
    let u1 = unit_part(&delta_d, f.delta_prime(), e1, "delta_D", &mut checks)?;

    let s0 = sign_of(alg, &order.sigma(&pi_d), &pi_d).ok_or_else(|| Error::Inconsistent("sigma(pi_D) is not +-pi_D".into()))?;
    let s1 = sign_of(alg, &order.sigma(&delta_d), &delta_d)
        .ok_or_else(|| Error::Inconsistent("sigma(delta_D) is not +-delta_D".into()))?;
    let pd = alg.mul(&pi_d, &delta_d);
    let s2 = sign_of(alg, &pd, &alg.mul(&delta_d, &pi_d))
        .ok_or_else(|| Error::Inconsistent("pi_D and delta_D neither commute nor anticommute".into()))?;
    let sp = sign_of(alg, &order.sigma(&pd), &pd)
        .ok_or_else(|| Error::Inconsistent("sigma(pi_D delta_D) is not +-pi_D delta_D".into()))?;
    if sp != s0 * s1 * s2 {
        return Err(Error::Inconsistent("sign of sigma(pi_D delta_D) inconsistent".into()));
    }
    checks.push(format!("sigma(pi_D) = {}pi_D", pm(s0)));
    checks.push(format!("sigma(delta_D) = {}delta_D", pm(s1)));
    checks.push(format!("pi_D delta_D = {}delta_D pi_D", pm(s2)));
    checks.push(format!("sigma(pi_D delta_D) = {}pi_D delta_D", pm(sp)));
    for (x, name) in [(&pi_d, "pi_D"), (&delta_d, "delta_D")] {
        if !order.contains(x)? {
            return Err(Error::Inconsistent(format!("{name} is not in the order")));
        }
    }
    checks.push("pi_D, delta_D lie in the order".into());
    Ok(ParameterPair { shape, i, j, pi_d, delta_d, e0, e1, signs: [s0, s1, s2], product_sign: sp, u0, u1, checks })
}

/// All first-kind shapes and second-kind combinations, including the
/// forbidden one.
pub fn table_specs(p: u32) -> Vec<AlgebraSpec> {
    let mut out = Vec::new();
    for kind in [Kind::First, Kind::Second(LambdaShape::W), Kind::Second(LambdaShape::WPi), Kind::Second(LambdaShape::WDelta)] {
        for shape in QuatShape::ALL {
            if kind == Kind::First && shape == QuatShape::PiDeltaMixed {
                continue;
            }
            out.push(AlgebraSpec::new(p, shape, kind));
        }
    }
    out
}
