use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::gen::{hermitian_entry, involutions, padic_scalar, up_algebra};
use super::{fork, Suite, Tally};
use crate::algebra::FieldInv;
use crate::error::{Error, Result};
use crate::field::square::springer_residues;
use crate::field::{Cdvf, Fe, FiniteField, Padic};
use crate::hermitian::{is_isotropic_finite, HermitianForm};
use crate::local::{larmour_split, odd_transfer_check, oracle_isotropy, FieldAlg, OracleOutcome};
use crate::orders::sample::{random_element, random_symmetric_entry};
use crate::orders::{
    build_parameters, decompose_entry, table_specs, verify_maximality, AlgebraSpec, Kind, OrderBasis, ParameterPair,
    SQuatElem, SurfacePrime,
};
use crate::phs::{
    enumerate_flags, flag_nonempty, invariants_of_finite_form, pm_component_verdict, validate, Component, FlagRequest,
    InvolutionType,
};
use crate::surface::{blow_up, normalize_model, satisfies_leaf_predicate, Chart};
use crate::surface::{all_small_symbols, MonomialElement, Prime, QuatShape, SurfaceBase, Symbol2D};
use crate::symbolic::{LambdaShape, Laurent2Ring};

pub(super) fn all() -> Vec<Box<dyn Suite>> {
    vec![
        Box::new(Springer),
        Box::new(Larmour),
        Box::new(Tables),
        Box::new(Decomposition),
        Box::new(Classification),
        Box::new(BlowUps),
        Box::new(Orders),
        Box::new(Flags),
        Box::new(Transfer),
    ]
}

fn finite_isotropic(rf: FiniteField, diag: Vec<Fe>) -> Result<bool> {
    if diag.is_empty() {
        return Ok(false);
    }
    is_isotropic_finite(&HermitianForm::diag(FieldInv::finite(rf, false), 1, diag)?)
}

/// `Some(isotropic)` from the exhaustive search, `None` if undecided.
fn oracle<A: crate::local::LocalAlgebra>(h: &HermitianForm<A>) -> Result<Option<bool>> {
    Ok(match oracle_isotropy(h, 4)? {
        OracleOutcome::Isotropic(x) => {
            if !h.is_isotropic_vector(&x) {
                return Err(Error::Inconsistent("oracle witness is not isotropic".into()));
            }
            Some(true)
        }
        OracleOutcome::Anisotropic => Some(false),
        OracleOutcome::Undecided => None,
    })
}

fn merge(tally: &mut Tally, parts: Vec<Tally>) {
    for p in parts {
        tally.cases += p.cases;
        tally.undecided += p.undecided;
        tally.failures.extend(p.failures);
        tally.notes.extend(p.notes);
    }
}

struct Springer;

impl Suite for Springer {
    fn name(&self) -> &'static str {
        "springer"
    }
    fn description(&self) -> &'static str {
        "diagonal quadratic forms over Q_3, Q_5: residue-form verdict against exhaustive search"
    }
    fn required(&self) -> usize {
        200
    }
    fn limit_ms(&self) -> Option<u128> {
        Some(60_000)
    }
    fn body(&self, rng: &mut ChaCha8Rng, tally: &mut Tally) -> Result<()> {
        let jobs: Vec<(u64, ChaCha8Rng)> = [3u64, 5].iter().flat_map(|&p| (0..4).map(move |_| p)).map(|p| (p, fork(rng))).collect();
        let parts: Vec<Tally> = jobs
            .into_par_iter()
            .map(|(p, mut rng)| {
                let mut t = Tally::default();
                let k = Padic::new(p, 12).expect("supported prime");
                let mut iso = 0;
                for _ in 0..30 {
                    let n = rng.gen_range(1..=5);
                    let d: Vec<_> = (0..n).map(|_| padic_scalar(&k, &mut rng, 2)).collect();
                    let res = (|| -> Result<(bool, Option<bool>)> {
                        let (q1, q2) = springer_residues(&k, &d)?;
                        let rf = k.residue_field();
                        let verdict = finite_isotropic(rf, q1)? || finite_isotropic(rf, q2)?;
                        let h = HermitianForm::diag(FieldAlg::new(k.clone(), false), 1, d.clone())?;
                        Ok((verdict, oracle(&h)?))
                    })();
                    match res {
                        Ok((_, None)) => t.undecided += 1,
                        Ok((v, Some(o))) => {
                            iso += o as usize;
                            t.check(v == o, || format!("Q_{p} {d:?}: residues say {v}, search says {o}"));
                        }
                        Err(e) => t.fail(format!("Q_{p} {d:?}: {e}")),
                    }
                }
                t.notes.push(format!("Q_{p}: {iso} isotropic"));
                t
            })
            .collect();
        merge(tally, parts);
        Ok(())
    }
}

struct Larmour;

impl Suite for Larmour {
    fn name(&self) -> &'static str {
        "larmour"
    }
    fn description(&self) -> &'static str {
        "hermitian forms over (u, p)/Q_p: residue forms of the splitting against exhaustive search"
    }
    fn required(&self) -> usize {
        200
    }
    fn limit_ms(&self) -> Option<u128> {
        Some(300_000)
    }
    fn body(&self, rng: &mut ChaCha8Rng, tally: &mut Tally) -> Result<()> {
        let mut jobs = Vec::new();
        for p in [3u64, 5] {
            for (name, inv, eps) in involutions() {
                jobs.push((p, name, inv, eps, fork(rng)));
            }
        }
        let parts: Vec<Tally> = jobs
            .into_par_iter()
            .map(|(p, name, inv, eps, mut rng)| {
                let mut t = Tally::default();
                let alg = up_algebra(p, 12, inv);
                let mut iso = 0;
                for _ in 0..20 {
                    let n = rng.gen_range(1..=4);
                    let d: Vec<_> = (0..n).map(|_| hermitian_entry(&alg, eps, &mut rng)).collect();
                    let res = (|| -> Result<(bool, Option<bool>)> {
                        let h = HermitianForm::diag(alg.clone(), eps, d.clone())?;
                        Ok((larmour_split(&h)?.verdict()?, oracle(&h)?))
                    })();
                    match res {
                        Ok((_, None)) => t.undecided += 1,
                        Ok((v, Some(o))) => {
                            iso += o as usize;
                            t.check(v == o, || format!("p={p} {name} eps={eps} {d:?}: residues {v}, search {o}"));
                        }
                        Err(e) => t.fail(format!("p={p} {name} eps={eps} {d:?}: {e}")),
                    }
                }
                t.notes.push(format!("p={p} {name} eps={eps}: {iso} isotropic"));
                t
            })
            .collect();
        merge(tally, parts);
        Ok(())
    }
}

fn sign_matches(o: &OrderBasis, x: &SQuatElem, y: &SQuatElem, s: i8) -> bool {
    *x == if s > 0 { y.clone() } else { o.alg.neg(y) }
}

/// Re-derives every identity of a parameter pair from the elements.
fn pair_failures(o: &OrderBasis, p: &ParameterPair) -> Vec<String> {
    let alg = &o.alg;
    let f = o.field();
    let mut bad = Vec::new();
    let (pd, dd) = (&p.pi_d, &p.delta_d);
    let [s0, s1, s2] = p.signs;
    if !sign_matches(o, &o.sigma(pd), pd, s0) {
        bad.push("sigma(pi_D) sign".to_string());
    }
    if !sign_matches(o, &o.sigma(dd), dd, s1) {
        bad.push("sigma(delta_D) sign".to_string());
    }
    if !sign_matches(o, &alg.mul(pd, dd), &alg.mul(dd, pd), s2) {
        bad.push("pi_D delta_D commutation sign".to_string());
    }
    let pdd = alg.mul(pd, dd);
    if !sign_matches(o, &o.sigma(&pdd), &pdd, p.product_sign) {
        bad.push("sigma(pi_D delta_D) sign".to_string());
    }
    let (npi, ndelta) = (alg.nrd(pd), alg.nrd(dd));
    if f.v_pi_prime(&npi).map(|v| v * p.e0 as i32) != Some(2) || f.v_delta_prime(&npi) != Some(0) {
        bad.push("Nrd(pi_D) valuation".to_string());
    }
    if f.v_delta_prime(&ndelta).map(|v| v * p.e1 as i32) != Some(2) || f.v_pi_prime(&ndelta) != Some(0) {
        bad.push("Nrd(delta_D) valuation".to_string());
    }
    match (o.contains(pd), o.contains(dd)) {
        (Ok(true), Ok(true)) => {}
        _ => bad.push("parameters outside the order".to_string()),
    }
    bad
}

struct Tables;

impl Suite for Tables {
    fn name(&self) -> &'static str {
        "tables"
    }
    fn description(&self) -> &'static str {
        "first- and second-kind parameter tables: construction and every identity"
    }
    fn required(&self) -> usize {
        2 * 19
    }
    fn limit_ms(&self) -> Option<u128> {
        Some(5_000)
    }
    fn body(&self, _rng: &mut ChaCha8Rng, tally: &mut Tally) -> Result<()> {
        for p in [3u32, 5] {
            let r = Laurent2Ring::new(p)?;
            let (mut first, mut second, mut forbidden) = (0, 0, 0);
            for spec in table_specs(p) {
                match build_parameters(&r, &spec) {
                    Ok((o, pair)) => {
                        let bad = pair_failures(&o, &pair);
                        tally.check(bad.is_empty() && !pair.checks.is_empty(), || format!("p={p} {spec:?}: {bad:?}"));
                        match spec.kind {
                            Kind::First => first += 1,
                            Kind::Second(_) => second += 1,
                        }
                    }
                    Err(Error::CombinationForbidden(_))
                        if spec.kind == Kind::Second(LambdaShape::W) && spec.shape == QuatShape::PiDeltaMixed =>
                    {
                        forbidden += 1;
                        tally.cases += 1;
                    }
                    Err(e) => tally.fail(format!("p={p} {spec:?}: {e}")),
                }
            }
            let counts = (first, second, forbidden);
            if counts != (4, 14, 1) {
                tally.failures.push(format!("p={p}: built/forbidden counts {counts:?}, expected (4, 14, 1)"));
            }
        }
        Ok(())
    }
}

struct Decomposition;

fn power(o: &OrderBasis, x: &SQuatElem, e: i64) -> Option<SQuatElem> {
    let base = if e >= 0 { x.clone() } else { o.alg.inv(x)? };
    Some((0..e.unsigned_abs()).fold(o.alg.one(), |acc, _| o.alg.mul(&acc, &base)))
}

impl Suite for Decomposition {
    fn name(&self) -> &'static str {
        "decomposition"
    }
    fn description(&self) -> &'static str {
        "symmetric entries with monomial reduced norm: unit part and exact reconstruction"
    }
    fn required(&self) -> usize {
        18 * 100
    }
    fn limit_ms(&self) -> Option<u128> {
        None
    }
    fn body(&self, rng: &mut ChaCha8Rng, tally: &mut Tally) -> Result<()> {
        let r = Laurent2Ring::new(5)?;
        let jobs: Vec<(AlgebraSpec, ChaCha8Rng)> = table_specs(5).into_iter().map(|s| (s, fork(rng))).collect();
        let parts: Vec<Tally> = jobs
            .into_par_iter()
            .filter_map(|(spec, mut rng)| {
                let (o, p) = build_parameters(&r, &spec).ok()?;
                let mut t = Tally::default();
                for _ in 0..100 {
                    let c = random_symmetric_entry(&o, &p, &mut rng);
                    let d = match decompose_entry(&c, &p, &o) {
                        Ok(d) => d,
                        Err(e) => {
                            t.fail(format!("{spec:?}: {e}"));
                            continue;
                        }
                    };
                    // independent reconstruction from the reported exponents
                    let x = power(&o, &p.pi_d, d.r).zip(power(&o, &p.delta_d, d.s)).map(|(a, b)| o.alg.mul(&a, &b));
                    let g = power(&o, &p.pi_d, d.m_prime as i64)
                        .zip(power(&o, &p.delta_d, d.n_prime as i64))
                        .map(|(a, b)| o.alg.mul(&a, &b));
                    let ok = match (x, g) {
                        (Some(x), Some(g)) => {
                            let back = o.alg.mul(&o.alg.mul(&o.sigma(&x), &o.alg.mul(&d.theta, &g)), &x);
                            back == c && o.field().is_unit(&o.alg.nrd(&d.theta)) && o.contains(&d.theta).unwrap_or(false)
                        }
                        _ => false,
                    };
                    t.check(ok, || format!("{spec:?}: reconstruction failed"));
                }
                Some(t)
            })
            .collect();
        merge(tally, parts);
        Ok(())
    }
}

struct Classification;

impl Suite for Classification {
    fn name(&self) -> &'static str {
        "classification"
    }
    fn description(&self) -> &'static str {
        "all 64 small monomial symbols: one of five shapes, residues preserved"
    }
    fn required(&self) -> usize {
        3 * 64
    }
    fn limit_ms(&self) -> Option<u128> {
        None
    }
    fn body(&self, _rng: &mut ChaCha8Rng, tally: &mut Tally) -> Result<()> {
        for p in [3u32, 5, 7] {
            let k = SurfaceBase::new(p)?;
            let mut seen = std::collections::BTreeSet::new();
            for s in all_small_symbols() {
                match k.classify_quaternion(&s) {
                    Ok((shape, rep)) => {
                        seen.insert(format!("{shape:?}"));
                        let same = [Prime::Pi, Prime::Delta].iter().all(|&q| k.residue_at(&s, q) == k.residue_at(&rep, q));
                        let unique = QuatShape::ALL.iter().filter(|&&t| t == shape).count() == 1;
                        tally.check(same && unique, || format!("p={p} {s}: residues changed under normalization to {rep}"));
                    }
                    Err(e) => tally.fail(format!("p={p} {s}: {e}")),
                }
            }
            tally.notes.push(format!("p={p}: shapes reached {seen:?}"));
        }
        tally.notes.push("no symbol with unequal residue parities (the unclassifiable case) was reached".into());
        Ok(())
    }
}

struct BlowUps;

fn mono(nonsquare: bool, a: i32, b: i32) -> MonomialElement {
    MonomialElement::new(nonsquare, a, b)
}

impl Suite for BlowUps {
    fn name(&self) -> &'static str {
        "blowup"
    }
    fn description(&self) -> &'static str {
        "chart rewriting of the mixed symbol and normal models for the 15 root configurations"
    }
    fn required(&self) -> usize {
        2 * (2 + 15)
    }
    fn limit_ms(&self) -> Option<u128> {
        None
    }
    fn body(&self, _rng: &mut ChaCha8Rng, tally: &mut Tally) -> Result<()> {
        let roots = [
            Symbol2D::new(mono(false, 0, 0), mono(false, 0, 0)),
            Symbol2D::new(mono(true, 0, 0), mono(false, 1, 0)),
            Symbol2D::new(mono(true, 0, 0), mono(false, 0, 1)),
            Symbol2D::new(mono(false, 1, 0), mono(true, 0, 1)),
            Symbol2D::new(mono(true, 0, 0), mono(false, 1, 1)),
        ];
        let lambdas = [mono(true, 0, 0), mono(true, 1, 0), mono(true, 0, 1)];
        for p in [3u32, 5] {
            let k = SurfaceBase::new(p)?;
            let mixed = roots[4];
            for (chart, t) in [(Chart::Q1, mono(false, 0, 1)), (Chart::Q2, mono(false, 1, 0))] {
                let b = blow_up(&k, &mixed, &lambdas[0], chart)?;
                let want = Symbol2D::new(mixed.left, t);
                tally.check(b.symbol == want, || format!("p={p} {chart:?}: {} rewrote to {}", mixed, b.symbol));
            }
            for s in &roots {
                for l in &lambdas {
                    match normalize_model(&k, s, l, 3) {
                        Ok(tree) => {
                            let leaves_ok = tree.leaves().iter().all(|n| satisfies_leaf_predicate(n.shape, &n.lambda));
                            tally.check(leaves_ok && tree.depth() <= 3, || format!("p={p} {s} lambda={l}: bad leaves"));
                        }
                        Err(e) => tally.fail(format!("p={p} {s} lambda={l}: {e}")),
                    }
                }
            }
        }
        Ok(())
    }
}

struct Orders;

impl Suite for Orders {
    fn name(&self) -> &'static str {
        "orders"
    }
    fn description(&self) -> &'static str {
        "membership by coordinates against integral reduced norm at each completion; shrunk orders rejected"
    }
    fn required(&self) -> usize {
        3 * 2 * 1000 + 4
    }
    fn limit_ms(&self) -> Option<u128> {
        Some(30_000)
    }
    fn body(&self, rng: &mut ChaCha8Rng, tally: &mut Tally) -> Result<()> {
        let r = Laurent2Ring::new(5)?;
        // shapes whose algebra stays division at both completions
        let shapes = [QuatShape::UnitPi, QuatShape::UnitDelta, QuatShape::PiDelta];
        let mut jobs = Vec::new();
        for shape in shapes {
            for prime in [SurfacePrime::Pi, SurfacePrime::Delta] {
                jobs.push((shape, prime, fork(rng)));
            }
        }
        let parts: Vec<Tally> = jobs
            .into_par_iter()
            .map(|(shape, prime, mut rng)| {
                let mut t = Tally::default();
                let Ok((o, _)) = build_parameters(&r, &AlgebraSpec::new(5, shape, Kind::First)) else {
                    t.fail(format!("{shape:?}: order not built"));
                    return t;
                };
                let inv_p = o.field().embed(match prime {
                    SurfacePrime::Pi => r.monomial(1, -1, 0),
                    SurfacePrime::Delta => r.monomial(1, 0, -1),
                });
                for i in 0..1000 {
                    let mut x = random_element(&o, &mut rng, 1);
                    if i % 2 == 1 {
                        x = o.alg.scale(&inv_p, &x);
                    }
                    match o.contains_at(&x, prime) {
                        Ok(a) => {
                            let b = o.nrd_integral_at(&x, prime);
                            t.check(a == b, || format!("{shape:?} at {prime:?}: coordinates {a}, Nrd {b}"));
                        }
                        Err(e) => t.fail(format!("{shape:?}: {e}")),
                    }
                }
                t
            })
            .collect();
        merge(tally, parts);
        for shape in [QuatShape::UnitUnit, QuatShape::UnitPi, QuatShape::UnitDelta, QuatShape::PiDelta] {
            let (o, _) = build_parameters(&r, &AlgebraSpec::new(5, shape, Kind::First))?;
            let full = verify_maximality(&o, shape)?.maximal;
            let shrunk = verify_maximality(&o.shrunk(), shape)?.maximal;
            tally.check(full && !shrunk, || format!("{shape:?}: maximal {full}, shrunk maximal {shrunk}"));
        }
        Ok(())
    }
}

struct Flags;

fn chains(top: u32) -> Vec<Vec<u32>> {
    (1u32..(1 << top)).map(|m| (1..=top).filter(|k| m >> (k - 1) & 1 == 1).collect()).collect()
}

/// Every isometry class of quadratic form, the unitary and the symplectic
/// forms of rank `1..=max` over `F_p` and `F_{p^2}/F_p`.
pub(crate) fn small_finite_forms(p: u32, max: usize) -> Result<Vec<crate::hermitian::finite::FiniteForm>> {
    let mut out = Vec::new();
    let f = FiniteField::prime(p);
    let fq = FiniteField::quadratic(p);
    let u = f.nonresidue() as i64;
    use crate::field::Ring;
    for rank in 1..=max {
        for mask in 0..(1u32 << rank) {
            let e = (0..rank).map(|k| f.elem(if mask >> k & 1 == 1 { u } else { 1 })).collect();
            out.push(HermitianForm::diag(FieldInv::finite(f, false), 1, e)?);
        }
        out.push(HermitianForm::diag(FieldInv::finite(fq, true), 1, vec![fq.one(); rank])?);
    }
    let plane = HermitianForm::hyperbolic(FieldInv::finite(f, false), -1)?;
    let mut sp = plane.clone();
    for _ in 0..max / 2 {
        out.push(sp.clone());
        sp = sp.orthogonal_sum(&plane)?;
    }
    Ok(out)
}

impl Suite for Flags {
    fn name(&self) -> &'static str {
        "flags"
    }
    fn description(&self) -> &'static str {
        "flag non-emptiness against exhaustive enumeration over F_3, F_5, F_9/F_3 and F_25/F_5"
    }
    /// Every legal request over the forms below, plus one component check
    /// per split orthogonal form.
    fn required(&self) -> usize {
        129
    }
    fn limit_ms(&self) -> Option<u128> {
        None
    }
    fn body(&self, _rng: &mut ChaCha8Rng, tally: &mut Tally) -> Result<()> {
        let mut forms = small_finite_forms(3, 4)?;
        forms.extend(small_finite_forms(5, 4)?);
        // unitary rank 5 over F_9: the literal unitary bound admits n_r = 1
        let f9 = FiniteField::quadratic(3);
        forms.push(HermitianForm::diag(FieldInv::finite(f9, true), 1, vec![Fe::new(1, 0); 5])?);
        let parts: Vec<Result<Tally>> = forms
            .par_iter()
            .map(|h| {
                let mut t = Tally::default();
                let (ctx, li) = invariants_of_finite_form(h)?;
                for indices in chains(h.rank() as u32) {
                    for component in [Component::None, Component::Plus, Component::Minus] {
                        for allow_boundary in [false, true] {
                            let r = FlagRequest { indices: indices.clone(), component, context: ctx, allow_boundary };
                            match validate(&r) {
                                Ok(v) if v.boundary != allow_boundary => continue,
                                Ok(_) => {}
                                Err(_) => continue,
                            }
                            let verdict = flag_nonempty(&r, &li)?;
                            let count = enumerate_flags(h, &indices, component)?.count;
                            t.check(verdict == (count > 0), || {
                                format!("{ctx:?} {indices:?} {component:?}: verdict {verdict}, {count} flags")
                            });
                        }
                    }
                }
                if ctx.involution == InvolutionType::Orthogonal && ctx.disc_trivial {
                    let n = ctx.rdim / 2;
                    let plus = enumerate_flags(h, &[n], Component::Plus)?.count > 0;
                    let minus = enumerate_flags(h, &[n], Component::Minus)?.count > 0;
                    let both = plus && minus;
                    t.check(both == (li.split && li.hyperbolic) && (plus, minus) == pm_component_verdict(&li)?, || {
                        format!("{ctx:?}: components ({plus}, {minus}) for {li:?}")
                    });
                }
                Ok(t)
            })
            .collect();
        let parts = parts.into_iter().collect::<Result<Vec<_>>>()?;
        merge(tally, parts);
        Ok(())
    }
}

struct Transfer;

impl Suite for Transfer {
    fn name(&self) -> &'static str {
        "transfer"
    }
    fn description(&self) -> &'static str {
        "hermitian forms over (u, 3)/Q_3: isotropy over a ramified cubic extension implies isotropy below"
    }
    fn required(&self) -> usize {
        100
    }
    fn limit_ms(&self) -> Option<u128> {
        Some(300_000)
    }
    fn body(&self, rng: &mut ChaCha8Rng, tally: &mut Tally) -> Result<()> {
        let jobs: Vec<_> = involutions().into_iter().map(|(name, inv, eps)| (name, inv, eps, fork(rng))).collect();
        let parts: Vec<Tally> = jobs
            .into_par_iter()
            .map(|(name, inv, eps, mut rng)| {
                let mut t = Tally::default();
                let alg = up_algebra(3, 16, inv);
                let mut iso = [0usize; 2];
                for _ in 0..20 {
                    let n = rng.gen_range(1..=3);
                    let d: Vec<_> = (0..n).map(|_| hermitian_entry(&alg, eps, &mut rng)).collect();
                    let res = HermitianForm::diag(alg.clone(), eps, d.clone()).and_then(|h| odd_transfer_check(&h, 3));
                    match res {
                        Ok((l, m)) => {
                            iso[0] += l as usize;
                            iso[1] += m as usize;
                            t.check(!m || l, || format!("{name} eps={eps} {d:?}: isotropic over M only"));
                        }
                        Err(e) => t.fail(format!("{name} eps={eps} {d:?}: {e}")),
                    }
                }
                t.notes.push(format!("{name} eps={eps}: isotropic over L {}, over M {}", iso[0], iso[1]));
                t
            })
            .collect();
        merge(tally, parts);
        Ok(())
    }
}
