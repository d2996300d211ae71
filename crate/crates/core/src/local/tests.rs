use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::field::finite::least_nonresidue;
use crate::field::padic::PadicElem;
use crate::field::square::springer_residues;
use crate::field::{Padic, Ring};
use crate::hermitian::HermitianForm;

fn qp(p: u64) -> Padic {
    Padic::new(p, 12).unwrap()
}

fn up_algebra(p: u64, inv: Involution<PadicElem>) -> QuatLocal<Padic> {
    let k = qp(p);
    let u = least_nonresidue(p as u32) as i64;
    let q = QuatAlgebra::new(k.clone(), k.from_int(u), k.from_int(p as i64)).unwrap();
    QuatLocal::new(q, inv).unwrap()
}

fn random_scalar(k: &Padic, rng: &mut ChaCha8Rng, max_val: u32) -> PadicElem {
    let p = k.from_int(k.p() as i64);
    let mut u = rng.gen_range(1..10_000i64);
    while u % k.p() as i64 == 0 {
        u += 1;
    }
    let s = if rng.gen_bool(0.5) { -1 } else { 1 };
    k.mul(&k.from_int(s * u), &k.pow(&p, rng.gen_range(0..=max_val) as u64))
}

#[test]
fn field_split_matches_springer() {
    let k = qp(5);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..50 {
        let n = rng.gen_range(1..=5);
        let d: Vec<_> = (0..n).map(|_| random_scalar(&k, &mut rng, 2)).collect();
        let h = HermitianForm::diag(FieldAlg::new(k.clone(), false), 1, d.clone()).unwrap();
        let split = larmour_split(&h).unwrap();
        let (q1, q2) = springer_residues(&k, &d).unwrap();
        let mut r1 = split.residue1.diagonal();
        let mut r2 = split.residue2.diagonal();
        let (mut q1, mut q2) = (q1, q2);
        r1.sort();
        r2.sort();
        q1.sort();
        q2.sort();
        assert_eq!(r1, q1);
        assert_eq!(r2, q2);
    }
}

#[test]
fn one_plus_j_example() {
    let alg = up_algebra(5, Involution::orthogonal_i());
    let q = alg.algebra().clone();
    let h = HermitianForm::diag(alg, 1, vec![q.one(), q.basis(2)]).unwrap();
    let split = larmour_split(&h).unwrap();
    assert_eq!(split.pi_d, q.basis(2));
    assert_eq!(split.h1.len(), 1);
    assert_eq!(split.h2.len(), 1);
    assert_eq!(split.h2[0], q.one());
}

fn check_agreement<A: LocalAlgebra>(h: &HermitianForm<A>) -> Option<bool> {
    let residue = ResidueDecider.decide(h).unwrap();
    match oracle_isotropy(h, 4).unwrap() {
        OracleOutcome::Isotropic(x) => {
            assert!(h.is_isotropic_vector(&x));
            assert!(residue.isotropic, "oracle found a vector, residue says anisotropic");
            Some(true)
        }
        OracleOutcome::Anisotropic => {
            assert!(!residue.isotropic, "residue isotropic, oracle exhausted");
            Some(false)
        }
        OracleOutcome::Undecided => None,
    }
}

use super::decider::ResidueDecider;

#[test]
fn quadratic_forms_agree_with_oracle() {
    for p in [3u64, 5] {
        let k = qp(p);
        let mut rng = ChaCha8Rng::seed_from_u64(p);
        let mut seen = [0, 0];
        for _ in 0..40 {
            let n = rng.gen_range(1..=4);
            let d: Vec<_> = (0..n).map(|_| random_scalar(&k, &mut rng, 2)).collect();
            let h = HermitianForm::diag(FieldAlg::new(k.clone(), false), 1, d).unwrap();
            if let Some(v) = check_agreement(&h) {
                seen[v as usize] += 1;
            }
        }
        assert!(seen[0] > 0 && seen[1] > 0);
    }
}

fn random_hermitian_entry(alg: &QuatLocal<Padic>, eps: i8, rng: &mut ChaCha8Rng) -> QuatElem<PadicElem> {
    let q = alg.algebra();
    let k = q.ring();
    loop {
        let x: QuatElem<PadicElem> = std::array::from_fn(|_| if rng.gen_bool(0.6) { random_scalar(k, rng, 1) } else { k.zero() });
        // x + eps sigma(x) is eps-hermitian
        let s = alg.sigma(&x);
        let c = if eps > 0 { q.add(&x, &s) } else { q.sub(&x, &s) };
        if alg.inv(&c).is_some() && alg.wval(&c).is_some() {
            return c;
        }
    }
}

#[test]
fn quaternion_forms_agree_with_oracle() {
    for (p, inv, eps) in [
        (3u64, Involution::canonical(), -1i8),
        (3, Involution::orthogonal_i(), 1),
        (5, Involution::orthogonal_j(), -1),
        (3, Involution::canonical(), 1),
    ] {
        let alg = up_algebra(p, inv);
        let mut rng = ChaCha8Rng::seed_from_u64(p * 31);
        let mut decided = 0;
        for _ in 0..15 {
            let n = rng.gen_range(1..=3);
            let d: Vec<_> = (0..n).map(|_| random_hermitian_entry(&alg, eps, &mut rng)).collect();
            let h = HermitianForm::diag(alg.clone(), eps, d).unwrap();
            if check_agreement(&h).is_some() {
                decided += 1;
            }
        }
        assert!(decided > 10);
    }
}

#[test]
fn witt_index_examples() {
    let k = qp(5);
    let alg = FieldAlg::new(k.clone(), false);
    let form = |d: &[i64]| HermitianForm::diag(alg.clone(), 1, d.iter().map(|&c| k.from_int(c)).collect()).unwrap();
    let w = witt_decompose_local(&form(&[1, -1, 1, -1])).unwrap();
    assert_eq!((w.witt_index, w.anisotropic_rank), (2, 0));
    let w = witt_decompose_local(&form(&[1, -1, 1])).unwrap();
    assert_eq!((w.witt_index, w.anisotropic_rank), (1, 1));
    // <1, u, p, up> with u = 2 a non-residue mod 5
    let w = witt_decompose_local(&form(&[1, 2, 5, 10])).unwrap();
    assert_eq!(w.witt_index, 0);
}

#[test]
fn cubic_transfer_keeps_anisotropy() {
    let k = Padic::new(3, 8).unwrap();
    let alg = FieldAlg::new(k.clone(), false);
    // <1, -u, p, -up> with u = 2
    let h = HermitianForm::diag(alg, 1, [1, -2, 3, -6].iter().map(|&c| k.from_int(c)).collect()).unwrap();
    assert_eq!(odd_transfer_check_field(&h, 3).unwrap(), (false, false));
    assert!(odd_transfer_check_field(&h, 2).is_err());
}

mod double_residue {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use crate::field::Ring;
    use crate::local::{double_residue_isotropy, sequential_residue_isotropy};
    use crate::orders::sample::random_symmetric_entry;
    use crate::orders::{build_parameters, AlgebraSpec, FirstKindInvolution, Kind, OrderBasis, ParameterPair, SQuatElem};
    use crate::surface::QuatShape;
    use crate::symbolic::Laurent2Ring;

    fn setup(shape: QuatShape, inv: FirstKindInvolution) -> (OrderBasis, ParameterPair) {
        let r = Laurent2Ring::new(5).unwrap();
        let mut spec = AlgebraSpec::new(5, shape, Kind::First);
        spec.involution = inv;
        build_parameters(&r, &spec).unwrap()
    }

    fn entries(o: &OrderBasis, p: &ParameterPair, eps: i8, n: usize, rng: &mut ChaCha8Rng) -> Vec<SQuatElem> {
        let mut out = Vec::new();
        for _ in 0..10_000 {
            if out.len() == n {
                break;
            }
            let c = random_symmetric_entry(o, p, rng);
            let s = o.sigma(&c);
            let ok = if eps > 0 { s == c } else { s == o.alg.neg(&c) };
            if ok {
                out.push(c);
            }
        }
        assert_eq!(out.len(), n, "no {eps}-symmetric entries generated");
        out
    }

    #[test]
    fn hyperbolic_plane_is_isotropic() {
        let (o, p) = setup(QuatShape::UnitPi, FirstKindInvolution::Canonical);
        let h = vec![o.alg.one(), o.alg.neg(&o.alg.one())];
        assert!(double_residue_isotropy(&h, 1, &p, &o).unwrap().isotropic);
    }

    #[test]
    fn unit_binary_form_with_anisotropic_residue() {
        // residue field F_25 with Frobenius: <1, c> isotropic iff -c is a norm,
        // and every element of F_5 is a norm; so use the identity residue
        // involution of (u pi, v delta), where <1, 1> reduces to x^2 + y^2
        // over F_5 (isotropic) and <1, 2> to x^2 + 2y^2 (anisotropic).
        let (o, p) = setup(QuatShape::PiDelta, FirstKindInvolution::Canonical);
        let one = o.alg.one();
        let two = o.alg.scalar(o.field().from_int(2));
        assert!(!double_residue_isotropy(&[one.clone(), two.clone()], 1, &p, &o).unwrap().isotropic);
        assert!(double_residue_isotropy(&[one.clone(), one.clone()], 1, &p, &o).unwrap().isotropic);
        assert!(!sequential_residue_isotropy(&[one, two], 1, &p, &o, 8).unwrap());
    }

    #[test]
    fn four_blocks_with_one_hyperbolic_block() {
        let (o, p) = setup(QuatShape::PiDelta, FirstKindInvolution::Canonical);
        let alg = &o.alg;
        let two = o.alg.scalar(o.field().from_int(2));
        let pd = alg.mul(&p.pi_d, &p.delta_d);
        let pi = alg.scalar(o.field().embed(o.field().base().pi()));
        let delta = alg.scalar(o.field().embed(o.field().base().delta()));
        // h00 = <1>, h01 = <pi, -pi> (pi = pi_D^2 up to a unit), blocks (1,0) and (1,1) empty
        let h = vec![alg.one(), pi.clone(), alg.neg(&pi), alg.mul(&two, &delta)];
        let rep = double_residue_isotropy(&h, 1, &p, &o).unwrap();
        assert!(rep.isotropic);
        assert_eq!(rep.blocks.iter().map(|b| b.rank).sum::<usize>(), 4);
        let _ = pd;
        assert!(sequential_residue_isotropy(&h, 1, &p, &o, 8).unwrap());
    }

    #[test]
    fn two_routes_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let mut count = 0;
        for shape in [QuatShape::UnitPi, QuatShape::UnitDelta, QuatShape::PiDelta] {
            for inv in [FirstKindInvolution::Canonical, FirstKindInvolution::OrthogonalI, FirstKindInvolution::OrthogonalJ] {
                let (o, p) = setup(shape, inv);
                for eps in [1i8, -1] {
                    for n in 1..=3 {
                        for _ in 0..3 {
                            let h = entries(&o, &p, eps, n, &mut rng);
                            let a = double_residue_isotropy(&h, eps, &p, &o);
                            let b = sequential_residue_isotropy(&h, eps, &p, &o, 8);
                            match (a, b) {
                                (Ok(a), Ok(b)) => {
                                    assert_eq!(a.isotropic, b, "{shape:?} {inv:?} eps={eps} n={n}");
                                    count += 1;
                                }
                                (a, b) => panic!("{shape:?} {inv:?} eps={eps}: {:?} / {:?}", a.err(), b.err()),
                            }
                        }
                    }
                }
            }
        }
        assert!(count > 100);
    }
}

#[test]
fn lifted_witnesses_are_certified() {
    // products with p can carry a digit past the working precision
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let alg = crate::suites::gen::up_algebra(3, 16, Involution::orthogonal_i());
    let mut found = 0;
    for _ in 0..400 {
        let d: Vec<_> = (0..2).map(|_| crate::suites::gen::hermitian_entry(&alg, 1, &mut rng)).collect();
        let h = HermitianForm::diag(alg.clone(), 1, d).unwrap();
        if let Some(x) = lift::find_isotropic_vector_local(&h).unwrap() {
            assert!(lift::is_certified_isotropic(&h, &x));
            found += 1;
        }
    }
    assert!(found > 0);
}
