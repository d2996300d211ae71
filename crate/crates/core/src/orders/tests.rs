use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::sample::{random_element, random_symmetric_entry, random_unit};
use super::*;
use crate::field::Padic;
use crate::symbolic::{LambdaShape, Laurent2Ring};

fn ring() -> Laurent2Ring {
    Laurent2Ring::new(5).unwrap()
}

fn build(shape: QuatShape, kind: Kind) -> Result<(OrderBasis, ParameterPair)> {
    build_parameters(&ring(), &AlgebraSpec::new(5, shape, kind))
}

#[test]
fn first_kind_table_rows() {
    let r = ring();
    // u = 2, v = 1 over F_5
    let (o, p) = build(QuatShape::UnitPi, Kind::First).unwrap();
    assert_eq!(p.pi_d, o.alg.basis(2));
    assert_eq!(p.delta_d, o.alg.scalar(o.field().embed(r.delta())));
    assert_eq!(o.alg.nrd(&p.pi_d), o.field().embed(r.monomial(-1, 1, 0)));
    assert_eq!((p.signs[0], p.signs[1], p.product_sign), (-1, 1, -1));

    let (o, p) = build(QuatShape::UnitDelta, Kind::First).unwrap();
    assert_eq!(p.delta_d, o.alg.basis(2));
    assert_eq!(o.alg.nrd(&p.pi_d), o.field().embed(r.monomial(1, 2, 0)));
    assert_eq!((p.signs[0], p.signs[1], p.product_sign), (1, -1, -1));

    let (o, p) = build(QuatShape::PiDelta, Kind::First).unwrap();
    assert_eq!((p.pi_d.clone(), p.delta_d.clone()), (o.alg.basis(1), o.alg.basis(2)));
    assert_eq!(o.alg.nrd(&p.pi_d), o.field().embed(r.monomial(-2, 1, 0)));
    assert_eq!((p.signs[0], p.signs[1], p.product_sign), (-1, -1, -1));

    let (o, p) = build(QuatShape::UnitUnit, Kind::First).unwrap();
    assert_eq!(p.pi_d, o.alg.scalar(o.field().embed(r.pi())));
    assert_eq!((p.e0, p.e1), (1, 1));

    assert!(matches!(build(QuatShape::PiDeltaMixed, Kind::First), Err(Error::ShapeUnsupported(_))));
}

#[test]
fn second_kind_combinations() {
    let mut built = 0;
    for spec in table_specs(5) {
        if let Kind::Second(l) = spec.kind {
            let res = build_parameters(&ring(), &spec);
            if l == LambdaShape::W && spec.shape == QuatShape::PiDeltaMixed {
                assert!(matches!(res, Err(Error::CombinationForbidden(_))));
            } else {
                res.unwrap();
                built += 1;
            }
        }
    }
    assert_eq!(built, 14);
}

#[test]
fn second_kind_twisted_algebras() {
    let r = ring();
    let k = |c: i64, a: i32, b: i32| r.monomial(c, a, b);
    // u = w = 2, v = 1
    let cases = [
        (LambdaShape::WPi, QuatShape::UnitPi, (k(2, 0, 0), k(2, 0, 0)), QuatShape::UnitUnit),
        (LambdaShape::WPi, QuatShape::PiDelta, (k(4, 0, 0), k(1, 0, 1)), QuatShape::UnitDelta),
        (LambdaShape::WPi, QuatShape::PiDeltaMixed, (k(2, 0, 0), k(2, 0, 1)), QuatShape::UnitDelta),
        (LambdaShape::WDelta, QuatShape::UnitDelta, (k(2, 0, 0), k(2, 0, 0)), QuatShape::UnitUnit),
        (LambdaShape::WDelta, QuatShape::PiDelta, (k(2, 1, 0), k(2, 0, 0)), QuatShape::UnitPi),
        (LambdaShape::WDelta, QuatShape::PiDeltaMixed, (k(2, 0, 0), k(2, 1, 0)), QuatShape::UnitPi),
    ];
    for (l, d0, (a, b), shape) in cases {
        let (o, p) = build(d0, Kind::Second(l)).unwrap();
        assert_eq!((o.alg.a().a.clone(), o.alg.b().a.clone()), (a, b), "{l:?} {d0:?}");
        assert_eq!(p.shape, shape);
    }
    // lambda = w pi, D0 = (u pi, v delta): i = (1/pi)(i0 sqrt(lambda)) is fixed by sigma
    let (o, _) = build(QuatShape::PiDelta, Kind::Second(LambdaShape::WPi)).unwrap();
    assert_eq!((o.inv.si, o.inv.sj), (1, -1));
}

#[test]
fn maximality_of_first_kind_orders() {
    for shape in [QuatShape::UnitUnit, QuatShape::UnitPi, QuatShape::UnitDelta, QuatShape::PiDelta] {
        let (o, _) = build(shape, Kind::First).unwrap();
        let rep = verify_maximality(&o, shape).unwrap();
        assert!(rep.maximal, "{shape:?}: {rep:?}");
        let rep = verify_maximality(&o.shrunk(), shape).unwrap();
        assert!(!rep.maximal);
    }
    let (o, _) = build(QuatShape::UnitUnit, Kind::First).unwrap();
    assert!(!verify_maximality(&o.shrunk(), QuatShape::UnitUnit).unwrap().primes[0].ramified);
    assert!(matches!(verify_maximality(&o, QuatShape::PiDeltaMixed), Err(Error::ShapeUnsupported(_))));
}

#[test]
fn order_is_closed_under_sums_and_products() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for spec in table_specs(5) {
        let Ok((o, _)) = build_parameters(&ring(), &spec) else { continue };
        for _ in 0..20 {
            let x = random_element(&o, &mut rng, 2);
            let y = random_element(&o, &mut rng, 2);
            assert!(o.contains(&o.alg.add(&x, &y)).unwrap());
            assert!(o.contains(&o.alg.mul(&x, &y)).unwrap());
        }
    }
}

#[test]
fn completion_membership_matches_reduced_norm() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let r = ring();
    for (shape, primes) in [
        (QuatShape::UnitPi, vec![SurfacePrime::Pi, SurfacePrime::Delta]),
        (QuatShape::UnitDelta, vec![SurfacePrime::Pi, SurfacePrime::Delta]),
        (QuatShape::PiDelta, vec![SurfacePrime::Pi, SurfacePrime::Delta]),
    ] {
        let (o, _) = build(shape, Kind::First).unwrap();
        for prime in primes {
            for _ in 0..100 {
                let x = random_element(&o, &mut rng, 1);
                let t = o.field().embed(match prime {
                    SurfacePrime::Pi => r.monomial(1, -1, 0),
                    SurfacePrime::Delta => r.monomial(1, 0, -1),
                });
                let y = o.alg.scale(&t, &x);
                for z in [&x, &y] {
                    assert_eq!(o.contains_at(z, prime).unwrap(), o.nrd_integral_at(z, prime), "{shape:?} {prime:?}");
                }
            }
        }
    }
}

#[test]
fn padic_membership_examples() {
    let k = Padic::new(3, 10).unwrap();
    let alg = QuatAlgebra::new(k.clone(), k.from_int(2), k.from_int(3)).unwrap();
    assert!(membership(&alg, &alg.basis(2)).unwrap());
    let pinv = k.inv(&k.from_int(3)).unwrap();
    assert!(!membership(&alg, &alg.scalar(pinv.clone())).unwrap());
    for n in 1..50i64 {
        let x = alg.elem(k.from_int(n), k.from_int(3 * n + 1), k.zero(), k.zero());
        assert!(membership(&alg, &x).unwrap());
        assert_eq!(membership(&alg, &x).unwrap(), coordinate_membership(&alg, &x).unwrap());
        let y = alg.scale(&pinv, &x);
        assert!(!membership(&alg, &y).unwrap());
        assert_eq!(membership(&alg, &y).unwrap(), coordinate_membership(&alg, &y).unwrap());
    }
}

#[test]
fn decomposition_examples() {
    let (o, p) = build(QuatShape::UnitPi, Kind::First).unwrap();
    let d = decompose_entry(&p.pi_d, &p, &o).unwrap();
    assert_eq!(d.theta, o.alg.one());
    assert_eq!((d.m_prime, d.n_prime), (1, 0));
    let u = o.alg.scalar(o.field().from_int(3));
    let c = o.alg.mul(&o.alg.mul(&p.pi_d, &u), &p.pi_d);
    let d = decompose_entry(&c, &p, &o).unwrap();
    assert_eq!((d.m_prime, d.n_prime, d.r), (0, 0, 1));
    assert!(o.field().is_unit(&o.alg.nrd(&d.theta)));
    let bad = o.alg.add(&o.alg.one(), &o.alg.basis(1));
    assert!(matches!(decompose_entry(&bad, &p, &o), Err(Error::HypothesisViolation(_))));
}

#[test]
fn random_entries_decompose_in_every_supported_shape() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for spec in table_specs(5) {
        let Ok((o, p)) = build_parameters(&ring(), &spec) else { continue };
        for _ in 0..10 {
            let c = random_symmetric_entry(&o, &p, &mut rng);
            decompose_entry(&c, &p, &o).unwrap_or_else(|e| panic!("{spec:?}: {e}"));
        }
    }
}

#[test]
fn six_entries_split_into_four_blocks() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let (o, p) = build(QuatShape::PiDelta, Kind::First).unwrap();
    let entries: Vec<_> = (0..6).map(|_| random_symmetric_entry(&o, &p, &mut rng)).collect();
    let split = quad_split4(&entries, &p, &o).unwrap();
    assert_eq!(split.sizes().0.iter().sum::<usize>(), 6);
    let _ = random_unit(&o, &mut rng, 1);
}

#[test]
fn division_constants_give_maximal_orders() {
    let mut missing = Vec::new();
    for spec in table_specs(5) {
        match AlgebraSpec::division_constants(&ring(), spec.shape, spec.kind) {
            Some(s) => {
                let (o, p) = build_parameters(&ring(), &s).unwrap();
                assert!(verify_maximality(&o, p.shape).unwrap().maximal);
            }
            None => missing.push((spec.kind, spec.shape)),
        }
    }
    // over a finite field every unit becomes a square in F_{p^2}
    assert_eq!(
        missing,
        vec![
            (Kind::Second(LambdaShape::W), QuatShape::UnitPi),
            (Kind::Second(LambdaShape::W), QuatShape::UnitDelta),
            (Kind::Second(LambdaShape::W), QuatShape::PiDeltaMixed),
        ]
    );
}
