use proptest::prelude::*;

use hermiso::algebra::InvAlgebra;
use hermiso::field::{Cdvf, Padic, Ring};
use hermiso::hermitian::{diagonalize::diagonalize_with_basis, HermitianForm};
use hermiso::local::{decider_by_name, is_certified_isotropic, oracle_isotropy, FieldAlg, OracleOutcome};
use hermiso::surface::{MonomialElement, Prime, Symbol2D, SurfaceBase};

fn prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![3u64, 5, 7, 11])
}

fn monomial() -> impl Strategy<Value = MonomialElement> {
    (any::<bool>(), -3i32..4, -3i32..4).prop_map(|(n, a, b)| MonomialElement::new(n, a, b))
}

fn symbol() -> impl Strategy<Value = Symbol2D> {
    (monomial(), monomial()).prop_map(|(l, r)| Symbol2D::new(l, r))
}

proptest! {
    #[test]
    fn padic_digits_round_trip(p in prime(), val in -5i64..5, mut digits in prop::collection::vec(0u32..11, 1..6)) {
        let k = Padic::new(p, 6).unwrap();
        for d in digits.iter_mut() {
            *d %= p as u32;
        }
        digits[0] = digits[0].max(1);
        let x = k.from_digits(val, &digits).unwrap();
        prop_assert_eq!(k.valuation(&x), Some(val));
        prop_assert_eq!(k.unit_digits(&x), digits);
    }

    #[test]
    fn padic_valuation_is_additive(p in prime(), a in 1i64..10_000, b in 1i64..10_000, va in -3i64..3, vb in -3i64..3) {
        let k = Padic::new(p, 8).unwrap();
        let x = k.mul(&k.from_int(a), &k.zpow(&k.uniformizer(), va).unwrap());
        let y = k.mul(&k.from_int(b), &k.zpow(&k.uniformizer(), vb).unwrap());
        let xy = k.mul(&x, &y);
        prop_assert_eq!(k.valuation(&xy), Some(k.valuation(&x).unwrap() + k.valuation(&y).unwrap()));
        let back = k.mul(&xy, &k.inv(&y).unwrap());
        prop_assert!(k.is_zero(&k.sub(&back, &x)));
    }

    #[test]
    fn tame_residue_is_bimultiplicative(p in prime(), f in monomial(), f2 in monomial(), g in monomial()) {
        let s = SurfaceBase::new(p as u32).unwrap();
        for prime in [Prime::Pi, Prime::Delta] {
            let lhs = s.residue_at(&Symbol2D::new(f.mul(&f2), g), prime);
            let rhs = s.residue_at(&Symbol2D::new(f, g), prime).mul(&s.residue_at(&Symbol2D::new(f2, g), prime));
            prop_assert_eq!(lhs, rhs);
            // (f, g) and (g, f) are inverse, hence equal, square classes
            prop_assert_eq!(s.residue_at(&Symbol2D::new(f, g), prime), s.residue_at(&Symbol2D::new(g, f), prime));
        }
    }

    #[test]
    fn classification_keeps_residues(p in prime(), sym in symbol()) {
        let s = SurfaceBase::new(p as u32).unwrap();
        match s.classify_quaternion(&sym) {
            Ok((shape, rep)) => {
                for prime in [Prime::Pi, Prime::Delta] {
                    prop_assert_eq!(s.residue_at(&rep, prime), s.residue_at(&sym, prime));
                }
                prop_assert_eq!(s.classify_quaternion(&sym.swap()).unwrap().0, shape);
                prop_assert_eq!(s.classify_quaternion(&rep).unwrap(), (shape, rep));
            }
            Err(_) => prop_assert!(s.classify_quaternion(&sym.swap()).is_err()),
        }
    }

    #[test]
    fn diagonal_basis_is_a_congruence(p in prime(), entries in prop::collection::vec(-40i64..40, 6)) {
        let k = Padic::new(p, 10).unwrap();
        let a = FieldAlg::new(k.clone(), false);
        let e = |i: usize| k.from_int(entries[i]);
        let gram = vec![
            vec![e(0), e(1), e(2)],
            vec![e(1), e(3), e(4)],
            vec![e(2), e(4), e(5)],
        ];
        let h = HermitianForm::from_gram(a.clone(), 1, gram).unwrap();
        if let Ok((d, x)) = diagonalize_with_basis(&h) {
            prop_assert!(d.is_diagonal());
            let back = h.congruence(&x);
            for i in 0..3 {
                for j in 0..3 {
                    prop_assert!(a.is_zero(&a.sub(&back.gram()[i][j], &d.gram()[i][j])));
                }
            }
        }
    }

    #[test]
    fn residue_decider_matches_digit_search(
        p in prop::sample::select(vec![3u64, 5, 7]),
        units in prop::collection::vec(1i64..50, 3),
        vals in prop::collection::vec(0i64..2, 3),
    ) {
        let k = Padic::new(p, 12).unwrap();
        let a = FieldAlg::new(k.clone(), false);
        let diag: Vec<_> = units
            .iter()
            .zip(&vals)
            .map(|(&u, &v)| {
                let u = if u % p as i64 == 0 { u + 1 } else { u };
                k.elem(v, u)
            })
            .collect();
        let h = HermitianForm::diag(a.clone(), 1, diag).unwrap();
        let verdict = decider_by_name("residue").unwrap().decide(&h).unwrap();
        if let Some(w) = &verdict.witness {
            prop_assert!(is_certified_isotropic(&h, w));
        }
        match oracle_isotropy(&h, 4).unwrap() {
            OracleOutcome::Isotropic(_) => prop_assert!(verdict.isotropic),
            OracleOutcome::Anisotropic => prop_assert!(!verdict.isotropic),
            OracleOutcome::Undecided => {}
        }
    }
}
