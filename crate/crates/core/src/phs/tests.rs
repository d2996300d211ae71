use super::*;
use crate::algebra::FieldInv;
use crate::field::{FiniteField, Ring};
use crate::hermitian::finite::FiniteForm;
use crate::hermitian::HermitianForm;

fn inv(index: u32, witt: u32, hyperbolic: bool) -> LocalInvariants {
    LocalInvariants { algebra_index: index, witt_reduced_dim: witt, hyperbolic, split: index == 1, disc_trivial: true }
}

fn req(indices: &[u32], component: Component, rdim: u32, involution: InvolutionType) -> FlagRequest {
    FlagRequest {
        indices: indices.to_vec(),
        component,
        context: FormContext { rdim, involution, disc_trivial: true },
        allow_boundary: false,
    }
}

#[test]
fn worked_examples() {
    let sp = InvolutionType::Symplectic;
    assert!(flag_nonempty(&req(&[2, 4], Component::None, 8, sp), &inv(2, 4, true)).unwrap());
    assert!(!flag_nonempty(&req(&[1, 2], Component::None, 8, sp), &inv(2, 4, true)).unwrap());
    assert!(!flag_nonempty(&req(&[1], Component::None, 4, sp), &inv(1, 0, false)).unwrap());
}

#[test]
fn component_examples() {
    assert_eq!(pm_component_verdict(&inv(1, 2, true)).unwrap(), (true, true));
    let (a, b) = pm_component_verdict(&inv(2, 2, true)).unwrap();
    assert!(a ^ b);
    assert_eq!(pm_component_verdict(&inv(1, 0, false)).unwrap(), (false, false));
    let mut nd = inv(1, 2, true);
    nd.disc_trivial = false;
    assert!(matches!(pm_component_verdict(&nd), Err(Error::WrongCaseShape(_))));
}

#[test]
fn validation_follows_the_classification() {
    use InvolutionType::*;
    let bad = |r: FlagRequest| matches!(validate(&r), Err(Error::MalformedRequest(_)));
    assert!(bad(req(&[2, 1], Component::None, 8, Symplectic)));
    assert!(bad(req(&[0], Component::None, 8, Symplectic)));
    assert!(bad(req(&[5], Component::None, 8, Symplectic)));
    assert!(bad(req(&[4], Component::None, 8, Orthogonal)));
    assert!(!bad(req(&[3], Component::None, 8, Orthogonal)));
    assert!(!bad(req(&[1, 4], Component::Plus, 8, Orthogonal)));
    assert!(bad(req(&[3, 4], Component::Plus, 8, Orthogonal)));
    assert!(bad(req(&[3], Component::Plus, 8, Orthogonal)));
    assert!(bad(req(&[4], Component::Minus, 8, Symplectic)));
    let mut nd = req(&[4], Component::Plus, 8, Orthogonal);
    nd.context.disc_trivial = false;
    assert!(bad(nd));
    assert!(!bad(req(&[3], Component::None, 7, OddOrthogonal)));
    // unitary, rdim 6 so n = 5: literal bound n_r < 2
    assert!(!bad(req(&[1], Component::None, 6, Unitary)));
    let mut r = req(&[2], Component::None, 6, Unitary);
    assert!(bad(r.clone()));
    r.allow_boundary = true;
    assert_eq!(validate(&r).unwrap(), Validation { boundary: true });
    r.indices = vec![3];
    assert_eq!(validate(&r).unwrap(), Validation { boundary: true });
    r.indices = vec![4];
    assert!(bad(r));
}

#[test]
fn inconsistent_invariants_are_rejected() {
    let r = req(&[1], Component::None, 8, InvolutionType::Symplectic);
    assert!(flag_nonempty(&r, &inv(2, 3, false)).is_err());
    assert!(flag_nonempty(&r, &inv(1, 3, true)).is_err());
    assert!(flag_nonempty(&r, &inv(3, 3, false)).is_err());
}

fn prime(p: u32) -> FiniteField {
    FiniteField::prime(p)
}

fn quadratic(f: FiniteField, entries: &[i64]) -> FiniteForm {
    HermitianForm::diag(FieldInv::finite(f, false), 1, entries.iter().map(|&e| f.elem(e)).collect()).unwrap()
}

fn unitary(f: FiniteField, rank: usize) -> FiniteForm {
    HermitianForm::diag(FieldInv::finite(f, true), 1, vec![f.one(); rank]).unwrap()
}

fn symplectic(f: FiniteField, planes: usize) -> FiniteForm {
    let h = HermitianForm::hyperbolic(FieldInv::finite(f, false), -1).unwrap();
    let mut out = h.clone();
    for _ in 1..planes {
        out = out.orthogonal_sum(&h).unwrap();
    }
    out
}

#[test]
fn enumerator_examples() {
    let f3 = prime(3);
    let hyp = quadratic(f3, &[1, -1, 1, -1]);
    assert!(enumerate_flags(&hyp, &[1, 2], Component::None).unwrap().count > 0);
    let f5 = prime(5);
    let u = f5.nonresidue() as i64;
    assert_eq!(enumerate_flags(&quadratic(f5, &[1, -u]), &[1], Component::None).unwrap().count, 0);
    let f9 = FiniteField::quadratic(3);
    assert!(enumerate_flags(&unitary(f9, 3), &[1], Component::None).unwrap().count > 0);
}

#[test]
fn hyperbolic_plane_counts() {
    // isotropic lines of a split quadratic plane: exactly two; of a split
    // rank-4 form over F_q: (q + 1)^2, two families of q + 1 planes each
    let f3 = prime(3);
    assert_eq!(enumerate_flags(&quadratic(f3, &[1, -1]), &[1], Component::None).unwrap().count, 2);
    let h = quadratic(f3, &[1, -1, 1, -1]);
    assert_eq!(enumerate_flags(&h, &[1], Component::None).unwrap().count, 16);
    assert_eq!(enumerate_flags(&h, &[2], Component::None).unwrap().count, 8);
    assert_eq!(enumerate_flags(&h, &[2], Component::Plus).unwrap().count, 4);
    assert_eq!(enumerate_flags(&h, &[2], Component::Minus).unwrap().count, 4);
    // each isotropic line lies in one plane of each family
    assert_eq!(enumerate_flags(&h, &[1, 2], Component::Plus).unwrap().count, 16);
    assert_eq!(enumerate_flags(&h, &[1, 2], Component::None).unwrap().count, 32);
}

#[test]
fn search_limit() {
    let f = FiniteField::quadratic(5);
    let big = unitary(f, 9);
    assert!(matches!(enumerate_flags(&big, &[4], Component::None), Err(Error::SearchTooLarge(_))));
}

/// All diagonal forms with entries in {1, u} (every isometry class), the
/// unitary forms and the symplectic ones, for ranks 1..=max.
pub(crate) fn small_forms(max: usize) -> Vec<FiniteForm> {
    let mut out = Vec::new();
    for p in [3u32, 5] {
        let f = prime(p);
        let u = f.nonresidue() as i64;
        for rank in 1..=max {
            for mask in 0..(1u32 << rank) {
                let e: Vec<i64> = (0..rank).map(|k| if mask >> k & 1 == 1 { u } else { 1 }).collect();
                out.push(quadratic(f, &e));
            }
            out.push(unitary(FiniteField::quadratic(p), rank));
        }
        for planes in 1..=max / 2 {
            out.push(symplectic(f, planes));
        }
    }
    out
}

/// Strictly increasing sequences in `1..=top`.
pub(crate) fn chains(top: u32) -> Vec<Vec<u32>> {
    (1u32..(1 << top)).map(|m| (1..=top).filter(|k| m >> (k - 1) & 1 == 1).collect()).collect()
}

pub(crate) fn oracle_agreement(h: &FiniteForm) -> usize {
    let (ctx, li) = invariants_of_finite_form(h).unwrap();
    let mut checked = 0;
    for indices in chains(h.rank() as u32) {
        for component in [Component::None, Component::Plus, Component::Minus] {
            for allow_boundary in [false, true] {
                let r = FlagRequest { indices: indices.clone(), component, context: ctx, allow_boundary };
                if validate(&r).is_err() {
                    continue;
                }
                let verdict = flag_nonempty(&r, &li).unwrap();
                let count = enumerate_flags(h, &indices, component).unwrap().count;
                assert_eq!(verdict, count > 0, "{ctx:?} {li:?} {indices:?} {component:?}: count {count}");
                checked += 1;
            }
        }
    }
    checked
}

#[test]
fn oracle_equivalence_small_forms() {
    let mut total = 0;
    for h in small_forms(4) {
        total += oracle_agreement(&h);
    }
    // unitary rank 5: the literal bound admits (1)
    total += oracle_agreement(&unitary(FiniteField::quadratic(3), 5));
    assert!(total > 200, "only {total} requests checked");
}

#[test]
fn both_components_exactly_for_hyperbolic_split_forms() {
    for h in small_forms(4) {
        let (ctx, li) = invariants_of_finite_form(&h).unwrap();
        if ctx.involution != InvolutionType::Orthogonal || !ctx.disc_trivial {
            continue;
        }
        let n = ctx.rdim / 2;
        let plus = enumerate_flags(&h, &[n], Component::Plus).unwrap().count > 0;
        let minus = enumerate_flags(&h, &[n], Component::Minus).unwrap().count > 0;
        assert_eq!(plus && minus, li.split && li.hyperbolic);
        assert_eq!((plus, minus), pm_component_verdict(&li).unwrap());
    }
}

#[test]
fn monotone_in_the_top_index() {
    for index in [1u32, 2] {
        for witt in (0..=8).filter(|w| w % index == 0) {
            let li = LocalInvariants { algebra_index: index, witt_reduced_dim: witt, hyperbolic: witt == 8, split: index == 1, disc_trivial: false };
            for i in chains(8) {
                let r = req(&i, Component::None, 16, InvolutionType::Symplectic);
                if flag_nonempty(&r, &li).unwrap() {
                    continue;
                }
                for extra in (*i.last().unwrap() + 1)..=8 {
                    let mut j = i.clone();
                    j.push(extra);
                    let r2 = req(&j, Component::None, 16, InvolutionType::Symplectic);
                    assert!(!flag_nonempty(&r2, &li).unwrap(), "{i:?} -> {j:?}");
                }
            }
        }
    }
}

#[test]
fn morita_invariance() {
    // A = M_m(D) with h of rank k has the same reduced dimension and Witt
    // reduced dimension as its reduction (D, h_0) of rank m k.
    for m in 1..=3u32 {
        for k in 1..=3u32 {
            let rdim = 2 * m * k;
            let rdim0 = 2 * (m * k);
            assert_eq!(rdim, rdim0);
            for witt in (0..=rdim / 2).step_by(2) {
                let li = LocalInvariants { algebra_index: 2, witt_reduced_dim: witt, hyperbolic: 2 * witt == rdim, split: false, disc_trivial: false };
                for i in chains(rdim / 2) {
                    let a = flag_nonempty(&req(&i, Component::None, rdim, InvolutionType::Symplectic), &li).unwrap();
                    let b = flag_nonempty(&req(&i, Component::None, rdim0, InvolutionType::Symplectic), &li).unwrap();
                    assert_eq!(a, b);
                }
            }
        }
    }
}

#[test]
fn serde_component_names() {
    let r: FlagRequest = serde_json::from_str(r#"{"indices":[1,2],"component":"+","context":{"rdim":4,"involution":"orthogonal","disc_trivial":true}}"#).unwrap();
    assert_eq!(r.component, Component::Plus);
    assert!(!r.allow_boundary);
}
