//! Square classes, Hilbert symbols and Springer residue forms over a CDVF.

use super::{Cdvf, Fe, Ring};
use crate::error::Result;

/// Class of `x` in `K^*/K^{*2}`: parity of the valuation and whether the
/// unit part has square residue.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SquareClass {
    pub odd_valuation: bool,
    pub square_unit: bool,
}

pub fn square_class<C: Cdvf>(k: &C, x: &C::Elem) -> Result<SquareClass> {
    let v = k.certified_valuation(x)?;
    let r = k.unit_residue(x)?;
    Ok(SquareClass {
        odd_valuation: v.rem_euclid(2) == 1,
        square_unit: k.residue_field().is_square(&r),
    })
}

pub fn is_square<C: Cdvf>(k: &C, x: &C::Elem) -> Result<bool> {
    let c = square_class(k, x)?;
    Ok(!c.odd_valuation && c.square_unit)
}

/// Representatives `1, u, π, uπ` of the four square classes, `u` a lift of
/// the least residue non-square.
pub fn square_class_representatives<C: Cdvf>(k: &C) -> Vec<C::Elem> {
    let rf = k.residue_field();
    let u = k.lift(&rf.elem(rf.nonresidue() as i64));
    let u = if rf.degree() == 2 { k.lift(&rf.generator()) } else { u };
    let pi = k.uniformizer();
    vec![k.one(), u.clone(), pi.clone(), k.mul(&u, &pi)]
}

/// Tame Hilbert symbol `(a, b)` in `{1, -1}`.
pub fn hilbert_symbol<C: Cdvf>(k: &C, a: &C::Elem, b: &C::Elem) -> Result<i32> {
    let (va, ua) = k.unit_part(a)?;
    let (vb, ub) = k.unit_part(b)?;
    let rf = k.residue_field();
    let ra = k.residue(&ua)?;
    let rb = k.residue(&ub)?;
    // (-1)^{va vb} ua^{vb} ub^{-va}
    let mut t = rf.one();
    if (va * vb).rem_euclid(2) == 1 {
        t = rf.neg(&t);
    }
    if vb.rem_euclid(2) == 1 {
        t = rf.mul(&t, &ra);
    }
    if va.rem_euclid(2) == 1 {
        t = rf.mul(&t, &rb);
    }
    Ok(rf.quadratic_character(&t))
}

/// First and second residue forms of a diagonal quadratic form.
pub fn springer_residues<C: Cdvf>(k: &C, diag: &[C::Elem]) -> Result<(Vec<Fe>, Vec<Fe>)> {
    let mut first = Vec::new();
    let mut second = Vec::new();
    for a in diag {
        let v = k.certified_valuation(a)?;
        let r = k.unit_residue(a)?;
        if v.rem_euclid(2) == 0 {
            first.push(r);
        } else {
            second.push(r);
        }
    }
    Ok((first, second))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Padic;

    #[test]
    fn hilbert_symbol_matches_norm_search() {
        // (a, b) = 1 iff a x^2 + b y^2 = z^2 has a nonzero solution; search
        // residues mod p^2 with one coordinate a unit.
        let p = 5u64;
        let k = Padic::new(p, 6).unwrap();
        let vals = [1i64, 2, 5, 10, 3, 15];
        let m = (p * p) as i64;
        for &a in &vals {
            for &b in &vals {
                let sym = hilbert_symbol(&k, &k.from_int(a), &k.from_int(b)).unwrap();
                let mut found = false;
                'outer: for x in 0..25 {
                    for y in 0..25 {
                        for z in 0..25 {
                            if x % 5 == 0 && y % 5 == 0 && z % 5 == 0 {
                                continue;
                            }
                            if (a * x * x + b * y * y - z * z).rem_euclid(m) == 0 {
                                found = true;
                                break 'outer;
                            }
                        }
                    }
                }
                assert_eq!(sym == 1, found, "({a},{b})");
            }
        }
    }

    #[test]
    fn classes_of_representatives_are_distinct() {
        let k = Padic::new(7, 6).unwrap();
        let reps = square_class_representatives(&k);
        let cls: Vec<_> = reps.iter().map(|r| square_class(&k, r).unwrap()).collect();
        for i in 0..4 {
            for j in 0..i {
                assert_ne!(cls[i], cls[j]);
            }
        }
        assert!(is_square(&k, &k.from_int(2)).unwrap());
        assert!(!is_square(&k, &k.from_int(3)).unwrap());
    }
}
