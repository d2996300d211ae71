//! Isotropy over finite fields, by exhaustion or by the classical criteria.

use super::{diagonalize, HermitianForm};
use crate::algebra::{FieldInv, InvAlgebra};
use crate::error::{Error, Result};
use crate::field::{Fe, FiniteField, Ring};

pub type FiniteForm = HermitianForm<FieldInv<FiniteField>>;

/// Largest search space (`q^rank`) the exhaustive strategy accepts.
pub const EXHAUSTIVE_LIMIT: u128 = 10_000_000;

pub trait FiniteIsotropy: Send + Sync {
    fn name(&self) -> &'static str;
    fn is_isotropic(&self, h: &FiniteForm) -> Result<bool>;
}

pub struct Exhaustive;
pub struct Classical;

impl FiniteIsotropy for Exhaustive {
    fn name(&self) -> &'static str {
        "exhaustive"
    }
    fn is_isotropic(&self, h: &FiniteForm) -> Result<bool> {
        Ok(find_isotropic_vector_finite(h)?.is_some())
    }
}

impl FiniteIsotropy for Classical {
    fn name(&self) -> &'static str {
        "classical"
    }
    fn is_isotropic(&self, h: &FiniteForm) -> Result<bool> {
        let n = h.rank();
        if n == 0 {
            return Ok(false);
        }
        let conj = h.alg.conj;
        if !conj && h.eps < 0 {
            // alternating: every vector is isotropic
            return Ok(true);
        }
        if conj {
            return Ok(n >= 2);
        }
        if n >= 3 {
            return Ok(true);
        }
        if n == 1 {
            return Ok(false);
        }
        let d = diagonalize(h)?;
        let f = h.alg.ring;
        let e = d.diagonal();
        Ok(f.is_square(&f.neg(&f.mul(&e[0], &e[1]))))
    }
}

pub fn finite_strategies() -> Vec<Box<dyn FiniteIsotropy>> {
    vec![Box::new(Exhaustive), Box::new(Classical)]
}

/// Exhaustive when `q^rank` is small, classical otherwise.
pub fn is_isotropic_finite(h: &FiniteForm) -> Result<bool> {
    if search_size(h) <= EXHAUSTIVE_LIMIT {
        Exhaustive.is_isotropic(h)
    } else {
        Classical.is_isotropic(h)
    }
}

fn search_size(h: &FiniteForm) -> u128 {
    (h.alg.ring.order() as u128).saturating_pow(h.rank() as u32)
}

/// A nonzero vector with `h(x, x) = 0`, searching one representative per
/// line (first nonzero coordinate equal to one).
pub fn find_isotropic_vector_finite(h: &FiniteForm) -> Result<Option<Vec<Fe>>> {
    let size = search_size(h);
    if size > EXHAUSTIVE_LIMIT {
        return Err(Error::SearchTooLarge(size));
    }
    let f = h.alg.ring;
    let els: Vec<Fe> = f.elements().collect();
    let q = els.len();
    let n = h.rank();
    for lead in 0..n {
        let tail = n - lead - 1;
        let mut idx = vec![0usize; tail];
        loop {
            let mut x = vec![f.zero(); n];
            x[lead] = f.one();
            for (t, &i) in idx.iter().enumerate() {
                x[lead + 1 + t] = els[i];
            }
            if h.alg.is_zero(&h.value(&x)) {
                return Ok(Some(x));
            }
            let mut pos = 0;
            while pos < tail {
                idx[pos] += 1;
                if idx[pos] < q {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
            if pos == tail {
                break;
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quad(p: u32, d: &[i64]) -> FiniteForm {
        let f = FiniteField::prime(p);
        HermitianForm::diag(FieldInv::finite(f, false), 1, d.iter().map(|&c| f.elem(c)).collect()).unwrap()
    }

    #[test]
    fn small_examples() {
        assert!(is_isotropic_finite(&quad(5, &[1, -1])).unwrap());
        // -3 = 2^2 mod 7
        assert!(is_isotropic_finite(&quad(7, &[1, 3])).unwrap());
        assert!(!is_isotropic_finite(&quad(7, &[1, 1])).unwrap());
        assert!(!is_isotropic_finite(&quad(7, &[2])).unwrap());
    }

    #[test]
    fn every_ternary_form_is_isotropic() {
        for p in [3u32, 5, 7, 11, 13] {
            let f = FiniteField::prime(p);
            let reps = [1i64, f.nonresidue() as i64];
            for &a in &reps {
                for &b in &reps {
                    for &c in &reps {
                        assert!(Exhaustive.is_isotropic(&quad(p, &[a, b, c])).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn strategies_agree_on_small_forms() {
        for p in [3u32, 5] {
            for conj in [false, true] {
                let f = if conj { FiniteField::quadratic(p) } else { FiniteField::prime(p) };
                let alg = FieldInv::finite(f, conj);
                let units: Vec<Fe> = f.prime_field().nonzero_elements().map(|x| Fe::new(x.a, 0)).collect();
                for n in 1..=3usize {
                    let mut idx = vec![0usize; n];
                    loop {
                        let d: Vec<Fe> = idx.iter().map(|&i| units[i]).collect();
                        let h = HermitianForm::diag(alg.clone(), 1, d).unwrap();
                        let e = Exhaustive.is_isotropic(&h).unwrap();
                        let c = Classical.is_isotropic(&h).unwrap();
                        assert_eq!(e, c, "p={p} conj={conj} {idx:?}");
                        let mut k = 0;
                        while k < n {
                            idx[k] += 1;
                            if idx[k] < units.len() {
                                break;
                            }
                            idx[k] = 0;
                            k += 1;
                        }
                        if k == n {
                            break;
                        }
                    }
                }
            }
        }
    }
}
