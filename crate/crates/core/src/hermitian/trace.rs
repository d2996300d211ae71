//! Trace forms and rescaling of skew-hermitian forms.

use super::finite::FiniteForm;
use super::{diagonalize, HermitianForm};
use crate::algebra::{FieldInv, InvAlgebra};
use crate::error::{Error, Result};
use crate::field::{Cdvf, Fe, PureExt, Ring};
use crate::quaternion::{Involution, Quat};

fn require_hermitian<A: InvAlgebra>(h: &HermitianForm<A>) -> Result<HermitianForm<A>> {
    if h.eps != 1 {
        return Err(Error::UnsupportedInvolution("trace form needs eps = 1; rescale first".into()));
    }
    if h.is_diagonal() {
        Ok(h.clone())
    } else {
        diagonalize(h)
    }
}

/// `h(x, x)` on `F_{p^2}^n = F_p^{2n}` for a hermitian form over
/// `F_{p^2}/F_p`: `<c>` becomes `<c, -c u>` with `F_{p^2} = F_p(sqrt u)`.
pub fn trace_form_finite(h: &FiniteForm) -> Result<FiniteForm> {
    if !h.alg.conj {
        return Err(Error::UnsupportedInvolution("trace form needs the Frobenius involution".into()));
    }
    let d = require_hermitian(h)?;
    let f = h.alg.ring;
    let k = f.prime_field();
    let u = k.elem(f.nonresidue() as i64);
    let mut out = Vec::new();
    for c in d.diagonal() {
        let c = Fe::new(c.a, 0);
        out.push(c);
        out.push(k.neg(&k.mul(&c, &u)));
    }
    HermitianForm::diag(FieldInv::finite(k, false), 1, out)
}

/// The same over a quadratic extension `L = K(sqrt lambda)` of a CDVF:
/// `<c>` becomes `<c, -c lambda>`.
pub fn trace_form_ext<C: Cdvf>(h: &HermitianForm<FieldInv<PureExt<C>>>) -> Result<Vec<C::Elem>> {
    let l = &h.alg.ring;
    if !h.alg.conj || l.degree() != 2 {
        return Err(Error::UnsupportedInvolution("trace form needs a quadratic extension with conjugation".into()));
    }
    let d = require_hermitian(h)?;
    let k = l.base();
    let lambda = l.radicand();
    let mut out = Vec::new();
    for c in d.diagonal() {
        out.push(c[0].clone());
        out.push(k.neg(&k.mul(&c[0], lambda)));
    }
    Ok(out)
}

/// For `(D, canonical)` with `eps = 1` every entry is central and `<c>`
/// becomes `c <1, -a, -b, ab>`.
pub fn trace_form_quat<R: Ring>(h: &HermitianForm<Quat<R>>) -> Result<Vec<R::Elem>> {
    if h.alg.inv != Involution::canonical() {
        return Err(Error::UnsupportedInvolution("trace form over a quaternion algebra needs the canonical involution".into()));
    }
    let d = require_hermitian(h)?;
    let q = &h.alg.alg;
    let r = q.ring();
    let mut out = Vec::new();
    for c in d.diagonal() {
        for k in 0..4 {
            let s = q.basis_square(k);
            out.push(r.mul(&c[0], &if k == 0 { s } else { r.neg(&s) }));
        }
    }
    Ok(out)
}

fn is_central<A: InvAlgebra>(alg: &A, mu: &A::Elem) -> bool {
    alg.sample_units()
        .iter()
        .all(|x| alg.is_zero(&alg.sub(&alg.mul(mu, x), &alg.mul(x, mu))))
}

/// A nonzero central `mu` with `sigma(mu) = -mu`.
pub fn find_mu<A: InvAlgebra>(alg: &A) -> Result<A::Elem> {
    for x in alg.sample_units() {
        let mu = alg.sub(&x, &alg.sigma(&x));
        if !alg.is_zero(&mu) && alg.inv(&mu).is_some() && is_central(alg, &mu) {
            return Ok(mu);
        }
    }
    Err(Error::NoSuchMu)
}

/// `mu^{-1} h`: a skew-hermitian form becomes hermitian.
pub fn scale_to_hermitian<A: InvAlgebra>(h: &HermitianForm<A>, mu: &A::Elem) -> Result<HermitianForm<A>> {
    let a = &h.alg;
    if h.eps != -1 {
        return Err(Error::MalformedRequest("scale_to_hermitian expects a skew-hermitian form".into()));
    }
    if a.is_zero(mu) || !a.is_zero(&a.add(&a.sigma(mu), mu)) || !is_central(a, mu) {
        return Err(Error::NoSuchMu);
    }
    let mu_inv = a.inv(mu).ok_or(Error::NoSuchMu)?;
    Ok(h.scale_central(&mu_inv, 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FiniteField, Padic};
    use crate::hermitian::is_isotropic_finite;
    use rand::{Rng as _, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn trace_of_unit_form_over_extension() {
        let k = Padic::new(5, 8).unwrap();
        let l = PureExt::new(k.clone(), 2, k.from_int(5)).unwrap();
        let h = HermitianForm::diag(FieldInv::new(l.clone(), true), 1, vec![l.one()]).unwrap();
        let q = trace_form_ext(&h).unwrap();
        assert_eq!(q, vec![k.one(), k.neg(&k.from_int(5))]);
        let h3 = HermitianForm::diag(FieldInv::new(l.clone(), true), 1, vec![l.from_int(3)]).unwrap();
        let q3 = trace_form_ext(&h3).unwrap();
        assert_eq!(q3, vec![k.from_int(3), k.neg(&k.from_int(15))]);
    }

    #[test]
    fn mu_is_sqrt_lambda() {
        let k = Padic::new(5, 8).unwrap();
        let l = PureExt::new(k.clone(), 2, k.from_int(5)).unwrap();
        let alg = FieldInv::new(l.clone(), true).with_samples(vec![l.theta()]);
        let h = HermitianForm::diag(alg.clone(), -1, vec![l.theta()]).unwrap();
        let s = scale_to_hermitian(&h, &l.theta()).unwrap();
        assert_eq!(s.eps, 1);
        assert!(alg.is_zero(&alg.sub(&s.diagonal()[0], &l.one())));
        let back = s.scale_central(&l.theta(), -1);
        assert!(alg.is_zero(&alg.sub(&back.diagonal()[0], &l.theta())));
        assert!(find_mu(&FieldInv::identity(k)).is_err());
    }

    #[test]
    fn isotropy_preserved_by_trace_and_scaling() {
        for p in [3u32, 5] {
            let f = FiniteField::quadratic(p);
            let alg = FieldInv::finite(f, true);
            let mu = find_mu(&alg).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(p as u64);
            for _ in 0..50 {
                let n = rng.gen_range(1..=3);
                let d: Vec<Fe> = (0..n).map(|_| f.mul(&mu, &Fe::new(rng.gen_range(1..p), 0))).collect();
                let h = HermitianForm::diag(alg.clone(), -1, d).unwrap();
                let s = scale_to_hermitian(&h, &mu).unwrap();
                let lhs = crate::hermitian::find_isotropic_vector_finite(&h).unwrap().is_some();
                assert_eq!(lhs, is_isotropic_finite(&s).unwrap());
                let t = trace_form_finite(&s).unwrap();
                assert_eq!(t.rank(), 2 * n);
                assert_eq!(lhs, crate::hermitian::find_isotropic_vector_finite(&t).unwrap().is_some());
            }
        }
    }
}
