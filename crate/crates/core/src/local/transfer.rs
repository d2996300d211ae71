//! Isotropy under odd-degree totally ramified extensions `M = L(t^{1/e})`.

use super::decider::{IsotropyDecider, ResidueDecider};
use super::{FieldAlg, QuatLocal};
use crate::error::{Error, Result};
use crate::field::{Cdvf, PureExt};
use crate::hermitian::HermitianForm;
use crate::quaternion::{Involution, QuatAlgebra, QuatElem};

fn check_degree(e: usize) -> Result<()> {
    if e == 0 || e % 2 == 0 {
        return Err(Error::EvenDegree(e as u32));
    }
    Ok(())
}

fn extension<C: Cdvf>(k: &C, e: usize) -> Result<PureExt<C>> {
    PureExt::new(k.clone(), e, k.uniformizer())
}

fn embed_q<C: Cdvf>(m: &PureExt<C>, x: &QuatElem<C::Elem>) -> QuatElem<Vec<C::Elem>> {
    std::array::from_fn(|k| m.embed(&x[k]))
}

/// Verdicts over `L` and over `M`, for a hermitian form over a quaternion
/// division algebra with a first-kind involution.
pub fn odd_transfer_check<C: Cdvf>(h: &HermitianForm<QuatLocal<C>>, e: usize) -> Result<(bool, bool)> {
    check_degree(e)?;
    let verdict_l = ResidueDecider.decide(h)?.isotropic;
    if e == 1 {
        return Ok((verdict_l, verdict_l));
    }
    let q = h.alg.algebra();
    if !h.alg.quat.inv.is_first_kind() {
        return Err(Error::UnsupportedInvolution("odd transfer is implemented for first-kind involutions".into()));
    }
    let m = extension(q.ring(), e)?;
    let qm = QuatAlgebra::new(m.clone(), m.embed(q.a()), m.embed(q.b()))?;
    let inv = &h.alg.quat.inv;
    let inv_m = Involution {
        si: inv.si,
        sj: inv.sj,
        second_kind: false,
        twist: inv.twist.as_ref().map(|(s, t)| (embed_q(&m, s), embed_q(&m, t))),
    };
    let alg_m = QuatLocal::new(qm, inv_m)?;
    let gram = h.gram().iter().map(|r| r.iter().map(|c| embed_q(&m, c)).collect()).collect();
    let hm = HermitianForm::from_gram(alg_m, h.eps, gram)?;
    let verdict_m = ResidueDecider.decide(&hm)?.isotropic;
    Ok((verdict_l, verdict_m))
}

/// The same for forms over the field itself (quadratic forms, or
/// hermitian forms over a quadratic extension when `conj` is set).
pub fn odd_transfer_check_field<C: Cdvf>(h: &HermitianForm<FieldAlg<C>>, e: usize) -> Result<(bool, bool)> {
    check_degree(e)?;
    let verdict_l = ResidueDecider.decide(h)?.isotropic;
    if e == 1 {
        return Ok((verdict_l, verdict_l));
    }
    if h.alg.inner.conj {
        return Err(Error::UnsupportedInvolution("odd transfer over a field is implemented for the identity".into()));
    }
    let k = h.alg.field();
    let m = extension(k, e)?;
    let gram = h.gram().iter().map(|r| r.iter().map(|c| m.embed(c)).collect()).collect();
    let hm = HermitianForm::from_gram(FieldAlg::new(m, false), h.eps, gram)?;
    let verdict_m = ResidueDecider.decide(&hm)?.isotropic;
    Ok((verdict_l, verdict_m))
}

