//! Seeded random inputs shared by the suites.

use rand::Rng;

use crate::algebra::InvAlgebra;
use crate::field::finite::least_nonresidue;
use crate::field::padic::PadicElem;
use crate::field::{Padic, Ring};
use crate::local::{LocalAlgebra, QuatLocal};
use crate::quaternion::{Involution, QuatAlgebra, QuatElem};

/// `+-p^k u` with `0 <= k <= max_val` and `u` a random unit below 10^4.
pub fn padic_scalar<G: Rng>(k: &Padic, rng: &mut G, max_val: u32) -> PadicElem {
    let p = k.from_int(k.p() as i64);
    let mut u = rng.gen_range(1..10_000i64);
    while u % k.p() as i64 == 0 {
        u += 1;
    }
    let s = if rng.gen_bool(0.5) { -1 } else { 1 };
    k.mul(&k.from_int(s * u), &k.pow(&p, rng.gen_range(0..=max_val) as u64))
}

/// The division algebra `(u, p)` over `Q_p`, `u` the least non-residue.
pub fn up_algebra(p: u64, prec: u32, inv: Involution<PadicElem>) -> QuatLocal<Padic> {
    let k = Padic::new(p, prec).expect("supported prime");
    let u = least_nonresidue(p as u32) as i64;
    let q = QuatAlgebra::new(k.clone(), k.from_int(u), k.from_int(p as i64)).expect("nonzero constants");
    QuatLocal::new(q, inv).expect("(u, p) is division")
}

/// `x + eps sigma(x)` for random `x`, retried until invertible.
pub fn hermitian_entry<G: Rng>(alg: &QuatLocal<Padic>, eps: i8, rng: &mut G) -> QuatElem<PadicElem> {
    let q = alg.algebra();
    let k = q.ring();
    loop {
        let x: QuatElem<PadicElem> =
            std::array::from_fn(|_| if rng.gen_bool(0.6) { padic_scalar(k, rng, 1) } else { k.zero() });
        let s = alg.sigma(&x);
        let c = if eps > 0 { q.add(&x, &s) } else { q.sub(&x, &s) };
        if alg.inv(&c).is_some() && alg.wval(&c).is_some() {
            return c;
        }
    }
}

/// The first-kind involutions paired with a sign admitting nonzero
/// `eps`-hermitian elements of every kind.
pub fn involutions() -> Vec<(&'static str, Involution<PadicElem>, i8)> {
    vec![
        ("canonical", Involution::canonical(), -1),
        ("canonical", Involution::canonical(), 1),
        ("orthogonal-i", Involution::orthogonal_i(), 1),
        ("orthogonal-i", Involution::orthogonal_i(), -1),
        ("orthogonal-j", Involution::orthogonal_j(), 1),
        ("orthogonal-j", Involution::orthogonal_j(), -1),
    ]
}
