//! Exact symbolic arithmetic over the surface germ `R = F_p[[pi, delta]]`:
//! Laurent polynomials in `pi`, `delta` and the quadratic extension
//! `L = K(sqrt(lambda))` of the fraction field.

mod laurent2;
mod surface;

pub use laurent2::{Laurent2, Laurent2Ring};
pub use surface::{LambdaShape, SElem, SurfaceField};
