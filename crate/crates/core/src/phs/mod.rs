//! Non-emptiness of varieties of totally isotropic flags, with the two
//! components of the maximal orthogonal Grassmannian, and an exhaustive
//! flag counter over finite fields.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

mod enumerate;

pub use enumerate::{enumerate_flags, invariants_of_finite_form, FlagCount};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InvolutionType {
    Unitary,
    /// `A = F`, `sigma = Id`, odd dimension.
    OddOrthogonal,
    Symplectic,
    Orthogonal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum Component {
    #[default]
    #[serde(rename = "none")]
    None,
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormContext {
    /// Reduced dimension of the underlying space.
    pub rdim: u32,
    pub involution: InvolutionType,
    #[serde(default)]
    pub disc_trivial: bool,
}

impl FormContext {
    /// The rank `n` of the group.
    pub fn group_rank(&self) -> u32 {
        match self.involution {
            InvolutionType::Unitary => self.rdim.saturating_sub(1),
            InvolutionType::OddOrthogonal => (self.rdim.saturating_sub(1)) / 2,
            _ => self.rdim / 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlagRequest {
    pub indices: Vec<u32>,
    #[serde(default)]
    pub component: Component,
    pub context: FormContext,
    /// Admit unitary requests with `floor(n/2) <= n_r <= floor(rdim/2)`,
    /// reported as boundary requests.
    #[serde(default)]
    pub allow_boundary: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalInvariants {
    pub algebra_index: u32,
    pub witt_reduced_dim: u32,
    pub hyperbolic: bool,
    pub split: bool,
    pub disc_trivial: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Validation {
    /// Unitary request with `n_r >= floor(n/2)`, outside the literal bound
    /// of the classification, admitted because `allow_boundary` was set.
    pub boundary: bool,
}

fn malformed(msg: impl Into<String>) -> Error {
    Error::MalformedRequest(msg.into())
}

/// Checks the request against the classification of projective homogeneous
/// spaces for the form type.
pub fn validate(req: &FlagRequest) -> Result<Validation> {
    let ctx = &req.context;
    let idx = &req.indices;
    if idx.is_empty() {
        return Err(malformed("at least one index is required"));
    }
    if idx[0] == 0 || idx.windows(2).any(|w| w[0] >= w[1]) {
        return Err(malformed("indices must be positive and strictly increasing"));
    }
    let n = ctx.group_rank();
    let top = *idx.last().unwrap();
    if top > n {
        return Err(malformed(format!("top index {top} exceeds the group rank {n}")));
    }
    let mut boundary = false;
    let orthogonal = ctx.involution == InvolutionType::Orthogonal;
    if req.component != Component::None && !(orthogonal && ctx.disc_trivial) {
        return Err(malformed("components exist only for orthogonal involutions with trivial discriminant"));
    }
    match ctx.involution {
        InvolutionType::Unitary => {
            boundary = top >= n / 2;
            if boundary && !req.allow_boundary {
                return Err(malformed(format!("unitary flags need n_r < floor(n/2) = {}", n / 2)));
            }
            if top > ctx.rdim / 2 {
                return Err(malformed(format!("unitary flags need n_r <= floor(rdim/2) = {}", ctx.rdim / 2)));
            }
        }
        InvolutionType::Orthogonal => {
            if req.component == Component::None {
                if top >= n {
                    return Err(malformed("orthogonal flags without a component need n_r < n"));
                }
            } else {
                if top != n {
                    return Err(malformed("component flags need n_r = n"));
                }
                if idx.len() > 1 && idx[idx.len() - 2] >= n - 1 {
                    return Err(malformed("component flags need n_(r-1) < n - 1"));
                }
            }
        }
        InvolutionType::OddOrthogonal | InvolutionType::Symplectic => {}
    }
    Ok(Validation { boundary })
}

fn check_invariants(inv: &LocalInvariants) -> Result<()> {
    if !matches!(inv.algebra_index, 1 | 2) {
        return Err(malformed("algebra index must be 1 or 2"));
    }
    if inv.witt_reduced_dim % inv.algebra_index != 0 {
        return Err(malformed("Witt reduced dimension must be a multiple of the index"));
    }
    if inv.split != (inv.algebra_index == 1) {
        return Err(malformed("split must mean index 1"));
    }
    Ok(())
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `(X_n^+ nonempty, X_n^- nonempty)`. Both exactly when the algebra is
/// split and the form hyperbolic; a hyperbolic form over a non-split algebra
/// has exactly one, labelled `+` here (the label itself carries no meaning).
pub fn pm_component_verdict(inv: &LocalInvariants) -> Result<(bool, bool)> {
    check_invariants(inv)?;
    if !inv.disc_trivial {
        return Err(Error::WrongCaseShape("components need an orthogonal involution with trivial discriminant".into()));
    }
    Ok(match (inv.hyperbolic, inv.split) {
        (false, _) => (false, false),
        (true, true) => (true, true),
        (true, false) => (true, false),
    })
}

pub fn flag_nonempty(req: &FlagRequest, inv: &LocalInvariants) -> Result<bool> {
    validate(req)?;
    check_invariants(inv)?;
    if inv.hyperbolic && 2 * inv.witt_reduced_dim != req.context.rdim {
        return Err(malformed("hyperbolic form must have Witt reduced dimension rdim/2"));
    }
    let g = req.indices.iter().fold(0, |a, &b| gcd(a, b));
    let divides = g % inv.algebra_index == 0;
    let top = *req.indices.last().unwrap();
    let top_ok = match req.component {
        Component::None => top <= inv.witt_reduced_dim,
        Component::Plus => pm_component_verdict(inv)?.0,
        Component::Minus => pm_component_verdict(inv)?.1,
    };
    Ok(top_ok && divides)
}

#[cfg(test)]
mod tests;
