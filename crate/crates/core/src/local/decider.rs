//! Interchangeable isotropy deciders, selected by name.

use super::lift::find_isotropic_vector_local;
use super::oracle::{oracle_isotropy, OracleOutcome};
use super::{larmour_split, LocalAlgebra};
use crate::error::{Error, Result};
use crate::hermitian::HermitianForm;

#[derive(Debug, Clone, PartialEq)]
pub struct Verdict<E> {
    pub isotropic: bool,
    pub witness: Option<Vec<E>>,
}

pub trait IsotropyDecider<A: LocalAlgebra>: Send + Sync {
    fn name(&self) -> &'static str;
    fn decide(&self, h: &HermitianForm<A>) -> Result<Verdict<A::Elem>>;
}

/// Residue forms of the valuation splitting, with lifted witnesses.
pub struct ResidueDecider;

/// Digit-by-digit search with Hensel certification.
pub struct ExhaustiveDecider {
    pub max_depth: usize,
}

impl<A: LocalAlgebra> IsotropyDecider<A> for ResidueDecider {
    fn name(&self) -> &'static str {
        "residue"
    }

    fn decide(&self, h: &HermitianForm<A>) -> Result<Verdict<A::Elem>> {
        let split = larmour_split(h)?;
        if !split.verdict()? {
            return Ok(Verdict { isotropic: false, witness: None });
        }
        let witness = find_isotropic_vector_local(h)?;
        Ok(Verdict { isotropic: true, witness })
    }
}

impl<A: LocalAlgebra> IsotropyDecider<A> for ExhaustiveDecider {
    fn name(&self) -> &'static str {
        "exhaustive"
    }

    fn decide(&self, h: &HermitianForm<A>) -> Result<Verdict<A::Elem>> {
        match oracle_isotropy(h, self.max_depth)? {
            OracleOutcome::Isotropic(x) => Ok(Verdict { isotropic: true, witness: Some(x) }),
            OracleOutcome::Anisotropic => Ok(Verdict { isotropic: false, witness: None }),
            OracleOutcome::Undecided => Err(Error::OracleUndecided(format!("no decision within {} digits", self.max_depth))),
        }
    }
}

pub fn decider_names() -> &'static [&'static str] {
    &["residue", "exhaustive"]
}

pub fn deciders<A: LocalAlgebra>() -> Vec<Box<dyn IsotropyDecider<A>>> {
    vec![Box::new(ResidueDecider), Box::new(ExhaustiveDecider { max_depth: 4 })]
}

pub fn decider_by_name<A: LocalAlgebra>(name: &str) -> Result<Box<dyn IsotropyDecider<A>>> {
    deciders()
        .into_iter()
        .find(|d| d.name() == name)
        .ok_or_else(|| Error::MalformedRequest(format!("unknown method {name:?}; expected one of {:?}", decider_names())))
}
