//! Soft constraint satisfaction problems: combine every constraint, then hide
//! the names outside the interface.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::semiring::{SemiringKind, Value};
use crate::softcon::{ConstraintError, Domain, Name, SoftConstraint};

#[derive(Debug, Clone)]
pub struct ScspProblem {
    pub kind: SemiringKind,
    pub domain: Domain,
    pub constraints: Vec<SoftConstraint>,
    /// Interface names `Y`.
    pub interface: BTreeSet<Name>,
}

impl ScspProblem {
    pub fn new(
        kind: SemiringKind,
        domain: Domain,
        constraints: Vec<SoftConstraint>,
        interface: impl IntoIterator<Item = Name>,
    ) -> Self {
        ScspProblem {
            kind,
            domain,
            constraints,
            interface: interface.into_iter().collect(),
        }
    }

    /// `⊗C`, folded left to right over the constraints sorted by support.
    fn combined(&self) -> Result<SoftConstraint, ConstraintError> {
        let mut ordered: Vec<&SoftConstraint> = self.constraints.iter().collect();
        ordered.sort_by(|a, b| a.declared_support().cmp(b.declared_support()));
        let unit = SoftConstraint::unit(self.kind, self.domain.clone());
        ordered.into_iter().try_fold(unit, |acc, c| acc.combine(c))
    }

    /// `Sol(P)`: every support name outside the interface is hidden, in
    /// ascending name order.
    pub fn solve(&self) -> Result<SoftConstraint, ConstraintError> {
        let all = self.combined()?;
        let hidden: Vec<Name> = all
            .declared_support()
            .iter()
            .filter(|n| !self.interface.contains(*n))
            .cloned()
            .collect();
        Ok(hidden.iter().fold(all, |c, x| c.hide(x)))
    }

    /// Best level of consistency: `⊗C` with every name hidden.
    pub fn blevel(&self) -> Result<Value, ConstraintError> {
        let all = self.combined()?;
        let names = all.declared_support().to_vec();
        let hidden = names.iter().fold(all, |c, x| c.hide(x));
        debug_assert!(hidden.declared_support().is_empty());
        let value = *hidden.rows().next().expect("a constant constraint has one row").1;
        Ok(value)
    }
}
