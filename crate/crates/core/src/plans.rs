//! Plan libraries: atomic STRIPS-like plans with a propositional precondition
//! and a consistent conjunction of literals as postcondition.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::syntax::{is_identifier, to_conj_clause, ConjClause, DnfFormula, Formula};

/// Index of a plan inside its [`PlanLibrary`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PlanId(pub u32);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Plan {
    pub name: String,
    pub pre: Formula,
    pub post: ConjClause,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PlanLibrary {
    plans: Vec<Plan>,
    index: HashMap<String, PlanId>,
}

impl PlanLibrary {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds a library from `(name, pre, post)` entries.
    pub fn new(entries: Vec<(String, Formula, Formula)>) -> Result<Self> {
        let mut lib = PlanLibrary::default();
        for (name, pre, post) in entries {
            if !is_identifier(&name) {
                return Err(Error::InvalidVocabulary(format!(
                    "`{name}` is not a valid plan name"
                )));
            }
            if lib.index.contains_key(&name) {
                return Err(Error::DuplicatePlan(name));
            }
            if !pre.is_propositional() {
                return Err(Error::NotPropositional(format!("precondition of `{name}`")));
            }
            let post = to_conj_clause(&post)
                .map_err(|_| Error::NonConjunctivePostcondition(name.clone()))?;
            if !post.is_consistent() {
                return Err(Error::InconsistentPostcondition(name));
            }
            lib.index.insert(name.clone(), PlanId(lib.plans.len() as u32));
            lib.plans.push(Plan { name, pre, post });
        }
        Ok(lib)
    }

    pub fn len(&self) -> usize {
        self.plans.len()
    }

    pub fn is_empty(&self) -> bool {
        self.plans.is_empty()
    }

    pub fn lookup(&self, name: &str) -> Option<PlanId> {
        self.index.get(name).copied()
    }

    pub fn plan(&self, id: PlanId) -> &Plan {
        &self.plans[id.0 as usize]
    }

    pub fn get(&self, id: PlanId) -> Result<&Plan> {
        self.plans
            .get(id.0 as usize)
            .ok_or_else(|| Error::UnknownPlan(format!("#{}", id.0)))
    }

    pub fn name(&self, id: PlanId) -> &str {
        &self.plan(id).name
    }

    pub fn ids(&self) -> impl Iterator<Item = PlanId> {
        (0..self.plans.len() as u32).map(PlanId)
    }

    pub fn iter(&self) -> impl Iterator<Item = (PlanId, &Plan)> {
        self.plans
            .iter()
            .enumerate()
            .map(|(i, p)| (PlanId(i as u32), p))
    }

    /// `pos(alpha) |= phi`, decided exactly from the partial assignment `pos(alpha)`.
    pub fn post_entails(&self, alpha: PlanId, phi: &DnfFormula) -> Result<bool> {
        Ok(self.get(alpha)?.post.entails(phi))
    }

    /// The precondition as a conjunction of literals, if it is one.
    pub fn conjunctive_pre(&self, alpha: PlanId) -> Result<ConjClause> {
        to_conj_clause(&self.plan(alpha).pre)
    }
}
