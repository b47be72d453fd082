//! Program-level mental change: knowledge acquisition, belief/desire revision
//! and belief/desire contraction on conjunctive agent programs.
//!
//! Each operation rewrites the bases syntactically and then filters the
//! adopted plans. By default the filter of each operation is the one stated
//! for it (see [`IntentionFilter::Verbatim`]); [`IntentionFilter::Strict`]
//! instead keeps exactly the plans that are coherent in the new program.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::plans::PlanId;
use crate::program::{AgentProgram, StratifiedBase};
use crate::syntax::{to_conj_clause, to_dnf, ConjClause, DnfFormula, Formula, LiteralSet};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum IntentionFilter {
    /// Per-operation filters: pre believed and post not yet believed, plus,
    /// for announcement and desire change, the post shares a literal with
    /// the new maximal desire set (the reading used by coherence condition 4,
    /// so that a stratum emptied to `top` does not count as a desire).
    #[default]
    Verbatim,
    /// Keep a plan iff its precondition is believed and its postcondition is
    /// desired, possible and not already believed in the resulting program.
    Strict,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct DynamicsConfig {
    pub filter: IntentionFilter,
    /// Accept incoherent input programs instead of rejecting them.
    pub permissive: bool,
}

impl DynamicsConfig {
    pub fn strict() -> Self {
        DynamicsConfig {
            filter: IntentionFilter::Strict,
            permissive: false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Operation {
    Announce,
    ReviseBelief,
    ReviseDesire,
    ContractBelief,
    ContractDesire,
}

impl Operation {
    pub const ALL: [Operation; 5] = [
        Operation::Announce,
        Operation::ReviseBelief,
        Operation::ReviseDesire,
        Operation::ContractBelief,
        Operation::ContractDesire,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Operation::Announce => "announce",
            Operation::ReviseBelief => "reviseB",
            Operation::ReviseDesire => "reviseD",
            Operation::ContractBelief => "contractB",
            Operation::ContractDesire => "contractD",
        }
    }

    pub fn is_contraction(self) -> bool {
        matches!(self, Operation::ContractBelief | Operation::ContractDesire)
    }
}

impl fmt::Display for Operation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Operation {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Operation::ALL
            .into_iter()
            .find(|op| op.name() == s)
            .ok_or_else(|| {
                format!("unknown operation `{s}` (expected announce, reviseB, reviseD, contractB or contractD)")
            })
    }
}

fn check_input(ag: &AgentProgram, cfg: &DynamicsConfig) -> Result<()> {
    ag.ensure_conjunctive()?;
    let report = ag.coherence()?;
    if !report.is_coherent() && !cfg.permissive {
        return Err(Error::Incoherent(Box::new(report)));
    }
    Ok(())
}

fn consistent_clause(phi: &ConjClause) -> Result<()> {
    if phi.is_consistent() {
        Ok(())
    } else {
        Err(Error::InconsistentFormula(format!("{phi:?}")))
    }
}

struct FilterInputs<'a> {
    beliefs: &'a LiteralSet,
    relevance: Option<&'a LiteralSet>,
}

fn verbatim_filter(ag: &AgentProgram, inputs: FilterInputs<'_>) -> Result<BTreeSet<PlanId>> {
    let lib = ag.library();
    let mut out = BTreeSet::new();
    for &alpha in ag.intentions() {
        let post = &lib.get(alpha)?.post;
        let pre = lib.conjunctive_pre(alpha)?;
        let relevant = match inputs.relevance {
            Some(desired) => post.iter().any(|l| desired.contains(l)),
            None => true,
        };
        if inputs.beliefs.entails_clause(&pre) && !inputs.beliefs.entails_clause(post) && relevant
        {
            out.insert(alpha);
        }
    }
    Ok(out)
}

/// Plans of `ag` that are coherent in `ag` itself.
pub fn coherent_intentions(ag: &AgentProgram) -> Result<BTreeSet<PlanId>> {
    let lib = ag.library();
    let b_max = ag.belief_max()?;
    let d_max = ag.desire_max()?;
    let k = ag.knowledge_literals()?;
    let mut out = BTreeSet::new();
    for &alpha in ag.intentions() {
        let post = &lib.get(alpha)?.post;
        let pre = lib.conjunctive_pre(alpha)?;
        let possible = k.union(post).is_consistent();
        if b_max.entails_clause(&pre)
            && d_max.entails_clause(post)
            && possible
            && !b_max.entails_clause(post)
        {
            out.insert(alpha);
        }
    }
    Ok(out)
}

fn finish(
    next: AgentProgram,
    cfg: &DynamicsConfig,
    verbatim: impl FnOnce(&AgentProgram) -> Result<BTreeSet<PlanId>>,
) -> Result<AgentProgram> {
    let intentions = match cfg.filter {
        IntentionFilter::Verbatim => verbatim(&next)?,
        IntentionFilter::Strict => coherent_intentions(&next)?,
    };
    Ok(next.with_parts(
        next.knowledge().clone(),
        next.beliefs().clone(),
        next.desires().clone(),
        intentions,
    ))
}

/// Knowledge acquisition of a consistent conjunction `phi`.
pub fn announce(ag: &AgentProgram, phi: &ConjClause, cfg: &DynamicsConfig) -> Result<AgentProgram> {
    check_input(ag, cfg)?;
    if !ag.knowledge_literals()?.union(phi).is_consistent() {
        return Err(Error::InconsistentAnnouncement);
    }
    let f = phi.to_formula();
    let mut knowledge = ag.knowledge().clone();
    knowledge.insert(f.clone());
    let mut beliefs = ag.beliefs().clone();
    beliefs.insert(f.clone(), 0);
    let mut desires = ag.desires().clone();
    desires.insert(f, 0);
    let next = ag.with_parts(knowledge, beliefs, desires, ag.intentions().clone());
    finish(next, cfg, |next| {
        let b_max = next.belief_max()?;
        let d_max = next.desire_max()?;
        verbatim_filter(
            next,
            FilterInputs {
                beliefs: &b_max,
                relevance: Some(&d_max),
            },
        )
    })
}

/// Knowledge at rank 0, `phi` at rank 1, the old base shifted down by two.
fn upgraded_base(ag: &AgentProgram, old: &StratifiedBase, phi: &ConjClause) -> StratifiedBase {
    let mut base: StratifiedBase = ag.knowledge().iter().map(|k| (k.clone(), 0)).collect();
    for e in old.iter() {
        base.insert(e.formula.clone(), e.rank + 2);
    }
    base.insert(phi.to_formula(), 1);
    base
}

/// Radical upgrade of the beliefs by a consistent conjunction `phi`.
pub fn revise_belief(
    ag: &AgentProgram,
    phi: &ConjClause,
    cfg: &DynamicsConfig,
) -> Result<AgentProgram> {
    check_input(ag, cfg)?;
    consistent_clause(phi)?;
    let beliefs = upgraded_base(ag, ag.beliefs(), phi);
    let next = ag.with_parts(
        ag.knowledge().clone(),
        beliefs,
        ag.desires().clone(),
        ag.intentions().clone(),
    );
    finish(next, cfg, |next| {
        let b_max = next.belief_max()?;
        verbatim_filter(
            next,
            FilterInputs {
                beliefs: &b_max,
                relevance: None,
            },
        )
    })
}

fn desire_change_filter(next: &AgentProgram) -> Result<BTreeSet<PlanId>> {
    let b_max = next.belief_max()?;
    let d_max = next.desire_max()?;
    verbatim_filter(
        next,
        FilterInputs {
            beliefs: &b_max,
            relevance: Some(&d_max),
        },
    )
}

/// Radical upgrade of the desires by a consistent conjunction `phi`.
pub fn revise_desire(
    ag: &AgentProgram,
    phi: &ConjClause,
    cfg: &DynamicsConfig,
) -> Result<AgentProgram> {
    check_input(ag, cfg)?;
    consistent_clause(phi)?;
    let desires = upgraded_base(ag, ag.desires(), phi);
    let next = ag.with_parts(
        ag.knowledge().clone(),
        ag.beliefs().clone(),
        desires,
        ag.intentions().clone(),
    );
    finish(next, cfg, desire_change_filter)
}

/// Replaces every literal over a symbol of `phi` by `top` in each entry,
/// keeping ranks. `phi` must be a disjunction of literals. Entries that do
/// not mention those symbols are left as written.
pub fn cont_base(base: &StratifiedBase, phi: &DnfFormula) -> Result<StratifiedBase> {
    let literals = phi
        .as_literal_disjunction()
        .ok_or_else(|| Error::NotLiteralDisjunction(format!("{phi:?}")))?;
    let symbols = literals.iter().map(|l| l.symbol).collect();
    let mut out = StratifiedBase::new();
    for e in base.iter() {
        let clause = to_conj_clause(&e.formula)?;
        if clause.symbols().is_disjoint(&symbols) {
            out.insert(e.formula.clone(), e.rank);
        } else {
            out.insert(clause.without_symbols(&symbols).to_formula(), e.rank);
        }
    }
    Ok(out)
}

/// Lexicographic contraction of the beliefs by a disjunction of literals.
pub fn contract_belief(
    ag: &AgentProgram,
    phi: &DnfFormula,
    cfg: &DynamicsConfig,
) -> Result<AgentProgram> {
    check_input(ag, cfg)?;
    let beliefs = cont_base(ag.beliefs(), phi)?;
    let next = ag.with_parts(
        ag.knowledge().clone(),
        beliefs,
        ag.desires().clone(),
        ag.intentions().clone(),
    );
    finish(next, cfg, |next| {
        let b_max = next.belief_max()?;
        verbatim_filter(
            next,
            FilterInputs {
                beliefs: &b_max,
                relevance: None,
            },
        )
    })
}

/// Lexicographic contraction of the desires by a disjunction of literals.
pub fn contract_desire(
    ag: &AgentProgram,
    phi: &DnfFormula,
    cfg: &DynamicsConfig,
) -> Result<AgentProgram> {
    check_input(ag, cfg)?;
    let desires = cont_base(ag.desires(), phi)?;
    let next = ag.with_parts(
        ag.knowledge().clone(),
        ag.beliefs().clone(),
        desires,
        ag.intentions().clone(),
    );
    finish(next, cfg, desire_change_filter)
}

/// Applies `op` with a parsed propositional argument: a conjunction of
/// literals for announcement and revision, a disjunction of literals for
/// contraction.
pub fn apply(
    ag: &AgentProgram,
    op: Operation,
    phi: &Formula,
    cfg: &DynamicsConfig,
) -> Result<AgentProgram> {
    match op {
        Operation::Announce => announce(ag, &to_conj_clause(phi)?, cfg),
        Operation::ReviseBelief => revise_belief(ag, &to_conj_clause(phi)?, cfg),
        Operation::ReviseDesire => revise_desire(ag, &to_conj_clause(phi)?, cfg),
        Operation::ContractBelief => contract_belief(ag, &to_dnf(phi)?, cfg),
        Operation::ContractDesire => contract_desire(ag, &to_dnf(phi)?, cfg),
    }
}
