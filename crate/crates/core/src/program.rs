//! Agent programs: knowledge, stratified belief and desire bases, adopted plans.
//!
//! Mental-attitude queries go through the maximal consistent subset of a
//! stratified base. On conjunctive bases that subset is a literal set and is
//! computed greedily stratum by stratum: a stratum is kept whole when its
//! literals are internally consistent and consistent with everything kept at
//! higher priority, and dropped whole otherwise.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::plans::{PlanId, PlanLibrary};
use crate::syntax::{to_conj_clause, ConjClause, DnfFormula, Formula, LiteralSet, Vocabulary};

/// A formula tagged with its entrenchment rank; rank 0 is the knowledge level.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RankedFormula {
    pub rank: u32,
    pub formula: Formula,
}

/// A finite set of ranked propositional formulas.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct StratifiedBase {
    entries: BTreeSet<RankedFormula>,
}

impl StratifiedBase {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, formula: Formula, rank: u32) -> bool {
        self.entries.insert(RankedFormula { rank, formula })
    }

    pub fn remove(&mut self, entry: &RankedFormula) -> bool {
        self.entries.remove(entry)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries ordered by rank, then formula.
    pub fn iter(&self) -> impl Iterator<Item = &RankedFormula> {
        self.entries.iter()
    }

    pub fn max_rank(&self) -> Option<u32> {
        self.entries.iter().next_back().map(|e| e.rank)
    }

    pub fn stratum(&self, rank: u32) -> Vec<&Formula> {
        self.entries
            .iter()
            .filter(|e| e.rank == rank)
            .map(|e| &e.formula)
            .collect()
    }

    /// Nonempty strata in increasing rank.
    pub fn strata(&self) -> BTreeMap<u32, Vec<&Formula>> {
        let mut out: BTreeMap<u32, Vec<&Formula>> = BTreeMap::new();
        for e in &self.entries {
            out.entry(e.rank).or_default().push(&e.formula);
        }
        out
    }

    pub fn is_conjunctive(&self) -> bool {
        self.entries.iter().all(|e| to_conj_clause(&e.formula).is_ok())
    }

    /// Every entry as a literal set, keeping ranks.
    pub fn clauses(&self) -> Result<Vec<(u32, ConjClause)>> {
        self.entries
            .iter()
            .map(|e| Ok((e.rank, to_conj_clause(&e.formula)?)))
            .collect()
    }
}

impl FromIterator<(Formula, u32)> for StratifiedBase {
    fn from_iter<T: IntoIterator<Item = (Formula, u32)>>(iter: T) -> Self {
        StratifiedBase {
            entries: iter
                .into_iter()
                .map(|(formula, rank)| RankedFormula { rank, formula })
                .collect(),
        }
    }
}

/// Result of the maximal-consistent-subset computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaxSubset {
    pub literals: LiteralSet,
    /// Ranks of the strata that were kept, increasing.
    pub kept: Vec<u32>,
}

/// Maximal consistent subset of a conjunctive base, with the kept strata.
pub fn max_consistent_strata(base: &StratifiedBase) -> Result<MaxSubset> {
    let mut acc = LiteralSet::new();
    let mut kept = Vec::new();
    let mut entries = base.iter().peekable();
    while let Some(first) = entries.next() {
        let rank = first.rank;
        let mut stratum = to_conj_clause(&first.formula)?;
        while let Some(e) = entries.next_if(|e| e.rank == rank) {
            stratum.extend(&to_conj_clause(&e.formula)?);
        }
        if !stratum.is_consistent() || stratum.clashes_with(&acc) {
            continue;
        }
        acc.extend(&stratum);
        kept.push(rank);
    }
    Ok(MaxSubset {
        literals: acc,
        kept,
    })
}

/// Literal set of the maximal consistent subset of a conjunctive base.
pub fn max_consistent(base: &StratifiedBase) -> Result<LiteralSet> {
    Ok(max_consistent_strata(base)?.literals)
}

/// Exact classical entailment from a consistent literal set.
pub fn base_entails(literals: &LiteralSet, phi: &DnfFormula) -> Result<bool> {
    if !literals.is_consistent() {
        return Err(Error::InconsistentLiteralSet);
    }
    Ok(literals.entails(phi))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Attitude {
    Knowledge,
    Belief,
    Goal,
    Intention,
}

impl Attitude {
    pub const ALL: [Attitude; 4] = [
        Attitude::Knowledge,
        Attitude::Belief,
        Attitude::Goal,
        Attitude::Intention,
    ];

    pub fn letter(self) -> &'static str {
        match self {
            Attitude::Knowledge => "K",
            Attitude::Belief => "B",
            Attitude::Goal => "G",
            Attitude::Intention => "I",
        }
    }
}

impl FromStr for Attitude {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "K" => Ok(Attitude::Knowledge),
            "B" => Ok(Attitude::Belief),
            "G" | "D" => Ok(Attitude::Goal),
            "I" => Ok(Attitude::Intention),
            other => Err(format!("unknown attitude `{other}` (expected K, B, G or I)")),
        }
    }
}

/// `<K, B, D, I>` over a vocabulary and a plan library.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AgentProgram {
    vocab: Arc<Vocabulary>,
    library: Arc<PlanLibrary>,
    knowledge: BTreeSet<Formula>,
    beliefs: StratifiedBase,
    desires: StratifiedBase,
    intentions: BTreeSet<PlanId>,
}

impl AgentProgram {
    pub fn new(
        vocab: Arc<Vocabulary>,
        library: Arc<PlanLibrary>,
        knowledge: BTreeSet<Formula>,
        beliefs: StratifiedBase,
        desires: StratifiedBase,
        intentions: BTreeSet<PlanId>,
    ) -> Result<Self> {
        let check = |f: &Formula| -> Result<()> {
            if !f.is_propositional() {
                return Err(Error::NotPropositional(format!("{f:?}")));
            }
            if let Some(s) = f.symbols().into_iter().find(|s| s.index() >= vocab.len()) {
                return Err(Error::UnknownSymbol(format!("#{}", s.0)));
            }
            Ok(())
        };
        for f in knowledge
            .iter()
            .chain(beliefs.iter().map(|e| &e.formula))
            .chain(desires.iter().map(|e| &e.formula))
        {
            check(f)?;
        }
        for alpha in &intentions {
            library.get(*alpha)?;
        }
        Ok(AgentProgram {
            vocab,
            library,
            knowledge,
            beliefs,
            desires,
            intentions,
        })
    }

    pub fn vocab(&self) -> &Arc<Vocabulary> {
        &self.vocab
    }

    pub fn library(&self) -> &Arc<PlanLibrary> {
        &self.library
    }

    pub fn knowledge(&self) -> &BTreeSet<Formula> {
        &self.knowledge
    }

    pub fn beliefs(&self) -> &StratifiedBase {
        &self.beliefs
    }

    pub fn desires(&self) -> &StratifiedBase {
        &self.desires
    }

    pub fn intentions(&self) -> &BTreeSet<PlanId> {
        &self.intentions
    }

    pub(crate) fn with_parts(
        &self,
        knowledge: BTreeSet<Formula>,
        beliefs: StratifiedBase,
        desires: StratifiedBase,
        intentions: BTreeSet<PlanId>,
    ) -> Self {
        AgentProgram {
            vocab: self.vocab.clone(),
            library: self.library.clone(),
            knowledge,
            beliefs,
            desires,
            intentions,
        }
    }

    pub(crate) fn with_intentions(&self, intentions: BTreeSet<PlanId>) -> Self {
        self.with_parts(
            self.knowledge.clone(),
            self.beliefs.clone(),
            self.desires.clone(),
            intentions,
        )
    }

    /// Same program over another library; intentions are dropped.
    pub(crate) fn with_library(&self, library: Arc<PlanLibrary>) -> Self {
        AgentProgram {
            library,
            intentions: BTreeSet::new(),
            ..self.clone()
        }
    }

    /// Every formula of K, B and D and every plan pre/postcondition is a
    /// conjunction of literals.
    pub fn is_conjunctive(&self) -> bool {
        self.knowledge.iter().all(|f| to_conj_clause(f).is_ok())
            && self.beliefs.is_conjunctive()
            && self.desires.is_conjunctive()
            && self.library.ids().all(|a| self.library.conjunctive_pre(a).is_ok())
    }

    pub fn ensure_conjunctive(&self) -> Result<()> {
        for f in &self.knowledge {
            to_conj_clause(f)?;
        }
        self.beliefs.clauses()?;
        self.desires.clauses()?;
        for alpha in self.library.ids() {
            self.library.conjunctive_pre(alpha)?;
        }
        Ok(())
    }

    /// Union of the literals of all knowledge formulas (may be inconsistent).
    pub fn knowledge_literals(&self) -> Result<LiteralSet> {
        let mut out = LiteralSet::new();
        for f in &self.knowledge {
            out.extend(&to_conj_clause(f)?);
        }
        Ok(out)
    }

    pub fn belief_max(&self) -> Result<LiteralSet> {
        max_consistent(&self.beliefs)
    }

    pub fn desire_max(&self) -> Result<LiteralSet> {
        max_consistent(&self.desires)
    }

    /// Answers `ag |= X phi` for a DNF query.
    pub fn query(&self, attitude: Attitude, phi: &DnfFormula) -> Result<bool> {
        self.ensure_conjunctive()?;
        match attitude {
            Attitude::Knowledge => base_entails(&self.knowledge_literals()?, phi),
            Attitude::Belief => base_entails(&self.belief_max()?, phi),
            Attitude::Goal => base_entails(&self.desire_max()?, phi),
            Attitude::Intention => {
                if !base_entails(&self.desire_max()?, phi)? {
                    return Ok(false);
                }
                for alpha in &self.intentions {
                    if self.library.post_entails(*alpha, phi)? {
                        return Ok(true);
                    }
                }
                Ok(false)
            }
        }
    }

    /// Checks the seven coherence conditions.
    pub fn coherence(&self) -> Result<CoherenceReport> {
        self.ensure_conjunctive()?;
        let k_lits = self.knowledge_literals()?;
        let k_clauses: BTreeSet<ConjClause> = self
            .knowledge
            .iter()
            .map(to_conj_clause)
            .collect::<Result<_>>()?;
        let level_zero = |base: &StratifiedBase| -> Result<BTreeSet<ConjClause>> {
            base.stratum(0).into_iter().map(to_conj_clause).collect()
        };
        let b_max = self.belief_max()?;
        let d_max = self.desire_max()?;

        let mut passed = [true; 7];
        passed[0] = k_lits.is_consistent();
        passed[1] = level_zero(&self.beliefs)? == k_clauses;
        passed[2] = level_zero(&self.desires)? == k_clauses;
        let mut joint = ConjClause::new();
        for &alpha in &self.intentions {
            let plan = self.library.get(alpha)?;
            let pre = self.library.conjunctive_pre(alpha)?;
            passed[3] &= plan.post.iter().any(|l| d_max.contains(l));
            passed[4] &= b_max.entails_clause(&pre);
            joint.extend(&plan.post);
            passed[6] &= !b_max.entails_clause(&plan.post);
        }
        passed[5] = joint.is_consistent();
        Ok(CoherenceReport { passed })
    }

    pub fn is_coherent(&self) -> Result<bool> {
        Ok(self.coherence()?.is_coherent())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Condition {
    KnowledgeConsistency,
    BeliefKnowledge,
    DesireKnowledge,
    IntentionDesire,
    PursuablePlan,
    IntentionConsistency,
    RelevantPlans,
}

impl Condition {
    pub const ALL: [Condition; 7] = [
        Condition::KnowledgeConsistency,
        Condition::BeliefKnowledge,
        Condition::DesireKnowledge,
        Condition::IntentionDesire,
        Condition::PursuablePlan,
        Condition::IntentionConsistency,
        Condition::RelevantPlans,
    ];

    pub fn describe(self) -> &'static str {
        match self {
            Condition::KnowledgeConsistency => "knowledge consistency",
            Condition::BeliefKnowledge => "belief-knowledge consistency",
            Condition::DesireKnowledge => "desire-knowledge consistency",
            Condition::IntentionDesire => "intention-desire consistency",
            Condition::PursuablePlan => "pursuable plans",
            Condition::IntentionConsistency => "intention consistency",
            Condition::RelevantPlans => "plans are relevant",
        }
    }
}

/// Pass/fail flag for each coherence condition, in order 1..=7.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoherenceReport {
    pub passed: [bool; 7],
}

impl CoherenceReport {
    pub fn is_coherent(&self) -> bool {
        self.passed.iter().all(|&b| b)
    }

    pub fn holds(&self, c: Condition) -> bool {
        self.passed[c as usize]
    }

    pub fn failures(&self) -> Vec<Condition> {
        Condition::ALL
            .into_iter()
            .filter(|&c| !self.holds(c))
            .collect()
    }
}

impl fmt::Display for CoherenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in Condition::ALL.into_iter().enumerate() {
            let mark = if self.holds(c) { "ok  " } else { "FAIL" };
            writeln!(f, "{mark} {}. {}", i + 1, c.describe())?;
        }
        Ok(())
    }
}
