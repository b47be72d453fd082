//! Seeded random instances and the program-versus-model commutation harness.
//!
//! Every program-level operation in [`crate::dynamics`] is checked by
//! building the induced model of its result and comparing it with the
//! semantic transformation of the induced model of its input. Disagreements
//! are shrunk greedily to a small reproducer.

use std::collections::BTreeSet;
use std::fmt::{self, Write};
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::agentfile::write_agent;
use crate::dynamics::{self, DynamicsConfig, IntentionFilter, Operation};
use crate::error::Result;
use crate::plans::{PlanId, PlanLibrary};
use crate::program::{AgentProgram, StratifiedBase};
use crate::semantics::export::dump;
use crate::semantics::{
    induced_model, relation_pairs, AgentModel, Preorder, Valuation, World, WorldId,
    DEFAULT_WORLD_CAP,
};
use crate::syntax::{
    print_formula, to_conj_clause, ConjClause, DnfFormula, Formula, Literal, Modality, Order,
    Symbol, Update, Vocabulary,
};

const NAMES: [&str; 8] = ["p", "q", "r", "s", "t", "u", "v", "w"];

/// `p q r s ...`, then `x8 x9 ...` past the eighth symbol.
pub fn vocabulary(size: usize) -> Arc<Vocabulary> {
    let names = (0..size).map(|i| match NAMES.get(i) {
        Some(n) => n.to_string(),
        None => format!("x{i}"),
    });
    Arc::new(Vocabulary::new(names).expect("generated names are valid"))
}

/// The generator for trial `index` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

pub fn random_literal(rng: &mut impl Rng, symbols: usize) -> Literal {
    let s = Symbol(rng.gen_range(0..symbols) as u32);
    if rng.gen_bool(0.5) {
        Literal::pos(s)
    } else {
        Literal::neg(s)
    }
}

/// Up to `max_len` random literals; may be inconsistent.
pub fn random_clause(rng: &mut impl Rng, symbols: usize, min_len: usize, max_len: usize) -> ConjClause {
    let len = rng.gen_range(min_len..=max_len);
    (0..len).map(|_| random_literal(rng, symbols)).collect()
}

/// A consistent clause of between `min_len` and `max_len` literals over
/// distinct symbols (fewer if the vocabulary is smaller).
pub fn random_consistent_clause(
    rng: &mut impl Rng,
    symbols: usize,
    min_len: usize,
    max_len: usize,
) -> ConjClause {
    let len = rng.gen_range(min_len..=max_len).min(symbols);
    let mut syms: Vec<u32> = (0..symbols as u32).collect();
    syms.shuffle(rng);
    syms.into_iter()
        .take(len)
        .map(|s| {
            if rng.gen_bool(0.5) {
                Literal::pos(Symbol(s))
            } else {
                Literal::neg(Symbol(s))
            }
        })
        .collect()
}

/// A DNF query of one to three clauses, each of up to two literals.
pub fn random_dnf(rng: &mut impl Rng, symbols: usize) -> DnfFormula {
    let n = rng.gen_range(1..=3);
    let clauses = (0..n).map(|_| random_clause(rng, symbols, 0, 2)).collect();
    DnfFormula::new(clauses).expect("at least one clause")
}

/// A disjunction of one or two literals.
pub fn random_literal_disjunction(rng: &mut impl Rng, symbols: usize) -> DnfFormula {
    let n = rng.gen_range(1..=2);
    let clauses = (0..n)
        .map(|_| std::iter::once(random_literal(rng, symbols)).collect())
        .collect();
    DnfFormula::new(clauses).expect("at least one clause")
}

/// Shape of generated programs.
#[derive(Clone, Copy, Debug)]
pub struct ProgramShape {
    pub symbols: usize,
    pub max_strata: u32,
    pub max_formulas: usize,
    pub max_literals: usize,
    pub max_plans: usize,
}

impl ProgramShape {
    pub fn small(symbols: usize) -> Self {
        ProgramShape {
            symbols,
            max_strata: 3,
            max_formulas: 2,
            max_literals: 2,
            max_plans: 3,
        }
    }
}

fn random_base(rng: &mut impl Rng, shape: &ProgramShape, knowledge: &[Formula]) -> StratifiedBase {
    let mut base: StratifiedBase = knowledge.iter().map(|k| (k.clone(), 0)).collect();
    let strata = rng.gen_range(0..=shape.max_strata);
    let mut rank = 0;
    for _ in 0..strata {
        rank += rng.gen_range(1..=2);
        for _ in 0..rng.gen_range(1..=shape.max_formulas) {
            let c = random_clause(rng, shape.symbols, 1, shape.max_literals);
            base.insert(c.to_formula(), rank);
        }
    }
    base
}

/// A coherent conjunctive program. K holds zero to two consistent clauses
/// mirrored at rank 0 of both bases; plans are biased toward coherence and
/// adopted greedily while the program stays coherent.
pub fn random_program(rng: &mut impl Rng, shape: &ProgramShape) -> AgentProgram {
    let vocab = vocabulary(shape.symbols);
    let k_lits = random_consistent_clause(rng, shape.symbols, 0, 2.min(shape.symbols));
    let knowledge: Vec<Formula> = if k_lits.len() == 2 && rng.gen_bool(0.5) {
        k_lits.iter().map(|l| l.to_formula()).collect()
    } else if k_lits.is_empty() {
        Vec::new()
    } else {
        vec![k_lits.to_formula()]
    };
    let beliefs = random_base(rng, shape, &knowledge);
    let desires = random_base(rng, shape, &knowledge);
    let skeleton = AgentProgram::new(
        vocab.clone(),
        Arc::new(PlanLibrary::empty()),
        knowledge.iter().cloned().collect(),
        beliefs.clone(),
        desires.clone(),
        BTreeSet::new(),
    )
    .expect("generated program is well formed");
    let b_max = skeleton.belief_max().expect("conjunctive");
    let d_max = skeleton.desire_max().expect("conjunctive");

    let mut entries = Vec::new();
    for i in 0..rng.gen_range(0..=shape.max_plans) {
        let pre = if rng.gen_bool(0.7) && !b_max.is_empty() {
            let lits: Vec<Literal> = b_max.iter().collect();
            let n = rng.gen_range(0..=lits.len().min(2));
            lits.choose_multiple(rng, n).copied().collect()
        } else {
            random_clause(rng, shape.symbols, 0, 1)
        };
        let mut post = random_consistent_clause(rng, shape.symbols, 1, 2);
        if rng.gen_bool(0.7) {
            let wanted: Vec<Literal> = d_max.iter().filter(|l| !b_max.contains(*l)).collect();
            if let Some(&l) = wanted.choose(rng) {
                let mut biased: ConjClause = post.iter().filter(|m| m.symbol != l.symbol).collect();
                biased.insert(l);
                post = biased;
            }
        }
        entries.push((format!("a{i}"), pre.to_formula(), post.to_formula()));
    }
    let library = Arc::new(PlanLibrary::new(entries).expect("generated plans are valid"));
    let mut program = skeleton.with_library(library.clone());
    let mut order: Vec<PlanId> = library.ids().collect();
    order.shuffle(rng);
    for alpha in order {
        let mut intentions = program.intentions().clone();
        intentions.insert(alpha);
        let candidate = program.with_intentions(intentions);
        if candidate.is_coherent().expect("conjunctive") {
            program = candidate;
        }
    }
    program
}

/// An operation argument suited to `op`: a conjunction consistent with K
/// for announcement, a consistent conjunction for revision, a disjunction of
/// one or two literals for contraction.
pub fn random_argument(rng: &mut impl Rng, ag: &AgentProgram, op: Operation) -> Formula {
    let n = ag.vocab().len();
    match op {
        Operation::Announce => {
            let k = ag.knowledge_literals().expect("conjunctive");
            loop {
                let c = random_consistent_clause(rng, n, 0, 2);
                if k.union(&c).is_consistent() {
                    return c.to_formula();
                }
            }
        }
        Operation::ReviseBelief | Operation::ReviseDesire => {
            random_consistent_clause(rng, n, 0, 2).to_formula()
        }
        Operation::ContractBelief | Operation::ContractDesire => {
            random_literal_disjunction(rng, n).to_formula()
        }
    }
}

/// A random model over `symbols` symbols with distinct valuations. Orders
/// are ranked when `ranked`, otherwise arbitrary preorders.
pub fn random_model(rng: &mut impl Rng, symbols: usize, ranked: bool) -> AgentModel {
    let mut all: Vec<u64> = (0..1u64 << symbols).collect();
    all.shuffle(rng);
    let n = rng.gen_range(1..=all.len());
    let mut chosen = all[..n].to_vec();
    chosen.sort_unstable();
    let worlds = chosen
        .iter()
        .enumerate()
        .map(|(i, &v)| World {
            id: WorldId(i as u32),
            valuation: Valuation(v),
        })
        .collect();
    let mut order = || {
        if ranked {
            let levels = rng.gen_range(1..=n);
            let ranks: Vec<usize> = (0..n).map(|_| rng.gen_range(0..levels)).collect();
            Preorder::from_ranks(&ranks)
        } else {
            random_preorder(rng, n)
        }
    };
    let p = order();
    let d = order();
    AgentModel::new(
        vocabulary(symbols),
        Arc::new(PlanLibrary::empty()),
        worlds,
        p,
        d,
        BTreeSet::new(),
    )
    .expect("generated model is valid")
}

/// Closure of a random relation.
pub fn random_preorder(rng: &mut impl Rng, n: usize) -> Preorder {
    let density = rng.gen_range(0.0..0.5);
    Preorder::from_fn(n, |i, j| i == j || rng.gen_bool(density)).closure()
}

/// A random propositional formula of bounded depth.
pub fn random_propositional(rng: &mut impl Rng, symbols: usize, depth: u32) -> Formula {
    if depth == 0 || rng.gen_bool(0.3) {
        return match rng.gen_range(0..10) {
            0 => Formula::Top,
            1 => Formula::Bot,
            _ => Formula::atom(Symbol(rng.gen_range(0..symbols) as u32)),
        };
    }
    match rng.gen_range(0..3) {
        0 => Formula::not(random_propositional(rng, symbols, depth - 1)),
        1 => Formula::and(
            random_propositional(rng, symbols, depth - 1),
            random_propositional(rng, symbols, depth - 1),
        ),
        _ => Formula::or(
            random_propositional(rng, symbols, depth - 1),
            random_propositional(rng, symbols, depth - 1),
        ),
    }
}

/// A random formula of the full language over the core constructors.
pub fn random_formula(
    rng: &mut impl Rng,
    symbols: usize,
    library: &PlanLibrary,
    depth: u32,
) -> Formula {
    if depth == 0 || rng.gen_bool(0.2) {
        return match rng.gen_range(0..12) {
            0 => Formula::Top,
            1 => Formula::Bot,
            2 if !library.is_empty() => {
                Formula::Intend(PlanId(rng.gen_range(0..library.len()) as u32))
            }
            _ => Formula::atom(Symbol(rng.gen_range(0..symbols) as u32)),
        };
    }
    let sub = |rng: &mut _| random_formula(rng, symbols, library, depth - 1);
    match rng.gen_range(0..8) {
        0 => Formula::not(sub(rng)),
        1 => Formula::and(sub(rng), sub(rng)),
        2 => Formula::or(sub(rng), sub(rng)),
        3 => Formula::univ(sub(rng)),
        4 => Formula::modal(*Modality::ALL.choose(rng).expect("nonempty"), sub(rng)),
        5 if !library.is_empty() => {
            Formula::plan(PlanId(rng.gen_range(0..library.len()) as u32), sub(rng))
        }
        6 => {
            let chi = random_propositional(rng, symbols, 2);
            Formula::dynamic(*Update::ALL.choose(rng).expect("nonempty"), chi, sub(rng))
        }
        _ => Formula::and(sub(rng), Formula::not(sub(rng))),
    }
}

/// Which parts of the two models differ.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Mismatch {
    pub worlds: bool,
    pub plausibility: bool,
    pub desirability: bool,
    pub intentions: bool,
}

impl Mismatch {
    pub fn any(&self) -> bool {
        self.worlds || self.plausibility || self.desirability || self.intentions
    }

    /// A difference in worlds or orders.
    pub fn structural(&self) -> bool {
        self.worlds || self.plausibility || self.desirability
    }

    fn overlaps(&self, other: &Mismatch) -> bool {
        (self.structural() && other.structural()) || (self.intentions && other.intentions)
    }
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<&str> = [
            (self.worlds, "worlds"),
            (self.plausibility, "plausibility"),
            (self.desirability, "desirability"),
            (self.intentions, "intentions"),
        ]
        .into_iter()
        .filter(|(b, _)| *b)
        .map(|(_, n)| n)
        .collect();
        if parts.is_empty() {
            f.write_str("none")
        } else {
            f.write_str(&parts.join(", "))
        }
    }
}

/// The two sides of one commutation check.
#[derive(Clone, Debug)]
pub struct Comparison {
    pub program: AgentProgram,
    pub op: Operation,
    pub argument: Formula,
    pub via_program: AgentModel,
    pub via_model: AgentModel,
    pub mismatch: Mismatch,
}

impl Comparison {
    /// Text artifact: the program, the operation and both resulting models.
    pub fn report(&self) -> String {
        let vocab = self.program.vocab();
        let mut out = String::new();
        let _ = writeln!(out, "# program");
        out.push_str(&write_agent(&self.program));
        let _ = writeln!(
            out,
            "# operation\n{} {}",
            self.op,
            print_formula(&self.argument, vocab, &PlanLibrary::empty())
        );
        let _ = writeln!(out, "# differing: {}", self.mismatch);
        let _ = writeln!(out, "# model of the changed program");
        out.push_str(&dump(&self.via_program));
        let _ = writeln!(out, "# changed model");
        out.push_str(&dump(&self.via_model));
        out
    }
}

fn semantic(m: &AgentModel, op: Operation, phi: &Formula) -> Result<AgentModel> {
    match op {
        Operation::Announce => m.announce(phi),
        Operation::ReviseBelief => m.upgrade(Order::Plausibility, phi),
        Operation::ReviseDesire => m.upgrade(Order::Desirability, phi),
        Operation::ContractBelief => m.contract(Order::Plausibility, phi),
        Operation::ContractDesire => m.contract(Order::Desirability, phi),
    }
}

fn intention_names(m: &AgentModel) -> BTreeSet<String> {
    m.intentions()
        .iter()
        .map(|&a| m.library().name(a).to_string())
        .collect()
}

/// Runs `op` on the program and on its induced model and compares the results.
pub fn compare(
    ag: &AgentProgram,
    op: Operation,
    phi: &Formula,
    cfg: &DynamicsConfig,
) -> Result<Comparison> {
    let changed = dynamics::apply(ag, op, phi, cfg)?;
    let via_program = induced_model(&changed, DEFAULT_WORLD_CAP)?;
    let via_model = semantic(&induced_model(ag, DEFAULT_WORLD_CAP)?, op, phi)?;
    let valuations = |m: &AgentModel| {
        let mut v: Vec<Valuation> = m.worlds().iter().map(|w| w.valuation).collect();
        v.sort();
        v
    };
    let mismatch = Mismatch {
        worlds: valuations(&via_program) != valuations(&via_model),
        plausibility: relation_pairs(&via_program, Order::Plausibility)
            != relation_pairs(&via_model, Order::Plausibility),
        desirability: relation_pairs(&via_program, Order::Desirability)
            != relation_pairs(&via_model, Order::Desirability),
        intentions: intention_names(&via_program) != intention_names(&via_model),
    };
    Ok(Comparison {
        program: ag.clone(),
        op,
        argument: phi.clone(),
        via_program,
        via_model,
        mismatch,
    })
}

fn rename(f: &Formula, map: &impl Fn(Symbol) -> Symbol) -> Formula {
    let r = |g: &Formula| rename(g, map);
    match f {
        Formula::Atom(s) => Formula::Atom(map(*s)),
        Formula::Top | Formula::Bot | Formula::Intend(_) => f.clone(),
        Formula::Not(a) => Formula::not(r(a)),
        Formula::And(a, b) => Formula::and(r(a), r(b)),
        Formula::Or(a, b) => Formula::or(r(a), r(b)),
        Formula::Univ(a) => Formula::univ(r(a)),
        Formula::Modal(m, a) => Formula::modal(*m, r(a)),
        Formula::Plan(alpha, a) => Formula::plan(*alpha, r(a)),
        Formula::Dynamic(op, chi, psi) => Formula::dynamic(*op, r(chi), r(psi)),
    }
}

/// Rebuilds `ag` over a new vocabulary and a filtered library, mapping
/// symbols through `map`. Intentions are carried over by plan name.
fn rebuild(
    ag: &AgentProgram,
    vocab: Arc<Vocabulary>,
    keep_plan: impl Fn(PlanId) -> bool,
    map: impl Fn(Symbol) -> Symbol,
) -> Option<AgentProgram> {
    let old = ag.library();
    let entries = old
        .iter()
        .filter(|(id, _)| keep_plan(*id))
        .map(|(_, p)| (p.name.clone(), rename(&p.pre, &map), rename(&p.post.to_formula(), &map)))
        .collect();
    let library = Arc::new(PlanLibrary::new(entries).ok()?);
    let base = |b: &StratifiedBase| -> StratifiedBase {
        b.iter().map(|e| (rename(&e.formula, &map), e.rank)).collect()
    };
    let intentions = ag
        .intentions()
        .iter()
        .map(|&a| library.lookup(old.name(a)))
        .collect::<Option<_>>()?;
    AgentProgram::new(
        vocab,
        library,
        ag.knowledge().iter().map(|k| rename(k, &map)).collect(),
        base(ag.beliefs()),
        base(ag.desires()),
        intentions,
    )
    .ok()
}

fn mentioned_symbols(ag: &AgentProgram, phi: &Formula) -> BTreeSet<Symbol> {
    let mut used = phi.symbols();
    for f in ag
        .knowledge()
        .iter()
        .chain(ag.beliefs().iter().map(|e| &e.formula))
        .chain(ag.desires().iter().map(|e| &e.formula))
    {
        used.extend(f.symbols());
    }
    for (_, p) in ag.library().iter() {
        used.extend(p.pre.symbols());
        used.extend(p.post.symbols());
    }
    used
}

/// Candidate simplifications of a failing instance, smallest changes first.
fn simplifications(ag: &AgentProgram, phi: &Formula) -> Vec<(AgentProgram, Formula)> {
    let mut out = Vec::new();
    for alpha in ag.library().ids().filter(|a| !ag.intentions().contains(a)) {
        if let Some(smaller) = rebuild(ag, ag.vocab().clone(), |b| b != alpha, |s| s) {
            out.push((smaller, phi.clone()));
        }
    }
    let used = mentioned_symbols(ag, phi);
    if let Some(unused) = ag.vocab().symbols().filter(|s| !used.contains(s)).last() {
        let names: Vec<&String> = ag
            .vocab()
            .names()
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != unused.index())
            .map(|(_, n)| n)
            .collect();
        let shift = |s: Symbol| if s.0 > unused.0 { Symbol(s.0 - 1) } else { s };
        if let Ok(vocab) = Vocabulary::new(names) {
            if let Some(smaller) = rebuild(ag, Arc::new(vocab), |_| true, shift) {
                out.push((smaller, rename(phi, &shift)));
            }
        }
    }
    for &alpha in ag.intentions() {
        let mut i = ag.intentions().clone();
        i.remove(&alpha);
        out.push((ag.with_intentions(i), phi.clone()));
    }
    for k in ag.knowledge() {
        let mut knowledge = ag.knowledge().clone();
        knowledge.remove(k);
        let strip = |base: &StratifiedBase| -> StratifiedBase {
            base.iter()
                .filter(|e| !(e.rank == 0 && &e.formula == k))
                .map(|e| (e.formula.clone(), e.rank))
                .collect()
        };
        out.push((
            ag.with_parts(knowledge, strip(ag.beliefs()), strip(ag.desires()), ag.intentions().clone()),
            phi.clone(),
        ));
    }
    let bases = |ag: &AgentProgram, b: StratifiedBase, desire: bool| {
        if desire {
            ag.with_parts(ag.knowledge().clone(), ag.beliefs().clone(), b, ag.intentions().clone())
        } else {
            ag.with_parts(ag.knowledge().clone(), b, ag.desires().clone(), ag.intentions().clone())
        }
    };
    for (desire, base) in [(false, ag.beliefs()), (true, ag.desires())] {
        for e in base.iter().filter(|e| e.rank > 0) {
            let mut smaller = base.clone();
            smaller.remove(e);
            out.push((bases(ag, smaller.clone(), desire), phi.clone()));
            if let Ok(clause) = to_conj_clause(&e.formula) {
                if clause.len() > 1 {
                    for lit in clause.iter() {
                        let mut fewer = smaller.clone();
                        let kept: ConjClause = clause.iter().filter(|&l| l != lit).collect();
                        fewer.insert(kept.to_formula(), e.rank);
                        out.push((bases(ag, fewer, desire), phi.clone()));
                    }
                }
            }
        }
        // close rank gaps
        let ranks: Vec<u32> = base.strata().keys().copied().collect();
        if ranks.iter().enumerate().any(|(i, &r)| r as usize != i) && ranks.first() == Some(&0) {
            let packed = base
                .iter()
                .map(|e| {
                    let pos = ranks.iter().position(|&r| r == e.rank).expect("rank present");
                    (e.formula.clone(), pos as u32)
                })
                .collect();
            out.push((bases(ag, packed, desire), phi.clone()));
        }
    }
    match phi {
        Formula::And(a, b) | Formula::Or(a, b) => {
            out.push((ag.clone(), (**a).clone()));
            out.push((ag.clone(), (**b).clone()));
        }
        _ => {}
    }
    out
}

/// Greedily simplifies a disagreeing instance while it keeps disagreeing in
/// the same way and the input stays acceptable to the operation.
pub fn shrink(found: Comparison, cfg: &DynamicsConfig) -> Comparison {
    let target = found.mismatch;
    let mut best = found;
    'outer: loop {
        for (ag, phi) in simplifications(&best.program, &best.argument) {
            if !ag.is_coherent().unwrap_or(false) {
                continue;
            }
            if let Ok(c) = compare(&ag, best.op, &phi, cfg) {
                if c.mismatch.overlaps(&target) {
                    best = c;
                    continue 'outer;
                }
            }
        }
        return best;
    }
}

/// Tallies of one operation's trials.
#[derive(Clone, Debug)]
pub struct OpSummary {
    pub op: Operation,
    pub trials: usize,
    pub structural_agree: usize,
    pub intentions_agree: usize,
    pub counterexample: Option<Comparison>,
}

impl OpSummary {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Result of a verification run.
#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub seed: u64,
    pub symbols: usize,
    pub filter: IntentionFilter,
    pub ops: Vec<OpSummary>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.ops.iter().all(OpSummary::passed)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let filter = match self.filter {
            IntentionFilter::Verbatim => "verbatim",
            IntentionFilter::Strict => "strict",
        };
        writeln!(
            f,
            "oracle verify: seed {} symbols {} intention filter {filter}",
            self.seed, self.symbols
        )?;
        for s in &self.ops {
            writeln!(
                f,
                "{:<10} {} trials: worlds/orders agree {}/{}, intentions agree {}/{}  {}",
                s.op.name(),
                s.trials,
                s.structural_agree,
                s.trials,
                s.intentions_agree,
                s.trials,
                if s.passed() { "PASS" } else { "FAIL" }
            )?;
        }
        for s in &self.ops {
            if let Some(c) = &s.counterexample {
                writeln!(f, "\n== minimal counterexample for {} ==", s.op.name())?;
                f.write_str(&c.report())?;
            }
        }
        write!(f, "{}", if self.passed() { "all operations agree" } else { "counterexamples found" })
    }
}

/// Runs `trials` random instances of one operation. Trial `i` draws from
/// `trial_rng(seed, i)`, so any single trial can be replayed.
pub fn verify_op(
    op: Operation,
    trials: usize,
    symbols: usize,
    seed: u64,
    cfg: &DynamicsConfig,
) -> Result<OpSummary> {
    let shape = ProgramShape::small(symbols);
    let mut summary = OpSummary {
        op,
        trials,
        structural_agree: 0,
        intentions_agree: 0,
        counterexample: None,
    };
    let stream_base = (op as u64) << 32;
    for i in 0..trials {
        let mut rng = trial_rng(seed, stream_base | i as u64);
        let ag = random_program(&mut rng, &shape);
        let phi = random_argument(&mut rng, &ag, op);
        let c = compare(&ag, op, &phi, cfg)?;
        if !c.mismatch.structural() {
            summary.structural_agree += 1;
        }
        if !c.mismatch.intentions {
            summary.intentions_agree += 1;
        }
        if c.mismatch.any() && summary.counterexample.is_none() {
            summary.counterexample = Some(shrink(c, cfg));
        }
    }
    Ok(summary)
}

/// Runs every operation in `ops`.
pub fn verify(
    ops: &[Operation],
    trials: usize,
    symbols: usize,
    seed: u64,
    cfg: &DynamicsConfig,
) -> Result<VerifyReport> {
    let ops = ops
        .iter()
        .map(|&op| verify_op(op, trials, symbols, seed, cfg))
        .collect::<Result<_>>()?;
    Ok(VerifyReport {
        seed,
        symbols,
        filter: cfg.filter,
        ops,
    })
}
