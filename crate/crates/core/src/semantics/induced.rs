//! Bridges between agent programs and agent models.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use super::model::{AgentModel, Preorder, Valuation, World, WorldId};
use crate::error::{Error, Result};
use crate::program::{AgentProgram, StratifiedBase};
use crate::syntax::{Formula, Literal, Order, Vocabulary};

/// Default bound on the vocabulary size for model construction (65,536 worlds).
pub const DEFAULT_WORLD_CAP: usize = 16;

/// The preorder a stratified base induces on a list of valuations:
/// `w <= w'` iff for every rank `i`, `w' |= Gamma_i` implies `w |= Gamma_i`,
/// or some higher-priority `j < i` has `w |= Gamma_j` and `w' |/= Gamma_j`.
pub fn induced_order(base: &StratifiedBase, worlds: &[Valuation]) -> Preorder {
    // ranks absent from the base are satisfied by every world and never
    // decide the relation
    let strata: Vec<Vec<&Formula>> = base.strata().into_values().collect();
    let sat: Vec<Vec<bool>> = worlds
        .iter()
        .map(|v| {
            strata
                .iter()
                .map(|s| s.iter().all(|f| f.eval_prop(v.0)))
                .collect()
        })
        .collect();
    Preorder::from_fn(worlds.len(), |w, v| {
        let mut earlier_witness = false;
        for (in_w, in_v) in sat[w].iter().zip(&sat[v]) {
            let implied = !in_v || *in_w;
            if !implied && !earlier_witness {
                return false;
            }
            earlier_witness |= *in_w && !in_v;
        }
        true
    })
}

/// All valuations satisfying K, ordered by the bases, with the program's intentions.
pub fn induced_model(ag: &AgentProgram, world_cap: usize) -> Result<AgentModel> {
    let size = ag.vocab().len();
    if size > world_cap || size >= 64 {
        return Err(Error::VocabularyTooLarge {
            size,
            cap: world_cap.min(63),
        });
    }
    let valuations: Vec<Valuation> = (0..1u64 << size)
        .filter(|&v| ag.knowledge().iter().all(|f| f.eval_prop(v)))
        .map(Valuation)
        .collect();
    let worlds = valuations
        .iter()
        .enumerate()
        .map(|(i, &valuation)| World {
            id: WorldId(i as u32),
            valuation,
        })
        .collect();
    Ok(AgentModel::from_parts(
        ag.vocab().clone(),
        ag.library().clone(),
        worlds,
        induced_order(ag.beliefs(), &valuations),
        induced_order(ag.desires(), &valuations),
        ag.intentions().clone(),
    ))
}

/// Equality of models up to world identity: same multiset of valuations, same
/// relations between valuations, same intentions (compared by plan name).
pub fn models_equal(a: &AgentModel, b: &AgentModel) -> Result<bool> {
    if a.vocab() != b.vocab() {
        return Err(Error::VocabularyMismatch);
    }
    let valuations = |m: &AgentModel| {
        let mut v: Vec<Valuation> = m.worlds().iter().map(|w| w.valuation).collect();
        v.sort();
        v
    };
    if valuations(a) != valuations(b) {
        return Ok(false);
    }
    for order in [Order::Plausibility, Order::Desirability] {
        if relation_pairs(a, order) != relation_pairs(b, order) {
            return Ok(false);
        }
    }
    let names = |m: &AgentModel| -> BTreeSet<String> {
        m.intentions()
            .iter()
            .map(|&alpha| m.library().name(alpha).to_string())
            .collect()
    };
    Ok(names(a) == names(b))
}

/// The order as a set of valuation pairs.
pub fn relation_pairs(m: &AgentModel, order: Order) -> BTreeSet<(Valuation, Valuation)> {
    let rel = m.order(order);
    let worlds = m.worlds();
    let mut out = BTreeSet::new();
    for i in 0..worlds.len() {
        for j in 0..worlds.len() {
            if rel.leq(i, j) {
                out.insert((worlds[i].valuation, worlds[j].valuation));
            }
        }
    }
    out
}

/// The conjunction of all vocabulary literals true at `v`.
pub fn world_description(vocab: &Vocabulary, v: Valuation) -> Formula {
    Formula::conjunction(vocab.symbols().map(|s| {
        if v.get(s.index()) {
            Literal::pos(s)
        } else {
            Literal::neg(s)
        }
        .to_formula()
    }))
}

fn describe_set(vocab: &Vocabulary, worlds: &[Valuation]) -> Formula {
    Formula::disjunction(worlds.iter().map(|&v| world_description(vocab, v)))
}

/// An agent program whose induced model is `m`. Only ranked (total) models
/// are supported. K pins the world set with a disjunction of world
/// descriptions, mirrored at rank 0 of both bases; stratum `i + 1` describes
/// the worlds of rank at most `i`.
pub fn extract_program(m: &AgentModel) -> Result<AgentProgram> {
    for order in [Order::Plausibility, Order::Desirability] {
        if !m.order(order).is_total() {
            return Err(Error::NotRanked(order.name()));
        }
    }
    let valuations: Vec<Valuation> = m.worlds().iter().map(|w| w.valuation).collect();
    if valuations.iter().collect::<BTreeSet<_>>().len() != valuations.len() {
        return Err(Error::InvalidModel("duplicate valuations".into()));
    }
    let vocab = m.vocab();
    let pin = describe_set(vocab, &valuations);
    let knowledge: BTreeSet<Formula> = [pin.clone()].into_iter().collect();
    let base_for = |order: Order| -> StratifiedBase {
        let all = vec![true; m.len()];
        let ranks: Vec<usize> = m
            .degrees(order, &all)
            .into_iter()
            .map(|d| d.expect("every world is in the full set"))
            .collect();
        let mut by_rank: BTreeMap<usize, Vec<Valuation>> = BTreeMap::new();
        for (i, &r) in ranks.iter().enumerate() {
            by_rank.entry(r).or_default().push(valuations[i]);
        }
        let top = ranks.iter().copied().max().unwrap_or(0);
        let mut base = StratifiedBase::new();
        base.insert(pin.clone(), 0);
        let mut upto = Vec::new();
        for level in 0..top {
            upto.extend(by_rank.get(&level).into_iter().flatten().copied());
            base.insert(describe_set(vocab, &upto), level as u32 + 1);
        }
        base
    };
    AgentProgram::new(
        vocab.clone(),
        Arc::clone(m.library()),
        knowledge,
        base_for(Order::Plausibility),
        base_for(Order::Desirability),
        m.intentions().clone(),
    )
}
