use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::plans::{PlanId, PlanLibrary};
use crate::syntax::{Order, Vocabulary};

/// Opaque world identifier, stable across transformations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WorldId(pub u32);

/// Total valuation as a bitmask: bit `i` is the value of symbol `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Valuation(pub u64);

impl Valuation {
    pub fn get(self, symbol: usize) -> bool {
        self.0 >> symbol & 1 == 1
    }

    pub fn set(self, symbol: usize, value: bool) -> Self {
        if value {
            Valuation(self.0 | 1 << symbol)
        } else {
            Valuation(self.0 & !(1 << symbol))
        }
    }

    pub fn true_atoms(self, vocab: &Vocabulary) -> Vec<&str> {
        vocab
            .symbols()
            .filter(|s| self.get(s.index()))
            .map(|s| vocab.name(s))
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct World {
    pub id: WorldId,
    pub valuation: Valuation,
}

/// A binary relation over world positions `0..n`, stored as a bit matrix.
/// Row `i` holds the `j` with `i <= j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Preorder {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl Preorder {
    pub fn empty(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        Preorder {
            n,
            words,
            bits: vec![0; n * words],
        }
    }

    /// Every pair related: all worlds equally ranked.
    pub fn total(n: usize) -> Self {
        Self::from_fn(n, |_, _| true)
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| i == j)
    }

    pub fn from_fn(n: usize, mut leq: impl FnMut(usize, usize) -> bool) -> Self {
        let mut r = Self::empty(n);
        for i in 0..n {
            for j in 0..n {
                if leq(i, j) {
                    r.set(i, j, true);
                }
            }
        }
        r
    }

    /// Ranked preorder: `i <= j` iff `rank[i] <= rank[j]`.
    pub fn from_ranks(ranks: &[usize]) -> Self {
        Self::from_fn(ranks.len(), |i, j| ranks[i] <= ranks[j])
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    /// Strict part: `i <= j` and not `j <= i`.
    pub fn lt(&self, i: usize, j: usize) -> bool {
        self.leq(i, j) && !self.leq(j, i)
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        let w = &mut self.bits[i * self.words + j / 64];
        if value {
            *w |= 1 << (j % 64);
        } else {
            *w &= !(1 << (j % 64));
        }
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.n).all(|i| self.leq(i, i))
    }

    pub fn is_transitive(&self) -> bool {
        for i in 0..self.n {
            for j in 0..self.n {
                if !self.leq(i, j) {
                    continue;
                }
                let (ri, rj) = (self.row(i), self.row(j));
                // row j must be contained in row i
                if rj.iter().zip(ri).any(|(b, a)| b & !a != 0) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_preorder(&self) -> bool {
        self.is_reflexive() && self.is_transitive()
    }

    pub fn is_total(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| self.leq(i, j) || self.leq(j, i)))
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words..(i + 1) * self.words]
    }

    /// Reflexive-transitive closure (Warshall over bit rows).
    pub fn closure(&self) -> Self {
        let mut r = self.clone();
        for i in 0..self.n {
            r.set(i, i, true);
        }
        for k in 0..self.n {
            let row_k: Vec<u64> = r.row(k).to_vec();
            for i in 0..self.n {
                if r.leq(i, k) {
                    let base = i * r.words;
                    for (w, bk) in row_k.iter().enumerate() {
                        r.bits[base + w] |= bk;
                    }
                }
            }
        }
        r
    }

    /// The relation restricted to the listed positions, renumbered in order.
    pub fn restrict(&self, keep: &[usize]) -> Self {
        Self::from_fn(keep.len(), |i, j| self.leq(keep[i], keep[j]))
    }
}

/// `<W, <=_P, <=_D, I, v>` over a plan library.
#[derive(Clone, Debug)]
pub struct AgentModel {
    vocab: Arc<Vocabulary>,
    library: Arc<PlanLibrary>,
    worlds: Vec<World>,
    plausibility: Preorder,
    desirability: Preorder,
    intentions: BTreeSet<PlanId>,
}

impl AgentModel {
    pub fn new(
        vocab: Arc<Vocabulary>,
        library: Arc<PlanLibrary>,
        worlds: Vec<World>,
        plausibility: Preorder,
        desirability: Preorder,
        intentions: BTreeSet<PlanId>,
    ) -> Result<Self> {
        let n = worlds.len();
        if plausibility.len() != n || desirability.len() != n {
            return Err(Error::InvalidModel(
                "relation size does not match the number of worlds".into(),
            ));
        }
        let ids: BTreeSet<WorldId> = worlds.iter().map(|w| w.id).collect();
        if ids.len() != n {
            return Err(Error::InvalidModel("duplicate world id".into()));
        }
        if vocab.len() < 64 {
            if let Some(w) = worlds.iter().find(|w| w.valuation.0 >> vocab.len() != 0) {
                return Err(Error::InvalidModel(format!(
                    "world {} sets bits outside the vocabulary",
                    w.id.0
                )));
            }
        }
        for (order, rel) in [
            (Order::Plausibility, &plausibility),
            (Order::Desirability, &desirability),
        ] {
            if !rel.is_preorder() {
                return Err(Error::InvalidModel(format!(
                    "{} relation is not a preorder",
                    order.name()
                )));
            }
        }
        for alpha in &intentions {
            library.get(*alpha)?;
        }
        Ok(AgentModel {
            vocab,
            library,
            worlds,
            plausibility,
            desirability,
            intentions,
        })
    }

    /// Construction without validation, for transformations that establish
    /// the invariants themselves.
    pub(crate) fn from_parts(
        vocab: Arc<Vocabulary>,
        library: Arc<PlanLibrary>,
        worlds: Vec<World>,
        plausibility: Preorder,
        desirability: Preorder,
        intentions: BTreeSet<PlanId>,
    ) -> Self {
        debug_assert!(plausibility.is_preorder() && desirability.is_preorder());
        AgentModel {
            vocab,
            library,
            worlds,
            plausibility,
            desirability,
            intentions,
        }
    }

    pub fn vocab(&self) -> &Arc<Vocabulary> {
        &self.vocab
    }

    pub fn library(&self) -> &Arc<PlanLibrary> {
        &self.library
    }

    pub fn worlds(&self) -> &[World] {
        &self.worlds
    }

    pub fn len(&self) -> usize {
        self.worlds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.worlds.is_empty()
    }

    pub fn order(&self, order: Order) -> &Preorder {
        match order {
            Order::Plausibility => &self.plausibility,
            Order::Desirability => &self.desirability,
        }
    }

    pub fn plausibility(&self) -> &Preorder {
        &self.plausibility
    }

    pub fn desirability(&self) -> &Preorder {
        &self.desirability
    }

    pub fn intentions(&self) -> &BTreeSet<PlanId> {
        &self.intentions
    }

    pub fn position(&self, id: WorldId) -> Result<usize> {
        self.worlds
            .iter()
            .position(|w| w.id == id)
            .ok_or(Error::UnknownWorld(id.0))
    }

    pub(crate) fn with_order(&self, order: Order, rel: Preorder) -> Self {
        let mut m = self.clone();
        match order {
            Order::Plausibility => m.plausibility = rel,
            Order::Desirability => m.desirability = rel,
        }
        m
    }

    pub(crate) fn with_intentions(mut self, intentions: BTreeSet<PlanId>) -> Self {
        self.intentions = intentions;
        self
    }

    /// Keeps the worlds at the given positions (in order), restricting both relations.
    pub(crate) fn restrict(&self, keep: &[usize]) -> Self {
        AgentModel {
            vocab: self.vocab.clone(),
            library: self.library.clone(),
            worlds: keep.iter().map(|&i| self.worlds[i]).collect(),
            plausibility: self.plausibility.restrict(keep),
            desirability: self.desirability.restrict(keep),
            intentions: self.intentions.clone(),
        }
    }

    pub(crate) fn worlds_mut(&mut self) -> &mut Vec<World> {
        &mut self.worlds
    }
}
