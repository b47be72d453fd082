//! Model checking by structural recursion over whole extensions.

use std::collections::BTreeSet;

use super::model::{AgentModel, WorldId};
use crate::error::{Error, Result};
use crate::syntax::{Formula, Order};

impl AgentModel {
    /// Truth value of `phi` at every world, by position.
    pub fn extension(&self, phi: &Formula) -> Result<Vec<bool>> {
        let n = self.len();
        Ok(match phi {
            Formula::Atom(s) => self
                .worlds()
                .iter()
                .map(|w| w.valuation.get(s.index()))
                .collect(),
            Formula::Top => vec![true; n],
            Formula::Bot => vec![false; n],
            Formula::Not(f) => self.extension(f)?.into_iter().map(|b| !b).collect(),
            Formula::And(a, b) => {
                let (ea, eb) = (self.extension(a)?, self.extension(b)?);
                ea.into_iter().zip(eb).map(|(x, y)| x && y).collect()
            }
            Formula::Or(a, b) => {
                let (ea, eb) = (self.extension(a)?, self.extension(b)?);
                ea.into_iter().zip(eb).map(|(x, y)| x || y).collect()
            }
            Formula::Univ(f) => {
                let all = self.extension(f)?.into_iter().all(|b| b);
                vec![all; n]
            }
            Formula::Modal(m, f) => {
                let inner = self.extension(f)?;
                let rel = self.order(m.order());
                (0..n)
                    .map(|w| {
                        (0..n).all(|v| {
                            let related = if m.is_strict() {
                                rel.lt(v, w)
                            } else {
                                rel.leq(v, w)
                            };
                            !related || inner[v]
                        })
                    })
                    .collect()
            }
            Formula::Plan(alpha, f) => {
                let (updated, kept) = self.update_plan_tracked(*alpha)?;
                let inner = updated.extension(f)?;
                lift(n, &kept, &inner)
            }
            Formula::Intend(alpha) => {
                self.library().get(*alpha)?;
                vec![self.intentions().contains(alpha); n]
            }
            Formula::Dynamic(op, chi, psi) => {
                let (transformed, kept) = self.apply_update_tracked(*op, chi)?;
                let inner = transformed.extension(psi)?;
                lift(n, &kept, &inner)
            }
        })
    }

    /// `M, w |= phi`.
    pub fn evaluate(&self, w: WorldId, phi: &Formula) -> Result<bool> {
        let i = self.position(w)?;
        Ok(self.extension(phi)?[i])
    }

    /// `M |= phi`: true at every world (vacuously so on the empty model).
    pub fn holds_everywhere(&self, phi: &Formula) -> Result<bool> {
        Ok(self.extension(phi)?.into_iter().all(|b| b))
    }

    pub fn extension_ids(&self, phi: &Formula) -> Result<BTreeSet<WorldId>> {
        let ext = self.extension(phi)?;
        Ok(self
            .worlds()
            .iter()
            .zip(ext)
            .filter(|(_, b)| *b)
            .map(|(w, _)| w.id)
            .collect())
    }

    /// `{w in S | for all w' in S: w' <= w implies w <= w'}`.
    pub fn min_worlds(&self, order: Order, set: &BTreeSet<WorldId>) -> Result<BTreeSet<WorldId>> {
        let mut mask = vec![false; self.len()];
        for id in set {
            mask[self.position(*id)?] = true;
        }
        let min = self.min_mask(order, &mask);
        Ok(self
            .worlds()
            .iter()
            .zip(min)
            .filter(|(_, b)| *b)
            .map(|(w, _)| w.id)
            .collect())
    }

    pub(crate) fn min_mask(&self, order: Order, set: &[bool]) -> Vec<bool> {
        let rel = self.order(order);
        (0..self.len())
            .map(|w| set[w] && (0..self.len()).all(|v| !set[v] || !rel.leq(v, w) || rel.leq(w, v)))
            .collect()
    }

    /// Longest strict chain, inside `set`, ending at each member of `set`.
    /// Chains start at minimal members, so this is the plausibility (or
    /// desirability) degree of every world for the formula whose extension is `set`.
    pub(crate) fn degrees(&self, order: Order, set: &[bool]) -> Vec<Option<usize>> {
        let rel = self.order(order);
        let n = self.len();
        let mut memo: Vec<Option<usize>> = vec![None; n];
        // strict parts of preorders are acyclic, so process worlds by the
        // number of strict predecessors inside the set
        let mut order_idx: Vec<usize> = (0..n).filter(|&w| set[w]).collect();
        order_idx.sort_by_key(|&w| (0..n).filter(|&v| set[v] && rel.lt(v, w)).count());
        for &w in &order_idx {
            let best = (0..n)
                .filter(|&v| set[v] && rel.lt(v, w))
                .map(|v| memo[v].expect("strict predecessor processed first") + 1)
                .max()
                .unwrap_or(0);
            memo[w] = Some(best);
        }
        memo
    }

    /// Plausibility/desirability degree of `w` for `phi`.
    pub fn degree(&self, order: Order, phi: &Formula, w: WorldId) -> Result<usize> {
        let i = self.position(w)?;
        let ext = self.extension(phi)?;
        if !ext[i] {
            return Err(Error::WorldOutsideExtension(w.0));
        }
        Ok(self.degrees(order, &ext)[i].expect("member of the extension"))
    }
}

/// Values of a transformed model pulled back to the original positions;
/// worlds the transformation deleted are vacuously true.
fn lift(n: usize, kept: &[usize], inner: &[bool]) -> Vec<bool> {
    let mut out = vec![true; n];
    for (new, &old) in kept.iter().enumerate() {
        out[old] = inner[new];
    }
    out
}
