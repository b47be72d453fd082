//! Model transformations: plan execution, announcement, radical upgrade and
//! lexicographic contraction, plus intention re-filtering.

use std::collections::BTreeSet;

use super::model::{AgentModel, Preorder};
use crate::error::{Error, Result};
use crate::plans::PlanId;
use crate::syntax::desugar::{admissible_intention, belief};
use crate::syntax::{Formula, Order, Update};

impl AgentModel {
    /// Executes plan `alpha`: drops worlds failing its precondition and forces
    /// the postcondition literals on the survivors. World ids are kept, so two
    /// worlds may end up with the same valuation.
    pub fn update_plan(&self, alpha: PlanId) -> Result<AgentModel> {
        Ok(self.update_plan_tracked(alpha)?.0)
    }

    pub(crate) fn update_plan_tracked(&self, alpha: PlanId) -> Result<(AgentModel, Vec<usize>)> {
        let plan = self.library().get(alpha)?;
        let pre = self.extension(&plan.pre)?;
        let kept: Vec<usize> = (0..self.len()).filter(|&i| pre[i]).collect();
        let mut updated = self.restrict(&kept);
        for w in updated.worlds_mut() {
            for lit in plan.post.iter() {
                w.valuation = w.valuation.set(lit.symbol.index(), lit.positive);
            }
        }
        Ok((updated, kept))
    }

    /// Public announcement of `phi`: restriction to the `phi`-worlds.
    pub fn announce(&self, phi: &Formula) -> Result<AgentModel> {
        Ok(self.announce_tracked(phi)?.0)
    }

    fn announce_tracked(&self, phi: &Formula) -> Result<(AgentModel, Vec<usize>)> {
        let ext = self.extension(phi)?;
        let kept: Vec<usize> = (0..self.len()).filter(|&i| ext[i]).collect();
        let restricted = self.restrict(&kept);
        let intentions = restricted.max_coherent_intentions()?;
        Ok((restricted.with_intentions(intentions), kept))
    }

    /// Radical upgrade of one order by `phi`: every `phi`-world becomes
    /// strictly better than every non-`phi`-world; the rest is untouched.
    pub fn upgrade(&self, order: Order, phi: &Formula) -> Result<AgentModel> {
        let ext = self.extension(phi)?;
        let old = self.order(order);
        let rel = Preorder::from_fn(self.len(), |w, v| {
            let removed = !ext[w] && ext[v];
            let added = ext[w] && !ext[v];
            (old.leq(w, v) && !removed) || added
        });
        if !rel.is_preorder() {
            return Err(Error::ResultNotPreorder(order.name()));
        }
        self.refiltered(self.with_order(order, rel))
    }

    /// Lexicographic contraction of one order by `phi`. Pairs on the same side
    /// of `phi` keep their old relation; cross pairs compare degrees strictly.
    /// The reflexive-transitive closure of the result is returned.
    pub fn contract(&self, order: Order, phi: &Formula) -> Result<AgentModel> {
        let ext = self.extension(phi)?;
        let neg: Vec<bool> = ext.iter().map(|b| !b).collect();
        let d_pos = self.degrees(order, &ext);
        let d_neg = self.degrees(order, &neg);
        let old = self.order(order);
        let raw = Preorder::from_fn(self.len(), |w, v| match (ext[w], ext[v]) {
            (true, true) | (false, false) => old.leq(w, v),
            (true, false) => d_pos[w] < d_neg[v],
            (false, true) => d_neg[w] < d_pos[v],
        });
        let rel = raw.closure();
        debug_assert!(rel.is_preorder());
        self.refiltered(self.with_order(order, rel))
    }

    fn refiltered(&self, model: AgentModel) -> Result<AgentModel> {
        let intentions = model.max_coherent_intentions()?;
        Ok(model.with_intentions(intentions))
    }

    /// Applies the transformation behind a dynamic modality.
    pub fn apply_update(&self, op: Update, phi: &Formula) -> Result<AgentModel> {
        Ok(self.apply_update_tracked(op, phi)?.0)
    }

    pub(crate) fn apply_update_tracked(
        &self,
        op: Update,
        phi: &Formula,
    ) -> Result<(AgentModel, Vec<usize>)> {
        let all = || (0..self.len()).collect::<Vec<_>>();
        Ok(match op {
            Update::Announce => self.announce_tracked(phi)?,
            Update::UpgradeP => (self.upgrade(Order::Plausibility, phi)?, all()),
            Update::UpgradeD => (self.upgrade(Order::Desirability, phi)?, all()),
            Update::ContractP => (self.contract(Order::Plausibility, phi)?, all()),
            Update::ContractD => (self.contract(Order::Desirability, phi)?, all()),
        })
    }

    /// The adopted plans that are coherent in this model: believed executable
    /// and with an admissible postcondition. The test is per plan, so this is
    /// the unique maximal coherent subset.
    pub fn max_coherent_intentions(&self) -> Result<BTreeSet<PlanId>> {
        let mut out = BTreeSet::new();
        for &alpha in self.intentions() {
            let plan = self.library().get(alpha)?;
            if self.holds_everywhere(&belief(plan.pre.clone()))?
                && self.holds_everywhere(&admissible_intention(plan.post.to_formula()))?
            {
                out.insert(alpha);
            }
        }
        Ok(out)
    }

    pub fn is_coherent(&self) -> Result<bool> {
        Ok(self.max_coherent_intentions()?.len() == self.intentions().len())
    }
}
