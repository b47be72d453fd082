use std::collections::BTreeSet;

use super::vocab::Symbol;
use crate::plans::PlanId;

/// The four order modalities.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Modality {
    /// `[<=P]`: all at-least-as-plausible worlds.
    LeqP,
    /// `[<P]`: all strictly more plausible worlds.
    LtP,
    /// `[<=D]`
    LeqD,
    /// `[<D]`
    LtD,
}

impl Modality {
    pub const ALL: [Modality; 4] = [Modality::LeqP, Modality::LtP, Modality::LeqD, Modality::LtD];

    pub fn order(self) -> Order {
        match self {
            Modality::LeqP | Modality::LtP => Order::Plausibility,
            Modality::LeqD | Modality::LtD => Order::Desirability,
        }
    }

    pub fn is_strict(self) -> bool {
        matches!(self, Modality::LtP | Modality::LtD)
    }

    pub(crate) fn token(self) -> &'static str {
        match self {
            Modality::LeqP => "<=P",
            Modality::LtP => "<P",
            Modality::LeqD => "<=D",
            Modality::LtD => "<D",
        }
    }
}

/// Which of the two preorders of an agent model an operation targets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Order {
    Plausibility,
    Desirability,
}

impl Order {
    pub fn name(self) -> &'static str {
        match self {
            Order::Plausibility => "plausibility",
            Order::Desirability => "desirability",
        }
    }
}

/// Model transformations that have a dynamic modality `[op chi] psi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Update {
    Announce,
    UpgradeP,
    UpgradeD,
    ContractP,
    ContractD,
}

impl Update {
    pub const ALL: [Update; 5] = [
        Update::Announce,
        Update::UpgradeP,
        Update::UpgradeD,
        Update::ContractP,
        Update::ContractD,
    ];

    pub(crate) fn keyword(self) -> &'static str {
        match self {
            Update::Announce => "!",
            Update::UpgradeP => "upP",
            Update::UpgradeD => "upD",
            Update::ContractP => "downP",
            Update::ContractD => "downD",
        }
    }
}

/// Formulas of the full language. Abbreviations (`B`, `G`, `Int`, diamonds, ...)
/// never appear here: the parser and the builders in `desugar` expand them.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Atom(Symbol),
    Top,
    Bot,
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    /// Universal modality `A`.
    Univ(Box<Formula>),
    Modal(Modality, Box<Formula>),
    /// `[alpha] phi`
    Plan(PlanId, Box<Formula>),
    /// `I(alpha)`
    Intend(PlanId),
    /// `[op chi] psi`; `chi` is propositional.
    Dynamic(Update, Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn atom(sym: Symbol) -> Self {
        Formula::Atom(sym)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn univ(f: Formula) -> Self {
        Formula::Univ(Box::new(f))
    }

    pub fn modal(m: Modality, f: Formula) -> Self {
        Formula::Modal(m, Box::new(f))
    }

    pub fn plan(alpha: PlanId, f: Formula) -> Self {
        Formula::Plan(alpha, Box::new(f))
    }

    pub fn dynamic(op: Update, chi: Formula, psi: Formula) -> Self {
        Formula::Dynamic(op, Box::new(chi), Box::new(psi))
    }

    /// Left fold with `And`; the empty conjunction is `Top`.
    pub fn conjunction<I: IntoIterator<Item = Formula>>(parts: I) -> Self {
        parts
            .into_iter()
            .reduce(Formula::and)
            .unwrap_or(Formula::Top)
    }

    /// Left fold with `Or`; the empty disjunction is `Bot`.
    pub fn disjunction<I: IntoIterator<Item = Formula>>(parts: I) -> Self {
        parts
            .into_iter()
            .reduce(Formula::or)
            .unwrap_or(Formula::Bot)
    }

    /// True iff the formula belongs to plain propositional logic.
    pub fn is_propositional(&self) -> bool {
        match self {
            Formula::Atom(_) | Formula::Top | Formula::Bot => true,
            Formula::Not(f) => f.is_propositional(),
            Formula::And(a, b) | Formula::Or(a, b) => a.is_propositional() && b.is_propositional(),
            _ => false,
        }
    }

    /// Evaluates a propositional formula under a valuation bitmask.
    ///
    /// Panics on modal operators; check [`Formula::is_propositional`] first.
    pub fn eval_prop(&self, valuation: u64) -> bool {
        match self {
            Formula::Atom(s) => valuation >> s.0 & 1 == 1,
            Formula::Top => true,
            Formula::Bot => false,
            Formula::Not(f) => !f.eval_prop(valuation),
            Formula::And(a, b) => a.eval_prop(valuation) && b.eval_prop(valuation),
            Formula::Or(a, b) => a.eval_prop(valuation) || b.eval_prop(valuation),
            other => panic!("eval_prop on modal formula {other:?}"),
        }
    }

    /// Propositional symbols occurring anywhere in the formula.
    pub fn symbols(&self) -> BTreeSet<Symbol> {
        let mut out = BTreeSet::new();
        self.collect_symbols(&mut out);
        out
    }

    fn collect_symbols(&self, out: &mut BTreeSet<Symbol>) {
        match self {
            Formula::Atom(s) => {
                out.insert(*s);
            }
            Formula::Top | Formula::Bot | Formula::Intend(_) => {}
            Formula::Not(f) | Formula::Univ(f) | Formula::Modal(_, f) | Formula::Plan(_, f) => {
                f.collect_symbols(out)
            }
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Dynamic(_, a, b) => {
                a.collect_symbols(out);
                b.collect_symbols(out);
            }
        }
    }

    /// Plan symbols occurring in `[alpha]` and `I(alpha)` subformulas.
    pub fn plans(&self) -> BTreeSet<PlanId> {
        let mut out = BTreeSet::new();
        self.collect_plans(&mut out);
        out
    }

    fn collect_plans(&self, out: &mut BTreeSet<PlanId>) {
        match self {
            Formula::Atom(_) | Formula::Top | Formula::Bot => {}
            Formula::Intend(a) => {
                out.insert(*a);
            }
            Formula::Plan(a, f) => {
                out.insert(*a);
                f.collect_plans(out);
            }
            Formula::Not(f) | Formula::Univ(f) | Formula::Modal(_, f) => f.collect_plans(out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Dynamic(_, a, b) => {
                a.collect_plans(out);
                b.collect_plans(out);
            }
        }
    }

    /// Number of AST nodes.
    pub fn size(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::Top | Formula::Bot | Formula::Intend(_) => 1,
            Formula::Not(f) | Formula::Univ(f) | Formula::Modal(_, f) | Formula::Plan(_, f) => {
                1 + f.size()
            }
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Dynamic(_, a, b) => {
                1 + a.size() + b.size()
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn propositional_evaluation() {
        let p = Formula::atom(Symbol(0));
        let q = Formula::atom(Symbol(1));
        let f = Formula::and(p.clone(), Formula::not(q.clone()));
        assert!(f.eval_prop(0b01));
        assert!(!f.eval_prop(0b11));
        assert!(!f.eval_prop(0b00));
        assert!(Formula::or(p, q).eval_prop(0b10));
    }

    #[test]
    fn folds_of_empty_sequences() {
        assert_eq!(Formula::conjunction(vec![]), Formula::Top);
        assert_eq!(Formula::disjunction(vec![]), Formula::Bot);
    }

    #[test]
    fn modal_formulas_are_not_propositional() {
        let f = Formula::univ(Formula::Top);
        assert!(!f.is_propositional());
        assert!(Formula::not(Formula::Bot).is_propositional());
    }
}
