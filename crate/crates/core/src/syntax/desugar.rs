//! Expansions of the derived operators into the core grammar.

use std::str::FromStr;

use super::formula::{Formula, Modality, Order};
use crate::error::{Error, Result};
use crate::plans::{PlanId, PlanLibrary};

/// `a -> b` as `~(a & ~b)`.
pub fn implies(a: Formula, b: Formula) -> Formula {
    Formula::not(Formula::and(a, Formula::not(b)))
}

/// `E phi` as `~A ~phi`.
pub fn possible(phi: Formula) -> Formula {
    Formula::not(Formula::univ(Formula::not(phi)))
}

/// `<m> phi` as `~[m] ~phi`.
pub fn diamond(m: Modality, phi: Formula) -> Formula {
    Formula::not(Formula::modal(m, Formula::not(phi)))
}

/// `min_P phi` / `min_D phi`: `phi & ~<<> phi`, true exactly at the minimal phi-worlds.
pub fn minimal(order: Order, phi: Formula) -> Formula {
    let strict = match order {
        Order::Plausibility => Modality::LtP,
        Order::Desirability => Modality::LtD,
    };
    Formula::and(phi.clone(), Formula::not(diamond(strict, phi)))
}

/// `K phi` is the universal modality.
pub fn knowledge(phi: Formula) -> Formula {
    Formula::univ(phi)
}

/// `B phi` as `A(min_P top -> phi)`.
pub fn belief(phi: Formula) -> Formula {
    Formula::univ(implies(minimal(Order::Plausibility, Formula::Top), phi))
}

/// `G phi` as `A(min_D top -> phi)`.
pub fn goal(phi: Formula) -> Formula {
    Formula::univ(implies(minimal(Order::Desirability, Formula::Top), phi))
}

/// `AdmInt phi` as `G(phi) & E(phi) & ~B(phi)`.
pub fn admissible_intention(phi: Formula) -> Formula {
    Formula::and(
        Formula::and(goal(phi.clone()), possible(phi.clone())),
        Formula::not(belief(phi)),
    )
}

/// `Int phi`: admissible, and some adopted plan is believed executable and to bring `phi` about.
/// The disjunction ranges over the whole library; it is `bot` for an empty one.
pub fn intention_that(phi: Formula, library: &PlanLibrary) -> Formula {
    let witnesses = library.ids().map(|alpha| plan_witness(alpha, &phi, library));
    Formula::and(admissible_intention(phi.clone()), Formula::disjunction(witnesses))
}

fn plan_witness(alpha: PlanId, phi: &Formula, library: &PlanLibrary) -> Formula {
    let pre = library.plan(alpha).pre.clone();
    Formula::and(
        Formula::Intend(alpha),
        belief(Formula::and(pre, Formula::plan(alpha, phi.clone()))),
    )
}

/// Named derived operators accepted by [`desugar`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Abbrev {
    K,
    B,
    G,
    E,
    AdmInt,
    Int,
    MinP,
    MinD,
    DiamondLeqP,
    DiamondLtP,
    DiamondLeqD,
    DiamondLtD,
    Implies,
}

impl Abbrev {
    pub fn name(self) -> &'static str {
        match self {
            Abbrev::K => "K",
            Abbrev::B => "B",
            Abbrev::G => "G",
            Abbrev::E => "E",
            Abbrev::AdmInt => "AdmInt",
            Abbrev::Int => "Int",
            Abbrev::MinP => "min_P",
            Abbrev::MinD => "min_D",
            Abbrev::DiamondLeqP => "<<=P>",
            Abbrev::DiamondLtP => "<<P>",
            Abbrev::DiamondLeqD => "<<=D>",
            Abbrev::DiamondLtD => "<<D>",
            Abbrev::Implies => "->",
        }
    }

    fn arity(self) -> usize {
        match self {
            Abbrev::Implies => 2,
            _ => 1,
        }
    }
}

impl FromStr for Abbrev {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "K" => Abbrev::K,
            "B" => Abbrev::B,
            "G" => Abbrev::G,
            "E" => Abbrev::E,
            "AdmInt" => Abbrev::AdmInt,
            "Int" => Abbrev::Int,
            "min_P" => Abbrev::MinP,
            "min_D" => Abbrev::MinD,
            "<<=P>" => Abbrev::DiamondLeqP,
            "<<P>" => Abbrev::DiamondLtP,
            "<<=D>" => Abbrev::DiamondLeqD,
            "<<D>" => Abbrev::DiamondLtD,
            "->" | "implies" => Abbrev::Implies,
            other => return Err(Error::UnknownAbbreviation(other.to_string())),
        })
    }
}

/// Expands `abbrev` applied to `args`.
pub fn desugar(abbrev: Abbrev, args: &[Formula], library: &PlanLibrary) -> Result<Formula> {
    if args.len() != abbrev.arity() {
        return Err(Error::Arity {
            name: abbrev.name(),
            expected: abbrev.arity(),
            got: args.len(),
        });
    }
    let phi = args[0].clone();
    Ok(match abbrev {
        Abbrev::K => knowledge(phi),
        Abbrev::B => belief(phi),
        Abbrev::G => goal(phi),
        Abbrev::E => possible(phi),
        Abbrev::AdmInt => admissible_intention(phi),
        Abbrev::Int => intention_that(phi, library),
        Abbrev::MinP => minimal(Order::Plausibility, phi),
        Abbrev::MinD => minimal(Order::Desirability, phi),
        Abbrev::DiamondLeqP => diamond(Modality::LeqP, phi),
        Abbrev::DiamondLtP => diamond(Modality::LtP, phi),
        Abbrev::DiamondLeqD => diamond(Modality::LeqD, phi),
        Abbrev::DiamondLtD => diamond(Modality::LtD, phi),
        Abbrev::Implies => implies(phi, args[1].clone()),
    })
}
