//! Conjunctions and disjunctive normal forms over literals.
//!
//! Recognition is purely syntactic: a formula that is not already shaped as a
//! conjunction (resp. disjunction of conjunctions) of literals is refused, never
//! normalized.

use std::collections::{BTreeMap, BTreeSet};

use super::formula::Formula;
use super::vocab::{Symbol, Vocabulary};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub symbol: Symbol,
    pub positive: bool,
}

impl Literal {
    pub fn pos(symbol: Symbol) -> Self {
        Literal {
            symbol,
            positive: true,
        }
    }

    pub fn neg(symbol: Symbol) -> Self {
        Literal {
            symbol,
            positive: false,
        }
    }

    pub fn negated(self) -> Self {
        Literal {
            symbol: self.symbol,
            positive: !self.positive,
        }
    }

    pub fn holds(self, valuation: u64) -> bool {
        (valuation >> self.symbol.0 & 1 == 1) == self.positive
    }

    pub fn to_formula(self) -> Formula {
        let atom = Formula::atom(self.symbol);
        if self.positive {
            atom
        } else {
            Formula::not(atom)
        }
    }

    pub fn display(self, vocab: &Vocabulary) -> String {
        let sign = if self.positive { "" } else { "~" };
        format!("{sign}{}", vocab.name(self.symbol))
    }
}

/// A finite set of literals read conjunctively. Also serves as a partial
/// assignment (a literal set) when consistent.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ConjClause {
    literals: BTreeSet<Literal>,
}

/// A literal set, e.g. the output of the maximal-consistent-subset computation.
pub type LiteralSet = ConjClause;

impl ConjClause {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.literals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.literals.is_empty()
    }

    pub fn contains(&self, lit: Literal) -> bool {
        self.literals.contains(&lit)
    }

    pub fn insert(&mut self, lit: Literal) -> bool {
        self.literals.insert(lit)
    }

    pub fn iter(&self) -> impl Iterator<Item = Literal> + '_ {
        self.literals.iter().copied()
    }

    pub fn extend(&mut self, other: &ConjClause) {
        self.literals.extend(other.iter());
    }

    pub fn union(&self, other: &ConjClause) -> ConjClause {
        let mut out = self.clone();
        out.extend(other);
        out
    }

    /// No literal occurs together with its complement.
    pub fn is_consistent(&self) -> bool {
        // literals of one symbol are adjacent in the ordering
        self.literals
            .iter()
            .zip(self.literals.iter().skip(1))
            .all(|(a, b)| a.symbol != b.symbol)
    }

    /// Some literal of `self` is complementary to one of `other`.
    pub fn clashes_with(&self, other: &ConjClause) -> bool {
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        small.iter().any(|l| large.contains(l.negated()))
    }

    pub fn symbols(&self) -> BTreeSet<Symbol> {
        self.iter().map(|l| l.symbol).collect()
    }

    /// Truth value of `sym` fixed by this (consistent) set, if any.
    pub fn value_of(&self, sym: Symbol) -> Option<bool> {
        if self.contains(Literal::pos(sym)) {
            Some(true)
        } else if self.contains(Literal::neg(sym)) {
            Some(false)
        } else {
            None
        }
    }

    pub fn holds(&self, valuation: u64) -> bool {
        self.iter().all(|l| l.holds(valuation))
    }

    /// Drops every literal over a symbol in `symbols`.
    pub fn without_symbols(&self, symbols: &BTreeSet<Symbol>) -> ConjClause {
        self.iter()
            .filter(|l| !symbols.contains(&l.symbol))
            .collect()
    }

    pub fn to_formula(&self) -> Formula {
        Formula::conjunction(self.iter().map(Literal::to_formula))
    }

    /// Classical entailment `self |= query` for a consistent literal set.
    pub fn entails(&self, query: &DnfFormula) -> bool {
        debug_assert!(self.is_consistent());
        query.entailed_by(self)
    }

    pub fn entails_clause(&self, clause: &ConjClause) -> bool {
        clause.literals.is_subset(&self.literals)
    }

    pub fn display(&self, vocab: &Vocabulary) -> String {
        if self.is_empty() {
            return "top".to_string();
        }
        self.iter()
            .map(|l| l.display(vocab))
            .collect::<Vec<_>>()
            .join(" & ")
    }
}

impl FromIterator<Literal> for ConjClause {
    fn from_iter<T: IntoIterator<Item = Literal>>(iter: T) -> Self {
        ConjClause {
            literals: iter.into_iter().collect(),
        }
    }
}

/// Disjunction of conjunctive clauses, in textual order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DnfFormula {
    clauses: Vec<ConjClause>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Truth {
    True,
    False,
    Unknown,
}

impl DnfFormula {
    /// An empty clause list is rejected; use `[{}]` for top.
    pub fn new(clauses: Vec<ConjClause>) -> Option<Self> {
        if clauses.is_empty() {
            None
        } else {
            Some(DnfFormula { clauses })
        }
    }

    pub fn single(clause: ConjClause) -> Self {
        DnfFormula {
            clauses: vec![clause],
        }
    }

    pub fn clauses(&self) -> &[ConjClause] {
        &self.clauses
    }

    pub fn symbols(&self) -> BTreeSet<Symbol> {
        self.clauses.iter().flat_map(|c| c.symbols()).collect()
    }

    pub fn holds(&self, valuation: u64) -> bool {
        self.clauses.iter().any(|c| c.holds(valuation))
    }

    pub fn to_formula(&self) -> Formula {
        Formula::disjunction(self.clauses.iter().map(ConjClause::to_formula))
    }

    /// If every clause is a single literal, those literals.
    pub fn as_literal_disjunction(&self) -> Option<Vec<Literal>> {
        self.clauses
            .iter()
            .map(|c| {
                if c.len() == 1 {
                    c.iter().next()
                } else {
                    None
                }
            })
            .collect()
    }

    /// Exact entailment from a consistent partial assignment.
    ///
    /// Clauses are first evaluated three-valued; only the symbols of still
    /// undetermined clauses that `partial` leaves open are enumerated.
    pub fn entailed_by(&self, partial: &ConjClause) -> bool {
        let mut open = Vec::new();
        for clause in &self.clauses {
            match three_valued(clause, partial) {
                Truth::True => return true,
                Truth::False => {}
                Truth::Unknown => open.push(clause),
            }
        }
        if open.is_empty() {
            return false;
        }
        let free: Vec<Symbol> = open
            .iter()
            .flat_map(|c| c.iter().map(|l| l.symbol))
            .filter(|s| partial.value_of(*s).is_none())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let position: BTreeMap<Symbol, usize> =
            free.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        assert!(free.len() < 64, "too many free symbols in query");
        (0u64..1 << free.len()).all(|bits| {
            open.iter().any(|clause| {
                clause.iter().all(|l| match position.get(&l.symbol) {
                    Some(&i) => (bits >> i & 1 == 1) == l.positive,
                    // fixed literals of an open clause are already known true
                    None => true,
                })
            })
        })
    }

    pub fn display(&self, vocab: &Vocabulary) -> String {
        self.clauses
            .iter()
            .map(|c| {
                if c.len() > 1 && self.clauses.len() > 1 {
                    format!("({})", c.display(vocab))
                } else {
                    c.display(vocab)
                }
            })
            .collect::<Vec<_>>()
            .join(" | ")
    }
}

fn three_valued(clause: &ConjClause, partial: &ConjClause) -> Truth {
    let mut all_true = true;
    for l in clause.iter() {
        match partial.value_of(l.symbol) {
            Some(v) if v != l.positive => return Truth::False,
            Some(_) => {}
            None => all_true = false,
        }
    }
    if all_true {
        Truth::True
    } else {
        Truth::Unknown
    }
}

/// Flattens a conjunction of literals (modulo associativity and `top` units).
pub fn to_conj_clause(f: &Formula) -> Result<ConjClause> {
    let mut out = ConjClause::new();
    collect_conjuncts(f, f, &mut out)?;
    Ok(out)
}

fn collect_conjuncts(root: &Formula, f: &Formula, out: &mut ConjClause) -> Result<()> {
    match f {
        Formula::Top => Ok(()),
        Formula::Atom(s) => {
            out.insert(Literal::pos(*s));
            Ok(())
        }
        Formula::Not(inner) => match inner.as_ref() {
            Formula::Atom(s) => {
                out.insert(Literal::neg(*s));
                Ok(())
            }
            _ => Err(Error::NotConjunctive(format!("{root:?}"))),
        },
        Formula::And(a, b) => {
            collect_conjuncts(root, a, out)?;
            collect_conjuncts(root, b, out)
        }
        _ => Err(Error::NotConjunctive(format!("{root:?}"))),
    }
}

/// Reads a disjunction of conjunctions of literals, keeping textual order.
pub fn to_dnf(f: &Formula) -> Result<DnfFormula> {
    let mut clauses = Vec::new();
    collect_disjuncts(f, f, &mut clauses)?;
    Ok(DnfFormula { clauses })
}

fn collect_disjuncts(root: &Formula, f: &Formula, out: &mut Vec<ConjClause>) -> Result<()> {
    match f {
        Formula::Or(a, b) => {
            collect_disjuncts(root, a, out)?;
            collect_disjuncts(root, b, out)
        }
        other => {
            let clause =
                to_conj_clause(other).map_err(|_| Error::NotDnf(format!("{root:?}")))?;
            out.push(clause);
            Ok(())
        }
    }
}
