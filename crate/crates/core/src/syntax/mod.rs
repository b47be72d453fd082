//! Formulas of the agent language: AST, conjunctive/DNF views, text syntax.

pub mod desugar;
mod formula;
mod normal;
mod parser;
mod printer;
mod vocab;

pub use desugar::{desugar, Abbrev};
pub use formula::{Formula, Modality, Order, Update};
pub use normal::{to_conj_clause, to_dnf, ConjClause, DnfFormula, Literal, LiteralSet};
pub use parser::{parse_formula, parse_formula_in};
pub use printer::print_formula;
pub use vocab::{Symbol, Vocabulary, RESERVED};

pub(crate) use vocab::is_identifier;
