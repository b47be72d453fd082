use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// Index of a propositional symbol inside its [`Vocabulary`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(pub u32);

impl Symbol {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Words the formula grammar claims for itself; none of them may name a symbol.
pub const RESERVED: &[&str] = &[
    "A", "E", "K", "B", "G", "I", "AdmInt", "Int", "min_P", "min_D", "top", "bot",
];

pub(crate) fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Ordered set of propositional symbols. Symbol `i` is bit `i` of a world's valuation.
#[derive(Clone, Debug, Default)]
pub struct Vocabulary {
    names: Vec<String>,
    index: HashMap<String, Symbol>,
}

impl Vocabulary {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut vocab = Vocabulary::default();
        for name in names {
            let name = name.into();
            if !is_identifier(&name) {
                return Err(Error::InvalidVocabulary(format!(
                    "`{name}` is not a valid identifier"
                )));
            }
            if RESERVED.contains(&name.as_str()) {
                return Err(Error::InvalidVocabulary(format!("`{name}` is reserved")));
            }
            if vocab.index.contains_key(&name) {
                return Err(Error::InvalidVocabulary(format!("duplicate symbol `{name}`")));
            }
            let sym = Symbol(vocab.names.len() as u32);
            vocab.index.insert(name.clone(), sym);
            vocab.names.push(name);
        }
        Ok(vocab)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn lookup(&self, name: &str) -> Option<Symbol> {
        self.index.get(name).copied()
    }

    pub fn name(&self, sym: Symbol) -> &str {
        &self.names[sym.index()]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> + '_ {
        (0..self.names.len() as u32).map(Symbol)
    }
}

impl PartialEq for Vocabulary {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names
    }
}

impl Eq for Vocabulary {}

impl fmt::Display for Vocabulary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.names.join(" "))
    }
}
