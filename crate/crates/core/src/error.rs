use std::fmt;

use crate::program::CoherenceReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// A located syntax error. Lines and columns are 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    /// Builds an error for byte `offset` of `source`.
    pub fn at(source: &str, offset: usize, message: impl Into<String>) -> Self {
        let offset = offset.min(source.len());
        let before = &source[..offset];
        let line = before.matches('\n').count() + 1;
        let column = match before.rfind('\n') {
            Some(nl) => before[nl + 1..].chars().count() + 1,
            None => before.chars().count() + 1,
        };
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("syntax error at {0}")]
    Syntax(ParseError),
    /// An error tied to a position in an agent file.
    #[error("{line}:{column}: {source}")]
    Located {
        line: usize,
        column: usize,
        source: Box<Error>,
    },
    #[error("unknown propositional symbol `{0}`")]
    UnknownSymbol(String),
    #[error("unknown plan `{0}`")]
    UnknownPlan(String),
    #[error("unknown abbreviation `{0}`")]
    UnknownAbbreviation(String),
    #[error("abbreviation `{name}` expects {expected} argument(s), got {got}")]
    Arity {
        name: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("invalid vocabulary: {0}")]
    InvalidVocabulary(String),
    #[error("formula is not a conjunction of literals: {0}")]
    NotConjunctive(String),
    #[error("formula is not in disjunctive normal form: {0}")]
    NotDnf(String),
    #[error("formula is not a disjunction of literals: {0}")]
    NotLiteralDisjunction(String),
    #[error("formula must be propositional: {0}")]
    NotPropositional(String),

    #[error("duplicate plan `{0}`")]
    DuplicatePlan(String),
    #[error("postcondition of plan `{0}` is inconsistent")]
    InconsistentPostcondition(String),
    #[error("postcondition of plan `{0}` is not a conjunction of literals")]
    NonConjunctivePostcondition(String),

    #[error("literal set is inconsistent")]
    InconsistentLiteralSet,
    #[error("formula is inconsistent: {0}")]
    InconsistentFormula(String),
    #[error("announcement is inconsistent with the agent's knowledge")]
    InconsistentAnnouncement,
    #[error("agent program is not coherent:\n{0}")]
    Incoherent(Box<CoherenceReport>),

    #[error("vocabulary has {size} symbols, above the world cap of {cap}")]
    VocabularyTooLarge { size: usize, cap: usize },
    #[error("unknown world {0}")]
    UnknownWorld(u32),
    #[error("world {0} is outside the extension of the formula")]
    WorldOutsideExtension(u32),
    #[error("{0} relation is not a preorder after transformation")]
    ResultNotPreorder(&'static str),
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("models are over different vocabularies")]
    VocabularyMismatch,
    #[error("{0} preorder is not total; only ranked models can be extracted")]
    NotRanked(&'static str),
}

impl Error {
    /// The underlying error, with any location wrappers removed.
    pub fn root(&self) -> &Error {
        match self {
            Error::Located { source, .. } => source.root(),
            other => other,
        }
    }

    pub(crate) fn located(self, source: &str, offset: usize) -> Error {
        match self {
            Error::Syntax(_) | Error::Located { .. } => self,
            other => {
                let at = ParseError::at(source, offset, "");
                Error::Located {
                    line: at.line,
                    column: at.column,
                    source: Box::new(other),
                }
            }
        }
    }
}

impl From<ParseError> for Error {
    fn from(e: ParseError) -> Self {
        Error::Syntax(e)
    }
}
