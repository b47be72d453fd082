//! Recursive-descent parser for the formula grammar.
//!
//! ```text
//! formula := orf ("->" formula)?
//! orf     := andf ("|" andf)*
//! andf    := unary ("&" unary)*
//! unary   := "~" unary | box unary | named | atomish
//! box     := "[<=P]" | "[<P]" | "[<=D]" | "[<D]" | "[" PLAN "]" | "[!" formula "]"
//!          | "[upP" formula "]" | "[upD" formula "]" | "[downP" formula "]"
//!          | "[downD" formula "]" | "<<=P>" | "<<P>" | "<<=D>" | "<<D>"
//! named   := ("A"|"E"|"K"|"B"|"G"|"AdmInt"|"Int"|"min_P"|"min_D") "(" formula ")"
//!          | "I" "(" PLAN ")"
//! atomish := IDENT | "top" | "bot" | "(" formula ")"
//! ```

use super::desugar::{self, Abbrev};
use super::formula::{Formula, Modality, Update};
use super::vocab::Vocabulary;
use crate::error::{Error, ParseError, Result};
use crate::plans::PlanLibrary;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok<'a> {
    Ident(&'a str),
    Tilde,
    Amp,
    Bar,
    Arrow,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Bang,
    Rel(Modality),
    Diamond(Modality),
    End,
}

impl Tok<'_> {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Tilde => "`~`".into(),
            Tok::Amp => "`&`".into(),
            Tok::Bar => "`|`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
            Tok::Bang => "`!`".into(),
            Tok::Rel(m) => format!("`{}`", m.token()),
            Tok::Diamond(m) => format!("`<{}>`", m.token()),
            Tok::End => "end of input".into(),
        }
    }
}

const FIXED: &[(&str, Tok<'static>)] = &[
    ("<<=P>", Tok::Diamond(Modality::LeqP)),
    ("<<P>", Tok::Diamond(Modality::LtP)),
    ("<<=D>", Tok::Diamond(Modality::LeqD)),
    ("<<D>", Tok::Diamond(Modality::LtD)),
    ("<=P", Tok::Rel(Modality::LeqP)),
    ("<P", Tok::Rel(Modality::LtP)),
    ("<=D", Tok::Rel(Modality::LeqD)),
    ("<D", Tok::Rel(Modality::LtD)),
    ("->", Tok::Arrow),
    ("~", Tok::Tilde),
    ("&", Tok::Amp),
    ("|", Tok::Bar),
    ("(", Tok::LParen),
    (")", Tok::RParen),
    ("[", Tok::LBracket),
    ("]", Tok::RBracket),
    ("!", Tok::Bang),
];

fn lex<'a>(source: &'a str, start: usize, end: usize) -> Result<Vec<(Tok<'a>, usize)>> {
    let mut toks = Vec::new();
    let mut pos = start;
    'outer: while pos < end {
        let rest = &source[pos..end];
        let c = rest.chars().next().unwrap();
        if c.is_whitespace() {
            pos += c.len_utf8();
            continue;
        }
        for (text, tok) in FIXED {
            if rest.starts_with(text) {
                toks.push((tok.clone(), pos));
                pos += text.len();
                continue 'outer;
            }
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let len = rest
                .find(|ch: char| !(ch.is_ascii_alphanumeric() || ch == '_'))
                .unwrap_or(rest.len());
            toks.push((Tok::Ident(&rest[..len]), pos));
            pos += len;
            continue;
        }
        return Err(ParseError::at(source, pos, format!("unexpected character `{c}`")).into());
    }
    toks.push((Tok::End, end));
    Ok(toks)
}

struct Parser<'a> {
    source: &'a str,
    toks: Vec<(Tok<'a>, usize)>,
    pos: usize,
    vocab: &'a Vocabulary,
    plans: &'a PlanLibrary,
}

/// Parses a formula; abbreviations are expanded on the way.
pub fn parse_formula(text: &str, vocab: &Vocabulary, plans: &PlanLibrary) -> Result<Formula> {
    parse_formula_in(text, 0, text.len(), vocab, plans)
}

/// Parses `source[start..end]`, reporting positions relative to all of `source`.
pub fn parse_formula_in(
    source: &str,
    start: usize,
    end: usize,
    vocab: &Vocabulary,
    plans: &PlanLibrary,
) -> Result<Formula> {
    let toks = lex(source, start, end)?;
    let mut p = Parser {
        source,
        toks,
        pos: 0,
        vocab,
        plans,
    };
    let f = p.formula()?;
    p.expect(&Tok::End)?;
    Ok(f)
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok<'a> {
        &self.toks[self.pos].0
    }

    fn peek_at(&self, k: usize) -> &Tok<'a> {
        let i = (self.pos + k).min(self.toks.len() - 1);
        &self.toks[i].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok<'a> {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, offset: usize, message: impl Into<String>) -> Error {
        ParseError::at(self.source, offset, message).into()
    }

    fn expect(&mut self, tok: &Tok<'_>) -> Result<()> {
        if self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error(
                self.offset(),
                format!("expected {}, found {}", tok.describe(), self.peek().describe()),
            ))
        }
    }

    fn formula(&mut self) -> Result<Formula> {
        let lhs = self.or_formula()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let rhs = self.formula()?;
            return Ok(desugar::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or_formula(&mut self) -> Result<Formula> {
        let mut lhs = self.and_formula()?;
        while *self.peek() == Tok::Bar {
            self.bump();
            lhs = Formula::or(lhs, self.and_formula()?);
        }
        Ok(lhs)
    }

    fn and_formula(&mut self) -> Result<Formula> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::Amp {
            self.bump();
            lhs = Formula::and(lhs, self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula> {
        let at = self.offset();
        match self.peek().clone() {
            Tok::Tilde => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            Tok::Diamond(m) => {
                self.bump();
                Ok(desugar::diamond(m, self.unary()?))
            }
            Tok::LBracket => self.boxed(),
            Tok::LParen => {
                self.bump();
                let f = self.formula()?;
                self.expect(&Tok::RParen)?;
                Ok(f)
            }
            Tok::Ident("top") => {
                self.bump();
                Ok(Formula::Top)
            }
            Tok::Ident("bot") => {
                self.bump();
                Ok(Formula::Bot)
            }
            Tok::Ident("I") if *self.peek_at(1) == Tok::LParen => {
                self.bump();
                self.bump();
                let alpha = self.plan_name()?;
                self.expect(&Tok::RParen)?;
                Ok(Formula::Intend(alpha))
            }
            Tok::Ident(name) if *self.peek_at(1) == Tok::LParen && is_named(name) => {
                self.bump();
                self.bump();
                let arg = self.formula()?;
                self.expect(&Tok::RParen)?;
                let abbrev: Abbrev = if name == "A" {
                    return Ok(Formula::univ(arg));
                } else {
                    name.parse()?
                };
                desugar::desugar(abbrev, &[arg], self.plans)
            }
            Tok::Ident(name) => {
                self.bump();
                match self.vocab.lookup(name) {
                    Some(sym) => Ok(Formula::atom(sym)),
                    None if super::vocab::RESERVED.contains(&name) => {
                        Err(self.error(at, format!("`{name}` must be applied to an argument")))
                    }
                    None => Err(Error::UnknownSymbol(name.to_string())),
                }
            }
            other => Err(self.error(at, format!("unexpected {}", other.describe()))),
        }
    }

    fn boxed(&mut self) -> Result<Formula> {
        let open = self.offset();
        self.expect(&Tok::LBracket)?;
        match self.peek().clone() {
            Tok::Rel(m) => {
                self.bump();
                self.expect(&Tok::RBracket)?;
                Ok(Formula::modal(m, self.unary()?))
            }
            Tok::Bang => {
                self.bump();
                self.dynamic(Update::Announce, open)
            }
            Tok::Ident(word) if *self.peek_at(1) != Tok::RBracket => {
                let op = match word {
                    "upP" => Update::UpgradeP,
                    "upD" => Update::UpgradeD,
                    "downP" => Update::ContractP,
                    "downD" => Update::ContractD,
                    other => {
                        return Err(self.error(
                            self.toks[self.pos + 1].1,
                            format!("expected `]` after plan `{other}`"),
                        ))
                    }
                };
                self.bump();
                self.dynamic(op, open)
            }
            Tok::Ident(_) => {
                let alpha = self.plan_name()?;
                self.expect(&Tok::RBracket)?;
                Ok(Formula::plan(alpha, self.unary()?))
            }
            other => Err(self.error(
                self.offset(),
                format!("unexpected {} after `[`", other.describe()),
            )),
        }
    }

    fn dynamic(&mut self, op: Update, open: usize) -> Result<Formula> {
        let chi = self.formula()?;
        self.expect(&Tok::RBracket)?;
        if !chi.is_propositional() {
            return Err(self.error(
                open,
                "the argument of a dynamic modality must be propositional",
            ));
        }
        Ok(Formula::dynamic(op, chi, self.unary()?))
    }

    fn plan_name(&mut self) -> Result<crate::plans::PlanId> {
        let at = self.offset();
        match self.bump() {
            Tok::Ident(name) => self
                .plans
                .lookup(name)
                .ok_or_else(|| Error::UnknownPlan(name.to_string())),
            other => Err(self.error(at, format!("expected plan name, found {}", other.describe()))),
        }
    }
}

fn is_named(name: &str) -> bool {
    matches!(
        name,
        "A" | "E" | "K" | "B" | "G" | "AdmInt" | "Int" | "min_P" | "min_D"
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::desugar::{belief, minimal};
    use crate::syntax::{Order, Symbol};

    fn vocab() -> Vocabulary {
        Vocabulary::new(["p", "q", "r"]).unwrap()
    }

    fn parse(text: &str) -> Result<Formula> {
        let lib = PlanLibrary::new(vec![(
            "a".into(),
            Formula::atom(Symbol(0)),
            Formula::atom(Symbol(2)),
        )])
        .unwrap();
        parse_formula(text, &vocab(), &lib)
    }

    fn p() -> Formula {
        Formula::atom(Symbol(0))
    }
    fn q() -> Formula {
        Formula::atom(Symbol(1))
    }

    #[test]
    fn conjunction_with_negation() {
        assert_eq!(parse("p & ~q").unwrap(), Formula::and(p(), Formula::not(q())));
    }

    #[test]
    fn belief_is_desugared() {
        let expected = Formula::univ(Formula::not(Formula::and(
            minimal(Order::Plausibility, Formula::Top),
            Formula::not(q()),
        )));
        assert_eq!(parse("B(q)").unwrap(), expected);
    }

    #[test]
    fn announcement_modality() {
        assert_eq!(
            parse("[! p] B(q)").unwrap(),
            Formula::dynamic(Update::Announce, p(), belief(q()))
        );
        assert_eq!(
            parse("[downP p | q] q").unwrap(),
            Formula::dynamic(Update::ContractP, Formula::or(p(), q()), q())
        );
    }

    #[test]
    fn precedence_and_associativity() {
        // & binds tighter than |, boxes tighter than &
        assert_eq!(
            parse("p | q & r").unwrap(),
            Formula::or(p(), Formula::and(q(), Formula::atom(Symbol(2))))
        );
        assert_eq!(
            parse("[<=P] p & q").unwrap(),
            Formula::and(Formula::modal(Modality::LeqP, p()), q())
        );
        assert_eq!(
            parse("p -> q -> r").unwrap(),
            desugar::implies(p(), desugar::implies(q(), Formula::atom(Symbol(2))))
        );
    }

    #[test]
    fn plans_and_intentions() {
        let a = crate::plans::PlanId(0);
        assert_eq!(parse("[a] r").unwrap(), Formula::plan(a, Formula::atom(Symbol(2))));
        assert_eq!(parse("I(a)").unwrap(), Formula::Intend(a));
        assert!(matches!(parse("I(b)"), Err(Error::UnknownPlan(_))));
        assert!(matches!(parse("[b] p"), Err(Error::UnknownPlan(_))));
    }

    #[test]
    fn diamonds() {
        assert_eq!(
            parse("<<P> p").unwrap(),
            Formula::not(Formula::modal(Modality::LtP, Formula::not(p())))
        );
    }

    #[test]
    fn errors_carry_positions() {
        match parse("p &\n  (q | )") {
            Err(Error::Syntax(e)) => {
                assert_eq!((e.line, e.column), (2, 8));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse("z"), Err(Error::UnknownSymbol(_))));
        assert!(matches!(parse("p $ q"), Err(Error::Syntax(_))));
    }

    #[test]
    fn dynamic_argument_must_be_propositional() {
        assert!(matches!(parse("[! B(p)] q"), Err(Error::Syntax(_))));
    }
}
