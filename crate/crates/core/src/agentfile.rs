//! The line-oriented agent file format.
//!
//! ```text
//! # comments run to the end of the line
//! vocab: p q r s
//! plan a { pre: p & q; post: r }
//! knowledge { p ; q }
//! belief 0 { p ; q }
//! belief 1 { r }
//! desire 0 { p ; q }
//! desire 1 { s }
//! intend a
//! ```
//!
//! Blocks hold formulas separated by `;`. `vocab` must precede every formula.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt::Write;
use std::sync::Arc;

use crate::error::{Error, ParseError, Result};
use crate::plans::PlanLibrary;
use crate::program::{AgentProgram, StratifiedBase};
use crate::syntax::{parse_formula_in, print_formula, Formula, Vocabulary};

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn err(&self, at: usize, msg: impl Into<String>) -> Error {
        ParseError::at(self.src, at, msg).into()
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    /// Skips spaces and tabs only; used where a newline ends the statement.
    fn skip_inline_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c == '\n' || !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn word(&mut self) -> Option<(&'a str, usize)> {
        let start = self.pos;
        let len = self.src[start..]
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
            .unwrap_or(self.src.len() - start);
        if len == 0 {
            return None;
        }
        self.pos += len;
        Some((&self.src[start..start + len], start))
    }

    fn expect_word(&mut self, what: &str) -> Result<(&'a str, usize)> {
        self.skip_ws();
        let at = self.pos;
        self.word()
            .ok_or_else(|| self.err(at, format!("expected {what}")))
    }

    fn expect(&mut self, c: char) -> Result<()> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(self.pos, format!("expected `{c}`")))
        }
    }

    /// Byte range up to (not including) the next `;` or `}`.
    fn span(&mut self) -> Result<(usize, usize)> {
        let start = self.pos;
        match self.src[start..].find([';', '}']) {
            Some(len) => {
                self.pos += len;
                Ok((start, start + len))
            }
            None => Err(self.err(start, "unterminated block, expected `}`")),
        }
    }

    /// The `;`-separated formula spans of a `{ ... }` block. Empty entries
    /// (as in `{ }` or a trailing `;`) are skipped.
    fn block(&mut self) -> Result<Vec<(usize, usize)>> {
        self.expect('{')?;
        let mut out = Vec::new();
        loop {
            let (s, e) = self.span()?;
            if !self.src[s..e].trim().is_empty() {
                out.push((s, e));
            }
            let sep = self.peek();
            self.pos += 1;
            if sep == Some('}') {
                return Ok(out);
            }
        }
    }

    fn number(&mut self) -> Result<u32> {
        self.skip_ws();
        let at = self.pos;
        let len = self.src[at..]
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(self.src.len() - at);
        self.pos += len;
        self.src[at..at + len]
            .parse()
            .map_err(|_| self.err(at, "expected a rank (decimal natural number)"))
    }
}

/// Replaces `#` comments with spaces so byte offsets stay valid.
fn blank_comments(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for line in text.split_inclusive('\n') {
        match line.find('#') {
            Some(i) => {
                out.push_str(&line[..i]);
                let rest = &line[i..];
                let body = rest.trim_end_matches('\n');
                out.extend(std::iter::repeat_n(' ', body.len()));
                out.push_str(&rest[body.len()..]);
            }
            None => out.push_str(line),
        }
    }
    out
}

struct PlanEntry {
    name: String,
    at: usize,
    pre: (usize, usize),
    post: (usize, usize),
}

/// Parses an agent file into a program. Coherence is not checked here.
pub fn parse_agent(text: &str) -> Result<AgentProgram> {
    let clean = blank_comments(text);
    let mut cur = Cursor {
        src: &clean,
        pos: 0,
    };
    let mut vocab: Option<Arc<Vocabulary>> = None;
    let mut plans: Vec<PlanEntry> = Vec::new();
    let mut knowledge: Vec<(usize, usize)> = Vec::new();
    let mut beliefs: Vec<(u32, (usize, usize))> = Vec::new();
    let mut desires: Vec<(u32, (usize, usize))> = Vec::new();
    let mut intend: Vec<(String, usize)> = Vec::new();

    loop {
        cur.skip_ws();
        if cur.pos >= clean.len() {
            break;
        }
        let (kw, at) = cur.expect_word("a statement keyword")?;
        if kw != "vocab" && vocab.is_none() {
            return Err(cur.err(at, "`vocab:` must come first"));
        }
        match kw {
            "vocab" => {
                if vocab.is_some() {
                    return Err(cur.err(at, "duplicate `vocab` statement"));
                }
                cur.expect(':')?;
                let mut names = Vec::new();
                loop {
                    cur.skip_inline_ws();
                    match cur.peek() {
                        None | Some('\n') => break,
                        _ => {}
                    }
                    let name_at = cur.pos;
                    let (name, _) = cur
                        .word()
                        .ok_or_else(|| cur.err(name_at, "expected a symbol name"))?;
                    names.push(name.to_string());
                }
                vocab = Some(Arc::new(
                    Vocabulary::new(names).map_err(|e| e.located(&clean, at))?,
                ));
            }
            "plan" => {
                let (name, name_at) = cur.expect_word("a plan name")?;
                cur.expect('{')?;
                let mut pre = None;
                let mut post = None;
                loop {
                    cur.skip_ws();
                    if cur.peek() == Some('}') {
                        cur.pos += 1;
                        break;
                    }
                    let (field, field_at) = cur.expect_word("`pre` or `post`")?;
                    cur.expect(':')?;
                    let span = cur.span()?;
                    let slot = match field {
                        "pre" => &mut pre,
                        "post" => &mut post,
                        other => return Err(cur.err(field_at, format!("unknown plan field `{other}`"))),
                    };
                    if slot.replace(span).is_some() {
                        return Err(cur.err(field_at, format!("duplicate `{field}` field")));
                    }
                    if cur.peek() == Some(';') {
                        cur.pos += 1;
                    }
                }
                let missing = |what: &str| cur.err(name_at, format!("plan `{name}` has no `{what}` field"));
                let pre = pre.ok_or_else(|| missing("pre"))?;
                let post = post.ok_or_else(|| missing("post"))?;
                plans.push(PlanEntry {
                    name: name.to_string(),
                    at: name_at,
                    pre,
                    post,
                });
            }
            "knowledge" => knowledge.extend(cur.block()?),
            "belief" | "desire" => {
                let rank = cur.number()?;
                let target = if kw == "belief" { &mut beliefs } else { &mut desires };
                target.extend(cur.block()?.into_iter().map(|s| (rank, s)));
            }
            "intend" => {
                let (name, at) = cur.expect_word("a plan name")?;
                intend.push((name.to_string(), at));
            }
            other => return Err(cur.err(at, format!("unknown statement `{other}`"))),
        }
    }

    let vocab = vocab.ok_or_else(|| cur.err(0, "missing `vocab:` statement"))?;
    let empty = PlanLibrary::empty();
    let formula = |(s, e): (usize, usize)| -> Result<Formula> {
        let start = s + clean[s..e].len() - clean[s..e].trim_start().len();
        parse_formula_in(&clean, s, e, &vocab, &empty).map_err(|err| err.located(&clean, start))
    };

    let mut entries = Vec::new();
    let mut seen = HashSet::new();
    for p in &plans {
        let entry = (p.name.clone(), formula(p.pre)?, formula(p.post)?);
        if !seen.insert(p.name.clone()) {
            return Err(Error::DuplicatePlan(p.name.clone()).located(&clean, p.at));
        }
        PlanLibrary::new(vec![entry.clone()]).map_err(|e| e.located(&clean, p.at))?;
        entries.push(entry);
    }
    let library = Arc::new(PlanLibrary::new(entries)?);

    let knowledge: BTreeSet<Formula> = knowledge.into_iter().map(formula).collect::<Result<_>>()?;
    let base = |items: Vec<(u32, (usize, usize))>| -> Result<StratifiedBase> {
        items
            .into_iter()
            .map(|(rank, span)| Ok((formula(span)?, rank)))
            .collect()
    };
    let beliefs = base(beliefs)?;
    let desires = base(desires)?;
    let intentions = intend
        .into_iter()
        .map(|(name, at)| {
            library
                .lookup(&name)
                .ok_or_else(|| Error::UnknownPlan(name).located(&clean, at))
        })
        .collect::<Result<_>>()?;
    AgentProgram::new(vocab, library, knowledge, beliefs, desires, intentions)
}

/// Renders a program in the agent file format; `parse_agent` reads it back
/// to an equal program.
pub fn write_agent(ag: &AgentProgram) -> String {
    let vocab = ag.vocab();
    let lib = ag.library();
    let empty = PlanLibrary::empty();
    let show = |f: &Formula| print_formula(f, vocab, &empty);
    let mut out = String::new();
    let _ = writeln!(out, "vocab: {vocab}");
    for (_, plan) in lib.iter() {
        let _ = writeln!(
            out,
            "plan {} {{ pre: {}; post: {} }}",
            plan.name,
            show(&plan.pre),
            show(&plan.post.to_formula())
        );
    }
    let block = |fs: Vec<&Formula>| {
        let items: Vec<String> = fs.into_iter().map(show).collect();
        if items.is_empty() {
            "{ }".to_string()
        } else {
            format!("{{ {} }}", items.join(" ; "))
        }
    };
    let _ = writeln!(out, "knowledge {}", block(ag.knowledge().iter().collect()));
    for (kw, base) in [("belief", ag.beliefs()), ("desire", ag.desires())] {
        let strata: BTreeMap<u32, Vec<&Formula>> = base.strata();
        for (rank, fs) in strata {
            let _ = writeln!(out, "{kw} {rank} {}", block(fs));
        }
    }
    for &alpha in ag.intentions() {
        let _ = writeln!(out, "intend {}", lib.name(alpha));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "\
# a small agent
vocab: p q r s
plan a { pre: p; post: r }   # make r true
knowledge { p }
belief 0 { p }
belief 1 { q ; ~s }
desire 0 { p }
desire 1 { r }
intend a
";

    #[test]
    fn parses_sample() {
        let ag = parse_agent(SAMPLE).unwrap();
        assert_eq!(ag.vocab().len(), 4);
        assert_eq!(ag.library().len(), 1);
        assert_eq!(ag.knowledge().len(), 1);
        assert_eq!(ag.beliefs().len(), 3);
        assert_eq!(ag.desires().len(), 2);
        assert_eq!(ag.intentions().len(), 1);
        assert!(ag.is_coherent().unwrap());
    }

    #[test]
    fn write_then_parse_is_identity() {
        let ag = parse_agent(SAMPLE).unwrap();
        let text = write_agent(&ag);
        assert_eq!(parse_agent(&text).unwrap(), ag);
    }

    #[test]
    fn empty_blocks_and_trailing_separators() {
        let ag = parse_agent("vocab: p\nknowledge { }\nbelief 2 { p ; }\n").unwrap();
        assert!(ag.knowledge().is_empty());
        assert_eq!(ag.beliefs().stratum(2).len(), 1);
    }

    #[test]
    fn inconsistent_post_is_located() {
        let err = parse_agent("vocab: r\n\nplan a { pre: top; post: r & ~r }\n").unwrap_err();
        assert!(matches!(err.root(), Error::InconsistentPostcondition(_)));
        assert!(matches!(err, Error::Located { line: 3, column: 6, .. }));
    }

    #[test]
    fn formula_syntax_error_position() {
        let err = parse_agent("vocab: p q\nknowledge { p & }\n").unwrap_err();
        match err {
            Error::Syntax(e) => assert_eq!((e.line, e.column), (2, 17)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn unknown_symbol_is_located() {
        let err = parse_agent("vocab: p\nbelief 1 {  z }\n").unwrap_err();
        assert!(matches!(err.root(), Error::UnknownSymbol(_)));
        assert!(matches!(err, Error::Located { line: 2, column: 13, .. }));
    }

    #[test]
    fn statement_errors() {
        assert!(parse_agent("knowledge { p }").is_err());
        assert!(parse_agent("vocab: p\nwish 1 { p }").is_err());
        assert!(parse_agent("vocab: p\nbelief x { p }").is_err());
        assert!(parse_agent("vocab: p\nplan a { pre: p }").is_err());
        let err = parse_agent("vocab: p\nintend b\n").unwrap_err();
        assert!(matches!(err.root(), Error::UnknownPlan(_)));
    }
}
