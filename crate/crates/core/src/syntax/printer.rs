use std::fmt::Write;

use super::formula::Formula;
use super::vocab::Vocabulary;
use crate::plans::PlanLibrary;

const OR: u8 = 1;
const AND: u8 = 2;
const UNARY: u8 = 3;

/// Prints a formula in the concrete grammar. Nothing is re-sugared, so the
/// output parses back to the same AST.
pub fn print_formula(f: &Formula, vocab: &Vocabulary, plans: &PlanLibrary) -> String {
    let mut out = String::new();
    write_formula(&mut out, f, 0, vocab, plans);
    out
}

fn write_formula(out: &mut String, f: &Formula, ctx: u8, vocab: &Vocabulary, plans: &PlanLibrary) {
    match f {
        Formula::Atom(s) => out.push_str(vocab.name(*s)),
        Formula::Top => out.push_str("top"),
        Formula::Bot => out.push_str("bot"),
        Formula::Not(inner) => {
            out.push('~');
            write_formula(out, inner, UNARY, vocab, plans);
        }
        Formula::And(a, b) => binary(out, " & ", AND, a, b, ctx, vocab, plans),
        Formula::Or(a, b) => binary(out, " | ", OR, a, b, ctx, vocab, plans),
        Formula::Univ(inner) => {
            out.push_str("A(");
            write_formula(out, inner, 0, vocab, plans);
            out.push(')');
        }
        Formula::Modal(m, inner) => {
            let _ = write!(out, "[{}] ", m.token());
            write_formula(out, inner, UNARY, vocab, plans);
        }
        Formula::Plan(alpha, inner) => {
            let _ = write!(out, "[{}] ", plans.name(*alpha));
            write_formula(out, inner, UNARY, vocab, plans);
        }
        Formula::Intend(alpha) => {
            let _ = write!(out, "I({})", plans.name(*alpha));
        }
        Formula::Dynamic(op, chi, psi) => {
            let _ = write!(out, "[{} ", op.keyword());
            write_formula(out, chi, 0, vocab, plans);
            out.push_str("] ");
            write_formula(out, psi, UNARY, vocab, plans);
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn binary(
    out: &mut String,
    op: &str,
    level: u8,
    a: &Formula,
    b: &Formula,
    ctx: u8,
    vocab: &Vocabulary,
    plans: &PlanLibrary,
) {
    let paren = ctx > level;
    if paren {
        out.push('(');
    }
    write_formula(out, a, level, vocab, plans);
    out.push_str(op);
    // operators fold to the left, so a right operand at the same level needs parentheses
    write_formula(out, b, level + 1, vocab, plans);
    if paren {
        out.push(')');
    }
}
