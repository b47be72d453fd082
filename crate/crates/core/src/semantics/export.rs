//! Text and Graphviz renderings of agent models.

use std::fmt::Write;

use super::model::{AgentModel, Preorder};
use crate::syntax::Order;

fn label(m: &AgentModel, i: usize) -> String {
    let atoms = m.worlds()[i].valuation.true_atoms(m.vocab());
    if atoms.is_empty() {
        "{}".to_string()
    } else {
        format!("{{{}}}", atoms.join(","))
    }
}

/// Strict pairs `(i, j)`, `i < j`, with no `k` strictly between.
pub fn hasse_edges(rel: &Preorder) -> Vec<(usize, usize)> {
    let n = rel.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if rel.lt(i, j) && !(0..n).any(|k| rel.lt(i, k) && rel.lt(k, j)) {
                out.push((i, j));
            }
        }
    }
    out
}

/// Mutual-`<=` classes, each sorted, ordered by first member.
fn classes(rel: &Preorder) -> Vec<Vec<usize>> {
    let mut seen = vec![false; rel.len()];
    let mut out = Vec::new();
    for i in 0..rel.len() {
        if seen[i] {
            continue;
        }
        let class: Vec<usize> = (i..rel.len())
            .filter(|&j| rel.leq(i, j) && rel.leq(j, i))
            .collect();
        for &j in &class {
            seen[j] = true;
        }
        out.push(class);
    }
    out
}

/// Human-readable listing: worlds, then for each order its classes of
/// equally ranked worlds and the covering pairs between classes, then the
/// intentions.
pub fn dump(m: &AgentModel) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "worlds: {}", m.len());
    for (i, w) in m.worlds().iter().enumerate() {
        let _ = writeln!(out, "  w{} {}", w.id.0, label(m, i));
    }
    let name = |i: usize| format!("w{}", m.worlds()[i].id.0);
    for order in [Order::Plausibility, Order::Desirability] {
        let rel = m.order(order);
        let cls = classes(rel);
        let reps: Vec<usize> = cls.iter().map(|c| c[0]).collect();
        let show = |k: usize| {
            let names: Vec<String> = cls[k].iter().map(|&i| name(i)).collect();
            format!("[{}]", names.join(" "))
        };
        let _ = writeln!(out, "{}:", order.name());
        let edges = hasse_edges(&rel.restrict(&reps));
        for (a, b) in &edges {
            let _ = writeln!(out, "  {} < {}", show(*a), show(*b));
        }
        for k in 0..cls.len() {
            if !edges.iter().any(|&(a, b)| a == k || b == k) {
                let _ = writeln!(out, "  {}", show(k));
            }
        }
    }
    let names: Vec<&str> = m
        .intentions()
        .iter()
        .map(|&a| m.library().name(a))
        .collect();
    let _ = writeln!(out, "intentions: {{{}}}", names.join(", "));
    out
}

/// Graphviz digraph: one node per world labelled with its true atoms; solid
/// edges for strict plausibility, dashed for strict desirability, after
/// transitive reduction. Edges point from the better world to the worse one.
pub fn to_dot(m: &AgentModel) -> String {
    let mut out = String::from("digraph model {\n  rankdir=BT;\n");
    for (i, w) in m.worlds().iter().enumerate() {
        let _ = writeln!(out, "  w{} [label=\"{}\"];", w.id.0, label(m, i));
    }
    for (order, style) in [(Order::Plausibility, "solid"), (Order::Desirability, "dashed")] {
        for (i, j) in hasse_edges(m.order(order)) {
            let _ = writeln!(
                out,
                "  w{} -> w{} [style={style}];",
                m.worlds()[i].id.0,
                m.worlds()[j].id.0
            );
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_of_a_chain() {
        let rel = Preorder::from_ranks(&[0, 1, 2]);
        assert_eq!(hasse_edges(&rel), vec![(0, 1), (1, 2)]);
        assert!(hasse_edges(&Preorder::total(3)).is_empty());
    }

    #[test]
    fn dump_groups_equivalent_worlds() {
        use crate::agentfile::parse_agent;
        use crate::semantics::induced_model;
        let ag = parse_agent("vocab: p q\nbelief 1 { p }\n").unwrap();
        let m = induced_model(&ag, 4).unwrap();
        let text = dump(&m);
        assert!(text.contains("plausibility:\n  [w1 w3] < [w0 w2]\n"), "{text}");
        assert!(text.contains("desirability:\n  [w0 w1 w2 w3]\n"), "{text}");
        assert!(text.ends_with("intentions: {}\n"), "{text}");
    }
}
