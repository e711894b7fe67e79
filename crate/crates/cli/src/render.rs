//! Human-readable witness dumps and DOT renderings.
//!
//! Left vertices print as `u3`, right vertices of the base graph as `v1`, and
//! copies in the lifted graph as `v1.2` (second copy of `v1`). DOT output is
//! plain `digraph`/`graph` syntax with quoted identifiers.

use std::fmt::Write as _;

use trobust_core::robust::WitnessConstruction;
use trobust_core::Subset;

fn set(s: Subset, prefix: &str) -> String {
    let parts: Vec<String> = s.iter().map(|e| format!("{prefix}{e}")).collect();
    format!("{{{}}}", parts.join(", "))
}

pub fn witness_text(c: &WitnessConstruction) -> String {
    let x = c.subset();
    let b = c.base_set();
    let w = c.witness();
    let mut out = String::new();
    let _ = writeln!(out, "subset  X     = {}", set(x, "u"));
    let _ = writeln!(out, "base    B     = {}", set(b, "u"));
    let _ = writeln!(out, "kept    B ∩ X = {}", set(b.intersect(x), "u"));
    let _ = writeln!(out, "outside B \\ X = {}", set(b.minus(x), "u"));
    if w.groups().is_empty() {
        out.push_str("witness is empty: B ⊆ X, nothing needs replacing\n");
        return out;
    }
    out.push_str("groups:\n");
    for (i, &g) in w.groups().iter().enumerate() {
        let _ = writeln!(out, "  group {i} = {}", set(g, "u"));
    }
    out.push_str("assignment:\n");
    for (&u, &i) in w.assignment() {
        let sink = c.paths().sink(u).expect("assigned elements have walks");
        let walk: Vec<String> =
            c.paths().path(u).expect("assigned elements have walks")
                .iter()
                .map(|&v| format!("v{v}"))
                .collect();
        let _ = writeln!(
            out,
            "  u{u} -> group {i} (sink v{sink}, walk {})",
            walk.join(" -> ")
        );
    }
    out
}

/// The exchange digraph `D`: sources boxed, sinks doubled.
pub fn digraph_dot(c: &WitnessConstruction) -> String {
    let d = c.digraph();
    let mut out = String::from("digraph exchange {\n");
    for &v in d.members() {
        let shape = if d.is_source(v) {
            "box"
        } else if d.is_sink(v) {
            "doublecircle"
        } else {
            "circle"
        };
        let _ = writeln!(out, "  \"v{v}\" [shape={shape}];");
    }
    for &(from, to) in d.arcs() {
        let _ = writeln!(out, "  \"v{from}\" -> \"v{to}\";");
    }
    out.push_str("}\n");
    out
}

/// The lifted graph with its covering matching: matched edges solid, the rest
/// dashed.
pub fn lifted_dot(c: &WitnessConstruction) -> String {
    let lifted = c.lifted();
    let g = lifted.graph();
    let matched: std::collections::BTreeSet<_> =
        c.cover_lifted().edges().iter().copied().collect();
    let mut out = String::from("graph lifted {\n  rankdir=LR;\n");
    for u in 0..g.left_count() {
        let _ = writeln!(out, "  \"u{u}\" [shape=circle];");
    }
    for idx in 0..g.right_count() {
        let (v, t) = lifted.copy_label(idx);
        let _ = writeln!(out, "  \"v{v}.{t}\" [shape=square];");
    }
    for &(u, idx) in g.edges() {
        let (v, t) = lifted.copy_label(idx);
        let style = if matched.contains(&(u, idx)) { "solid" } else { "dashed" };
        let _ = writeln!(out, "  \"u{u}\" -- \"v{v}.{t}\" [style={style}];");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use trobust_core::graph::{BipartiteGraph, WeightMap};
    use trobust_core::robust::construct_witness;
    use trobust_core::transversal::LiftedGraph;
    use trobust_core::Subset;

    use super::*;

    fn star_construction() -> WitnessConstruction {
        let g = BipartiteGraph::new(3, 1, vec![(0, 0), (1, 0), (2, 0)]).unwrap();
        let w = WeightMap::new(vec![3, 2, 1]);
        let k = 2;
        let lifted = LiftedGraph::new(&g, &w, k).unwrap();
        let (x, _) = lifted.optimal_base().unwrap();
        construct_witness(&g, &w, k, x, Subset::singleton(2)).unwrap()
    }

    #[test]
    fn witness_text_names_groups_and_walks() {
        let text = witness_text(&star_construction());
        assert!(text.contains("subset  X     = {u0, u1}"));
        assert!(text.contains("base    B     = {u2}"));
        assert!(text.contains("group 0 = {u0, u1}"));
        assert!(text.contains("u2 -> group 0 (sink v0, walk v0)"));
    }

    #[test]
    fn empty_witness_is_stated() {
        let g = BipartiteGraph::new(2, 2, vec![(0, 0), (1, 1)]).unwrap();
        let w = WeightMap::new(vec![1, 1]);
        let lifted = LiftedGraph::new(&g, &w, 1).unwrap();
        let (x, _) = lifted.optimal_base().unwrap();
        let c = construct_witness(&g, &w, 1, x, x).unwrap();
        assert!(witness_text(&c).contains("witness is empty"));
    }

    #[test]
    fn dot_outputs_have_the_expected_spine() {
        let c = star_construction();
        let d = digraph_dot(&c);
        assert!(d.starts_with("digraph exchange {"));
        assert!(d.trim_end().ends_with('}'));
        assert!(d.contains("\"v0\""));
        let l = lifted_dot(&c);
        assert!(l.starts_with("graph lifted {"));
        assert!(l.contains("\"u0\" -- \"v0.1\""));
        assert!(l.contains("style=solid"));
    }
}
