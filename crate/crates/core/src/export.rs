//! Graphviz output for the incidence structure.

use std::fmt::Write;

use crate::census::IncidenceGraph;
use crate::map::Color;

fn node_id(side: Color, label: &str) -> String {
    let prefix = match side {
        Color::White => 'w',
        Color::Black => 'b',
    };
    format!("\"{prefix}{label}\"")
}

/// Undirected DOT: white vertices as open circles, black as filled discs,
/// and one line per parallel edge, taking the larger of the two sides'
/// occurrence counts.
pub fn incidence_dot(g: &IncidenceGraph) -> String {
    let mut out = String::from("graph incidence {\n  node [shape=circle, fontsize=10];\n");
    for v in g.vertices() {
        let style = match v.side {
            Color::White => "",
            Color::Black => ", style=filled, fillcolor=black, fontcolor=white",
        };
        writeln!(out, "  {} [label=\"{}\"{style}];", node_id(v.side, &v.label), v.label).unwrap();
    }
    for (u, v) in g.ordered_pairs() {
        let (w, b) = (&g.vertices()[v], &g.vertices()[u]);
        if w.side != Color::White {
            continue;
        }
        let n = g.multiplicity(u, v).max(g.multiplicity(v, u));
        for _ in 0..n {
            writeln!(out, "  {} -- {};", node_id(w.side, &w.label), node_id(b.side, &b.label)).unwrap();
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::golden::reduced_tables;

    #[test]
    fn fixture_dot() {
        let g = IncidenceGraph::assemble(&reduced_tables()).unwrap();
        let dot = incidence_dot(&g);
        assert_eq!(dot.matches("[label=").count(), 63);
        assert_eq!(dot.matches(" -- ").count(), 104);
        assert!(dot.contains("\"w1\" -- \"b17\";\n  \"w1\" -- \"b17\";"));
        assert_eq!(dot, incidence_dot(&g));
    }
}
