//! Graphviz export of a cut graph, optionally grouped by cluster.

use std::fmt::Write;

use qcut_core::{Clustering, CutGraph};

/// Undirected DOT graph; nodes are `g<gate>_<slot>` and edges carry
/// `w`, `ŵ` and the cut kind. With a clustering, each cluster becomes a
/// `subgraph cluster_<id>`.
pub fn to_dot(graph: &CutGraph, clustering: Option<&Clustering>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "graph \"{}\" {{", escape(&graph.name));
    match clustering {
        Some(cl) => {
            for c in 0..cl.num_clusters() {
                let _ = writeln!(out, "  subgraph cluster_{c} {{");
                let _ = writeln!(out, "    label=\"cluster {c}\";");
                for n in cl.members(c) {
                    write_node(&mut out, graph, n, "    ");
                }
                out.push_str("  }\n");
            }
        }
        None => {
            for n in 0..graph.nodes.len() {
                write_node(&mut out, graph, n, "  ");
            }
        }
    }
    for e in &graph.edges {
        let _ = writeln!(
            out,
            "  {} -- {} [label=\"w={:.4}, ŵ={:.4}, {}\"];",
            graph.nodes[e.a].label(),
            graph.nodes[e.b].label(),
            e.w,
            e.w_hat,
            e.kind.as_str()
        );
    }
    out.push_str("}\n");
    out
}

fn write_node(out: &mut String, graph: &CutGraph, n: usize, indent: &str) {
    let node = &graph.nodes[n];
    let qubits: Vec<String> = node.qubits.iter().map(|q| q.to_string()).collect();
    let _ = writeln!(
        out,
        "{indent}{} [label=\"{}\\nq{{{}}}\"];",
        node.label(),
        node.label(),
        qubits.join(",")
    );
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

#[cfg(test)]
mod tests {
    use super::*;
    use qcut_core::{build_cut_graph, CircuitIR, WeightTable};

    fn chain() -> CutGraph {
        let mut c = CircuitIR::new("chain", 3);
        c.push("cx", &[0, 1], &[]).push("cx", &[1, 2], &[]);
        build_cut_graph(&c, &WeightTable::default()).unwrap()
    }

    #[test]
    fn lists_every_node_and_edge() {
        let g = chain();
        let dot = to_dot(&g, None);
        assert!(dot.starts_with("graph \"chain\" {"));
        for n in &g.nodes {
            assert!(dot.contains(&format!("  {} [", n.label())));
        }
        assert_eq!(dot.matches(" -- ").count(), g.edges.len());
        assert!(dot.contains(", space\""));
        assert!(dot.contains(", time\""));
    }

    #[test]
    fn clusters_become_subgraphs() {
        let g = chain();
        let cl = Clustering::from_assignment(&g, &[0, 0, 1, 1]);
        let dot = to_dot(&g, Some(&cl));
        assert!(dot.contains("subgraph cluster_0"));
        assert!(dot.contains("subgraph cluster_1"));
    }
}
