//! Brute-force reference search over all set partitions of a small graph.

use alloc::vec;
use alloc::vec::Vec;

use super::Clustering;
use crate::graph::CutGraph;
use crate::overhead::lq;

/// Largest graph [`optimal_lq`] accepts; the Bell number grows quickly.
pub const MAX_NODES: usize = 10;

/// Lowest `L_Q` over every clustering that respects `cap`, with a witness.
///
/// Returns `None` for graphs above [`MAX_NODES`] nodes or when no clustering
/// fits the cap.
pub fn optimal_lq(graph: &CutGraph, cap: usize) -> Option<(f64, Clustering)> {
    let n = graph.node_count();
    if n > MAX_NODES {
        return None;
    }
    let mut best: Option<(f64, Clustering)> = None;
    let mut assign = vec![0usize; n];
    visit(graph, cap, &mut assign, 0, 0, &mut best);
    best
}

/// Restricted-growth enumeration: node `i` joins a used block or opens block `used`.
fn visit(
    graph: &CutGraph,
    cap: usize,
    assign: &mut Vec<usize>,
    i: usize,
    used: usize,
    best: &mut Option<(f64, Clustering)>,
) {
    if i == assign.len() {
        let cl = Clustering::from_assignment(graph, assign);
        if !cl.respects_cap(cap) {
            return;
        }
        let value = lq(graph, &cl);
        if best.as_ref().is_none_or(|(b, _)| value < *b) {
            *best = Some((value, cl));
        }
        return;
    }
    for c in 0..=used {
        assign[i] = c;
        visit(graph, cap, assign, i + 1, used.max(c + 1), best);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::CircuitIR;
    use crate::graph::{build_cut_graph, WeightTable};
    use crate::math::ln;

    #[test]
    fn chain_optimum() {
        let mut circ = CircuitIR::new("chain3", 3);
        circ.push("cx", &[0, 1], &[]).push("cx", &[1, 2], &[]);
        let g = build_cut_graph(&circ, &WeightTable::default()).unwrap();
        let (v, cl) = optimal_lq(&g, 2).unwrap();
        assert!((v - ln(18.0)).abs() < 1e-12);
        assert_eq!(cl.num_clusters(), 2);
        assert_eq!(optimal_lq(&g, 3).unwrap().0, 0.0);
    }
}
