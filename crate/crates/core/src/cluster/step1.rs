use alloc::vec::Vec;

use super::adjacency::{Adjacency, NeighborWeights};
use super::modularity::ModularityState;
use super::{check_cap, ClusterError, Clustering, OrderPolicy};
use crate::graph::{compact_assignment, contract, CutGraph};
use crate::qubits::QubitCounter;
use crate::TOLERANCE;

/// Outcome of the modularity stage.
#[derive(Clone, Debug)]
pub struct Step1Result {
    /// Assignment of the input graph's nodes.
    pub clustering: Clustering,
    /// One supernode per cluster, in cluster-id order.
    pub contracted: CutGraph,
    pub moves: usize,
    pub passes: usize,
}

/// Qubit-capped Louvain: local moves until none improves `Q`, then contract,
/// repeated until a pass moves nothing.
pub fn step1_modularity(
    graph: &CutGraph,
    cap: usize,
    order: &OrderPolicy,
) -> Result<Step1Result, ClusterError> {
    check_cap(graph, cap)?;
    let mut current = graph.clone();
    let mut mapping: Vec<usize> = (0..graph.node_count()).collect();
    let mut moves = 0;
    let mut passes = 0;
    loop {
        let (assignment, moved) = local_moves(&current, cap, order, passes as u64);
        passes += 1;
        if moved == 0 {
            break;
        }
        moves += moved;
        let (compact, _) = compact_assignment(&assignment);
        for m in mapping.iter_mut() {
            *m = compact[*m];
        }
        current = contract(&current, &assignment);
    }
    Ok(Step1Result {
        clustering: Clustering::from_assignment(graph, &mapping),
        contracted: current,
        moves,
        passes,
    })
}

/// Phase 1 on one level: sweeps over all nodes until a sweep moves nothing.
fn local_moves(
    graph: &CutGraph,
    cap: usize,
    order: &OrderPolicy,
    pass: u64,
) -> (Vec<usize>, usize) {
    let n = graph.node_count();
    let adj = Adjacency::new(graph);
    let visit = order.visit_order(&adj, pass);
    let mut state = ModularityState::from_adjacency(adj, (0..n).collect());
    let m = state.total_weight();
    if m <= 0.0 {
        return (state.assignment().to_vec(), 0);
    }
    let mut qubits: Vec<QubitCounter> = graph
        .nodes
        .iter()
        .map(|node| {
            let mut qc = QubitCounter::default();
            qc.add(&node.qubits);
            qc
        })
        .collect();
    let mut nw = NeighborWeights::new(n);
    let mut moved = 0;
    loop {
        let mut moved_this_sweep = 0;
        for &i in &visit {
            let from = state.cluster_of(i);
            nw.gather(state.adjacency(), i, state.assignment());
            let k_i = state.degree(i);
            let k_from = nw.w(from);
            // Gains scaled by 2m² so the tolerance is independent of m.
            let removal = -2.0 * m * k_from + k_i * (state.sigma(from) - k_i);
            let mut best = from;
            let mut best_gain = 0.0;
            for &c in &nw.touched {
                if c == from || qubits[c].len_with(&graph.nodes[i].qubits) > cap {
                    continue;
                }
                let gain = removal + 2.0 * m * nw.w(c) - k_i * state.sigma(c);
                if gain > best_gain + TOLERANCE {
                    best_gain = gain;
                    best = c;
                }
            }
            if best != from {
                let k_to = nw.w(best);
                state.apply_move(i, best, k_from, k_to);
                qubits[from].remove(&graph.nodes[i].qubits);
                qubits[best].add(&graph.nodes[i].qubits);
                moved_this_sweep += 1;
            }
        }
        if moved_this_sweep == 0 {
            break;
        }
        moved += moved_this_sweep;
    }
    (state.assignment().to_vec(), moved)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::CircuitIR;
    use crate::cluster::modularity::modularity;
    use crate::graph::{build_cut_graph, WeightTable};

    fn graph(n: usize, gates: &[(usize, usize)]) -> CutGraph {
        let mut circ = CircuitIR::new("t", n);
        for &(a, b) in gates {
            circ.push("cx", &[a, b], &[]);
        }
        build_cut_graph(&circ, &WeightTable::default()).unwrap()
    }

    #[test]
    fn separates_weakly_coupled_blocks() {
        let mut gates = Vec::new();
        for _ in 0..4 {
            gates.push((0, 1));
            gates.push((2, 3));
        }
        gates.push((1, 2));
        for _ in 0..4 {
            gates.push((0, 1));
            gates.push((2, 3));
        }
        let g = graph(4, &gates);
        let r = step1_modularity(&g, 2, &OrderPolicy::Weighted).unwrap();
        assert!(r.clustering.respects_cap(2));
        for node in &g.nodes {
            let c = r.clustering.cluster_of(node.id);
            let q = r.clustering.qubits(c);
            assert!(q.as_slice() == [0, 1] || q.as_slice() == [2, 3] || q.len() == 1);
        }
    }

    #[test]
    fn modularity_never_drops_below_singletons() {
        let g = graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4), (1, 3), (0, 2)]);
        for cap in 1..=5 {
            let r = step1_modularity(&g, cap, &OrderPolicy::Weighted).unwrap();
            assert!(r.clustering.respects_cap(cap));
            let q0 = modularity(&g, &Clustering::singletons(&g));
            assert!(modularity(&g, &r.clustering) >= q0 - 1e-12);
            assert_eq!(r.contracted.node_count(), r.clustering.num_clusters());
        }
    }

    #[test]
    fn cap_below_node_size_is_infeasible() {
        let g = graph(2, &[(0, 1)]);
        assert!(matches!(
            step1_modularity(&g, 0, &OrderPolicy::Weighted),
            Err(ClusterError::InfeasibleCap { .. })
        ));
    }

    #[test]
    fn deterministic() {
        let g = graph(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5), (2, 5)]);
        let a = step1_modularity(&g, 3, &OrderPolicy::Random { seed: 9 }).unwrap();
        let b = step1_modularity(&g, 3, &OrderPolicy::Random { seed: 9 }).unwrap();
        assert_eq!(a.clustering, b.clustering);
    }
}
