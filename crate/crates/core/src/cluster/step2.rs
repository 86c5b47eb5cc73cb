use alloc::vec;
use alloc::vec::Vec;

use super::adjacency::{Adjacency, NeighborWeights};
use super::{check_cap, ClusterError, Clustering, OrderPolicy};
use crate::graph::{compact_assignment, contract, CutGraph};
use crate::math::ln;
use crate::qubits::QubitCounter;
use crate::TOLERANCE;

/// Outcome of the `L_Q` merge stage.
#[derive(Clone, Debug)]
pub struct Step2Result {
    /// Assignment of the input graph's nodes.
    pub clustering: Clustering,
    pub contracted: CutGraph,
    pub moves: usize,
    pub passes: usize,
    /// Set when the last pass raised `L_Q` and was undone.
    pub reverted: bool,
}

/// Per-cluster cut sums over one level of the graph.
struct LqState {
    cluster_of: Vec<usize>,
    size: Vec<usize>,
    s_w: Vec<f64>,
    s_w_hat: Vec<f64>,
    w_cut: f64,
    w_hat_cut: f64,
    r: usize,
}

impl LqState {
    fn singletons(adj: &Adjacency) -> Self {
        let n = adj.len();
        let mut s_w = vec![0.0; n];
        let mut s_w_hat = vec![0.0; n];
        for i in 0..n {
            let (w, wh) = adj.external_w(i);
            s_w[i] = w;
            s_w_hat[i] = wh;
        }
        Self {
            cluster_of: (0..n).collect(),
            size: vec![1; n],
            w_cut: s_w.iter().sum::<f64>() / 2.0,
            w_hat_cut: s_w_hat.iter().sum::<f64>() / 2.0,
            s_w,
            s_w_hat,
            r: n,
        }
    }

    fn ln_i(&self, c: usize) -> f64 {
        ln(self.r as f64) + self.s_w[c] + self.w_hat_cut - self.s_w_hat[c]
    }

    fn lq(&self) -> f64 {
        (0..self.size.len())
            .filter(|&c| self.size[c] > 0)
            .map(|c| self.ln_i(c))
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Merges clusters of `graph` (normally the step-1 contraction) while the
/// largest per-cluster overhead does not grow.
pub fn step2_lq_min(
    graph: &CutGraph,
    cap: usize,
    order: &OrderPolicy,
) -> Result<Step2Result, ClusterError> {
    check_cap(graph, cap)?;
    let mut current = graph.clone();
    let mut mapping: Vec<usize> = (0..graph.node_count()).collect();
    let mut moves = 0;
    let mut passes = 0;
    let mut reverted = false;
    loop {
        let outcome = pass(&current, cap, order, passes as u64);
        passes += 1;
        if outcome.moved == 0 {
            break;
        }
        if outcome.lq_after > outcome.lq_before + TOLERANCE {
            reverted = true;
            break;
        }
        moves += outcome.moved;
        let (compact, _) = compact_assignment(&outcome.assignment);
        for m in mapping.iter_mut() {
            *m = compact[*m];
        }
        current = contract(&current, &outcome.assignment);
    }
    Ok(Step2Result {
        clustering: Clustering::from_assignment(graph, &mapping),
        contracted: current,
        moves,
        passes,
        reverted,
    })
}

struct PassOutcome {
    assignment: Vec<usize>,
    moved: usize,
    lq_before: f64,
    lq_after: f64,
}

fn pass(graph: &CutGraph, cap: usize, order: &OrderPolicy, stream: u64) -> PassOutcome {
    let n = graph.node_count();
    let adj = Adjacency::new(graph);
    let mut st = LqState::singletons(&adj);
    let lq_before = st.lq();
    let mut lq = lq_before;
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
    for i in order.visit_order(&adj, stream) {
        let from = st.cluster_of[i];
        nw.gather(&adj, i, &st.cluster_of);
        let (ext_w, ext_w_hat) = adj.external_w(i);
        let (k_from, kh_from) = (nw.w(from), nw.w_hat(from));
        let empties = st.size[from] == 1;
        if !empties {
            let l_removed =
                ln(st.r as f64) + (st.s_w[from] - ext_w + 2.0 * k_from) + (st.w_hat_cut + kh_from)
                    - (st.s_w_hat[from] - ext_w_hat + 2.0 * kh_from);
            if l_removed > lq + TOLERANCE {
                continue;
            }
        }
        let r_after = if empties { st.r - 1 } else { st.r };
        let mut best = from;
        for &c in &nw.touched {
            if c == from || qubits[c].len_with(&graph.nodes[i].qubits) > cap {
                continue;
            }
            let (k_to, kh_to) = (nw.w(c), nw.w_hat(c));
            let w_hat_cut = st.w_hat_cut + kh_from - kh_to;
            let l_to = ln(r_after as f64) + (st.s_w[c] + ext_w - 2.0 * k_to) + w_hat_cut
                - (st.s_w_hat[c] + ext_w_hat - 2.0 * kh_to);
            let dw = k_from - k_to;
            if l_to < lq - TOLERANCE {
                lq = l_to;
                best = c;
            } else if l_to <= lq + TOLERANCE && dw < -TOLERANCE {
                best = c;
            }
        }
        if best == from {
            continue;
        }
        let (k_to, kh_to) = (nw.w(best), nw.w_hat(best));
        st.s_w[from] += 2.0 * k_from - ext_w;
        st.s_w_hat[from] += 2.0 * kh_from - ext_w_hat;
        st.s_w[best] += ext_w - 2.0 * k_to;
        st.s_w_hat[best] += ext_w_hat - 2.0 * kh_to;
        st.w_cut += k_from - k_to;
        st.w_hat_cut += kh_from - kh_to;
        st.size[from] -= 1;
        st.size[best] += 1;
        if empties {
            st.r -= 1;
            st.s_w[from] = 0.0;
            st.s_w_hat[from] = 0.0;
        }
        st.cluster_of[i] = best;
        qubits[from].remove(&graph.nodes[i].qubits);
        qubits[best].add(&graph.nodes[i].qubits);
        moved += 1;
    }
    PassOutcome {
        lq_after: st.lq(),
        assignment: st.cluster_of,
        moved,
        lq_before,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::CircuitIR;
    use crate::graph::{build_cut_graph, WeightTable};
    use crate::overhead::lq;

    fn chain(n: usize) -> CutGraph {
        let mut circ = CircuitIR::new("chain", n);
        for q in 0..n - 1 {
            circ.push("cx", &[q, q + 1], &[]);
        }
        build_cut_graph(&circ, &WeightTable::default()).unwrap()
    }

    #[test]
    fn single_cluster_is_unchanged() {
        let g = chain(3);
        let whole = contract(&g, &[0; 4]);
        let r = step2_lq_min(&whole, 3, &OrderPolicy::Weighted).unwrap();
        assert_eq!(r.clustering.num_clusters(), 1);
        assert_eq!(r.moves, 0);
    }

    #[test]
    fn two_qubit_chain_reaches_optimum() {
        let g = chain(3);
        let r = step2_lq_min(&g, 2, &OrderPolicy::Weighted).unwrap();
        assert!(r.clustering.respects_cap(2));
        let expected = ln(2.0) + ln(9.0);
        assert!((lq(&g, &r.clustering) - expected).abs() < 1e-9);
    }

    #[test]
    fn never_increases_lq() {
        for n in 3..8 {
            let g = chain(n);
            for cap in 2..=n {
                let start = lq(&g, &Clustering::singletons(&g));
                let r = step2_lq_min(&g, cap, &OrderPolicy::Weighted).unwrap();
                assert!(r.clustering.respects_cap(cap));
                assert!(lq(&g, &r.clustering) <= start + 1e-9);
            }
        }
    }
}
