//! The doubly-weighted cut graph.
//!
//! Every two-qubit gate contributes one node per operand and a space-like edge
//! between them; consecutive nodes on a wire are joined by a time-like edge.
//! Single-qubit gates do not appear. Each edge carries `w = ln κ²` and
//! `ŵ = ln τ` for the decomposition that would realise cutting it.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::circuit::CircuitIR;
use crate::math::ln;
use crate::qubits::QubitSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CutKind {
    SpaceLike,
    TimeLike,
    Merged,
}

impl CutKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CutKind::SpaceLike => "space",
            CutKind::TimeLike => "time",
            CutKind::Merged => "merged",
        }
    }
}

/// Overhead factors of one cut decomposition: `κ = Σ|a|`, `τ = Σa²`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CutWeight {
    pub kappa: f64,
    pub tau: f64,
}

impl CutWeight {
    pub const TIME_LIKE: CutWeight = CutWeight {
        kappa: 4.0,
        tau: 2.0,
    };
    pub const CX: CutWeight = CutWeight {
        kappa: 3.0,
        tau: 1.5,
    };

    pub fn w(&self) -> f64 {
        ln(self.kappa * self.kappa)
    }

    pub fn w_hat(&self) -> f64 {
        ln(self.tau)
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GraphError {
    #[error("no cut weight for two-qubit gate `{0}` and fallback is disabled")]
    UnknownGateWeight(String),
    #[error("invalid cut weight κ={kappa}, τ={tau}: need κ ≥ 1, 1 ≤ τ ≤ κ²")]
    InvalidWeight { kappa: f64, tau: f64 },
    #[error("invalid circuit: {0}")]
    Circuit(#[from] crate::circuit::CircuitError),
}

/// `(cut kind, gate kind) → (κ, τ)`.
#[derive(Clone, Debug)]
pub struct WeightTable {
    time_like: CutWeight,
    space_like: BTreeMap<String, CutWeight>,
    fallback: Option<CutWeight>,
}

impl Default for WeightTable {
    fn default() -> Self {
        let mut space_like = BTreeMap::new();
        space_like.insert("cx".to_string(), CutWeight::CX);
        space_like.insert("cz".to_string(), CutWeight::CX);
        Self {
            time_like: CutWeight::TIME_LIKE,
            space_like,
            fallback: Some(CutWeight::CX),
        }
    }
}

fn check(weight: CutWeight) -> Result<CutWeight, GraphError> {
    let CutWeight { kappa, tau } = weight;
    if kappa >= 1.0 && tau >= 1.0 && tau <= kappa * kappa {
        Ok(weight)
    } else {
        Err(GraphError::InvalidWeight { kappa, tau })
    }
}

impl WeightTable {
    pub fn time_like(&self) -> CutWeight {
        self.time_like
    }

    pub fn set_time_like(&mut self, weight: CutWeight) -> Result<(), GraphError> {
        self.time_like = check(weight)?;
        Ok(())
    }

    pub fn insert_space_like(&mut self, gate: &str, weight: CutWeight) -> Result<(), GraphError> {
        self.space_like.insert(gate.to_string(), check(weight)?);
        Ok(())
    }

    /// Weight used for two-qubit gates without an entry; `None` makes them an error.
    pub fn set_fallback(&mut self, weight: Option<CutWeight>) -> Result<(), GraphError> {
        self.fallback = weight.map(check).transpose()?;
        Ok(())
    }

    pub fn space_like(&self, gate: &str) -> Option<CutWeight> {
        self.space_like.get(gate).copied()
    }

    pub fn entries(&self) -> impl Iterator<Item = (CutKind, &str, CutWeight)> {
        core::iter::once((CutKind::TimeLike, "", self.time_like)).chain(
            self.space_like
                .iter()
                .map(|(k, v)| (CutKind::SpaceLike, k.as_str(), *v)),
        )
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Node {
    pub id: usize,
    pub qubits: QubitSet,
    /// Source gate index and operand slot; `None` for supernodes.
    pub gate: Option<(usize, usize)>,
}

impl Node {
    /// `g<gate>_<slot>` for atomic nodes, `s<id>` for supernodes.
    pub fn label(&self) -> String {
        match self.gate {
            Some((g, slot)) => alloc::format!("g{g}_{slot}"),
            None => alloc::format!("s{}", self.id),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    pub kind: CutKind,
    pub w: f64,
    pub w_hat: f64,
}

impl Edge {
    pub fn is_self_loop(&self) -> bool {
        self.a == self.b
    }
}

/// Undirected multigraph with `w`/`ŵ` weighted edges.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct CutGraph {
    pub name: String,
    pub num_qubits: usize,
    pub nodes: Vec<Node>,
    pub edges: Vec<Edge>,
    /// Two-qubit gate kinds that were weighted with the fallback entry.
    pub fallback_kinds: Vec<String>,
}

impl CutGraph {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn total_w(&self) -> f64 {
        self.edges.iter().map(|e| e.w).sum()
    }

    pub fn total_w_hat(&self) -> f64 {
        self.edges.iter().map(|e| e.w_hat).sum()
    }

    pub fn count_kind(&self, kind: CutKind) -> usize {
        self.edges.iter().filter(|e| e.kind == kind).count()
    }

    /// Whether every node is reachable from node 0 (true for the empty graph).
    pub fn is_connected(&self) -> bool {
        if self.nodes.is_empty() {
            return true;
        }
        let mut parent: Vec<usize> = (0..self.nodes.len()).collect();
        for e in &self.edges {
            union(&mut parent, e.a, e.b);
        }
        let root = find(&mut parent, 0);
        (0..self.nodes.len()).all(|i| find(&mut parent, i) == root)
    }

    /// Atomic nodes of each wire in time order. Empty for contracted graphs.
    pub fn wire_nodes(&self) -> Vec<Vec<usize>> {
        let mut wires = vec![Vec::new(); self.num_qubits];
        for n in &self.nodes {
            if n.gate.is_some() {
                if let Some(q) = n.qubits.iter().next() {
                    wires[q].push(n.id);
                }
            }
        }
        for w in &mut wires {
            w.sort_by_key(|&id| self.nodes[id].gate);
        }
        wires
    }
}

pub(crate) fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

pub(crate) fn union(parent: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (find(parent, a), find(parent, b));
    if ra != rb {
        parent[ra.max(rb)] = ra.min(rb);
    }
}

/// Builds the atomic cut graph of `circuit`.
pub fn build_cut_graph(circuit: &CircuitIR, weights: &WeightTable) -> Result<CutGraph, GraphError> {
    circuit.validate()?;
    let time = weights.time_like();
    let (tw, tw_hat) = (time.w(), time.w_hat());
    let mut graph = CutGraph {
        name: circuit.name.clone(),
        num_qubits: circuit.num_qubits,
        ..CutGraph::default()
    };
    let mut last_on_wire: Vec<Option<usize>> = vec![None; circuit.num_qubits];
    for (gid, gate) in circuit.gates.iter().enumerate() {
        if !gate.is_two_qubit() {
            continue;
        }
        let weight = match weights.space_like(&gate.kind) {
            Some(w) => w,
            None => {
                let w = weights
                    .fallback
                    .ok_or_else(|| GraphError::UnknownGateWeight(gate.kind.clone()))?;
                if !graph.fallback_kinds.contains(&gate.kind) {
                    graph.fallback_kinds.push(gate.kind.clone());
                }
                w
            }
        };
        let first = graph.nodes.len();
        for (slot, &q) in gate.operands.iter().enumerate() {
            let id = graph.nodes.len();
            graph.nodes.push(Node {
                id,
                qubits: QubitSet::single(q),
                gate: Some((gid, slot)),
            });
            if let Some(prev) = last_on_wire[q] {
                graph.edges.push(Edge {
                    a: prev,
                    b: id,
                    kind: CutKind::TimeLike,
                    w: tw,
                    w_hat: tw_hat,
                });
            }
            last_on_wire[q] = Some(id);
        }
        graph.edges.push(Edge {
            a: first,
            b: first + 1,
            kind: CutKind::SpaceLike,
            w: weight.w(),
            w_hat: weight.w_hat(),
        });
    }
    Ok(graph)
}

/// Contracts each cluster of `assignment` (node → cluster id) into a supernode.
///
/// Cluster ids are compacted in order of their smallest member. Edge weights
/// between two supernodes are summed; intra-cluster weight becomes a
/// self-loop. An edge that stands for a single original edge keeps its kind.
pub fn contract(graph: &CutGraph, assignment: &[usize]) -> CutGraph {
    let (compact, count) = compact_assignment(assignment);
    let mut nodes: Vec<Node> = (0..count)
        .map(|id| Node {
            id,
            qubits: QubitSet::new(),
            gate: None,
        })
        .collect();
    let mut members = vec![0usize; count];
    for (i, &c) in compact.iter().enumerate() {
        nodes[c].qubits.union_with(&graph.nodes[i].qubits);
        members[c] += 1;
    }
    // Singleton clusters keep their gate label so that identity contraction
    // reproduces the input graph.
    for (i, &c) in compact.iter().enumerate() {
        if members[c] == 1 {
            nodes[c].gate = graph.nodes[i].gate;
        }
    }
    let mut merged: BTreeMap<(usize, usize), (f64, f64, usize, CutKind)> = BTreeMap::new();
    for e in &graph.edges {
        let (ca, cb) = (compact[e.a], compact[e.b]);
        let key = (ca.min(cb), ca.max(cb));
        let entry = merged.entry(key).or_insert((0.0, 0.0, 0, e.kind));
        entry.0 += e.w;
        entry.1 += e.w_hat;
        entry.2 += 1;
    }
    let edges = merged
        .into_iter()
        .map(|((a, b), (w, w_hat, n, kind))| Edge {
            a,
            b,
            kind: if n == 1 { kind } else { CutKind::Merged },
            w,
            w_hat,
        })
        .collect();
    CutGraph {
        name: graph.name.clone(),
        num_qubits: graph.num_qubits,
        nodes,
        edges,
        fallback_kinds: graph.fallback_kinds.clone(),
    }
}

/// Relabels cluster ids to `0..count` in order of first appearance.
pub(crate) fn compact_assignment(assignment: &[usize]) -> (Vec<usize>, usize) {
    let mut map = BTreeMap::new();
    let compact = assignment
        .iter()
        .map(|&c| {
            let next = map.len();
            *map.entry(c).or_insert(next)
        })
        .collect();
    (compact, map.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain3() -> CutGraph {
        let mut c = CircuitIR::new("chain3", 3);
        c.push("cx", &[0, 1], &[]).push("cx", &[1, 2], &[]);
        build_cut_graph(&c, &WeightTable::default()).unwrap()
    }

    #[test]
    fn chain_of_two_cx() {
        let g = chain3();
        assert_eq!(g.node_count(), 4);
        let space: Vec<_> = g
            .edges
            .iter()
            .filter(|e| e.kind == CutKind::SpaceLike)
            .collect();
        let time: Vec<_> = g
            .edges
            .iter()
            .filter(|e| e.kind == CutKind::TimeLike)
            .collect();
        assert_eq!(space.len(), 2);
        assert_eq!((space[0].a, space[0].b), (0, 1));
        assert_eq!((space[1].a, space[1].b), (2, 3));
        assert_eq!(time.len(), 1);
        assert_eq!((time[0].a, time[0].b), (1, 2));
        assert!((space[0].w - ln(9.0)).abs() < 1e-15);
        assert!((time[0].w - ln(16.0)).abs() < 1e-15);
        assert!((time[0].w_hat - ln(2.0)).abs() < 1e-15);
        assert_eq!(g.nodes[2].label(), "g1_0");
    }

    #[test]
    fn empty_circuit_gives_empty_graph() {
        let g = build_cut_graph(&CircuitIR::new("e", 4), &WeightTable::default()).unwrap();
        assert!(g.nodes.is_empty() && g.edges.is_empty());
    }

    #[test]
    fn repeated_cx_counts() {
        for m in 1..6 {
            let mut c = CircuitIR::new("rep", 2);
            for _ in 0..m {
                c.push("cx", &[0, 1], &[]);
            }
            let g = build_cut_graph(&c, &WeightTable::default()).unwrap();
            assert_eq!(g.node_count(), 2 * m);
            assert_eq!(g.count_kind(CutKind::SpaceLike), m);
            assert_eq!(g.count_kind(CutKind::TimeLike), 2 * (m - 1));
        }
    }

    #[test]
    fn unknown_gate_fallback() {
        let mut c = CircuitIR::new("t", 2);
        c.push("swap", &[0, 1], &[]);
        let g = build_cut_graph(&c, &WeightTable::default()).unwrap();
        assert_eq!(g.fallback_kinds, vec!["swap".to_string()]);
        assert!((g.edges[0].w - ln(9.0)).abs() < 1e-15);
        let mut strict = WeightTable::default();
        strict.set_fallback(None).unwrap();
        assert_eq!(
            build_cut_graph(&c, &strict),
            Err(GraphError::UnknownGateWeight("swap".into()))
        );
    }

    #[test]
    fn table_rejects_tau_above_kappa_squared() {
        let mut t = WeightTable::default();
        assert!(t
            .insert_space_like(
                "rzz",
                CutWeight {
                    kappa: 1.0,
                    tau: 2.0
                }
            )
            .is_err());
        for (_, _, w) in t.entries() {
            assert!(w.tau <= w.kappa * w.kappa);
        }
    }

    #[test]
    fn contraction_split_at_time_edge() {
        let g = chain3();
        let c = contract(&g, &[0, 0, 1, 1]);
        assert_eq!(c.node_count(), 2);
        let inter: Vec<_> = c.edges.iter().filter(|e| !e.is_self_loop()).collect();
        assert_eq!(inter.len(), 1);
        assert!((inter[0].w - ln(16.0)).abs() < 1e-15);
        assert!((inter[0].w_hat - ln(2.0)).abs() < 1e-15);
        let loops: Vec<_> = c.edges.iter().filter(|e| e.is_self_loop()).collect();
        assert_eq!(loops.len(), 2);
        assert!(loops.iter().all(|e| (e.w - ln(9.0)).abs() < 1e-15));
        assert_eq!(c.nodes[0].qubits.as_slice(), &[0, 1]);
        assert_eq!(c.nodes[1].qubits.as_slice(), &[1, 2]);
    }

    #[test]
    fn singleton_contraction_is_identity() {
        let g = chain3();
        let c = contract(&g, &[0, 1, 2, 3]);
        assert_eq!(c.nodes, g.nodes);
        let mut a = g.edges.clone();
        let mut b = c.edges.clone();
        a.sort_by_key(|x| (x.a, x.b));
        b.sort_by_key(|x| (x.a, x.b));
        assert_eq!(a, b);
    }

    #[test]
    fn single_cluster_contraction() {
        let g = chain3();
        let c = contract(&g, &[5, 5, 5, 5]);
        assert_eq!(c.node_count(), 1);
        assert_eq!(c.edges.len(), 1);
        assert!(c.edges[0].is_self_loop());
        assert!((c.edges[0].w - g.total_w()).abs() < 1e-12);
        assert_eq!(c.edges[0].kind, CutKind::Merged);
    }

    #[test]
    fn connectivity() {
        let g = chain3();
        assert!(g.is_connected());
        let mut c = CircuitIR::new("split", 4);
        c.push("cx", &[0, 1], &[]).push("cx", &[2, 3], &[]);
        assert!(!build_cut_graph(&c, &WeightTable::default())
            .unwrap()
            .is_connected());
    }
}
