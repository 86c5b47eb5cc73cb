//! Weighted modularity on the `w` edge weights.
//!
//! With `m` the total weight, `M_c` the weight inside cluster `c` and `Σ_c` the
//! incident weight of its members,
//! `Q = Σ_c [ M_c / m − (Σ_c / 2m)² ]`.
//! Self-loops count once in `m` and `M_c` and twice in a node's degree, so
//! `Σ_c = 2 M_c + S_w(c)` and `Σ_c Σ_c = 2m`.

use alloc::vec;
use alloc::vec::Vec;

use super::adjacency::Adjacency;
use super::Clustering;
use crate::graph::CutGraph;

/// `ΔQ` for moving a node of degree `k_i` from cluster `from` to `to`.
///
/// `k_from`/`k_to` are the weights from the node into each cluster (the node's
/// own self-loops excluded) and `sigma_from`/`sigma_to` the cluster degree
/// totals with the node still in `from`.
pub fn gain_from_parts(
    m: f64,
    k_i: f64,
    k_from: f64,
    k_to: f64,
    sigma_from: f64,
    sigma_to: f64,
) -> f64 {
    let removal = -k_from / m + k_i * (sigma_from - k_i) / (2.0 * m * m);
    let insertion = k_to / m - k_i * sigma_to / (2.0 * m * m);
    removal + insertion
}

/// Cached cluster totals for incremental modularity updates.
pub struct ModularityState {
    adj: Adjacency,
    cluster_of: Vec<usize>,
    m: f64,
    degree: Vec<f64>,
    sigma: Vec<f64>,
    inner: Vec<f64>,
}

impl ModularityState {
    pub fn new(graph: &CutGraph, clustering: &Clustering) -> Self {
        Self::from_adjacency(Adjacency::new(graph), clustering.assignment().to_vec())
    }

    pub(crate) fn from_adjacency(adj: Adjacency, cluster_of: Vec<usize>) -> Self {
        let n = adj.len();
        let slots = cluster_of.iter().map(|&c| c + 1).max().unwrap_or(0).max(n);
        let degree: Vec<f64> = (0..n).map(|i| adj.degree(i)).collect();
        let mut sigma = vec![0.0; slots];
        let mut inner = vec![0.0; slots];
        for i in 0..n {
            let c = cluster_of[i];
            sigma[c] += degree[i];
            inner[c] += adj.loop_w[i];
            for (j, w, _) in adj.neighbors(i) {
                if j > i && cluster_of[j] == c {
                    inner[c] += w;
                }
            }
        }
        let m = adj.total_w();
        Self {
            adj,
            cluster_of,
            m,
            degree,
            sigma,
            inner,
        }
    }

    pub fn total_weight(&self) -> f64 {
        self.m
    }

    pub fn degree(&self, i: usize) -> f64 {
        self.degree[i]
    }

    pub fn sigma(&self, c: usize) -> f64 {
        self.sigma[c]
    }

    pub fn inner(&self, c: usize) -> f64 {
        self.inner[c]
    }

    pub fn cluster_of(&self, i: usize) -> usize {
        self.cluster_of[i]
    }

    pub(crate) fn adjacency(&self) -> &Adjacency {
        &self.adj
    }

    pub(crate) fn assignment(&self) -> &[usize] {
        &self.cluster_of
    }

    /// `k_{i,c}`: weight from `i` to members of `c`, self-loops excluded.
    pub fn k_i_c(&self, i: usize, c: usize) -> f64 {
        self.adj
            .neighbors(i)
            .filter(|&(j, _, _)| self.cluster_of[j] == c)
            .map(|(_, w, _)| w)
            .sum()
    }

    pub fn modularity(&self) -> f64 {
        if self.m <= 0.0 {
            return 0.0;
        }
        let two_m = 2.0 * self.m;
        self.sigma
            .iter()
            .zip(&self.inner)
            .map(|(&s, &mc)| mc / self.m - (s / two_m) * (s / two_m))
            .sum()
    }

    /// Moves `i` into `to`, given its precomputed weights into both clusters.
    pub(crate) fn apply_move(&mut self, i: usize, to: usize, k_from: f64, k_to: f64) {
        let from = self.cluster_of[i];
        let k = self.degree[i];
        let lw = self.adj.loop_w[i];
        self.sigma[from] -= k;
        self.sigma[to] += k;
        self.inner[from] -= k_from + lw;
        self.inner[to] += k_to + lw;
        self.cluster_of[i] = to;
    }

    pub fn move_node(&mut self, i: usize, to: usize) {
        let from = self.cluster_of[i];
        let (kf, kt) = (self.k_i_c(i, from), self.k_i_c(i, to));
        self.apply_move(i, to, kf, kt);
    }
}

/// `ΔQ` of moving node `i` into cluster `to` under the current state.
pub fn modularity_gain(state: &ModularityState, i: usize, to: usize) -> f64 {
    let from = state.cluster_of(i);
    if from == to || state.m <= 0.0 {
        return 0.0;
    }
    gain_from_parts(
        state.m,
        state.degree(i),
        state.k_i_c(i, from),
        state.k_i_c(i, to),
        state.sigma(from),
        state.sigma(to),
    )
}

/// Modularity of `clustering`, computed from the edge list.
pub fn modularity(graph: &CutGraph, clustering: &Clustering) -> f64 {
    let m: f64 = graph.edges.iter().map(|e| e.w).sum();
    if m <= 0.0 {
        return 0.0;
    }
    let k = clustering.num_clusters();
    let mut inner = vec![0.0; k];
    let mut sigma = vec![0.0; k];
    for e in &graph.edges {
        let (ca, cb) = (clustering.cluster_of(e.a), clustering.cluster_of(e.b));
        sigma[ca] += e.w;
        sigma[cb] += e.w;
        if ca == cb {
            inner[ca] += e.w;
        }
    }
    (0..k)
        .map(|c| inner[c] / m - (sigma[c] / (2.0 * m)) * (sigma[c] / (2.0 * m)))
        .sum()
}
