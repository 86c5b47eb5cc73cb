use alloc::vec;
use alloc::vec::Vec;

use crate::graph::CutGraph;

/// CSR adjacency with parallel edges merged and self-loops kept apart.
pub(crate) struct Adjacency {
    offsets: Vec<usize>,
    targets: Vec<usize>,
    w: Vec<f64>,
    w_hat: Vec<f64>,
    pub loop_w: Vec<f64>,
}

impl Adjacency {
    pub fn new(graph: &CutGraph) -> Self {
        let n = graph.node_count();
        let mut loop_w = vec![0.0; n];
        let mut half: Vec<(usize, usize, f64, f64)> = Vec::with_capacity(2 * graph.edges.len());
        for e in &graph.edges {
            if e.is_self_loop() {
                loop_w[e.a] += e.w;
            } else {
                half.push((e.a, e.b, e.w, e.w_hat));
                half.push((e.b, e.a, e.w, e.w_hat));
            }
        }
        half.sort_by_key(|x| (x.0, x.1));
        let mut offsets = vec![0; n + 1];
        let mut targets = Vec::with_capacity(half.len());
        let mut w = Vec::with_capacity(half.len());
        let mut w_hat = Vec::with_capacity(half.len());
        let mut last: Option<(usize, usize)> = None;
        for (a, b, ew, ewh) in half {
            if last == Some((a, b)) {
                *w.last_mut().unwrap() += ew;
                *w_hat.last_mut().unwrap() += ewh;
                continue;
            }
            last = Some((a, b));
            offsets[a + 1] += 1;
            targets.push(b);
            w.push(ew);
            w_hat.push(ewh);
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        Self {
            offsets,
            targets,
            w,
            w_hat,
            loop_w,
        }
    }

    pub fn len(&self) -> usize {
        self.loop_w.len()
    }

    /// `(neighbor, w, ŵ)` for every non-loop neighbor of `i`.
    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = (usize, f64, f64)> + '_ {
        let range = self.offsets[i]..self.offsets[i + 1];
        range.map(move |k| (self.targets[k], self.w[k], self.w_hat[k]))
    }

    /// Weight of non-loop edges at `i`.
    pub fn external_w(&self, i: usize) -> (f64, f64) {
        self.neighbors(i)
            .fold((0.0, 0.0), |(a, b), (_, w, wh)| (a + w, b + wh))
    }

    /// `k_i`: incident weight with self-loops counted at both ends.
    pub fn degree(&self, i: usize) -> f64 {
        self.external_w(i).0 + 2.0 * self.loop_w[i]
    }

    /// `m`: total edge weight, self-loops counted once.
    pub fn total_w(&self) -> f64 {
        self.w.iter().sum::<f64>() / 2.0 + self.loop_w.iter().sum::<f64>()
    }
}

/// Scratch accumulator for per-cluster neighbor weights of one node.
pub(crate) struct NeighborWeights {
    w: Vec<f64>,
    w_hat: Vec<f64>,
    seen: Vec<bool>,
    pub touched: Vec<usize>,
}

impl NeighborWeights {
    pub fn new(slots: usize) -> Self {
        Self {
            w: vec![0.0; slots],
            w_hat: vec![0.0; slots],
            seen: vec![false; slots],
            touched: Vec::new(),
        }
    }

    /// Collects weights from `i` into each neighboring cluster, sorted by id.
    pub fn gather(&mut self, adj: &Adjacency, i: usize, cluster_of: &[usize]) {
        for &c in &self.touched {
            self.w[c] = 0.0;
            self.w_hat[c] = 0.0;
            self.seen[c] = false;
        }
        self.touched.clear();
        for (j, w, wh) in adj.neighbors(i) {
            let c = cluster_of[j];
            if !self.seen[c] {
                self.seen[c] = true;
                self.touched.push(c);
            }
            self.w[c] += w;
            self.w_hat[c] += wh;
        }
        self.touched.sort_unstable();
    }

    pub fn w(&self, c: usize) -> f64 {
        self.w[c]
    }

    pub fn w_hat(&self, c: usize) -> f64 {
        self.w_hat[c]
    }
}
