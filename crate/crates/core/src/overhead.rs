//! Sampling-overhead arithmetic.
//!
//! For a clustering with `R` clusters, `E_c` the cut edges attached to `c` and
//! `D_c` the remaining cut edges,
//! `I_c = R · Π_{E_c} κ² · Π_{D_c} τ`, so
//! `ln I_c = ln R + S_w(c) + (Ŵ_cut − S_ŵ(c))`.
//! Cluster `c` needs `N_c = ⌈I_c / ε²⌉` shots for a standard deviation of at
//! most `ε` on a product observable.

use alloc::vec;
use alloc::vec::Vec;

use crate::cluster::Clustering;
use crate::graph::{CutGraph, CutKind, CutWeight};
use crate::math::{ceil_tolerant, exp, ln, log_sum_exp, pow};

/// Cut-edge sums per cluster.
#[derive(Clone, Debug, PartialEq)]
pub struct CutSums {
    pub r: usize,
    pub s_w: Vec<f64>,
    pub s_w_hat: Vec<f64>,
    pub w_cut: f64,
    pub w_hat_cut: f64,
    /// Attached space-like / time-like cut edges per cluster.
    pub n_space: Vec<usize>,
    pub n_time: Vec<usize>,
    pub tot_space: usize,
    pub tot_time: usize,
    pub tot_merged: usize,
}

impl CutSums {
    pub fn new(graph: &CutGraph, clustering: &Clustering) -> Self {
        let r = clustering.num_clusters();
        let mut sums = Self {
            r,
            s_w: vec![0.0; r],
            s_w_hat: vec![0.0; r],
            w_cut: 0.0,
            w_hat_cut: 0.0,
            n_space: vec![0; r],
            n_time: vec![0; r],
            tot_space: 0,
            tot_time: 0,
            tot_merged: 0,
        };
        for e in &graph.edges {
            let (ca, cb) = (clustering.cluster_of(e.a), clustering.cluster_of(e.b));
            if ca == cb {
                continue;
            }
            sums.w_cut += e.w;
            sums.w_hat_cut += e.w_hat;
            match e.kind {
                CutKind::SpaceLike => sums.tot_space += 1,
                CutKind::TimeLike => sums.tot_time += 1,
                CutKind::Merged => sums.tot_merged += 1,
            }
            for c in [ca, cb] {
                sums.s_w[c] += e.w;
                sums.s_w_hat[c] += e.w_hat;
                match e.kind {
                    CutKind::SpaceLike => sums.n_space[c] += 1,
                    CutKind::TimeLike => sums.n_time[c] += 1,
                    CutKind::Merged => {}
                }
            }
        }
        sums
    }

    pub fn ln_i(&self, c: usize) -> f64 {
        ln(self.r as f64) + self.s_w[c] + (self.w_hat_cut - self.s_w_hat[c])
    }

    pub fn ln_i_all(&self) -> Vec<f64> {
        (0..self.r).map(|c| self.ln_i(c)).collect()
    }
}

pub fn ln_i_c(graph: &CutGraph, clustering: &Clustering, c: usize) -> f64 {
    CutSums::new(graph, clustering).ln_i(c)
}

/// `L_Q = max_c ln I_c`; zero for an empty graph.
pub fn lq(graph: &CutGraph, clustering: &Clustering) -> f64 {
    CutSums::new(graph, clustering)
        .ln_i_all()
        .into_iter()
        .fold(0.0, f64::max)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ShotBudget {
    pub eps: f64,
    pub per_cluster: Vec<u64>,
    /// Saturates at `u64::MAX`; see `ln_total` for the exact magnitude.
    pub total: u64,
    pub ln_total: f64,
}

impl ShotBudget {
    /// Budget from per-cluster `ln I_c` values.
    pub fn from_ln_i(ln_i: &[f64], eps: f64) -> Self {
        let shift = 2.0 * ln(eps);
        let per_cluster: Vec<u64> = ln_i
            .iter()
            .map(|&l| ceil_tolerant(exp(l - shift)))
            .collect();
        Self::assemble(
            eps,
            per_cluster,
            log_sum_exp(ln_i.iter().map(|&l| l - shift)),
        )
    }

    fn assemble(eps: f64, per_cluster: Vec<u64>, ln_total: f64) -> Self {
        let total = per_cluster.iter().fold(0u64, |a, &n| a.saturating_add(n));
        Self {
            eps,
            per_cluster,
            total,
            ln_total,
        }
    }
}

/// Shot budget of a clustering at precision `eps`.
pub fn shot_budget(graph: &CutGraph, clustering: &Clustering, eps: f64) -> ShotBudget {
    ShotBudget::from_ln_i(&CutSums::new(graph, clustering).ln_i_all(), eps)
}

/// One cut between two partitions.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Cut {
    pub between: (usize, usize),
    pub weight: CutWeight,
}

/// Partitions and the cuts joining them, independent of any circuit.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct CutTopology {
    pub partitions: usize,
    pub cuts: Vec<Cut>,
}

impl CutTopology {
    pub fn new(partitions: usize) -> Self {
        Self {
            partitions,
            cuts: Vec::new(),
        }
    }

    pub fn with_cut(mut self, a: usize, b: usize, weight: CutWeight) -> Self {
        self.cuts.push(Cut {
            between: (a, b),
            weight,
        });
        self
    }

    fn attached(cut: &Cut, c: usize) -> bool {
        cut.between.0 == c || cut.between.1 == c
    }

    /// `I_c` as a direct product.
    pub fn overhead(&self, c: usize) -> f64 {
        self.cuts.iter().fold(self.partitions as f64, |acc, cut| {
            if Self::attached(cut, c) {
                acc * cut.weight.kappa * cut.weight.kappa
            } else {
                acc * cut.weight.tau
            }
        })
    }

    pub fn ln_overhead(&self, c: usize) -> f64 {
        self.cuts
            .iter()
            .fold(ln(self.partitions as f64), |acc, cut| {
                if Self::attached(cut, c) {
                    acc + cut.weight.w()
                } else {
                    acc + cut.weight.w_hat()
                }
            })
    }

    pub fn shot_budget(&self, eps: f64) -> ShotBudget {
        let per_cluster = (0..self.partitions)
            .map(|c| ceil_tolerant(self.overhead(c) / (eps * eps)))
            .collect();
        let ln_total =
            log_sum_exp((0..self.partitions).map(|c| self.ln_overhead(c))) - 2.0 * ln(eps);
        ShotBudget::assemble(eps, per_cluster, ln_total)
    }

    pub fn kappas(&self) -> Vec<f64> {
        self.cuts.iter().map(|c| c.weight.kappa).collect()
    }
}

/// Hoeffding budget `2 (Πκ)² ln(2/δ) / ε²` applied to each of `r` partitions.
///
/// The product with `r` is taken before rounding up.
pub fn prior_bound(kappas: &[f64], eps: f64, delta: f64, r: usize) -> u64 {
    let k: f64 = kappas.iter().product();
    ceil_tolerant(r as f64 * 2.0 * k * k * ln(2.0 / delta) / (eps * eps))
}

/// Natural log of [`prior_bound`] before rounding, from `Σ ln κ²`.
pub fn ln_prior_bound(sum_w: f64, eps: f64, delta: f64, r: usize) -> f64 {
    ln(r as f64) + ln(2.0) + sum_w + ln(ln(2.0 / delta)) - 2.0 * ln(eps)
}

/// `2(e−1)² (R·8^{d'})³ ln(6R·8^{d'}) / ε²`.
pub fn peng_bound(r: usize, d_prime: u32, eps: f64) -> f64 {
    let e1 = core::f64::consts::E - 1.0;
    let base = r as f64 * pow(8.0, d_prime as f64);
    2.0 * e1 * e1 * base * base * base * ln(6.0 * base) / (eps * eps)
}

/// Table-style summary of one clustering.
#[derive(Clone, Debug, PartialEq)]
pub struct OverheadReport {
    pub ln_i: Vec<f64>,
    pub lq: f64,
    pub ld: f64,
    /// Cluster attaining `L_Q` (lowest id on ties).
    pub argmax: usize,
    pub n_space: usize,
    pub n_time: usize,
    pub n_tot_space: usize,
    pub n_tot_time: usize,
    pub l_tot: f64,
    pub r: usize,
    pub shots: Option<ShotBudget>,
}

impl OverheadReport {
    pub fn lq_log10(&self) -> f64 {
        self.lq / ln(10.0)
    }

    pub fn ld_log10(&self) -> f64 {
        self.ld / ln(10.0)
    }

    pub fn l_tot_log10(&self) -> f64 {
        self.l_tot / ln(10.0)
    }

    /// `log10 N_total`, if a budget was requested.
    pub fn n_total_log10(&self) -> Option<f64> {
        self.shots.as_ref().map(|s| s.ln_total / ln(10.0))
    }
}

pub fn build_report(graph: &CutGraph, clustering: &Clustering, eps: Option<f64>) -> OverheadReport {
    let sums = CutSums::new(graph, clustering);
    let ln_i = sums.ln_i_all();
    let mut argmax = 0;
    for (c, &l) in ln_i.iter().enumerate() {
        if l > ln_i[argmax] {
            argmax = c;
        }
    }
    let (lq, ld, n_space, n_time) = if ln_i.is_empty() {
        (0.0, 0.0, 0, 0)
    } else {
        (
            ln_i[argmax],
            sums.s_w[argmax],
            sums.n_space[argmax],
            sums.n_time[argmax],
        )
    };
    OverheadReport {
        shots: eps.map(|e| ShotBudget::from_ln_i(&ln_i, e)),
        lq,
        ld,
        argmax,
        n_space,
        n_time,
        n_tot_space: sums.tot_space,
        n_tot_time: sums.tot_time,
        l_tot: sums.w_cut,
        r: sums.r,
        ln_i,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::CircuitIR;
    use crate::graph::{build_cut_graph, WeightTable};
    use proptest::prelude::*;

    fn fig1() -> CutTopology {
        let t = CutWeight::TIME_LIKE;
        CutTopology::new(3)
            .with_cut(0, 1, t)
            .with_cut(0, 1, t)
            .with_cut(1, 2, t)
            .with_cut(0, 2, t)
    }

    #[test]
    fn worked_three_partition_budget() {
        let b = fig1().shot_budget(1.0);
        assert_eq!(b.per_cluster, vec![24576, 24576, 3072]);
        assert_eq!(b.total, 52224);
        let l1 = ln(3.0) + 3.0 * ln(16.0) + ln(2.0);
        assert!((fig1().ln_overhead(0) - l1).abs() < 1e-12);
    }

    #[test]
    fn prior_and_peng_bounds() {
        let p = prior_bound(&fig1().kappas(), 1.0, 1.0 / 3.0, 3);
        assert!(p.abs_diff(704548) <= 1, "prior = {p}");
        assert_eq!(prior_bound(&[], 1.0, 1.0 / 3.0, 1), 4);
        let cx = prior_bound(&[3.0], 0.1, 0.05, 2);
        assert_eq!(cx, ceil_tolerant(2.0 * 2.0 * 9.0 * ln(40.0) / 0.01));
        let peng = peng_bound(3, 3, 1.0);
        assert!((peng / 2.0e11 - 1.0).abs() < 0.03, "peng = {peng}");
        let e1 = core::f64::consts::E - 1.0;
        assert!((peng_bound(1, 0, 1.0) - 2.0 * e1 * e1 * ln(6.0)).abs() < 1e-12);
        let direct = 2.0 * e1 * e1 * 4096.0 * ln(96.0) / 0.25;
        assert!((peng_bound(2, 1, 0.5) / direct - 1.0).abs() < 1e-12);
    }

    #[test]
    fn single_cluster_budget() {
        let mut circ = CircuitIR::new("t", 2);
        circ.push("cx", &[0, 1], &[]);
        let g = build_cut_graph(&circ, &WeightTable::default()).unwrap();
        let cl = Clustering::single_cluster(&g);
        let b = shot_budget(&g, &cl, 0.1);
        assert_eq!(b.total, 100);
        assert_eq!(lq(&g, &cl), 0.0);
    }

    #[test]
    fn report_counts_on_chain() {
        let mut circ = CircuitIR::new("t", 3);
        circ.push("cx", &[0, 1], &[]).push("cx", &[1, 2], &[]);
        let g = build_cut_graph(&circ, &WeightTable::default()).unwrap();
        let cl = Clustering::from_assignment(&g, &[0, 1, 1, 1]);
        let rep = build_report(&g, &cl, Some(1.0));
        assert!((rep.lq - ln(18.0)).abs() < 1e-12);
        assert!((rep.ld - ln(9.0)).abs() < 1e-12);
        assert_eq!((rep.n_space, rep.n_time, rep.r), (1, 0, 2));
        assert_eq!(rep.shots.unwrap().per_cluster, vec![18, 18]);
    }

    #[test]
    fn ld_from_counts() {
        let ld = 2.0 * ln(9.0) + ln(16.0);
        assert!((ld - 7.17).abs() < 0.005);
    }

    fn random_case() -> impl Strategy<Value = (CutGraph, Vec<usize>)> {
        proptest::collection::vec((0usize..4, 0usize..4), 1..8).prop_flat_map(|pairs| {
            let mut circ = CircuitIR::new("r", 4);
            for (a, b) in pairs {
                if a != b {
                    circ.push("cx", &[a, b], &[]);
                }
            }
            let g = build_cut_graph(&circ, &WeightTable::default()).unwrap();
            let n = g.node_count();
            (Just(g), proptest::collection::vec(0usize..3, n))
        })
    }

    proptest! {
        #[test]
        fn ln_i_matches_edge_classification((g, raw) in random_case()) {
            prop_assume!(g.node_count() > 0);
            let cl = Clustering::from_assignment(&g, &raw);
            let r = cl.num_clusters();
            for c in 0..r {
                let mut direct = ln(r as f64);
                for e in &g.edges {
                    let (a, b) = (cl.cluster_of(e.a), cl.cluster_of(e.b));
                    if a == b { continue; }
                    direct += if a == c || b == c { e.w } else { e.w_hat };
                }
                prop_assert!((ln_i_c(&g, &cl, c) - direct).abs() < 1e-9);
            }
            let rep = build_report(&g, &cl, Some(0.5));
            prop_assert!((exp(rep.lq) / rep.ln_i.iter().map(|&l| exp(l)).fold(0.0, f64::max) - 1.0).abs() < 1e-12);
            prop_assert!((rep.l_tot - (rep.n_tot_space as f64 * ln(9.0) + rep.n_tot_time as f64 * ln(16.0))).abs() < 1e-9);
            prop_assert!(rep.ld <= rep.lq - ln(r as f64) + 1e-9);
        }

        #[test]
        fn partition_count_term(r in 1usize..50) {
            let t = CutWeight::TIME_LIKE;
            let a = CutTopology::new(r + 1).with_cut(0, 1, t);
            let b = CutTopology::new(r + 2).with_cut(0, 1, t);
            prop_assert!((b.ln_overhead(0) - a.ln_overhead(0) - ln((r + 2) as f64 / (r + 1) as f64)).abs() < 1e-12);
        }

        #[test]
        fn extra_attached_cut_never_decreases(n in 0usize..5, c in 0usize..3) {
            let mut t = CutTopology::new(3);
            for k in 0..n {
                t = t.with_cut(k % 3, (k + 1) % 3, CutWeight::CX);
            }
            let before = t.ln_overhead(c);
            let after = t.with_cut(c, (c + 1) % 3, CutWeight::TIME_LIKE).ln_overhead(c);
            prop_assert!(after >= before);
        }
    }
}
