use proptest::prelude::*;
use qcut_core::cluster::exhaustive::optimal_lq;
use qcut_core::cluster::modularity::modularity;
use qcut_core::fixtures::ising_chain;
use qcut_core::overhead::lq;
use qcut_core::*;

const LN16: f64 = 2.772588722239781;

fn graph_of(n: usize, gates: &[(usize, usize)]) -> CutGraph {
    let mut circ = CircuitIR::new("g", n);
    for &(a, b) in gates {
        circ.push("cx", &[a, b], &[]);
    }
    build_cut_graph(&circ, &WeightTable::default()).unwrap()
}

fn small_circuit() -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
    (2usize..=5).prop_flat_map(|n| {
        let pair = (0..n, 1..n).prop_map(move |(a, d)| (a, (a + d) % n));
        (Just(n), proptest::collection::vec(pair, 1..=4))
    })
}

fn medium_circuit() -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
    (3usize..=12).prop_flat_map(|n| {
        let pair = (0..n, 1..n).prop_map(move |(a, d)| (a, (a + d) % n));
        (Just(n), proptest::collection::vec(pair, 1..40))
    })
}

#[test]
fn chain_fixture_reaches_exhaustive_optimum() {
    let g = graph_of(3, &[(0, 1), (1, 2)]);
    let (opt, _) = optimal_lq(&g, 2).unwrap();
    let r = run_pipeline(&g, 2, &PipelineOptions::default()).unwrap();
    assert!((r.step2.lq - opt).abs() < 1e-12);
    assert_eq!(r.step2.r, 2);
}

#[test]
fn weighted_order_ising_34_regression() {
    let g = build_cut_graph(&ising_chain(34, 1), &WeightTable::default()).unwrap();
    let r = run_pipeline(&g, 30, &PipelineOptions::default()).unwrap();
    assert_eq!((r.step1.r, r.step2.r), (16, 2));
    assert!((r.step1.lq - 17.33).abs() < 0.005);
    assert!((r.step1.ld - 5.55).abs() < 0.005);
    assert!((r.step2.lq - 3.47).abs() < 0.005);
    assert!((r.step2.ld - 2.77).abs() < 0.005);
}

#[test]
fn disjoint_blocks_become_separate_clusters() {
    let g = graph_of(4, &[(0, 1), (2, 3), (0, 1), (2, 3)]);
    let r = step1_modularity(&g, 4, &OrderPolicy::Weighted).unwrap();
    assert_eq!(r.clustering.num_clusters(), 2);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn small_instances_close_to_optimum((n, gates) in small_circuit(), cap in 1usize..=5) {
        let g = graph_of(n, &gates);
        let (opt, _) = optimal_lq(&g, cap).unwrap();
        let r = run_pipeline(&g, cap, &PipelineOptions::default()).unwrap();
        let found = lq(&g, &r.clustering);
        prop_assert!((found - r.step2.lq).abs() < 1e-12);
        prop_assert!(found >= opt - 1e-9);
        prop_assert!(found <= opt + LN16 + 1e-9, "found {} optimum {}", found, opt);
    }

    #[test]
    fn pipeline_invariants((n, gates) in medium_circuit(), cap in 1usize..=8, seed in any::<u64>()) {
        let g = graph_of(n, &gates);
        for order in [OrderPolicy::Weighted, OrderPolicy::Random { seed }] {
            let opts = PipelineOptions { order, restarts: 2, direct_candidate: true };
            let a = run_pipeline(&g, cap, &opts).unwrap();
            let b = run_pipeline(&g, cap, &opts).unwrap();
            prop_assert_eq!(&a.clustering, &b.clustering);
            prop_assert!(a.clustering.respects_cap(cap));
            prop_assert!(a.step1_clustering.respects_cap(cap));
            prop_assert!(a.step2.lq <= a.step1.lq + 1e-9);
        }
        let s1 = step1_modularity(&g, cap, &OrderPolicy::Weighted).unwrap();
        let single = qcut_core::cluster::Clustering::singletons(&g);
        prop_assert!(modularity(&g, &s1.clustering) >= modularity(&g, &single) - 1e-12);
    }

    #[test]
    fn contraction_conserves_weight((n, gates) in medium_circuit(), raw in proptest::collection::vec(0usize..5, 80)) {
        let g = graph_of(n, &gates);
        let assign: Vec<usize> = raw.iter().cycle().take(g.node_count()).copied().collect();
        let c = contract(&g, &assign);
        prop_assert!((c.total_w() - g.total_w()).abs() < 1e-9);
        prop_assert!((c.total_w_hat() - g.total_w_hat()).abs() < 1e-9);
        let mut before: Vec<usize> = g.nodes.iter().flat_map(|x| x.qubits.iter()).collect();
        let mut after: Vec<usize> = c.nodes.iter().flat_map(|x| x.qubits.iter()).collect();
        before.sort_unstable();
        before.dedup();
        after.sort_unstable();
        after.dedup();
        prop_assert_eq!(before, after);
    }

    #[test]
    fn qubit_feasibility_matches_union(a in proptest::collection::btree_set(0usize..12, 0..8),
                                       b in proptest::collection::btree_set(0usize..12, 0..4),
                                       cap in 0usize..12) {
        let sa: QubitSet = a.iter().copied().collect();
        let sb: QubitSet = b.iter().copied().collect();
        let union = a.union(&b).count();
        prop_assert_eq!(qcut_core::cluster::qubit_feasible(&sa, &sb, cap), union <= cap);
    }
}
