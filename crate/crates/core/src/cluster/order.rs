use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::adjacency::Adjacency;

/// Order in which nodes are visited during local moves.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderPolicy {
    /// Descending incident weight, ties by ascending node id.
    Weighted,
    /// A seeded shuffle, redrawn for every pass.
    Random { seed: u64 },
}

impl OrderPolicy {
    pub(crate) fn visit_order(&self, adj: &Adjacency, stream: u64) -> Vec<usize> {
        let mut nodes: Vec<usize> = (0..adj.len()).collect();
        match *self {
            OrderPolicy::Weighted => {
                let k: Vec<f64> = nodes.iter().map(|&i| adj.degree(i)).collect();
                nodes.sort_by(|&a, &b| k[b].total_cmp(&k[a]).then(a.cmp(&b)));
            }
            OrderPolicy::Random { seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(stream);
                nodes.shuffle(&mut rng);
            }
        }
        nodes
    }
}
