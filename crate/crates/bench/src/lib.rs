//! Input generators shared by the benchmarks.

use permpat_core::{strip_isolated, Graph, Permutation};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Erdős–Rényi graph on `n` vertices with isolated vertices removed.
pub fn random_graph(seed: u64, n: usize, p: f64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges: Vec<(usize, usize)> = (1..=n)
        .flat_map(|u| (u + 1..=n).map(move |v| (u, v)))
        .filter(|_| rng.random_bool(p))
        .collect();
    strip_isolated(&Graph::new(n, edges).expect("generated pairs are simple"))
}

pub fn random_permutation(seed: u64, n: usize) -> Permutation {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut values: Vec<usize> = (1..=n).collect();
    values.shuffle(&mut rng);
    Permutation::new(values).expect("shuffled identity")
}
