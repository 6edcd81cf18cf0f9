#![allow(dead_code)]

use permpat_core::{strip_isolated, Graph};
use rand::Rng;

/// Erdős–Rényi graph on `n` vertices with edge probability `p`.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 1..=n {
        for v in u + 1..=n {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).unwrap()
}

/// Random graph without isolated vertices and at least one vertex.
pub fn random_graph_without_isolated<R: Rng>(rng: &mut R, max_n: usize) -> Graph {
    loop {
        let n = rng.random_range(2..=max_n);
        let g = strip_isolated(&random_graph(rng, n, 0.5));
        if g.vertex_count() > 0 {
            return g;
        }
    }
}

/// Every labelled graph on exactly `n` vertices.
pub fn all_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (1..=n)
        .flat_map(|u| (u + 1..=n).map(move |v| (u, v)))
        .collect();
    (0u64..1 << pairs.len())
        .map(|mask| {
            let edges = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e);
            Graph::new(n, edges).unwrap()
        })
        .collect()
}

pub fn example_graph() -> Graph {
    Graph::new(4, [(1, 2), (2, 3), (2, 4), (3, 4)]).unwrap()
}
