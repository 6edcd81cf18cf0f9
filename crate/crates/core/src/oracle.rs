//! Brute-force ground truth for cliques and connected components.
//!
//! Nothing here is clever on purpose: these routines are the reference the
//! encoder, reduction and matcher are checked against.

use std::collections::VecDeque;

use itertools::Itertools;
use thiserror::Error;

use crate::graph::Graph;

/// Exhaustive clique search is accepted when `n <= MAX_CLIQUE_VERTICES` or
/// `l <= MAX_CLIQUE_SIZE`.
pub const MAX_CLIQUE_VERTICES: usize = 20;
pub const MAX_CLIQUE_SIZE: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("exhaustive clique search on n = {n}, l = {l} exceeds desk scale")]
    ScaleExceeded { n: usize, l: usize },
}

/// First `l`-clique in lexicographic order of vertex subsets, if any.
pub fn has_clique(g: &Graph, l: usize) -> Result<Option<Vec<usize>>, OracleError> {
    let n = g.vertex_count();
    if n > MAX_CLIQUE_VERTICES && l > MAX_CLIQUE_SIZE {
        return Err(OracleError::ScaleExceeded { n, l });
    }
    Ok(g.vertices()
        .combinations(l)
        .find(|subset| g.is_clique(subset)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Components {
    /// Components ordered by smallest label, each ascending.
    pub blocks: Vec<Vec<usize>>,
    /// Size of the largest component (`0` for the empty graph).
    pub largest: usize,
}

pub fn connected_components(g: &Graph) -> Components {
    let n = g.vertex_count();
    let mut seen = vec![false; n + 1];
    let mut blocks = Vec::new();
    for root in g.vertices() {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut block = vec![root];
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &u in g.neighbors(v) {
                if !seen[u] {
                    seen[u] = true;
                    block.push(u);
                    queue.push_back(u);
                }
            }
        }
        block.sort_unstable();
        blocks.push(block);
    }
    let largest = blocks.iter().map(Vec::len).max().unwrap_or(0);
    Components { blocks, largest }
}
