//! Simple undirected graphs on vertices `1..=n` and their text format.
//!
//! ```text
//! # comment
//! n m
//! u v      (m lines, 1 <= u < v <= n)
//! ```

use std::collections::BTreeSet;
use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {vertex} is outside [1, {n}]")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Graph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a simple graph; each edge may be given in either orientation.
    pub fn new<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            for v in [a, b] {
                if v == 0 || v > n {
                    return Err(GraphError::VertexOutOfRange { vertex: v, n });
                }
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            let e = (a.min(b), a.max(b));
            if !set.insert(e) {
                return Err(GraphError::DuplicateEdge(e.0, e.1));
            }
        }
        let mut adjacency = vec![Vec::new(); n + 1];
        for &(u, v) in &set {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Self {
            n,
            edges: set,
            adjacency,
        })
    }

    pub fn empty(n: usize) -> Self {
        Self::new(n, []).expect("edgeless graph")
    }

    /// `K_l` on vertices `1..=l`.
    pub fn complete(l: usize) -> Self {
        let edges = (1..=l).flat_map(|u| (u + 1..=l).map(move |v| (u, v)));
        Self::new(l, edges).expect("complete graph")
    }

    /// Path `1 - 2 - ... - n`.
    pub fn path(n: usize) -> Self {
        Self::new(n, (1..n).map(|u| (u, u + 1))).expect("path graph")
    }

    /// Cycle on `n >= 3` vertices.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least three vertices");
        Self::new(n, (1..n).map(|u| (u, u + 1)).chain([(1, n)])).expect("cycle graph")
    }

    /// Star with centre 1 and `leaves` leaves.
    pub fn star(leaves: usize) -> Self {
        Self::new(leaves + 1, (2..=leaves + 1).map(|v| (1, v))).expect("star graph")
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    /// Neighbours of `v`, ascending by label.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn vertices(&self) -> RangeInclusive<usize> {
        1..=self.n
    }

    pub fn isolated_vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.vertices().filter(|&v| self.degree(v) == 0)
    }

    pub fn is_clique(&self, vertices: &[usize]) -> bool {
        vertices.iter().enumerate().all(|(i, &u)| {
            vertices[i + 1..]
                .iter()
                .all(|&v| u != v && self.has_edge(u, v))
        })
    }

    /// Disjoint union, `graphs[i]` relabelled to a consecutive block of labels.
    ///
    /// Returns the union together with the label range of every input.
    pub fn disjoint_union(graphs: &[Graph]) -> (Graph, Vec<RangeInclusive<usize>>) {
        let mut offset = 0;
        let mut edges = Vec::new();
        let mut ranges = Vec::with_capacity(graphs.len());
        for g in graphs {
            edges.extend(g.edges().map(|(u, v)| (u + offset, v + offset)));
            ranges.push(offset + 1..=offset + g.n);
            offset += g.n;
        }
        let union = Graph::new(offset, edges).expect("union of simple graphs is simple");
        (union, ranges)
    }

    /// Serializes to the graph text format, edges sorted, trailing newline.
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.n, self.edges.len())?;
        for (u, v) in self.edges() {
            writeln!(f, "{u} {v}")?;
        }
        Ok(())
    }
}

impl FromStr for Graph {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut lines = s
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());

        let parse_pair = |line: usize, text: &str| -> Result<(usize, usize), GraphError> {
            let mut it = text.split_whitespace();
            let mut next = || {
                it.next()
                    .ok_or_else(|| GraphError::Parse {
                        line,
                        reason: "expected two integers".into(),
                    })?
                    .parse::<usize>()
                    .map_err(|e| GraphError::Parse {
                        line,
                        reason: e.to_string(),
                    })
            };
            let pair = (next()?, next()?);
            if it.next().is_some() {
                return Err(GraphError::Parse {
                    line,
                    reason: "trailing tokens".into(),
                });
            }
            Ok(pair)
        };

        let (header_line, header) = lines.next().ok_or(GraphError::Parse {
            line: 1,
            reason: "missing header \"n m\"".into(),
        })?;
        let (n, m) = parse_pair(header_line, header)?;

        let mut edges = Vec::with_capacity(m);
        for (line, text) in lines {
            let (u, v) = parse_pair(line, text)?;
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if u > v {
                return Err(GraphError::Parse {
                    line,
                    reason: format!("edge \"{u} {v}\" must be written with u < v"),
                });
            }
            edges.push((u, v));
        }
        if edges.len() != m {
            return Err(GraphError::Parse {
                line: header_line,
                reason: format!("header announces {m} edges, found {}", edges.len()),
            });
        }
        Graph::new(n, edges)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_write() {
        let text = "# example\n4 4\n\n1 2\n2 3 # middle\n2 4\n3 4\n";
        let g: Graph = text.parse().unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edge_count(), 4);
        assert!(g.has_edge(4, 2));
        assert!(!g.has_edge(1, 3));
        assert_eq!(g.to_text(), "4 4\n1 2\n2 3\n2 4\n3 4\n");
        assert_eq!(g.to_text().parse::<Graph>().unwrap(), g);
    }

    #[test]
    fn parse_rejects_malformed() {
        assert_eq!("5 1\n5 5\n".parse::<Graph>(), Err(GraphError::SelfLoop(5)));
        assert!(matches!(
            "3 1\n1 4\n".parse::<Graph>(),
            Err(GraphError::VertexOutOfRange { vertex: 4, n: 3 })
        ));
        assert_eq!(
            "3 2\n1 2\n1 2\n".parse::<Graph>(),
            Err(GraphError::DuplicateEdge(1, 2))
        );
        assert!(matches!("3 2\n1 2\n".parse::<Graph>(), Err(GraphError::Parse { .. })));
        assert!(matches!("3 1\n2 1\n".parse::<Graph>(), Err(GraphError::Parse { .. })));
        assert!(matches!("".parse::<Graph>(), Err(GraphError::Parse { .. })));
        assert!(matches!("2 1\n1 x\n".parse::<Graph>(), Err(GraphError::Parse { line: 2, .. })));
    }

    #[test]
    fn families() {
        assert_eq!(Graph::complete(4).edge_count(), 6);
        assert_eq!(Graph::path(4).edge_count(), 3);
        assert_eq!(Graph::cycle(4).edge_count(), 4);
        assert_eq!(Graph::star(3).degree(1), 3);
        assert!(Graph::complete(5).is_clique(&[1, 3, 5]));
        assert!(!Graph::path(3).is_clique(&[1, 2, 3]));
        assert!(!Graph::complete(3).is_clique(&[1, 1]));
    }

    #[test]
    fn disjoint_union_offsets() {
        let (u, ranges) = Graph::disjoint_union(&[Graph::path(2), Graph::complete(3)]);
        assert_eq!(u.vertex_count(), 5);
        assert_eq!(ranges, vec![1..=2, 3..=5]);
        assert!(u.has_edge(3, 5));
        assert!(!u.has_edge(2, 3));
    }
}
