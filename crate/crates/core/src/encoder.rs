//! Encoding of a graph `G` into a permutation `π_z(G)`.
//!
//! Vertices are first put into a total order that keeps every connected
//! component consecutive. Each vertex `v` then owns, left to right:
//!
//! * a decreasing *left separating run* of length `z`,
//! * one *encoding entry* per right-neighbour (an increasing stretch),
//! * a decreasing *right separating run* of length `z`.
//!
//! The encoding entry for the edge `{v, u}` (`v` before `u`) takes a value in
//! the interval reserved for the left-neighbours of `u`, offset by the number
//! of neighbours of `u` preceding `v`. The resulting permutation has length
//! `2zn + |E|`, and the rectangle spanned by `C(u)` and the incoming value
//! interval of `v` holds exactly one entry iff `{u, v}` is an edge.
//!
//! All coordinates are 1-indexed. The layout is stored by ordering rank; every
//! public accessor takes original vertex labels.

use std::ops::RangeInclusive;

use thiserror::Error;

use crate::graph::Graph;
use crate::oracle::connected_components;
use crate::perm::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EncodeError {
    #[error("separator length z must be at least 1")]
    ZeroSeparator,
    #[error("cannot encode a graph without vertices")]
    EmptyGraph,
    #[error("encoding length 2*{z}*{n} + {m} overflows the native integer width")]
    ScaleExceeded { z: usize, n: usize, m: usize },
    #[error("vertex {0} is not in the graph")]
    UnknownVertex(usize),
    #[error("{{{0}, {1}}} is not an edge")]
    NotAnEdge(usize, usize),
    #[error("vertex {first} does not precede vertex {second} in the ordering")]
    WrongOrder { first: usize, second: usize },
    #[error("not a vertex ordering: {0}")]
    InvalidOrdering(String),
    #[error("layout line {line}: {reason}")]
    LayoutParse { line: usize, reason: String },
}

/// A total order on the vertices, as a bijection between labels and ranks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexOrdering {
    // label_at[rank - 1], rank_of[label - 1]
    label_at: Vec<usize>,
    rank_of: Vec<usize>,
}

impl VertexOrdering {
    /// `labels[i]` receives rank `i + 1`.
    pub fn from_labels(labels: Vec<usize>) -> Result<Self, EncodeError> {
        let n = labels.len();
        let mut rank_of = vec![0; n];
        for (i, &label) in labels.iter().enumerate() {
            if label == 0 || label > n || rank_of[label - 1] != 0 {
                return Err(EncodeError::InvalidOrdering(format!(
                    "label {label} repeated or outside [1, {n}]"
                )));
            }
            rank_of[label - 1] = i + 1;
        }
        Ok(Self {
            label_at: labels,
            rank_of,
        })
    }

    pub fn identity(n: usize) -> Self {
        Self::from_labels((1..=n).collect()).expect("identity ordering")
    }

    pub fn len(&self) -> usize {
        self.label_at.len()
    }

    pub fn is_empty(&self) -> bool {
        self.label_at.is_empty()
    }

    pub fn rank(&self, label: usize) -> usize {
        self.rank_of[label - 1]
    }

    pub fn label(&self, rank: usize) -> usize {
        self.label_at[rank - 1]
    }

    /// Labels in rank order.
    pub fn labels(&self) -> &[usize] {
        &self.label_at
    }

    fn contains(&self, label: usize) -> bool {
        (1..=self.len()).contains(&label)
    }
}

/// Positions and values owned by one vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VertexRecord {
    pub label: usize,
    /// `p_L`: first position of the left separating run.
    pub p_left: usize,
    /// `p_M`: first position of the encoding block.
    pub p_mid: usize,
    /// `p_R`: first position of the right separating run.
    pub p_right: usize,
    /// `q_L`: first (largest) value of the left separating run.
    pub q_left: usize,
    /// `q_M`: least value reserved for edges to left-neighbours.
    pub q_mid: usize,
    /// `q_R`: first (largest) value of the right separating run.
    pub q_right: usize,
    pub deg_plus: usize,
    pub deg_minus: usize,
}

/// The position/value ledger of `π_z(G)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EncodingLayout {
    z: usize,
    ordering: VertexOrdering,
    records: Vec<VertexRecord>,
}

impl EncodingLayout {
    pub fn z(&self) -> usize {
        self.z
    }

    pub fn ordering(&self) -> &VertexOrdering {
        &self.ordering
    }

    pub fn vertex_count(&self) -> usize {
        self.records.len()
    }

    /// Length of the encoded permutation, `p_R(n) + z - 1`.
    pub fn total_len(&self) -> usize {
        self.records.last().map_or(0, |r| r.p_right + self.z - 1)
    }

    /// Records in rank order.
    pub fn records(&self) -> &[VertexRecord] {
        &self.records
    }

    pub fn record(&self, label: usize) -> &VertexRecord {
        &self.records[self.ordering.rank(label) - 1]
    }

    pub fn record_at_rank(&self, rank: usize) -> &VertexRecord {
        &self.records[rank - 1]
    }

    /// `C(v)`: positions of the encoding entries of `v`.
    pub fn block(&self, label: usize) -> RangeInclusive<usize> {
        let r = self.record(label);
        r.p_mid..=r.p_right - 1
    }

    /// `L(v)`: middle position of the left separating run.
    pub fn left_middle(&self, label: usize) -> usize {
        self.record(label).p_left + self.z / 2
    }

    /// `R(v)`: middle position of the right separating run.
    pub fn right_middle(&self, label: usize) -> usize {
        self.record(label).p_right + self.z / 2
    }

    pub fn left_run(&self, label: usize) -> RangeInclusive<usize> {
        let p = self.record(label).p_left;
        p..=p + self.z - 1
    }

    pub fn right_run(&self, label: usize) -> RangeInclusive<usize> {
        let p = self.record(label).p_right;
        p..=p + self.z - 1
    }

    /// Values `[q_M(v), q_M(v) + deg⁻(v) - 1]` used by edges into `v`.
    pub fn incoming_values(&self, label: usize) -> RangeInclusive<usize> {
        let r = self.record(label);
        r.q_mid..=r.q_mid + r.deg_minus - 1
    }

    /// The vertex whose left separating run covers `position`.
    pub fn left_run_owner(&self, position: usize) -> Option<&VertexRecord> {
        let idx = self.records.partition_point(|r| r.p_left <= position);
        let r = self.records.get(idx.checked_sub(1)?)?;
        (position < r.p_left + self.z).then_some(r)
    }

    /// One line per vertex in rank order: `label p_L p_M p_R q_L q_M q_R`.
    pub fn to_text(&self) -> String {
        self.records
            .iter()
            .map(|r| {
                format!(
                    "{} {} {} {} {} {} {}\n",
                    r.label, r.p_left, r.p_mid, r.p_right, r.q_left, r.q_mid, r.q_right
                )
            })
            .collect()
    }

    /// Reads the layout text format back. Degrees are recovered from the
    /// ledger and every recurrence is re-checked.
    pub fn from_text(z: usize, text: &str) -> Result<Self, EncodeError> {
        if z == 0 {
            return Err(EncodeError::ZeroSeparator);
        }
        let mut rows = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line_no = i + 1;
            if line.trim().is_empty() {
                continue;
            }
            let fields = line
                .split_whitespace()
                .map(|t| t.parse::<usize>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| EncodeError::LayoutParse {
                    line: line_no,
                    reason: e.to_string(),
                })?;
            let [label, p_left, p_mid, p_right, q_left, q_mid, q_right] = fields[..] else {
                return Err(EncodeError::LayoutParse {
                    line: line_no,
                    reason: format!("expected 7 fields, found {}", fields.len()),
                });
            };
            let bad = |reason: &str| EncodeError::LayoutParse {
                line: line_no,
                reason: reason.to_string(),
            };
            let deg_plus = p_right.checked_sub(p_mid).ok_or_else(|| bad("p_R < p_M"))?;
            let deg_minus = (q_left + 1)
                .checked_sub(q_mid + z)
                .ok_or_else(|| bad("q_L < q_M + z - 1"))?;
            rows.push((
                line_no,
                VertexRecord {
                    label,
                    p_left,
                    p_mid,
                    p_right,
                    q_left,
                    q_mid,
                    q_right,
                    deg_plus,
                    deg_minus,
                },
            ));
        }
        let ordering = VertexOrdering::from_labels(rows.iter().map(|(_, r)| r.label).collect())?;
        let degrees: Vec<(usize, usize)> =
            rows.iter().map(|(_, r)| (r.deg_plus, r.deg_minus)).collect();
        let expected = build_records(z, &ordering, &degrees);
        for ((line, got), want) in rows.iter().zip(&expected) {
            if got != want {
                return Err(EncodeError::LayoutParse {
                    line: *line,
                    reason: format!("ledger violates the position/value recurrences: {got:?}"),
                });
            }
        }
        Ok(Self {
            z,
            ordering,
            records: expected,
        })
    }
}

/// Component-consecutive ordering: components by smallest label, labels
/// ascending inside each component.
pub fn component_order(g: &Graph) -> VertexOrdering {
    let labels = connected_components(g).blocks.concat();
    VertexOrdering::from_labels(labels).expect("components partition the vertices")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NeighborhoodStats {
    /// Right-neighbours (`N⁺`), in rank order.
    pub plus: Vec<usize>,
    /// Left-neighbours (`N⁻`), in rank order.
    pub minus: Vec<usize>,
    pub deg_plus: usize,
    pub deg_minus: usize,
}

pub fn neighborhood_stats(
    g: &Graph,
    ordering: &VertexOrdering,
    v: usize,
) -> Result<NeighborhoodStats, EncodeError> {
    if !ordering.contains(v) || v > g.vertex_count() {
        return Err(EncodeError::UnknownVertex(v));
    }
    let rv = ordering.rank(v);
    let mut neighbours: Vec<usize> = g.neighbors(v).to_vec();
    neighbours.sort_unstable_by_key(|&u| ordering.rank(u));
    let split = neighbours.partition_point(|&u| ordering.rank(u) < rv);
    let plus = neighbours.split_off(split);
    Ok(NeighborhoodStats {
        deg_plus: plus.len(),
        deg_minus: neighbours.len(),
        plus,
        minus: neighbours,
    })
}

/// Number of neighbours of `u` strictly before `v`; `{v, u}` must be an edge
/// with `v` before `u`.
pub fn ell(g: &Graph, ordering: &VertexOrdering, v: usize, u: usize) -> Result<usize, EncodeError> {
    for w in [v, u] {
        if !ordering.contains(w) || w > g.vertex_count() {
            return Err(EncodeError::UnknownVertex(w));
        }
    }
    if !g.has_edge(v, u) {
        return Err(EncodeError::NotAnEdge(v, u));
    }
    let rv = ordering.rank(v);
    if rv >= ordering.rank(u) {
        return Err(EncodeError::WrongOrder {
            first: v,
            second: u,
        });
    }
    Ok(g.neighbors(u)
        .iter()
        .filter(|&&w| ordering.rank(w) < rv)
        .count())
}

fn check_scale(z: usize, g: &Graph) -> Result<usize, EncodeError> {
    if z == 0 {
        return Err(EncodeError::ZeroSeparator);
    }
    let (n, m) = (g.vertex_count(), g.edge_count());
    if n == 0 {
        return Err(EncodeError::EmptyGraph);
    }
    z.checked_mul(2)
        .and_then(|x| x.checked_mul(n))
        .and_then(|x| x.checked_add(m))
        .ok_or(EncodeError::ScaleExceeded { z, n, m })
}

/// Evaluates the position and value recurrences; `degrees[r]` is
/// `(deg⁺, deg⁻)` of the vertex with rank `r + 1`.
fn build_records(
    z: usize,
    ordering: &VertexOrdering,
    degrees: &[(usize, usize)],
) -> Vec<VertexRecord> {
    let mut records: Vec<VertexRecord> = Vec::with_capacity(degrees.len());
    for (i, &(deg_plus, deg_minus)) in degrees.iter().enumerate() {
        let (p_left, q_right) = match records.last() {
            None => (1, z),
            Some(prev) => (prev.p_right + z, prev.q_left + z),
        };
        let p_mid = p_left + z;
        let q_mid = q_right + 1;
        records.push(VertexRecord {
            label: ordering.label(i + 1),
            p_left,
            p_mid,
            p_right: p_mid + deg_plus,
            q_left: q_mid + z + deg_minus - 1,
            q_mid,
            q_right,
            deg_plus,
            deg_minus,
        });
    }
    records
}

/// Neighbour ranks of every rank, ascending. Index 0 is unused.
fn rank_adjacency(g: &Graph, ordering: &VertexOrdering) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); g.vertex_count() + 1];
    for (u, v) in g.edges() {
        let (ru, rv) = (ordering.rank(u), ordering.rank(v));
        adj[ru].push(rv);
        adj[rv].push(ru);
    }
    for list in &mut adj {
        list.sort_unstable();
    }
    adj
}

pub fn layout(g: &Graph, z: usize) -> Result<EncodingLayout, EncodeError> {
    check_scale(z, g)?;
    let ordering = component_order(g);
    let adj = rank_adjacency(g, &ordering);
    let degrees: Vec<(usize, usize)> = (1..=g.vertex_count())
        .map(|r| {
            let minus = adj[r].partition_point(|&w| w < r);
            (adj[r].len() - minus, minus)
        })
        .collect();
    let records = build_records(z, &ordering, &degrees);
    Ok(EncodingLayout {
        z,
        ordering,
        records,
    })
}

/// Builds `π_z(G)` together with its layout.
pub fn encode(g: &Graph, z: usize) -> Result<(Permutation, EncodingLayout), EncodeError> {
    let total = check_scale(z, g)?;
    let layout = layout(g, z)?;
    let adj = rank_adjacency(g, &layout.ordering);
    let mut values = vec![0usize; total];
    for (i, rec) in layout.records.iter().enumerate() {
        let rank = i + 1;
        for k in 0..z {
            values[rec.p_left - 1 + k] = rec.q_left - k;
            values[rec.p_right - 1 + k] = rec.q_right - k;
        }
        let right_neighbours = adj[rank].iter().filter(|&&u| u > rank);
        for (k, &u) in right_neighbours.enumerate() {
            // `rank` sits in u's sorted list at index ell(v, u)
            let offset = adj[u].partition_point(|&w| w < rank);
            values[rec.p_mid - 1 + k] = layout.records[u - 1].q_mid + offset;
        }
    }
    let pi = Permutation::new(values).expect("π_z(G) is a bijection");
    Ok((pi, layout))
}

/// Number of entries of `pi` at positions `C(u)` with values among the
/// incoming values of `v`, where `u` precedes `v`. Argument order does not
/// matter.
pub fn rectangle_count(pi: &Permutation, layout: &EncodingLayout, u: usize, v: usize) -> usize {
    let (first, second) = if layout.ordering.rank(u) <= layout.ordering.rank(v) {
        (u, v)
    } else {
        (v, u)
    };
    let values = layout.incoming_values(second);
    layout
        .block(first)
        .filter(|&p| values.contains(&pi.value(p)))
        .count()
}

/// Reads adjacency of `u` and `v` back from the encoding.
pub fn edge_indicator(pi: &Permutation, layout: &EncodingLayout, u: usize, v: usize) -> bool {
    u != v && rectangle_count(pi, layout, u, v) == 1
}
