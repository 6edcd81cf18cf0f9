//! Permutation pattern matching and the Clique reduction behind its
//! kernelization lower bound.
//!
//! * [`perm`]: permutations, certificates, runs, direct sums.
//! * [`matcher`]: exact pattern search with pruning, plus brute-force oracles
//!   and avoider counting.
//! * [`graph`] and [`encoder`]: simple graphs and their encoding `π_z(G)`.
//! * [`reduction`]: Clique → pattern matching, certificate construction and
//!   clique extraction, OR-composition of many instances.
//! * [`oracle`]: exhaustive clique search and connected components.
//!
//! ```
//! use permpat_core::{encode, Graph};
//!
//! let g = Graph::new(4, [(1, 2), (2, 3), (2, 4), (3, 4)]).unwrap();
//! let (pi, layout) = encode(&g, 3).unwrap();
//! assert_eq!(pi.len(), 2 * 3 * 4 + 4);
//! assert_eq!(layout.block(2), 11..=12);
//! ```

pub mod encoder;
pub mod graph;
pub mod matcher;
pub mod oracle;
pub mod perm;
pub mod reduction;

pub use encoder::{
    component_order, edge_indicator, ell, encode, layout, neighborhood_stats, rectangle_count,
    EncodeError, EncodingLayout, NeighborhoodStats, VertexOrdering, VertexRecord,
};
pub use graph::{Graph, GraphError};
pub use matcher::{
    avoiders_count, contains_pattern, contains_pattern_oracle, count_occurrences, MatchError,
    MatchResult, Matcher,
};
pub use oracle::{connected_components, has_clique, Components, OracleError};
pub use perm::{
    direct_sum, is_certificate, make_permutation, pattern_of_indices, runs, Certificate,
    Direction, PermError, Permutation, Run,
};
pub use reduction::{
    certificate_from_clique, compose, equivalence_check, extract_clique, lemma_separator,
    reduce_clique, strip_isolated, CliqueInstance, ComposedInstance, InstanceFileError,
    ReductionError,
};
