//! Clique → permutation pattern matching, and the OR-composition of many
//! Clique instances into one pattern matching instance.
//!
//! With `z = 4n′ + 4`, `n′` the size of the largest connected component of a
//! graph `G` without isolated vertices, `K_l ⊆ G` iff `π_z(K_l)` is a pattern
//! of `π_z(G)`. [`certificate_from_clique`] builds the witness for the forward
//! direction; [`extract_clique`] reads a clique back out of any certificate.

use std::fs;
use std::io;
use std::ops::RangeInclusive;
use std::path::Path;

use thiserror::Error;

use crate::encoder::{edge_indicator, encode, EncodeError, EncodingLayout};
use crate::graph::Graph;
use crate::oracle::connected_components;
use crate::perm::{is_certificate, Certificate, PermError, Permutation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("clique size must be at least 1")]
    ZeroCliqueSize,
    #[error("input {input}: vertex {vertex} is isolated")]
    IsolatedVertex { input: usize, vertex: usize },
    #[error("input {input}: graph has no vertices")]
    EmptyGraph { input: usize },
    #[error("composition needs at least one input")]
    NoInputs,
    #[error("input {input} is not equivalent to input 1 (clique size and vertex count must agree)")]
    NotEquivalent { input: usize },
    #[error("vertices {0:?} do not induce a clique")]
    NotAClique(Vec<usize>),
    #[error("malformed certificate: {0}")]
    MalformedCertificate(String),
    #[error(transparent)]
    Encode(#[from] EncodeError),
}

#[derive(Debug, Error)]
pub enum InstanceFileError {
    #[error("{file}: {source}")]
    Io {
        file: String,
        #[source]
        source: io::Error,
    },
    #[error("{file}: {reason}")]
    Format { file: String, reason: String },
    #[error("{file}: {source}")]
    Permutation {
        file: String,
        #[source]
        source: PermError,
    },
    #[error("layout.txt: {0}")]
    Layout(#[from] EncodeError),
}

/// Does `K_l` occur in `graph`?
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueInstance {
    pub l: usize,
    pub graph: Graph,
}

impl CliqueInstance {
    pub fn new(l: usize, graph: Graph) -> Self {
        Self { l, graph }
    }

    /// Graphs are simple by construction, so only the clique size can be off.
    pub fn is_well_formed(&self) -> bool {
        self.l >= 1
    }
}

/// A pattern matching instance produced from one or more Clique instances.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComposedInstance {
    pub l: usize,
    pub z: usize,
    /// `π_z(K_l)`.
    pub sigma: Permutation,
    /// `π_z(G)` of the (union) text graph.
    pub pi: Permutation,
    pub layout_pattern: EncodingLayout,
    pub layout_text: EncodingLayout,
    /// Ordering ranks occupied by every input graph in the text layout.
    pub input_ranges: Vec<RangeInclusive<usize>>,
}

impl ComposedInstance {
    pub fn inputs(&self) -> usize {
        self.input_ranges.len()
    }

    /// Index (1-based) of the input whose rank range holds `rank`.
    pub fn input_of_rank(&self, rank: usize) -> Option<usize> {
        self.input_ranges
            .iter()
            .position(|r| r.contains(&rank))
            .map(|i| i + 1)
    }

    /// Writes `pattern.txt`, `text.txt`, `layout.txt` and `meta.txt`.
    pub fn write_dir(&self, dir: &Path) -> Result<(), InstanceFileError> {
        let io_err = |file: &str| {
            let file = file.to_string();
            move |source| InstanceFileError::Io { file, source }
        };
        fs::create_dir_all(dir).map_err(io_err("output directory"))?;
        fs::write(dir.join("pattern.txt"), self.sigma.to_text()).map_err(io_err("pattern.txt"))?;
        fs::write(dir.join("text.txt"), self.pi.to_text()).map_err(io_err("text.txt"))?;
        fs::write(dir.join("layout.txt"), self.layout_text.to_text())
            .map_err(io_err("layout.txt"))?;
        fs::write(dir.join("meta.txt"), self.meta_text()).map_err(io_err("meta.txt"))?;
        Ok(())
    }

    pub fn meta_text(&self) -> String {
        let mut out = format!("l={} z={} t={}\n", self.l, self.z, self.inputs());
        for (i, r) in self.input_ranges.iter().enumerate() {
            out.push_str(&format!("range {} {} {}\n", i + 1, r.start(), r.end()));
        }
        out
    }

    /// Reads an instance directory back. The pattern layout is rebuilt from
    /// `l` and `z`; the pattern file must match `π_z(K_l)`.
    pub fn read_dir(dir: &Path) -> Result<Self, InstanceFileError> {
        let read = |file: &str| {
            fs::read_to_string(dir.join(file)).map_err(|source| InstanceFileError::Io {
                file: file.to_string(),
                source,
            })
        };
        let format_err = |file: &str, reason: String| InstanceFileError::Format {
            file: file.to_string(),
            reason,
        };
        let perm = |file: &str| {
            read(file)?
                .parse::<Permutation>()
                .map_err(|source| InstanceFileError::Permutation {
                    file: file.to_string(),
                    source,
                })
        };

        let (l, z, t, input_ranges) = parse_meta(&read("meta.txt")?)
            .map_err(|reason| format_err("meta.txt", reason))?;
        let sigma = perm("pattern.txt")?;
        let pi = perm("text.txt")?;
        let layout_text = EncodingLayout::from_text(z, &read("layout.txt")?)?;
        if layout_text.total_len() != pi.len() {
            return Err(format_err(
                "layout.txt",
                format!(
                    "layout describes {} positions, text has {}",
                    layout_text.total_len(),
                    pi.len()
                ),
            ));
        }
        let (expected_sigma, layout_pattern) = encode(&Graph::complete(l), z)?;
        if expected_sigma != sigma {
            return Err(format_err(
                "pattern.txt",
                format!("pattern is not the encoding of K_{l} at z = {z}"),
            ));
        }
        if input_ranges.len() != t {
            return Err(format_err(
                "meta.txt",
                format!("t={t} but {} range lines", input_ranges.len()),
            ));
        }
        if let Some(r) = input_ranges
            .iter()
            .find(|r| *r.end() > layout_text.vertex_count())
        {
            return Err(format_err(
                "meta.txt",
                format!("range {r:?} exceeds the layout's vertex count"),
            ));
        }
        Ok(Self {
            l,
            z,
            sigma,
            pi,
            layout_pattern,
            layout_text,
            input_ranges,
        })
    }
}

type Meta = (usize, usize, usize, Vec<RangeInclusive<usize>>);

fn parse_meta(text: &str) -> Result<Meta, String> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().ok_or("empty meta file")?;
    let (mut l, mut z, mut t) = (None, None, None);
    for field in header.split_whitespace() {
        let (key, value) = field
            .split_once('=')
            .ok_or_else(|| format!("expected key=value, got {field:?}"))?;
        let value: usize = value
            .parse()
            .map_err(|e| format!("{key}: {e}"))?;
        match key {
            "l" => l = Some(value),
            "z" => z = Some(value),
            "t" => t = Some(value),
            _ => return Err(format!("unknown key {key:?}")),
        }
    }
    let (Some(l), Some(z), Some(t)) = (l, z, t) else {
        return Err("header must define l, z and t".into());
    };
    let mut ranges = Vec::new();
    for line in lines {
        let fields: Vec<&str> = line.split_whitespace().collect();
        let ["range", i, start, end] = fields[..] else {
            return Err(format!("bad range line {line:?}"));
        };
        let parse = |s: &str| s.parse::<usize>().map_err(|e| format!("{line:?}: {e}"));
        let (i, start, end) = (parse(i)?, parse(start)?, parse(end)?);
        if i != ranges.len() + 1 || start == 0 || start > end {
            return Err(format!("bad range line {line:?}"));
        }
        ranges.push(start..=end);
    }
    Ok((l, z, t, ranges))
}

fn check_graph(input: usize, g: &Graph) -> Result<(), ReductionError> {
    if g.vertex_count() == 0 {
        return Err(ReductionError::EmptyGraph { input });
    }
    if let Some(vertex) = g.isolated_vertices().next() {
        return Err(ReductionError::IsolatedVertex { input, vertex });
    }
    Ok(())
}

/// The separator length `4n′ + 4` for a text graph.
pub fn lemma_separator(g: &Graph) -> usize {
    4 * connected_components(g).largest + 4
}

fn build(
    l: usize,
    text: &Graph,
    z: usize,
    input_ranges: Vec<RangeInclusive<usize>>,
) -> Result<ComposedInstance, ReductionError> {
    let (sigma, layout_pattern) = encode(&Graph::complete(l), z)?;
    let (pi, layout_text) = encode(text, z)?;
    Ok(ComposedInstance {
        l,
        z,
        sigma,
        pi,
        layout_pattern,
        layout_text,
        input_ranges,
    })
}

/// Reduces a single Clique instance with `z = 4n′ + 4`.
pub fn reduce_clique(inst: &CliqueInstance) -> Result<ComposedInstance, ReductionError> {
    if !inst.is_well_formed() {
        return Err(ReductionError::ZeroCliqueSize);
    }
    check_graph(1, &inst.graph)?;
    let z = lemma_separator(&inst.graph);
    build(inst.l, &inst.graph, z, vec![1..=inst.graph.vertex_count()])
}

/// Drops isolated vertices and relabels the rest `1..` in label order.
pub fn strip_isolated(g: &Graph) -> Graph {
    let mut new_label = vec![0; g.vertex_count() + 1];
    let mut next = 0;
    for v in g.vertices() {
        if g.degree(v) > 0 {
            next += 1;
            new_label[v] = next;
        }
    }
    Graph::new(next, g.edges().map(|(u, v)| (new_label[u], new_label[v])))
        .expect("relabelling keeps the graph simple")
}

/// Positions of `π_z(G)` that carry a copy of `π_z(K_l)` for the given clique.
///
/// Clique vertices are taken in ordering rank; each contributes both
/// separating runs and the encoding entries of edges to later clique members.
pub fn certificate_from_clique(
    g: &Graph,
    z: usize,
    clique: &[usize],
) -> Result<Certificate, ReductionError> {
    let valid = !clique.is_empty()
        && clique.iter().all(|v| g.vertices().contains(v))
        && g.is_clique(clique);
    if !valid {
        return Err(ReductionError::NotAClique(clique.to_vec()));
    }
    let (_, layout) = encode(g, z)?;
    let ordering = layout.ordering();
    let mut members = clique.to_vec();
    members.sort_unstable_by_key(|&v| ordering.rank(v));

    let mut positions = Vec::with_capacity(2 * z * members.len() + members.len().pow(2) / 2);
    for (i, &v) in members.iter().enumerate() {
        positions.extend(layout.left_run(v));
        let later = &members[i + 1..];
        // right-neighbours in rank order fill the block left to right
        let mut right: Vec<usize> = g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&u| ordering.rank(u) > ordering.rank(v))
            .collect();
        right.sort_unstable_by_key(|&u| ordering.rank(u));
        let start = layout.record(v).p_mid;
        positions.extend(
            right
                .iter()
                .enumerate()
                .filter(|(_, u)| later.contains(u))
                .map(|(k, _)| start + k),
        );
        positions.extend(layout.right_run(v));
    }
    Ok(Certificate::new(positions))
}

/// Maps each pattern vertex to the text vertex whose left separating run
/// receives the middle of its own left run, and checks the result.
///
/// Returned labels are those of the text graph, ascending.
pub fn extract_clique(
    inst: &ComposedInstance,
    phi: &Certificate,
) -> Result<Vec<usize>, ReductionError> {
    let malformed = |m: String| ReductionError::MalformedCertificate(m);
    match is_certificate(&inst.sigma, &inst.pi, phi) {
        Ok(true) => {}
        Ok(false) => return Err(malformed("does not certify the pattern".into())),
        Err(e) => return Err(malformed(e.to_string())),
    }
    let pattern = &inst.layout_pattern;
    let text = &inst.layout_text;
    let mut hosts = Vec::with_capacity(inst.l);
    for &v in pattern.ordering().labels() {
        let left = phi.image(pattern.left_middle(v));
        let host = text.left_run_owner(left).ok_or_else(|| {
            malformed(format!(
                "pattern vertex {v}: position {left} is not in a left separating run"
            ))
        })?;
        let right = phi.image(pattern.right_middle(v));
        if !text.right_run(host.label).contains(&right) {
            return Err(malformed(format!(
                "pattern vertex {v}: position {right} is outside the right run of vertex {}",
                host.label
            )));
        }
        hosts.push(host.label);
    }
    for (i, &a) in hosts.iter().enumerate() {
        for &b in &hosts[i + 1..] {
            if !edge_indicator(&inst.pi, text, a, b) {
                return Err(malformed(format!(
                    "image vertices {a} and {b} are not adjacent"
                )));
            }
        }
    }
    hosts.sort_unstable();
    Ok(hosts)
}

/// Equivalent instances agree on clique size and vertex count; all malformed
/// instances form one class.
pub fn equivalence_check(a: &CliqueInstance, b: &CliqueInstance) -> bool {
    match (a.is_well_formed(), b.is_well_formed()) {
        (true, true) => a.l == b.l && a.graph.vertex_count() == b.graph.vertex_count(),
        (false, false) => true,
        _ => false,
    }
}

/// OR-composition: encodes the disjoint union of all input graphs with
/// `z = 4|V(G_1)| + 4` and the shared pattern `π_z(K_l)`.
pub fn compose(instances: &[CliqueInstance]) -> Result<ComposedInstance, ReductionError> {
    let first = instances.first().ok_or(ReductionError::NoInputs)?;
    if let Some(i) = instances.iter().position(|x| !equivalence_check(first, x)) {
        return Err(ReductionError::NotEquivalent { input: i + 1 });
    }
    if !first.is_well_formed() {
        return Err(ReductionError::ZeroCliqueSize);
    }
    for (i, inst) in instances.iter().enumerate() {
        check_graph(i + 1, &inst.graph)?;
    }
    let graphs: Vec<Graph> = instances.iter().map(|x| x.graph.clone()).collect();
    let (union, label_ranges) = Graph::disjoint_union(&graphs);
    let z = 4 * first.graph.vertex_count() + 4;
    let instance = build(first.l, &union, z, Vec::new())?;
    // each block is a union of whole components, so it stays rank-consecutive
    let ordering = instance.layout_text.ordering();
    let input_ranges = label_ranges
        .iter()
        .map(|r| {
            let ranks = r.clone().map(|v| ordering.rank(v));
            let (lo, hi) = ranks.fold((usize::MAX, 0), |(lo, hi), k| (lo.min(k), hi.max(k)));
            debug_assert_eq!(hi - lo + 1, r.clone().count());
            lo..=hi
        })
        .collect();
    Ok(ComposedInstance {
        input_ranges,
        ..instance
    })
}
