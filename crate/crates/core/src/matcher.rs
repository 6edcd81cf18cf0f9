//! Exact pattern matching, occurrence counting and avoider enumeration.
//!
//! [`contains_pattern`] is a depth-first search that assigns pattern
//! positions left to right and scans text positions in ascending order, so
//! the first certificate it meets is the lexicographically least one. Every
//! pruning rule below is a necessary condition for extending the current
//! partial map, which keeps that guarantee intact:
//!
//! * value window: the image of pattern position `x` must lie strictly between
//!   the images of the already placed positions holding the nearest smaller
//!   and nearest larger pattern values;
//! * monotone reach: the longest decreasing (resp. increasing) subsequence of
//!   the pattern starting at `x` must fit into the one of the text starting at
//!   the candidate position, which is what kills most branches on instances
//!   built from long decreasing separator runs;
//! * gap counting: for every interval between consecutive placed pattern
//!   values, the text must still offer at least as many values in the
//!   corresponding image interval to the right of the current position;
//! * length: the remaining text must be at least as long as the remaining
//!   pattern.
//!
//! The brute-force routines ([`contains_pattern_oracle`],
//! [`count_occurrences`]) enumerate index sets without any pruning and are
//! only meant as independent references at small scale.

use std::collections::BTreeMap;

use itertools::Itertools;
use thiserror::Error;

use crate::perm::{pattern_of_indices, Certificate, Permutation};

/// Node limit used by the command-line front end.
pub const DEFAULT_CLI_BUDGET: u64 = 100_000_000;
pub const COUNT_MAX_PATTERN: usize = 12;
pub const COUNT_MAX_TEXT: usize = 20;
pub const ORACLE_MAX_TEXT: usize = 14;
pub const AVOIDERS_MAX_N: usize = 10;
/// Texts longer than this skip the quadratic gap-count table.
pub const GAP_TABLE_MAX_TEXT: usize = 2048;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatchError {
    #[error("the pattern must have at least one entry")]
    EmptyPattern,
    #[error("node budget exhausted after {nodes} search nodes")]
    BudgetExhausted { nodes: u64 },
    #[error("{what} of size {size} exceeds the exhaustive limit {limit}")]
    ScaleExceeded {
        what: &'static str,
        size: usize,
        limit: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchResult {
    pub found: bool,
    pub certificate: Option<Certificate>,
    /// Search-tree nodes entered, i.e. candidate placements that passed the
    /// value window and reach checks.
    pub nodes_explored: u64,
}

impl MatchResult {
    fn absent(nodes_explored: u64) -> Self {
        Self {
            found: false,
            certificate: None,
            nodes_explored,
        }
    }
}

/// Decides whether `sigma` is a pattern of `pi`.
///
/// `budget` bounds the number of search nodes; `None` means unlimited.
pub fn contains_pattern(
    sigma: &Permutation,
    pi: &Permutation,
    budget: Option<u64>,
) -> Result<MatchResult, MatchError> {
    Matcher::new(sigma)?.find(pi, budget)
}

/// Longest monotone subsequence starting at each position.
fn reach_from(values: &[usize], decreasing: bool) -> Vec<u32> {
    let n = values.len();
    let mut out = vec![0u32; n];
    let mut tails: Vec<usize> = Vec::new();
    // Read right to left: a decreasing run going right is increasing here.
    for i in (0..n).rev() {
        let key = if decreasing { values[i] } else { n + 1 - values[i] };
        let k = tails.partition_point(|&t| t < key);
        if k == tails.len() {
            tails.push(key);
        } else {
            tails[k] = key;
        }
        out[i] = (k + 1) as u32;
    }
    out
}

/// Pattern-side preprocessing, reusable across texts.
#[derive(Debug, Clone)]
pub struct Matcher {
    values: Vec<usize>,
    /// Earlier position holding the nearest smaller value.
    lower: Vec<Option<usize>>,
    /// Earlier position holding the nearest larger value.
    upper: Vec<Option<usize>>,
    dec_reach: Vec<u32>,
    inc_reach: Vec<u32>,
}

impl Matcher {
    pub fn new(sigma: &Permutation) -> Result<Self, MatchError> {
        if sigma.is_empty() {
            return Err(MatchError::EmptyPattern);
        }
        let values = sigma.values().to_vec();
        let mut seen: BTreeMap<usize, usize> = BTreeMap::new();
        let mut lower = Vec::with_capacity(values.len());
        let mut upper = Vec::with_capacity(values.len());
        for (x, &v) in values.iter().enumerate() {
            lower.push(seen.range(..v).next_back().map(|(_, &j)| j));
            upper.push(seen.range(v + 1..).next().map(|(_, &j)| j));
            seen.insert(v, x);
        }
        Ok(Self {
            dec_reach: reach_from(&values, true),
            inc_reach: reach_from(&values, false),
            values,
            lower,
            upper,
        })
    }

    pub fn pattern_len(&self) -> usize {
        self.values.len()
    }

    pub fn find(&self, pi: &Permutation, budget: Option<u64>) -> Result<MatchResult, MatchError> {
        let l = self.values.len();
        let n = pi.len();
        if l > n {
            return Ok(MatchResult::absent(0));
        }
        let text = TextIndex::new(pi.values());
        Search::new(self, &text, budget.unwrap_or(u64::MAX)).run()
    }
}

struct TextIndex<'a> {
    values: &'a [usize],
    dec_reach: Vec<u32>,
    inc_reach: Vec<u32>,
    /// `below[p * (n + 2) + v]`: positions `>= p` holding a value `<= v`.
    below: Option<Vec<u32>>,
}

impl<'a> TextIndex<'a> {
    fn new(values: &'a [usize]) -> Self {
        let n = values.len();
        let below = (n <= GAP_TABLE_MAX_TEXT).then(|| {
            let w = n + 2;
            let mut t = vec![0u32; (n + 1) * w];
            for p in (0..n).rev() {
                let (head, tail) = t.split_at_mut((p + 1) * w);
                let row = &mut head[p * w..];
                let next = &tail[..w];
                for v in 0..w {
                    row[v] = next[v] + u32::from(v >= values[p]);
                }
            }
            t
        });
        Self {
            values,
            dec_reach: reach_from(values, true),
            inc_reach: reach_from(values, false),
            below,
        }
    }

    /// Text values strictly inside `(lo, hi)` at positions `>= from`.
    fn count_between(&self, table: &[u32], from: usize, lo: usize, hi: usize) -> usize {
        let w = self.values.len() + 2;
        let row = &table[from * w..(from + 1) * w];
        (row[hi - 1] - row[lo]) as usize
    }
}

struct Search<'m, 't> {
    pattern: &'m Matcher,
    text: &'t TextIndex<'t>,
    budget: u64,
    nodes: u64,
    /// Text position (0-indexed) of every placed pattern position.
    phi: Vec<usize>,
    /// Text value assigned to each pattern value; index 0 and `l + 1` are
    /// sentinels for the open ends.
    image: Vec<usize>,
    /// Placed pattern values, ascending.
    placed: Vec<usize>,
}

impl<'m, 't> Search<'m, 't> {
    fn new(pattern: &'m Matcher, text: &'t TextIndex<'t>, budget: u64) -> Self {
        let l = pattern.values.len();
        let mut image = vec![0; l + 2];
        image[l + 1] = text.values.len() + 1;
        Self {
            pattern,
            text,
            budget,
            nodes: 0,
            phi: Vec::with_capacity(l),
            image,
            placed: Vec::with_capacity(l),
        }
    }

    fn admissible(&self, x: usize, p: usize) -> bool {
        let v = self.text.values[p];
        let lo = self.pattern.lower[x].map_or(0, |j| self.text.values[self.phi[j]]);
        let hi = self.pattern.upper[x].map_or(usize::MAX, |j| self.text.values[self.phi[j]]);
        lo < v
            && v < hi
            && self.text.dec_reach[p] >= self.pattern.dec_reach[x]
            && self.text.inc_reach[p] >= self.pattern.inc_reach[x]
    }

    fn place(&mut self, x: usize, p: usize) {
        let v = self.pattern.values[x];
        self.phi.push(p);
        self.image[v] = self.text.values[p];
        let at = self.placed.partition_point(|&w| w < v);
        self.placed.insert(at, v);
    }

    fn unplace(&mut self) {
        let x = self.phi.len() - 1;
        let v = self.pattern.values[x];
        self.phi.pop();
        self.image[v] = 0;
        let at = self.placed.partition_point(|&w| w < v);
        self.placed.remove(at);
    }

    /// Every open value gap still has enough text values to its right.
    fn gaps_feasible(&self, after: usize) -> bool {
        let Some(table) = self.text.below.as_deref() else {
            return true;
        };
        let l = self.pattern.values.len();
        let mut prev = 0;
        for &v in self.placed.iter().chain(std::iter::once(&(l + 1))) {
            let need = v - prev - 1;
            if need > 0 {
                let have =
                    self.text
                        .count_between(table, after + 1, self.image[prev], self.image[v]);
                if have < need {
                    return false;
                }
            }
            prev = v;
        }
        true
    }

    fn run(mut self) -> Result<MatchResult, MatchError> {
        let l = self.pattern.values.len();
        let n = self.text.values.len();
        // resume[x]: next text position to try for pattern position x
        let mut resume = vec![0usize; l];
        let mut x = 0;
        let mut candidate = 0;
        loop {
            let last = n - (l - x);
            let mut descended = false;
            while candidate <= last {
                let p = candidate;
                candidate += 1;
                if !self.admissible(x, p) {
                    continue;
                }
                self.nodes += 1;
                if self.nodes > self.budget {
                    return Err(MatchError::BudgetExhausted { nodes: self.nodes });
                }
                self.place(x, p);
                if x + 1 == l {
                    let positions = self.phi.iter().map(|&q| q + 1).collect();
                    return Ok(MatchResult {
                        found: true,
                        certificate: Some(Certificate::new(positions)),
                        nodes_explored: self.nodes,
                    });
                }
                if self.gaps_feasible(p) {
                    resume[x] = candidate;
                    x += 1;
                    candidate = p + 1;
                    descended = true;
                    break;
                }
                self.unplace();
            }
            if !descended {
                if x == 0 {
                    return Ok(MatchResult::absent(self.nodes));
                }
                x -= 1;
                self.unplace();
                candidate = resume[x];
            }
        }
    }
}

/// Exhaustive subsequence enumeration, no pruning. `|pi| <= 14`.
pub fn contains_pattern_oracle(sigma: &Permutation, pi: &Permutation) -> Result<bool, MatchError> {
    if pi.len() > ORACLE_MAX_TEXT {
        return Err(MatchError::ScaleExceeded {
            what: "text",
            size: pi.len(),
            limit: ORACLE_MAX_TEXT,
        });
    }
    if sigma.len() > pi.len() {
        return Ok(false);
    }
    Ok((1..=pi.len()).combinations(sigma.len()).any(|idx| {
        pattern_of_indices(pi, &idx).expect("combinations are increasing and in range") == *sigma
    }))
}

/// Number of increasing index sequences certifying `sigma` in `pi`,
/// by exhaustive enumeration. `|sigma| <= 12`, `|pi| <= 20`.
pub fn count_occurrences(sigma: &Permutation, pi: &Permutation) -> Result<u64, MatchError> {
    if sigma.len() > COUNT_MAX_PATTERN {
        return Err(MatchError::ScaleExceeded {
            what: "pattern",
            size: sigma.len(),
            limit: COUNT_MAX_PATTERN,
        });
    }
    if pi.len() > COUNT_MAX_TEXT {
        return Err(MatchError::ScaleExceeded {
            what: "text",
            size: pi.len(),
            limit: COUNT_MAX_TEXT,
        });
    }
    let s = sigma.values();
    let t = pi.values();
    let count = (0..t.len())
        .combinations(s.len())
        .filter(|idx| {
            (0..s.len()).all(|a| {
                (a + 1..s.len()).all(|b| (s[a] < s[b]) == (t[idx[a]] < t[idx[b]]))
            })
        })
        .count();
    Ok(count as u64)
}

/// Number of permutations of `[n]` avoiding `sigma`, by enumerating all `n!`
/// permutations. `n <= 10`.
pub fn avoiders_count(sigma: &Permutation, n: usize) -> Result<u64, MatchError> {
    if n > AVOIDERS_MAX_N {
        return Err(MatchError::ScaleExceeded {
            what: "permutation size",
            size: n,
            limit: AVOIDERS_MAX_N,
        });
    }
    if sigma.is_empty() {
        // the empty pattern occurs everywhere
        return Ok(0);
    }
    let matcher = Matcher::new(sigma)?;
    let mut count = 0;
    for values in (1..=n).permutations(n) {
        let pi = Permutation::new(values).expect("permutations of 1..=n");
        if !matcher.find(&pi, None)?.found {
            count += 1;
        }
    }
    Ok(count)
}
