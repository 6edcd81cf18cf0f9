//! Permutations in vector representation, pattern certificates and runs.
//!
//! Positions and values are 1-indexed in every public signature: a
//! permutation of size `n` is a bijection `[n] -> [n]` and `value(i)` is the
//! entry at position `i`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("values do not form a bijection on [1, {len}]: {reason}")]
    NotABijection { len: usize, reason: String },
    #[error("certificate has length {found}, pattern has length {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("position {index} is outside [1, {len}]")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("positions are not strictly increasing")]
    NotIncreasing,
    #[error("cannot parse permutation: {0}")]
    Parse(String),
}

/// A permutation of `[n]`, stored as its vector representation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Permutation {
    values: Vec<usize>,
}

impl Permutation {
    /// Validates `values` as a bijection on `[1, values.len()]`.
    pub fn new(values: Vec<usize>) -> Result<Self, PermError> {
        let n = values.len();
        let mut seen = vec![false; n + 1];
        for (i, &v) in values.iter().enumerate() {
            if v == 0 || v > n {
                return Err(PermError::NotABijection {
                    len: n,
                    reason: format!("value {v} at position {} is out of range", i + 1),
                });
            }
            if seen[v] {
                return Err(PermError::NotABijection {
                    len: n,
                    reason: format!("value {v} repeated at position {}", i + 1),
                });
            }
            seen[v] = true;
        }
        Ok(Self { values })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn identity(n: usize) -> Self {
        Self {
            values: (1..=n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Entry at 1-indexed `position`. Panics when out of range.
    pub fn value(&self, position: usize) -> usize {
        self.values[position - 1]
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn into_values(self) -> Vec<usize> {
        self.values
    }

    /// Serializes to the one-line text format, with a trailing newline.
    pub fn to_text(&self) -> String {
        format!("{self}\n")
    }
}

/// Builds a permutation from a value vector, rejecting non-bijections.
pub fn make_permutation(values: &[usize]) -> Result<Permutation, PermError> {
    Permutation::new(values.to_vec())
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = PermError;

    fn try_from(values: Vec<usize>) -> Result<Self, Self::Error> {
        Permutation::new(values)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl FromStr for Permutation {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let values = s
            .split_whitespace()
            .map(|tok| {
                tok.parse::<usize>()
                    .map_err(|e| PermError::Parse(format!("{tok:?}: {e}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Permutation::new(values)
    }
}

/// A map `phi` from pattern positions to text positions (both 1-indexed).
///
/// The type does not enforce monotonicity; [`is_certificate`] decides whether
/// the map actually witnesses an occurrence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Certificate {
    positions: Vec<usize>,
}

impl Certificate {
    pub fn new(positions: Vec<usize>) -> Self {
        Self { positions }
    }

    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    /// Image of the 1-indexed pattern position `x`.
    pub fn image(&self, x: usize) -> usize {
        self.positions[x - 1]
    }

    pub fn is_strictly_increasing(&self) -> bool {
        self.positions.windows(2).all(|w| w[0] < w[1])
    }
}

impl From<Vec<usize>> for Certificate {
    fn from(positions: Vec<usize>) -> Self {
        Self::new(positions)
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.positions.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl FromStr for Certificate {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.split_whitespace()
            .map(|tok| {
                tok.parse::<usize>()
                    .map_err(|e| PermError::Parse(format!("{tok:?}: {e}")))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Certificate::new)
    }
}

/// Decides whether `phi` witnesses `sigma` as a pattern of `pi`.
///
/// Returns `Ok(false)` when `phi` is not strictly increasing; positions
/// outside `[1, |pi|]` are an error.
pub fn is_certificate(
    sigma: &Permutation,
    pi: &Permutation,
    phi: &Certificate,
) -> Result<bool, PermError> {
    if phi.len() != sigma.len() {
        return Err(PermError::LengthMismatch {
            expected: sigma.len(),
            found: phi.len(),
        });
    }
    if let Some(&bad) = phi.positions().iter().find(|&&p| p == 0 || p > pi.len()) {
        return Err(PermError::IndexOutOfRange {
            index: bad,
            len: pi.len(),
        });
    }
    if !phi.is_strictly_increasing() {
        return Ok(false);
    }
    // Both sides are injective, so order isomorphism holds iff the text values,
    // read in increasing order of pattern value, are increasing.
    let mut by_value = vec![0usize; sigma.len()];
    for (x, &v) in sigma.values().iter().enumerate() {
        by_value[v - 1] = x;
    }
    Ok(by_value
        .windows(2)
        .all(|w| pi.value(phi.positions()[w[0]]) < pi.value(phi.positions()[w[1]])))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Increasing,
    Decreasing,
}

/// A maximal monotonic stretch of consecutive positions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Run {
    pub start: usize,
    pub length: usize,
    pub direction: Direction,
}

impl Run {
    /// Last position covered by the run (inclusive).
    pub fn end(&self) -> usize {
        self.start + self.length - 1
    }
}

/// Maximal monotonic runs, left to right.
///
/// Neighbouring runs share their turning position, so `(4,5,3,1,2)` yields
/// `[1,2]` up, `[2,4]` down, `[4,5]` up. A permutation of size 1 is a single
/// increasing run of length 1; the empty permutation has no runs.
pub fn runs(pi: &Permutation) -> Vec<Run> {
    let v = pi.values();
    match v.len() {
        0 => return Vec::new(),
        1 => {
            return vec![Run {
                start: 1,
                length: 1,
                direction: Direction::Increasing,
            }]
        }
        _ => {}
    }
    let step = |i: usize| {
        if v[i] < v[i + 1] {
            Direction::Increasing
        } else {
            Direction::Decreasing
        }
    };
    let mut out = Vec::new();
    let mut start = 0;
    let mut dir = step(0);
    for i in 1..v.len() - 1 {
        let d = step(i);
        if d != dir {
            out.push(Run {
                start: start + 1,
                length: i - start + 1,
                direction: dir,
            });
            start = i;
            dir = d;
        }
    }
    out.push(Run {
        start: start + 1,
        length: v.len() - start,
        direction: dir,
    });
    out
}

/// The permutation order-isomorphic to `pi` restricted to `indices`.
pub fn pattern_of_indices(pi: &Permutation, indices: &[usize]) -> Result<Permutation, PermError> {
    if let Some(&bad) = indices.iter().find(|&&p| p == 0 || p > pi.len()) {
        return Err(PermError::IndexOutOfRange {
            index: bad,
            len: pi.len(),
        });
    }
    if indices.windows(2).any(|w| w[0] >= w[1]) {
        return Err(PermError::NotIncreasing);
    }
    let mut order: Vec<usize> = (0..indices.len()).collect();
    order.sort_unstable_by_key(|&k| pi.value(indices[k]));
    let mut values = vec![0; indices.len()];
    for (rank, k) in order.into_iter().enumerate() {
        values[k] = rank + 1;
    }
    Ok(Permutation { values })
}

/// `a ⊕ b`: `a` followed by `b` shifted above every value of `a`.
pub fn direct_sum(a: &Permutation, b: &Permutation) -> Permutation {
    let shift = a.len();
    let values = a
        .values()
        .iter()
        .copied()
        .chain(b.values().iter().map(|&v| v + shift))
        .collect();
    Permutation { values }
}
