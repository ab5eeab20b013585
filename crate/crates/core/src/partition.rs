//! Integer partitions and compositions: canonical form, orders, statistics,
//! and enumeration.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;

/// Default cap for [`partitions_of`].
pub const PARTITION_ENUM_BOUND: u32 = 40;

/// A partition: weakly decreasing finite sequence of positive integers.
///
/// Stored without trailing zeros, so equality and hashing see a single
/// canonical form. The empty sequence is the unique partition of 0.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// The empty partition of 0.
    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// Builds a partition, rejecting sequences that are not weakly
    /// decreasing. Trailing zeros are stripped; interior zeros are invalid.
    pub fn new(parts: impl Into<Vec<u32>>) -> Result<Self> {
        let mut parts = parts.into();
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::InvalidPartition(format!(
                "interior zero part in {parts:?}"
            )));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!(
                "not weakly decreasing: {parts:?}"
            )));
        }
        Ok(Partition { parts })
    }

    /// Builds a partition from parts in any order by sorting decreasingly.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    /// The column partition `(1^n)`.
    pub fn column(n: u32) -> Self {
        Partition {
            parts: vec![1; n as usize],
        }
    }

    /// The single-row partition `(n)`, empty for `n = 0`.
    pub fn row(n: u32) -> Self {
        if n == 0 {
            Self::empty()
        } else {
            Partition { parts: vec![n] }
        }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// `|λ|`, the partitioned number.
    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// `l(λ)`, the number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// The i-th part (0-based), 0 beyond the length.
    pub fn part(&self, i: usize) -> u32 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// The largest part, 0 for the empty partition.
    pub fn first(&self) -> u32 {
        self.part(0)
    }

    /// The conjugate partition: `λ'_i = #{j : λ_j ≥ i}`.
    pub fn conjugate(&self) -> Partition {
        let mut parts = Vec::with_capacity(self.first() as usize);
        for i in 1..=self.first() {
            parts.push(self.parts.iter().filter(|&&p| p >= i).count() as u32);
        }
        Partition { parts }
    }

    /// `n(λ) = Σ_i (i-1) λ_i`, the statistic appearing in the degree bound of
    /// the Hall polynomials.
    pub fn n_stat(&self) -> u64 {
        self.parts
            .iter()
            .enumerate()
            .map(|(i, &p)| i as u64 * p as u64)
            .sum()
    }

    /// Containment of Young diagrams: `μ_i ≤ λ_i` for all i.
    pub fn contains(&self, other: &Partition) -> bool {
        (0..other.len()).all(|i| other.part(i) <= self.part(i))
    }

    /// Multiplicity of the part `k`.
    pub fn multiplicity(&self, k: u32) -> usize {
        self.parts.iter().filter(|&&p| p == k).count()
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

/// `μ ≤ λ` in the dominance order. Partitions of different numbers are
/// incomparable and the function returns `false`.
pub fn dominance_leq(mu: &Partition, lambda: &Partition) -> bool {
    if mu.size() != lambda.size() {
        return false;
    }
    let mut mu_sum = 0u64;
    let mut la_sum = 0u64;
    for i in 0..mu.len().max(lambda.len()) {
        mu_sum += mu.part(i) as u64;
        la_sum += lambda.part(i) as u64;
        if mu_sum > la_sum {
            return false;
        }
    }
    true
}

/// `μ ≤ λ` in the lexicographic order: equality, or the first nonzero
/// `μ_i - λ_i` is negative.
pub fn lex_leq(mu: &Partition, lambda: &Partition) -> bool {
    for i in 0..mu.len().max(lambda.len()) {
        match mu.part(i).cmp(&lambda.part(i)) {
            Ordering::Less => return true,
            Ordering::Greater => return false,
            Ordering::Equal => {}
        }
    }
    true
}

/// All partitions of `n` in descending lexicographic order, starting with
/// `(n)` and ending with `(1^n)`.
pub fn partitions_of(n: u32) -> Result<Vec<Partition>> {
    if n > PARTITION_ENUM_BOUND {
        return Err(Error::BoundExceeded(format!(
            "partitions_of({n}) exceeds bound {PARTITION_ENUM_BOUND}"
        )));
    }
    let mut out = Vec::new();
    let mut current = Vec::new();
    descend(n, u32::MAX, &mut current, &mut out);
    Ok(out)
}

fn descend(rest: u32, max: u32, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if rest == 0 {
        out.push(Partition {
            parts: current.clone(),
        });
        return;
    }
    let top = rest.min(max);
    for part in (1..=top).rev() {
        current.push(part);
        descend(rest - part, part, current, out);
        current.pop();
    }
}

/// A composition: finite sequence of nonnegative integers with meaningful
/// positions. Trailing zeros are kept as stored but ignored by equality,
/// ordering, and hashing.
#[derive(Clone, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Composition {
    parts: Vec<u32>,
}

impl Composition {
    pub fn new(parts: impl Into<Vec<u32>>) -> Self {
        Composition {
            parts: parts.into(),
        }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn part(&self, i: usize) -> u32 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.size() == 0
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    fn stripped(&self) -> &[u32] {
        let mut end = self.parts.len();
        while end > 0 && self.parts[end - 1] == 0 {
            end -= 1;
        }
        &self.parts[..end]
    }

    /// Sorts the parts decreasingly into a partition.
    pub fn sorted(&self) -> Partition {
        Partition::from_unsorted(self.parts.clone())
    }

    /// True if this composition is a rearrangement of the partition.
    pub fn is_permutation_of(&self, p: &Partition) -> bool {
        self.sorted() == *p
    }
}

impl PartialEq for Composition {
    fn eq(&self, other: &Self) -> bool {
        self.stripped() == other.stripped()
    }
}

impl Eq for Composition {}

impl std::hash::Hash for Composition {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.stripped().hash(state);
    }
}

impl PartialOrd for Composition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Composition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.stripped().cmp(other.stripped())
    }
}

impl fmt::Debug for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.parts)
    }
}

impl From<&Partition> for Composition {
    fn from(p: &Partition) -> Self {
        Composition::new(p.parts().to_vec())
    }
}
