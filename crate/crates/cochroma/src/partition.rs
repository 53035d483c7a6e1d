//! Integer partitions: the index type for every graded basis in the crate.
//!
//! The canonical order used everywhere (term ordering, enumeration, output)
//! is by total size first, then reverse-lexicographic within a size, so the
//! partitions of 4 run `(4), (3,1), (2,2), (2,1,1), (1,1,1,1)`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::FoundationError;
use crate::scalar::{factorial_rat, Rational};

/// A weakly decreasing sequence of positive integers. The empty partition is
/// the degree-0 index.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// The empty partition.
    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// Normalizes a list of positive integers into a partition (sorts weakly
    /// decreasing). Rejects zero entries.
    pub fn from_parts(values: impl IntoIterator<Item = u32>) -> Result<Self, FoundationError> {
        let mut parts: Vec<u32> = values.into_iter().collect();
        if let Some(&bad) = parts.iter().find(|&&v| v == 0) {
            return Err(FoundationError::NonPositivePart(bad as i64));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition { parts })
    }

    /// Like [`Partition::from_parts`] but panics on zero entries; for
    /// literals known to be valid.
    pub fn of(values: &[u32]) -> Self {
        Partition::from_parts(values.iter().copied()).expect("partition literal with zero part")
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// `|λ|`, the sum of the parts.
    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// `ℓ(λ)`, the number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `r_i(λ)`, the number of parts equal to `i`.
    pub fn multiplicity(&self, i: u32) -> usize {
        self.parts.iter().filter(|&&p| p == i).count()
    }

    /// Part value → multiplicity, for the distinct part values.
    pub fn multiplicities(&self) -> BTreeMap<u32, usize> {
        let mut m = BTreeMap::new();
        for &p in &self.parts {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }

    /// `λ ⊔ μ`: the multiset union of parts, re-sorted.
    pub fn union(&self, other: &Partition) -> Partition {
        let mut parts = self.parts.clone();
        parts.extend_from_slice(&other.parts);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    /// `∏ r_i(λ)!` — the scaling between the monomial and augmented monomial
    /// bases.
    pub fn aut_factor(&self) -> Rational {
        self.multiplicities().values().map(|&r| factorial_rat(r as u64)).product()
    }

    /// `λ! = λ₁!·λ₂!⋯`.
    pub fn factorial(&self) -> Rational {
        self.parts.iter().map(|&p| factorial_rat(p as u64)).product()
    }

    /// All partitions of `n`, reverse-lexicographic: largest first part first.
    pub fn all_of(n: u32) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut stack = Vec::new();
        gen_partitions(n, n, &mut stack, &mut out);
        out
    }
}

fn gen_partitions(remaining: u32, max_part: u32, stack: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition { parts: stack.clone() });
        return;
    }
    let hi = remaining.min(max_part);
    for part in (1..=hi).rev() {
        stack.push(part);
        gen_partitions(remaining - part, part, stack, out);
        stack.pop();
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        // Size ascending, then reverse-lexicographic (larger first part earlier).
        self.size().cmp(&other.size()).then_with(|| other.parts.cmp(&self.parts))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", p)?;
        }
        write!(f, "]")
    }
}
