//! Multi-indices of `N^k`, the descendant/ancestor partial order and
//! iteration over finite boxes of multidegrees.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point of `N^k`, used both as a twist and as a poset element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex(pub Vec<u32>);

impl MultiIndex {
    pub fn zero(k: usize) -> Self {
        MultiIndex(vec![0; k])
    }

    /// `epsilon_i`: 1 in slot `i`, 0 elsewhere.
    pub fn eps(k: usize, i: usize) -> Self {
        let mut v = vec![0; k];
        v[i] = 1;
        MultiIndex(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `self + epsilon_i`.
    pub fn plus_eps(&self, i: usize) -> MultiIndex {
        let mut v = self.0.clone();
        v[i] += 1;
        MultiIndex(v)
    }

    /// `self - epsilon_i`, or `None` when slot `i` is already zero.
    pub fn minus_eps(&self, i: usize) -> Option<MultiIndex> {
        if self.0[i] == 0 {
            return None;
        }
        let mut v = self.0.clone();
        v[i] -= 1;
        Some(MultiIndex(v))
    }

    /// The k immediate descendants `self + epsilon_i`, in factor order.
    pub fn immediate_descendants(&self) -> Vec<MultiIndex> {
        (0..self.len()).map(|i| self.plus_eps(i)).collect()
    }

    /// Parents `self - epsilon_i` for every slot with a nonzero entry.
    pub fn parents(&self) -> Vec<MultiIndex> {
        (0..self.len()).filter_map(|i| self.minus_eps(i)).collect()
    }

    /// Strict componentwise domination: `self >= a` everywhere, `self != a`.
    pub fn is_descendant_of(&self, a: &MultiIndex) -> Result<bool> {
        if self.len() != a.len() {
            return Err(Error::LengthMismatch {
                left: self.len(),
                right: a.len(),
            });
        }
        let ge = self.0.iter().zip(&a.0).all(|(b, a)| b >= a);
        Ok(ge && self != a)
    }

    /// Drops slot `i` (used when restricting to a fiber of the i-th projection).
    pub fn without_slot(&self, i: usize) -> MultiIndex {
        let mut v = self.0.clone();
        v.remove(i);
        MultiIndex(v)
    }

    /// Inserts `value` at slot `i`.
    pub fn with_slot(&self, i: usize, value: u32) -> MultiIndex {
        let mut v = self.0.clone();
        v.insert(i, value);
        MultiIndex(v)
    }
}

impl From<Vec<u32>> for MultiIndex {
    fn from(v: Vec<u32>) -> Self {
        MultiIndex(v)
    }
}

impl std::fmt::Display for MultiIndex {
    fn fmt(&self, fmt: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(fmt, "(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(fmt, ",")?;
            }
            write!(fmt, "{a}")?;
        }
        write!(fmt, ")")
    }
}

/// The finite window `{b in N^k : b_i <= upper_i}`, iterated in
/// lexicographic order for deterministic reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeBox {
    pub upper: MultiIndex,
}

impl DegreeBox {
    pub fn new(upper: MultiIndex) -> Self {
        DegreeBox { upper }
    }

    /// Cube `[0, bound]^k`.
    pub fn cube(k: usize, bound: u32) -> Self {
        DegreeBox {
            upper: MultiIndex(vec![bound; k]),
        }
    }

    pub fn k(&self) -> usize {
        self.upper.len()
    }

    pub fn len(&self) -> usize {
        self.upper.0.iter().map(|&u| u as usize + 1).product()
    }

    pub fn is_empty(&self) -> bool {
        false // every box contains the origin
    }

    pub fn contains(&self, a: &MultiIndex) -> bool {
        a.len() == self.k() && a.0.iter().zip(&self.upper.0).all(|(x, u)| x <= u)
    }

    pub fn iter(&self) -> BoxIter<'_> {
        BoxIter {
            upper: &self.upper,
            next: Some(MultiIndex::zero(self.k())),
        }
    }
}

pub struct BoxIter<'a> {
    upper: &'a MultiIndex,
    next: Option<MultiIndex>,
}

impl Iterator for BoxIter<'_> {
    type Item = MultiIndex;

    fn next(&mut self) -> Option<MultiIndex> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        // lexicographic successor: increment the last slot that still has room
        for i in (0..succ.len()).rev() {
            if succ.0[i] < self.upper.0[i] {
                succ.0[i] += 1;
                self.next = Some(succ);
                return Some(current);
            }
            succ.0[i] = 0;
        }
        Some(current)
    }
}

/// Minimal elements of a finite set: the antichain of indices with no
/// ancestor inside the set. Output in lexicographic order.
pub fn minimal_elements(set: &[MultiIndex]) -> Vec<MultiIndex> {
    let mut out: Vec<MultiIndex> = set
        .iter()
        .filter(|a| {
            !set.iter()
                .any(|b| a.is_descendant_of(b).unwrap_or(false))
        })
        .cloned()
        .collect();
    out.sort();
    out.dedup();
    out
}
