//! Vertex universes and bitmask vertex sets.
//!
//! A [`VertexSet`] is a plain bitmask over the indices of a [`Universe`]. The
//! universe owns the names; sets only carry membership, so two sets over the
//! same universe compare by members alone.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::{Error, Result};

/// Largest supported universe (one bit per vertex).
pub const MAX_VERTICES: usize = 64;

#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    #[inline]
    pub const fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    #[inline]
    pub const fn bits(self) -> u64 {
        self.0
    }

    /// All indices `0..n`.
    #[inline]
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_VERTICES);
        if n == MAX_VERTICES {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    #[inline]
    pub fn singleton(i: usize) -> Self {
        VertexSet(1u64 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        indices.into_iter().fold(Self::EMPTY, |s, i| s.with(i))
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn contains(self, i: usize) -> bool {
        i < MAX_VERTICES && self.0 >> i & 1 == 1
    }

    #[inline]
    #[must_use]
    pub fn with(self, i: usize) -> Self {
        VertexSet(self.0 | 1u64 << i)
    }

    #[inline]
    #[must_use]
    pub fn without(self, i: usize) -> Self {
        VertexSet(self.0 & !(1u64 << i))
    }

    #[inline]
    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    #[inline]
    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn is_proper_subset(self, other: Self) -> bool {
        self.is_subset(other) && self != other
    }

    #[inline]
    pub fn meets(self, other: Self) -> bool {
        self.0 & other.0 != 0
    }

    /// Smallest member, if any.
    #[inline]
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Members in increasing index order.
    pub fn iter(self) -> Members {
        Members(self.0)
    }

    /// Every subset of `self`, including the empty set and `self`.
    pub fn subsets(self) -> Subsets {
        Subsets {
            mask: self.0,
            next: Some(0),
        }
    }

    /// Packs the members of `self` that lie in `keep` into the low bits, in
    /// index order. This is the re-indexing used when a universe shrinks to
    /// `keep`.
    pub fn compress(self, keep: VertexSet) -> VertexSet {
        let mut out = 0u64;
        for (pos, i) in keep.iter().enumerate() {
            if self.contains(i) {
                out |= 1 << pos;
            }
        }
        VertexSet(out)
    }

    /// Inverse of [`compress`](Self::compress).
    pub fn expand(self, keep: VertexSet) -> VertexSet {
        let mut out = 0u64;
        for (pos, i) in keep.iter().enumerate() {
            if self.contains(pos) {
                out |= 1 << i;
            }
        }
        VertexSet(out)
    }

    /// Order by size, then by the member index sequence.
    pub fn graded_cmp(self, other: Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.iter().cmp(other.iter()))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        Self::from_indices(iter)
    }
}

#[derive(Clone)]
pub struct Members(u64);

impl Iterator for Members {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Members {}

/// Subsets of a mask in increasing numeric order (Gosper-free submask walk).
pub struct Subsets {
    mask: u64,
    next: Option<u64>,
}

impl Iterator for Subsets {
    type Item = VertexSet;

    fn next(&mut self) -> Option<VertexSet> {
        let cur = self.next?;
        self.next = if cur == self.mask {
            None
        } else {
            Some((cur.wrapping_sub(self.mask)) & self.mask)
        };
        Some(VertexSet(cur))
    }
}

/// Ordered list of vertex (or variable) names.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Universe(Arc<[String]>);

impl Universe {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.len() > MAX_VERTICES {
            return Err(Error::UniverseTooLarge {
                size: names.len(),
                max: MAX_VERTICES,
            });
        }
        for (i, a) in names.iter().enumerate() {
            if a.is_empty() {
                return Err(Error::MalformedInput(String::from("empty vertex name")));
            }
            if names[..i].contains(a) {
                return Err(Error::MalformedInput(alloc::format!(
                    "duplicate vertex name `{a}`"
                )));
            }
        }
        Ok(Universe(names.into()))
    }

    /// Universe `x0, x1, ..., x{n-1}`.
    pub fn indexed(n: usize) -> Result<Self> {
        Self::new((0..n).map(|i| alloc::format!("x{i}")))
    }

    pub fn empty() -> Self {
        Universe(Arc::from(Vec::<String>::new()))
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn name(&self, i: usize) -> &str {
        &self.0[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }

    pub fn all(&self) -> VertexSet {
        VertexSet::full(self.len())
    }

    pub fn contains_set(&self, set: VertexSet) -> bool {
        set.is_subset(self.all())
    }

    /// Builds a set from names; every name must belong to the universe.
    pub fn set<S: AsRef<str>>(&self, names: &[S]) -> Result<VertexSet> {
        names.iter().try_fold(VertexSet::EMPTY, |acc, n| {
            let n = n.as_ref();
            self.index_of(n)
                .map(|i| acc.with(i))
                .ok_or_else(|| Error::UnknownVertex(String::from(n)))
        })
    }

    /// Member names in universe order.
    pub fn names_of(&self, set: VertexSet) -> Vec<&str> {
        set.iter().map(|i| self.name(i)).collect()
    }

    /// Sub-universe consisting of the vertices in `keep`, in their original
    /// relative order. Sets are carried over with [`VertexSet::compress`].
    pub fn restrict(&self, keep: VertexSet) -> Universe {
        Universe(keep.iter().map(|i| self.0[i].clone()).collect())
    }

    /// Canonical order on sets: by size, then by member-name sequence.
    pub fn cmp_sets(&self, a: VertexSet, b: VertexSet) -> Ordering {
        a.len().cmp(&b.len()).then_with(|| {
            a.iter()
                .map(|i| self.name(i))
                .cmp(b.iter().map(|i| self.name(i)))
        })
    }

    pub fn sort_sets(&self, sets: &mut [VertexSet]) {
        sets.sort_by(|a, b| self.cmp_sets(*a, *b));
    }
}

impl fmt::Debug for Universe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

/// Keeps only the inclusion-maximal sets (duplicates collapse).
pub fn maximal_sets(sets: &[VertexSet]) -> Vec<VertexSet> {
    let mut sorted: Vec<VertexSet> = sets.to_vec();
    sorted.sort_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
    sorted.dedup();
    let mut kept: Vec<VertexSet> = Vec::with_capacity(sorted.len());
    for s in sorted {
        if !kept.iter().any(|k| s.is_subset(*k)) {
            kept.push(s);
        }
    }
    kept
}

/// Keeps only the inclusion-minimal sets (duplicates collapse).
pub fn minimal_sets(sets: &[VertexSet]) -> Vec<VertexSet> {
    let mut sorted: Vec<VertexSet> = sets.to_vec();
    sorted.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    sorted.dedup();
    let mut kept: Vec<VertexSet> = Vec::with_capacity(sorted.len());
    for s in sorted {
        if !kept.iter().any(|k| k.is_subset(s)) {
            kept.push(s);
        }
    }
    kept
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_walk_every_submask_once() {
        let s = VertexSet::from_indices([0, 2, 5]);
        let all: Vec<_> = s.subsets().collect();
        assert_eq!(all.len(), 8);
        assert!(all.iter().all(|t| t.is_subset(s)));
        let mut dedup = all.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), 8);
        assert_eq!(VertexSet::EMPTY.subsets().count(), 1);
    }

    #[test]
    fn compress_expand_roundtrip() {
        let keep = VertexSet::from_indices([1, 3, 4, 7]);
        let s = VertexSet::from_indices([3, 7]);
        let c = s.compress(keep);
        assert_eq!(c, VertexSet::from_indices([1, 3]));
        assert_eq!(c.expand(keep), s);
    }

    #[test]
    fn universe_rejects_duplicates_and_oversize() {
        assert!(Universe::new(["a", "b", "a"]).is_err());
        assert!(matches!(
            Universe::indexed(65),
            Err(Error::UniverseTooLarge { .. })
        ));
        assert!(Universe::indexed(64).is_ok());
        assert_eq!(VertexSet::full(64).len(), 64);
    }

    #[test]
    fn maximal_and_minimal_sets() {
        let a = VertexSet::from_indices([0, 1]);
        let b = VertexSet::from_indices([0]);
        let c = VertexSet::from_indices([2]);
        assert_eq!(maximal_sets(&[a, b, c, a]), alloc::vec![a, c]);
        let mut mins = minimal_sets(&[a, b, c, a]);
        mins.sort();
        assert_eq!(mins, alloc::vec![b, c]);
    }

    #[test]
    fn canonical_set_order_uses_names() {
        let u = Universe::new(["y", "x"]).unwrap();
        let x = u.set(&["x"]).unwrap();
        let y = u.set(&["y"]).unwrap();
        assert_eq!(u.cmp_sets(x, y), Ordering::Less);
        assert_eq!(u.cmp_sets(x, x.union(y)), Ordering::Less);
    }
}
