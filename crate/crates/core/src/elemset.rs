//! Fixed-width element sets.
//!
//! Every poset in this crate has at most [`MAX_ELEMENTS`] elements, so a
//! subset fits in a single `u128`. The numeric value doubles as the
//! canonical sort key for segments and traces.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Hard upper bound on the number of elements of any poset.
pub const MAX_ELEMENTS: usize = 128;

/// A subset of the element ids `0..MAX_ELEMENTS`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ElemSet(u128);

impl ElemSet {
    pub const EMPTY: ElemSet = ElemSet(0);

    pub const fn from_bits(bits: u128) -> Self {
        ElemSet(bits)
    }

    pub const fn bits(self) -> u128 {
        self.0
    }

    /// The set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_ELEMENTS);
        if n == MAX_ELEMENTS {
            ElemSet(u128::MAX)
        } else {
            ElemSet((1u128 << n) - 1)
        }
    }

    pub fn singleton(id: usize) -> Self {
        ElemSet(1u128 << id)
    }

    pub fn contains(self, id: usize) -> bool {
        id < MAX_ELEMENTS && self.0 >> id & 1 == 1
    }

    pub fn insert(&mut self, id: usize) {
        self.0 |= 1u128 << id;
    }

    pub fn remove(&mut self, id: usize) {
        self.0 &= !(1u128 << id);
    }

    pub fn with(self, id: usize) -> Self {
        ElemSet(self.0 | 1u128 << id)
    }

    pub fn without(self, id: usize) -> Self {
        ElemSet(self.0 & !(1u128 << id))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        ElemSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        ElemSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        ElemSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    /// Smallest member, if any.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Largest member, if any.
    pub fn last(self) -> Option<usize> {
        (self.0 != 0).then(|| 127 - self.0.leading_zeros() as usize)
    }

    pub fn iter(self) -> Iter {
        Iter(self.0)
    }
}

/// Ascending iterator over the members of an [`ElemSet`].
#[derive(Clone)]
pub struct Iter(u128);

impl Iterator for Iter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let id = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(id)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Iter {}

impl IntoIterator for ElemSet {
    type Item = usize;
    type IntoIter = Iter;

    fn into_iter(self) -> Iter {
        self.iter()
    }
}

impl FromIterator<usize> for ElemSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = ElemSet::EMPTY;
        for id in iter {
            assert!(id < MAX_ELEMENTS, "element id {id} out of range");
            s.insert(id);
        }
        s
    }
}

impl fmt::Debug for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for ElemSet {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for ElemSet {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let ids = Vec::<usize>::deserialize(deserializer)?;
        if let Some(bad) = ids.iter().find(|&&id| id >= MAX_ELEMENTS) {
            return Err(serde::de::Error::custom(format!("element id {bad} out of range")));
        }
        Ok(ids.into_iter().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ops() {
        let a: ElemSet = [0, 3, 127].into_iter().collect();
        assert_eq!(a.len(), 3);
        assert!(a.contains(127));
        assert!(!a.contains(1));
        assert_eq!(a.first(), Some(0));
        assert_eq!(a.last(), Some(127));
        assert_eq!(a.iter().collect::<Vec<_>>(), vec![0, 3, 127]);
        assert!(ElemSet::singleton(3).is_subset(a));
        assert_eq!(a.without(0).first(), Some(3));
        assert_eq!(ElemSet::full(128).len(), 128);
        assert_eq!(ElemSet::full(3), [0, 1, 2].into_iter().collect());
        assert_eq!(ElemSet::EMPTY.first(), None);
    }

    #[test]
    fn serde_roundtrip() {
        let a: ElemSet = [1, 64, 100].into_iter().collect();
        let json = serde_json::to_string(&a).unwrap();
        assert_eq!(json, "[1,64,100]");
        assert_eq!(serde_json::from_str::<ElemSet>(&json).unwrap(), a);
        assert!(serde_json::from_str::<ElemSet>("[200]").is_err());
    }
}
