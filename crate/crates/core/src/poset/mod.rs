//! Finite posets materialized as bit matrices.

mod construct;
mod io;

pub use construct::{
    antichain, chain, disjoint_sum, disjoint_sum_with_blocks, dual, lex_sum, lex_sum_with_blocks, product, rado_prefix,
    random_poset, v3,
};
pub use io::PosetFile;

use std::collections::HashMap;
use std::fmt;

use rand::seq::IndexedRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::elemset::{ElemSet, MAX_ELEMENTS};
use crate::error::{Error, Result};

/// Default cap on the number of segments any single enumeration may produce.
pub const DEFAULT_ENUM_CAP: usize = 1 << 22;

/// A finite partial order.
///
/// Row `up[p]` holds every `q` with `p <= q`; `down[p]` is the transpose.
/// Both are reflexive.
#[derive(Clone)]
pub struct Poset {
    name: String,
    names: Vec<String>,
    up: Vec<ElemSet>,
    down: Vec<ElemSet>,
}

impl PartialEq for Poset {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.up == other.up
    }
}

impl Eq for Poset {}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strict: Vec<String> =
            self.strict_pairs().map(|(p, q)| format!("{}<{}", self.names[p], self.names[q])).collect();
        f.debug_struct("Poset").field("name", &self.name).field("elements", &self.names).field("lt", &strict).finish()
    }
}

/// A down-closed subset.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct InitialSegment(ElemSet);

/// An up-closed subset.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FinalSegment(ElemSet);

impl InitialSegment {
    pub fn set(self) -> ElemSet {
        self.0
    }
}

impl FinalSegment {
    pub fn set(self) -> ElemSet {
        self.0
    }
}

/// A linear order extending a poset, on the same elements.
#[derive(Clone, Debug)]
pub struct LinearAugmentation {
    /// `order[i]` is the element at position `i` of the chain.
    pub order: Vec<usize>,
    /// Inverse of `order`.
    pub position: Vec<usize>,
    /// The chain itself, carrying the element names of the source poset.
    pub chain: Poset,
}

impl Poset {
    /// Builds a poset from names and `(lower, upper)` name pairs, closing
    /// the relation reflexively and transitively.
    pub fn build<S: AsRef<str>>(name: &str, names: &[S], relations: &[(S, S)]) -> Result<Self> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        let mut index = HashMap::with_capacity(names.len());
        for (i, n) in names.iter().enumerate() {
            if index.insert(n.as_str(), i).is_some() {
                return Err(Error::DuplicateName(n.clone()));
            }
        }
        let lookup = |s: &str| index.get(s).copied().ok_or_else(|| Error::UnknownElement(s.to_string()));
        let mut pairs = Vec::with_capacity(relations.len());
        for (a, b) in relations {
            pairs.push((lookup(a.as_ref())?, lookup(b.as_ref())?));
        }
        Poset::from_pairs(name, names, &pairs)
    }

    /// Same as [`Poset::build`] but with the relation given as id pairs.
    pub fn from_pairs(name: &str, names: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self> {
        let n = names.len();
        if n > MAX_ELEMENTS {
            return Err(Error::SizeLimit { size: n, cap: MAX_ELEMENTS });
        }
        {
            let mut seen = std::collections::HashSet::new();
            for s in &names {
                if !seen.insert(s.as_str()) {
                    return Err(Error::DuplicateName(s.clone()));
                }
            }
        }
        let mut up: Vec<ElemSet> = (0..n).map(ElemSet::singleton).collect();
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(Error::UnknownElement(format!("#{}", a.max(b))));
            }
            up[a].insert(b);
        }
        // Warshall on rows.
        for k in 0..n {
            let row_k = up[k];
            for row in up.iter_mut() {
                if row.contains(k) {
                    *row = row.union(row_k);
                }
            }
        }
        for p in 0..n {
            for q in up[p].without(p) {
                if up[q].contains(p) {
                    return Err(Error::Cycle(names[p].clone(), names[q].clone()));
                }
            }
        }
        Ok(Self::from_closed_rows(name, names, up))
    }

    /// `up` must already be a reflexive, transitive, antisymmetric relation.
    pub(crate) fn from_closed_rows(name: &str, names: Vec<String>, up: Vec<ElemSet>) -> Self {
        let n = names.len();
        let mut down = vec![ElemSet::EMPTY; n];
        for (p, row) in up.iter().enumerate() {
            for q in row.iter() {
                down[q].insert(p);
            }
        }
        Poset { name: name.to_string(), names, up, down }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn element_name(&self, id: usize) -> &str {
        &self.names[id]
    }

    pub fn id_of(&self, name: &str) -> Result<usize> {
        self.names.iter().position(|n| n == name).ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    pub fn ids_of<S: AsRef<str>>(&self, names: &[S]) -> Result<ElemSet> {
        names.iter().map(|n| self.id_of(n.as_ref())).collect()
    }

    /// The set of all elements.
    pub fn all(&self) -> ElemSet {
        ElemSet::full(self.len())
    }

    pub fn check_size(&self, cap: usize) -> Result<()> {
        if self.len() > cap {
            Err(Error::SizeLimit { size: self.len(), cap })
        } else {
            Ok(())
        }
    }

    fn check_id(&self, id: usize) -> Result<()> {
        if id < self.len() {
            Ok(())
        } else {
            Err(Error::UnknownElement(format!("#{id}")))
        }
    }

    fn check_set(&self, s: ElemSet) -> Result<()> {
        if s.is_subset(self.all()) {
            Ok(())
        } else {
            Err(Error::UnknownElement(format!("#{}", s.last().unwrap_or(0))))
        }
    }

    /// `p <= q`. Panics on out-of-range ids; see [`Poset::try_leq`].
    #[inline]
    pub fn leq(&self, p: usize, q: usize) -> bool {
        self.up[p].contains(q)
    }

    pub fn try_leq(&self, p: usize, q: usize) -> Result<bool> {
        self.check_id(p)?;
        self.check_id(q)?;
        Ok(self.leq(p, q))
    }

    #[inline]
    pub fn lt(&self, p: usize, q: usize) -> bool {
        p != q && self.leq(p, q)
    }

    pub fn incomparable(&self, p: usize, q: usize) -> bool {
        !self.leq(p, q) && !self.leq(q, p)
    }

    pub fn try_incomparable(&self, p: usize, q: usize) -> Result<bool> {
        self.check_id(p)?;
        self.check_id(q)?;
        Ok(self.incomparable(p, q))
    }

    /// `{q : p <= q}`.
    #[inline]
    pub fn above(&self, p: usize) -> ElemSet {
        self.up[p]
    }

    /// `{q : q <= p}`.
    #[inline]
    pub fn below(&self, p: usize) -> ElemSet {
        self.down[p]
    }

    /// Up-closure of `s` (unchecked).
    pub fn up_closure(&self, s: ElemSet) -> ElemSet {
        s.iter().fold(ElemSet::EMPTY, |acc, p| acc.union(self.up[p]))
    }

    /// Down-closure of `s` (unchecked).
    pub fn down_closure(&self, s: ElemSet) -> ElemSet {
        s.iter().fold(ElemSet::EMPTY, |acc, p| acc.union(self.down[p]))
    }

    pub fn upset(&self, s: ElemSet) -> Result<FinalSegment> {
        self.check_set(s)?;
        Ok(FinalSegment(self.up_closure(s)))
    }

    pub fn downset(&self, s: ElemSet) -> Result<InitialSegment> {
        self.check_set(s)?;
        Ok(InitialSegment(self.down_closure(s)))
    }

    /// The `<=`-minimal members of `s`.
    pub fn minimals(&self, s: ElemSet) -> ElemSet {
        s.iter().filter(|&p| self.down[p].intersection(s) == ElemSet::singleton(p)).collect()
    }

    /// The `<=`-maximal members of `s`.
    pub fn maximals(&self, s: ElemSet) -> ElemSet {
        s.iter().filter(|&p| self.up[p].intersection(s) == ElemSet::singleton(p)).collect()
    }

    pub fn is_antichain(&self, s: ElemSet) -> bool {
        self.minimals(s) == s
    }

    pub fn is_up_closed(&self, s: ElemSet) -> bool {
        s.iter().all(|p| self.up[p].is_subset(s))
    }

    pub fn is_down_closed(&self, s: ElemSet) -> bool {
        s.iter().all(|p| self.down[p].is_subset(s))
    }

    /// `s` is up-closed relative to the subposet `within`.
    pub fn is_up_closed_in(&self, s: ElemSet, within: ElemSet) -> bool {
        s.iter().all(|p| self.up[p].intersection(within).is_subset(s))
    }

    pub fn final_segment(&self, s: ElemSet) -> Result<FinalSegment> {
        self.check_set(s)?;
        if self.is_up_closed(s) {
            Ok(FinalSegment(s))
        } else {
            Err(Error::NotUpClosed(self.format_set(s)))
        }
    }

    pub fn initial_segment(&self, s: ElemSet) -> Result<InitialSegment> {
        self.check_set(s)?;
        if self.is_down_closed(s) {
            Ok(InitialSegment(s))
        } else {
            Err(Error::NotUpClosed(format!("complement of {}", self.format_set(s))))
        }
    }

    /// All subsets of `within` that are up-closed in the subposet `within`,
    /// sorted by numeric value.
    ///
    /// Elements are decided from the top down, so every partial assignment
    /// extends to at least one up-set and the search never backtracks
    /// without output.
    pub fn up_sets_within(&self, within: ElemSet, cap: usize) -> Result<Vec<ElemSet>> {
        let mut order: Vec<usize> = within.iter().collect();
        order.sort_by_key(|&p| self.up[p].intersection(within).len());
        let strict_up: Vec<ElemSet> = order.iter().map(|&p| self.up[p].intersection(within).without(p)).collect();
        let mut out = Vec::new();
        let mut stack = vec![(0usize, ElemSet::EMPTY)];
        while let Some((depth, current)) = stack.pop() {
            if depth == order.len() {
                if out.len() == cap {
                    return Err(Error::EnumerationOverflow { cap });
                }
                out.push(current);
                continue;
            }
            stack.push((depth + 1, current));
            if strict_up[depth].is_subset(current) {
                stack.push((depth + 1, current.with(order[depth])));
            }
        }
        out.sort_unstable();
        Ok(out)
    }

    /// All final segments, sorted.
    pub fn final_segments(&self, cap: usize) -> Result<Vec<FinalSegment>> {
        Ok(self.up_sets_within(self.all(), cap)?.into_iter().map(FinalSegment).collect())
    }

    /// All initial segments, sorted.
    pub fn initial_segments(&self, cap: usize) -> Result<Vec<InitialSegment>> {
        let all = self.all();
        let mut v: Vec<InitialSegment> =
            self.up_sets_within(all, cap)?.into_iter().map(|u| InitialSegment(all.difference(u))).collect();
        v.sort_unstable();
        Ok(v)
    }

    /// Strict comparable pairs `(p, q)` with `p < q`.
    pub fn strict_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.len()).flat_map(move |p| self.up[p].without(p).iter().map(move |q| (p, q)))
    }

    /// Covering pairs `(p, q)`: `p < q` with nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        self.strict_pairs()
            .filter(|&(p, q)| {
                let between = self.up[p].intersection(self.down[q]).without(p).without(q);
                between.is_empty()
            })
            .collect()
    }

    /// Returns a pair without a common upper bound, if any.
    pub fn directedness_witness(&self) -> Option<(usize, usize)> {
        for p in 0..self.len() {
            for q in p + 1..self.len() {
                if self.up[p].is_disjoint(self.up[q]) {
                    return Some((p, q));
                }
            }
        }
        None
    }

    pub fn is_directed(&self) -> bool {
        self.directedness_witness().is_none()
    }

    /// The greatest element, if there is one.
    pub fn top(&self) -> Option<usize> {
        (0..self.len()).find(|&p| self.down[p] == self.all())
    }

    /// The least element, if there is one.
    pub fn bottom(&self) -> Option<usize> {
        (0..self.len()).find(|&p| self.up[p] == self.all())
    }

    /// The induced subposet on `members`, with the map from new ids to old ids.
    pub fn subposet(&self, members: ElemSet) -> (Poset, Vec<usize>) {
        let ids: Vec<usize> = members.iter().collect();
        let names = ids.iter().map(|&p| self.names[p].clone()).collect();
        let up = ids
            .iter()
            .map(|&p| ids.iter().enumerate().filter(|&(_, &q)| self.leq(p, q)).map(|(j, _)| j).collect())
            .collect();
        (Poset::from_closed_rows(&format!("{}|sub", self.name), names, up), ids)
    }

    /// Every maximal chain, listed bottom-up along covering pairs.
    pub fn maximal_chains(&self) -> Vec<Vec<usize>> {
        let covers = self.covers();
        let mut out = Vec::new();
        let mut stack: Vec<Vec<usize>> = self.minimals(self.all()).iter().map(|m| vec![m]).collect();
        while let Some(chain) = stack.pop() {
            let last = *chain.last().expect("chains are nonempty");
            let next: Vec<usize> = covers.iter().filter(|&&(p, _)| p == last).map(|&(_, q)| q).collect();
            if next.is_empty() {
                out.push(chain);
                continue;
            }
            for q in next {
                let mut longer = chain.clone();
                longer.push(q);
                stack.push(longer);
            }
        }
        out.sort();
        out
    }

    /// A topological linearization; ties among available minimal elements
    /// are broken by a seeded RNG.
    pub fn linear_augmentation(&self, seed: u64) -> LinearAugmentation {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = self.len();
        let mut placed = ElemSet::EMPTY;
        let mut order = Vec::with_capacity(n);
        while order.len() < n {
            let available: Vec<usize> =
                (0..n).filter(|&p| !placed.contains(p) && self.down[p].without(p).is_subset(placed)).collect();
            let &next = available.choose(&mut rng).expect("acyclic order always has a minimal element");
            placed.insert(next);
            order.push(next);
        }
        let mut position = vec![0; n];
        for (i, &p) in order.iter().enumerate() {
            position[p] = i;
        }
        let names = order.iter().map(|&p| self.names[p].clone()).collect();
        let up = (0..n).map(|i| ElemSet::full(n).difference(ElemSet::full(i))).collect();
        let chain = Poset::from_closed_rows(&format!("lin({})", self.name), names, up);
        LinearAugmentation { order, position, chain }
    }

    /// Display helper: `{a,b}` with element names in id order.
    pub fn format_set(&self, s: ElemSet) -> String {
        let parts: Vec<&str> = s.iter().map(|p| self.names[p].as_str()).collect();
        format!("{{{}}}", parts.join(","))
    }

    pub fn set_names(&self, s: ElemSet) -> Vec<String> {
        s.iter().map(|p| self.names[p].clone()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(p: &Poset, names: &[&str]) -> ElemSet {
        p.ids_of(names).unwrap()
    }

    #[test]
    fn build_closes_and_rejects_cycles() {
        let v = Poset::build("V3", &["a", "b", "c"], &[("a", "c"), ("b", "c")]).unwrap();
        assert!(v.leq(0, 2) && v.leq(1, 2));
        assert!(v.incomparable(0, 1));

        let err = Poset::build("bad", &["0", "1"], &[("0", "1"), ("1", "0")]).unwrap_err();
        assert!(matches!(err, Error::Cycle(_, _)));

        let c = Poset::build("c", &["0", "1", "2"], &[("0", "1"), ("1", "2")]).unwrap();
        assert!(c.leq(0, 2));
        assert!(!c.try_incomparable(0, 2).unwrap());

        let dup = Poset::build("d", &["a", "a"], &[]).unwrap_err();
        assert_eq!(dup, Error::DuplicateName("a".into()));
        let unk = Poset::build("u", &["a"], &[("a", "z")]).unwrap_err();
        assert_eq!(unk, Error::UnknownElement("z".into()));
        assert!(v.try_leq(0, 9).is_err());
    }

    #[test]
    fn upsets_and_minimals() {
        let v = v3();
        assert_eq!(v.upset(set(&v, &["a"])).unwrap().set(), set(&v, &["a", "c"]));
        assert_eq!(v.minimals(set(&v, &["a", "c"])), set(&v, &["a"]));
        assert_eq!(v.upset(ElemSet::EMPTY).unwrap().set(), ElemSet::EMPTY);
        assert!(v.upset(ElemSet::singleton(7)).is_err());
        assert_eq!(v.maximals(v.all()), set(&v, &["c"]));
    }

    #[test]
    fn segment_counts() {
        assert_eq!(chain(2).initial_segments(DEFAULT_ENUM_CAP).unwrap().len(), 3);
        let v = v3();
        let is: Vec<ElemSet> = v.initial_segments(DEFAULT_ENUM_CAP).unwrap().into_iter().map(|s| s.set()).collect();
        let mut expected = vec![ElemSet::EMPTY, set(&v, &["a"]), set(&v, &["b"]), set(&v, &["a", "b"]), v.all()];
        expected.sort();
        assert_eq!(is, expected);
        assert_eq!(antichain(3).initial_segments(DEFAULT_ENUM_CAP).unwrap().len(), 8);
        assert!(matches!(antichain(10).final_segments(100), Err(Error::EnumerationOverflow { cap: 100 })));
    }

    #[test]
    fn up_sets_match_subset_scan() {
        for seed in 0..20 {
            let p = random_poset(9, 0.3, seed).unwrap();
            let brute: Vec<ElemSet> = (0u128..1 << 9).map(ElemSet::from_bits).filter(|&s| p.is_up_closed(s)).collect();
            let fast: Vec<ElemSet> = p.final_segments(DEFAULT_ENUM_CAP).unwrap().into_iter().map(|s| s.set()).collect();
            assert_eq!(brute, fast);
            let within = ElemSet::from_bits(0b1_0110_1101);
            let brute_in: Vec<ElemSet> = (0u128..1 << 9)
                .map(ElemSet::from_bits)
                .filter(|&s| s.is_subset(within) && p.is_up_closed_in(s, within))
                .collect();
            assert_eq!(brute_in, p.up_sets_within(within, DEFAULT_ENUM_CAP).unwrap());
        }
    }

    #[test]
    fn linear_augmentation_extends_order() {
        let v = v3();
        let aug = v.linear_augmentation(7);
        assert_eq!(*aug.order.last().unwrap(), 2);
        assert_eq!(chain(4).linear_augmentation(3).order, vec![0, 1, 2, 3]);
        let a = antichain(2);
        assert_eq!(a.linear_augmentation(11).order, a.linear_augmentation(11).order);
        for seed in 0..10 {
            let p = random_poset(10, 0.25, seed).unwrap();
            let aug = p.linear_augmentation(seed);
            for (x, y) in p.strict_pairs() {
                assert!(aug.position[x] < aug.position[y]);
                assert!(aug.chain.lt(aug.position[x], aug.position[y]));
            }
        }
    }

    #[test]
    fn directedness_and_top() {
        assert!(v3().is_directed());
        assert_eq!(v3().top(), Some(2));
        assert_eq!(antichain(2).directedness_witness(), Some((0, 1)));
        assert_eq!(chain(3).bottom(), Some(0));
    }

    #[test]
    fn maximal_chains() {
        assert_eq!(v3().maximal_chains(), vec![vec![0, 2], vec![1, 2]]);
        assert_eq!(chain(3).maximal_chains(), vec![vec![0, 1, 2]]);
        assert_eq!(antichain(2).maximal_chains(), vec![vec![0], vec![1]]);
    }

    #[test]
    fn subposet_keeps_order() {
        let v = v3();
        let (q, ids) = v.subposet(set(&v, &["a", "c"]));
        assert_eq!(ids, vec![0, 2]);
        assert!(q.lt(0, 1));
        assert_eq!(q.names(), &["a".to_string(), "c".to_string()]);
    }
}
