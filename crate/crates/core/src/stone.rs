//! Brute-force final-segment semantics.
//!
//! `FS(P)` is enumerated directly and every element of `F(P)` is read as a
//! set of final segments, with `x_p` denoting `V_p = {R : p ∈ R}`. This
//! is the reference every symbolic decision in the crate is checked
//! against, so it deliberately shares no enumeration code with the
//! algebra module.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{AlgebraElem, BooleanAlgebra};
use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::morphisms::extend_hom;
use crate::poset::{chain, FinalSegment, Poset};

/// Default cap on explicit subalgebra closures.
pub const DEFAULT_CLOSURE_CAP: usize = 1 << 16;

/// Above this size final segments are enumerated through antichains
/// instead of a full subset scan.
const SUBSET_SCAN_LIMIT: usize = 20;

/// A subset of the points of some finite space, as a bitset.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Clopen {
    bits: Vec<u64>,
    len: usize,
}

impl Clopen {
    pub fn empty(len: usize) -> Self {
        Clopen { bits: vec![0; len.div_ceil(64)], len }
    }

    pub fn full(len: usize) -> Self {
        let mut c = Clopen::empty(len);
        for i in 0..len {
            c.insert(i);
        }
        c
    }

    pub fn from_fn(len: usize, mut f: impl FnMut(usize) -> bool) -> Self {
        let mut c = Clopen::empty(len);
        for i in (0..len).filter(|&i| f(i)).collect::<Vec<_>>() {
            c.insert(i);
        }
        c
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn contains(&self, i: usize) -> bool {
        self.bits[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        assert!(i < self.len);
        self.bits[i / 64] |= 1 << (i % 64);
    }

    pub fn count(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(|&i| self.contains(i))
    }

    fn zip(&self, other: &Self, f: impl Fn(u64, u64) -> u64) -> Self {
        assert_eq!(self.len, other.len, "clopens over different spaces");
        let bits = self.bits.iter().zip(&other.bits).map(|(&a, &b)| f(a, b)).collect();
        Clopen { bits, len: self.len }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a & b)
    }

    pub fn union(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a | b)
    }

    pub fn complement(&self) -> Self {
        let mut c = Clopen { bits: self.bits.iter().map(|w| !w).collect(), len: self.len };
        if !self.len.is_multiple_of(64) {
            let last = c.bits.len() - 1;
            c.bits[last] &= (1u64 << (self.len % 64)) - 1;
        }
        c
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.bits.iter().zip(&other.bits).all(|(&a, &b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.bits.iter().zip(&other.bits).all(|(&a, &b)| a & b == 0)
    }
}

/// The power-set algebra of a finite set of points.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SetAlgebra {
    pub points: usize,
}

impl BooleanAlgebra for SetAlgebra {
    type Elem = Clopen;

    fn zero(&self) -> Clopen {
        Clopen::empty(self.points)
    }

    fn one(&self) -> Clopen {
        Clopen::full(self.points)
    }

    fn meet(&self, a: &Clopen, b: &Clopen) -> Result<Clopen> {
        Ok(a.intersection(b))
    }

    fn join(&self, a: &Clopen, b: &Clopen) -> Result<Clopen> {
        Ok(a.union(b))
    }

    fn complement(&self, a: &Clopen) -> Result<Clopen> {
        Ok(a.complement())
    }

    fn is_zero(&self, a: &Clopen) -> Result<bool> {
        Ok(a.is_empty())
    }

    fn equals(&self, a: &Clopen, b: &Clopen) -> Result<bool> {
        Ok(a == b)
    }

    fn leq(&self, a: &Clopen, b: &Clopen) -> Result<bool> {
        Ok(a.is_subset(b))
    }
}

impl SetAlgebra {
    /// Number of atoms of the subalgebra generated by `gens`: points are
    /// grouped by which generators contain them.
    pub fn generated_atoms(&self, gens: &[Clopen]) -> usize {
        let signatures: HashSet<Vec<bool>> =
            (0..self.points).map(|i| gens.iter().map(|g| g.contains(i)).collect()).collect();
        signatures.len()
    }

    /// `gens` generates the whole power set iff it separates every pair of points.
    pub fn generates(&self, gens: &[Clopen]) -> bool {
        self.generated_atoms(gens) == self.points
    }

    /// Least family containing `gens`, `∅` and the full set, closed under
    /// intersection, union and complement; computed as an explicit fixpoint.
    pub fn subalgebra_closure(&self, gens: &[Clopen], cap: usize) -> Result<Vec<Clopen>> {
        let mut seen: HashSet<Clopen> = HashSet::new();
        let mut all: Vec<Clopen> = Vec::new();
        let mut frontier: Vec<Clopen> = Vec::new();
        let add = |c: Clopen, seen: &mut HashSet<Clopen>, all: &mut Vec<Clopen>, frontier: &mut Vec<Clopen>| {
            if seen.insert(c.clone()) {
                if all.len() == cap {
                    return Err(Error::ClosureOverflow { cap });
                }
                all.push(c.clone());
                frontier.push(c);
            }
            Ok(())
        };
        for c in gens.iter().cloned().chain([self.zero(), self.one()]) {
            add(c, &mut seen, &mut all, &mut frontier)?;
        }
        while !frontier.is_empty() {
            let batch = std::mem::take(&mut frontier);
            let known = all.clone();
            for c in &batch {
                add(c.complement(), &mut seen, &mut all, &mut frontier)?;
                for d in &known {
                    add(c.intersection(d), &mut seen, &mut all, &mut frontier)?;
                    add(c.union(d), &mut seen, &mut all, &mut frontier)?;
                }
            }
        }
        all.sort();
        Ok(all)
    }
}

/// The space `FS(P)` of final segments.
#[derive(Clone, Debug)]
pub struct StoneSpace {
    poset: Arc<Poset>,
    points: Vec<FinalSegment>,
    index: HashMap<ElemSet, usize>,
}

impl StoneSpace {
    pub fn new(poset: Arc<Poset>, cap: usize) -> Result<Self> {
        let sets = if poset.len() <= SUBSET_SCAN_LIMIT {
            scan_up_sets(&poset, cap)?
        } else {
            up_sets_from_antichains(&poset, cap)?
        };
        let points: Vec<FinalSegment> =
            sets.into_iter().map(|s| poset.final_segment(s).expect("scanned sets are up-closed")).collect();
        let index = points.iter().enumerate().map(|(i, r)| (r.set(), i)).collect();
        Ok(StoneSpace { poset, points, index })
    }

    pub fn of(poset: &Poset) -> Result<Self> {
        Self::new(Arc::new(poset.clone()), crate::poset::DEFAULT_ENUM_CAP)
    }

    pub fn poset(&self) -> &Arc<Poset> {
        &self.poset
    }

    pub fn points(&self) -> &[FinalSegment] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn algebra(&self) -> SetAlgebra {
        SetAlgebra { points: self.points.len() }
    }

    pub fn point_index(&self, r: ElemSet) -> Option<usize> {
        self.index.get(&r).copied()
    }

    fn filter(&self, f: impl Fn(ElemSet) -> bool) -> Clopen {
        Clopen::from_fn(self.points.len(), |i| f(self.points[i].set()))
    }

    /// `V_p = {R : p ∈ R}`.
    pub fn v_set(&self, p: usize) -> Result<Clopen> {
        if p >= self.poset.len() {
            return Err(Error::UnknownElement(format!("#{p}")));
        }
        Ok(self.filter(|r| r.contains(p)))
    }

    /// `(⋂_{p ∈ pos} V_p) ∩ (⋂_{q ∈ neg} -V_q)`.
    pub fn product_denotation(&self, pos: ElemSet, neg: ElemSet) -> Clopen {
        self.filter(|r| pos.is_subset(r) && r.is_disjoint(neg))
    }

    /// Reads an algebra element as the set of points where it holds.
    pub fn denote(&self, e: &AlgebraElem) -> Result<Clopen> {
        if **e.poset() != *self.poset {
            return Err(Error::PosetMismatch);
        }
        Ok(Clopen::from_fn(self.points.len(), |i| e.eval(self.points[i])))
    }

    /// Interprets a term set-theoretically, starting from the `V_p`.
    pub fn denote_expr(&self, expr: &Expr) -> Result<Clopen> {
        expr.eval(&self.algebra(), &|name: &str| self.v_set(self.poset.id_of(name)?))
    }

    pub fn eval(e: &AlgebraElem, r: FinalSegment) -> bool {
        e.eval(r)
    }

    pub fn generates(&self, gens: &[Clopen]) -> bool {
        self.algebra().generates(gens)
    }

    pub fn subalgebra_closure(&self, gens: &[Clopen], cap: usize) -> Result<Vec<Clopen>> {
        self.algebra().subalgebra_closure(gens, cap)
    }

    /// Sorted list of points, each a sorted list of element names.
    pub fn clopen_to_names(&self, c: &Clopen) -> Vec<Vec<String>> {
        let mut out: Vec<Vec<String>> = c
            .iter()
            .map(|i| {
                let mut names = self.poset.set_names(self.points[i].set());
                names.sort();
                names
            })
            .collect();
        out.sort();
        out
    }
}

fn scan_up_sets(p: &Poset, cap: usize) -> Result<Vec<ElemSet>> {
    let n = p.len();
    let mut out = Vec::new();
    for bits in 0u128..1 << n {
        let s = ElemSet::from_bits(bits);
        if s.iter().all(|x| p.above(x).is_subset(s)) {
            if out.len() == cap {
                return Err(Error::EnumerationOverflow { cap });
            }
            out.push(s);
        }
    }
    Ok(out)
}

/// Every up-set is generated by the antichain of its minimal elements.
fn up_sets_from_antichains(p: &Poset, cap: usize) -> Result<Vec<ElemSet>> {
    let n = p.len();
    let mut out = Vec::new();
    let mut stack = vec![(0usize, ElemSet::EMPTY)];
    while let Some((next, chosen)) = stack.pop() {
        if next == n {
            if out.len() == cap {
                return Err(Error::EnumerationOverflow { cap });
            }
            out.push(p.up_closure(chosen));
            continue;
        }
        stack.push((next + 1, chosen));
        if chosen.iter().all(|c| p.incomparable(c, next)) {
            stack.push((next + 1, chosen.with(next)));
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// A member of the family `{V_p} ∪ {-V_p}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SubbaseMember {
    Pos(usize),
    Neg(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubfamilyScan {
    Exhaustive,
    Sampled { samples: usize, seed: u64 },
}

impl SubfamilyScan {
    /// Exhaustive up to five elements, 10 000 seeded samples above.
    pub fn default_for(n: usize, seed: u64) -> Self {
        if n <= 5 {
            SubfamilyScan::Exhaustive
        } else {
            SubfamilyScan::Sampled { samples: 10_000, seed }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BinarySubbaseReport {
    pub subfamilies_checked: usize,
    pub violation: Option<Vec<SubbaseMember>>,
}

impl BinarySubbaseReport {
    pub fn holds(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks that `{V_p} ∪ {-V_p}` is a binary closed subbase of `FS(P)`:
/// any subfamily with empty intersection has two disjoint members.
pub fn check_binary_subbase(poset: &Poset, scan: SubfamilyScan) -> Result<BinarySubbaseReport> {
    let n = poset.len();
    if 2 * n > 64 {
        return Err(Error::SizeLimit { size: n, cap: 32 });
    }
    let space = StoneSpace::of(poset)?;
    let mut members: Vec<Clopen> = (0..n).map(|p| space.v_set(p)).collect::<Result<_>>()?;
    members.extend((0..n).map(|p| members[p].complement()).collect::<Vec<_>>());
    let m = members.len();
    let disjoint: Vec<u64> = (0..m)
        .map(|i| (0..m).filter(|&j| members[i].is_disjoint(&members[j])).fold(0, |acc, j| acc | 1 << j))
        .collect();
    let decode = |mask: u64| -> Vec<SubbaseMember> {
        (0..m)
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| if i < n { SubbaseMember::Pos(i) } else { SubbaseMember::Neg(i - n) })
            .collect()
    };
    let check = |mask: u64| -> bool {
        let mut inter = Clopen::full(space.len());
        for i in (0..m).filter(|&i| mask >> i & 1 == 1) {
            inter = inter.intersection(&members[i]);
        }
        if !inter.is_empty() {
            return true;
        }
        (0..m).any(|i| mask >> i & 1 == 1 && disjoint[i] & mask != 0)
    };
    let mut checked = 0;
    match scan {
        SubfamilyScan::Exhaustive => {
            if m > 24 {
                return Err(Error::EnumerationOverflow { cap: 1 << 24 });
            }
            for mask in 0u64..1 << m {
                checked += 1;
                if !check(mask) {
                    return Ok(BinarySubbaseReport { subfamilies_checked: checked, violation: Some(decode(mask)) });
                }
            }
        }
        SubfamilyScan::Sampled { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..samples {
                let k = rng.random_range(0..=m);
                let mask = sample(&mut rng, m, k).iter().fold(0u64, |acc, i| acc | 1 << i);
                checked += 1;
                if !check(mask) {
                    return Ok(BinarySubbaseReport { subfamilies_checked: checked, violation: Some(decode(mask)) });
                }
            }
        }
    }
    Ok(BinarySubbaseReport { subfamilies_checked: checked, violation: None })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntervalAlgebraReport {
    pub chain_len: usize,
    /// Atoms of the subalgebra of `P(L)` generated by the rays `[a, →)`.
    pub interval_atoms: usize,
    /// Final segments of `L` minus its minimum, i.e. atoms of its poset algebra.
    pub poset_algebra_atoms: usize,
    pub hom_injective: bool,
    pub image_is_interval_algebra: bool,
    pub isomorphic: bool,
}

/// Compares the interval algebra of the chain `0 < .. < n-1` with the
/// poset algebra of the chain minus its minimum.
///
/// The comparison map sends `x_a` to the complement of the ray `[a, →)`,
/// which is order-preserving in `a`; complementing generators does not
/// change the generated subalgebra.
pub fn interval_algebra_check(n: usize) -> Result<IntervalAlgebraReport> {
    if n == 0 {
        return Err(Error::PremiseFailed("interval algebra needs a nonempty chain".into()));
    }
    let points = SetAlgebra { points: n };
    let rays: Vec<Clopen> = (0..n).map(|a| Clopen::from_fn(n, |x| x >= a)).collect();
    let interval_atoms = points.generated_atoms(&rays);

    let rest = chain(n - 1);
    let rest_space = StoneSpace::of(&rest)?;
    let images: Vec<Clopen> = (0..n - 1).map(|i| rays[i + 1].complement()).collect();
    let hom = extend_hom(Arc::new(rest.clone()), points, images.clone())?;
    let hom_injective = hom.is_injective()?;
    let image_is_interval_algebra = points.generated_atoms(&images) == interval_atoms
        && images.iter().all(|c| rays.iter().any(|r| *r == c.complement()));
    let isomorphic = hom_injective && image_is_interval_algebra && interval_atoms == rest_space.len();
    Ok(IntervalAlgebraReport {
        chain_len: n,
        interval_atoms,
        poset_algebra_atoms: rest_space.len(),
        hom_injective,
        image_is_interval_algebra,
        isomorphic,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FreeAlgebra;
    use crate::poset::{antichain, random_poset, v3};

    fn names(space: &StoneSpace, c: &Clopen) -> Vec<Vec<String>> {
        space.clopen_to_names(c)
    }

    fn nl(v: &[&[&str]]) -> Vec<Vec<String>> {
        let mut out: Vec<Vec<String>> = v.iter().map(|s| s.iter().map(|x| x.to_string()).collect()).collect();
        out.sort();
        out
    }

    #[test]
    fn point_counts() {
        assert_eq!(StoneSpace::of(&chain(3)).unwrap().len(), 4);
        let v = StoneSpace::of(&v3()).unwrap();
        assert_eq!(v.len(), 5);
        let all = Clopen::full(5);
        assert_eq!(names(&v, &all), nl(&[&[], &["c"], &["a", "c"], &["b", "c"], &["a", "b", "c"]]));
        assert_eq!(StoneSpace::of(&antichain(6)).unwrap().len(), 64);
    }

    #[test]
    fn antichain_route_matches_scan() {
        for seed in 0..10 {
            let p = random_poset(12, 0.2, seed).unwrap();
            assert_eq!(scan_up_sets(&p, usize::MAX).unwrap(), up_sets_from_antichains(&p, usize::MAX).unwrap());
        }
        let big = random_poset(26, 0.3, 1).unwrap();
        let s = StoneSpace::of(&big).unwrap();
        assert_eq!(s.len(), big.final_segments(usize::MAX).unwrap().len());
    }

    #[test]
    fn v_sets_and_denotation() {
        let v = StoneSpace::of(&v3()).unwrap();
        let vc = v.v_set(2).unwrap();
        assert_eq!(names(&v, &vc), nl(&[&["c"], &["a", "c"], &["b", "c"], &["a", "b", "c"]]));
        let alg = FreeAlgebra::new(v.poset().clone());
        let ab = alg.gen(0).unwrap().meet(&alg.gen(1).unwrap()).unwrap();
        assert_eq!(names(&v, &v.denote(&ab).unwrap()), nl(&[&["a", "b", "c"]]));
        assert!(v.denote(&alg.one()).unwrap() == Clopen::full(5));
        let e = Expr::parse("x(a) & x(b)").unwrap();
        assert_eq!(v.denote_expr(&e).unwrap(), v.denote(&ab).unwrap());
        assert!(v.v_set(3).is_err());
        let other = FreeAlgebra::of(chain(2)).gen(0).unwrap();
        assert_eq!(v.denote(&other).unwrap_err(), Error::PosetMismatch);
    }

    #[test]
    fn v_set_order_embedding() {
        for seed in 0..5 {
            let p = random_poset(8, 0.3, seed).unwrap();
            let s = StoneSpace::of(&p).unwrap();
            for a in 0..8 {
                for b in 0..8 {
                    assert_eq!(s.v_set(a).unwrap().is_subset(&s.v_set(b).unwrap()), p.leq(a, b));
                }
            }
        }
    }

    #[test]
    fn closure_examples() {
        let v = StoneSpace::of(&v3()).unwrap();
        let va = v.v_set(0).unwrap();
        let c1 = v.subalgebra_closure(std::slice::from_ref(&va), DEFAULT_CLOSURE_CAP).unwrap();
        assert_eq!(c1.len(), 4);
        assert!(c1.contains(&va.complement()));
        let gens: Vec<Clopen> = (0..3).map(|p| v.v_set(p).unwrap()).collect();
        assert_eq!(v.subalgebra_closure(&gens, DEFAULT_CLOSURE_CAP).unwrap().len(), 32);
        assert!(v.generates(&gens));
        let c0 = v.subalgebra_closure(&[], DEFAULT_CLOSURE_CAP).unwrap();
        assert_eq!(c0, vec![Clopen::empty(5), Clopen::full(5)]);
        assert!(matches!(v.subalgebra_closure(&gens, 10), Err(Error::ClosureOverflow { cap: 10 })));
    }

    #[test]
    fn closure_size_is_power_of_generated_atoms() {
        let s = StoneSpace::of(&random_poset(5, 0.3, 4).unwrap()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..20 {
            let k = rng.random_range(0..4);
            let gens: Vec<Clopen> = (0..k).map(|_| Clopen::from_fn(s.len(), |_| rng.random_bool(0.5))).collect();
            let closure = s.subalgebra_closure(&gens, DEFAULT_CLOSURE_CAP).unwrap();
            assert_eq!(closure.len(), 1 << s.algebra().generated_atoms(&gens));
            // idempotent
            assert_eq!(s.subalgebra_closure(&closure, DEFAULT_CLOSURE_CAP).unwrap(), closure);
        }
    }

    #[test]
    fn binary_subbase_examples() {
        let v = StoneSpace::of(&v3()).unwrap();
        let (va, vb, vc) = (v.v_set(0).unwrap(), v.v_set(1).unwrap(), v.v_set(2).unwrap());
        assert!(va.intersection(&vb).intersection(&vc.complement()).is_empty());
        assert!(va.is_disjoint(&vc.complement()));
        for p in [v3(), antichain(2), chain(2), random_poset(5, 0.4, 2).unwrap()] {
            let r = check_binary_subbase(&p, SubfamilyScan::Exhaustive).unwrap();
            assert!(r.holds());
            assert_eq!(r.subfamilies_checked, 1 << (2 * p.len()));
        }
        let r = check_binary_subbase(&random_poset(7, 0.3, 1).unwrap(), SubfamilyScan::default_for(7, 3)).unwrap();
        assert!(r.holds());
        assert_eq!(r.subfamilies_checked, 10_000);
    }

    #[test]
    fn interval_algebra() {
        let one = interval_algebra_check(1).unwrap();
        assert!(one.isomorphic);
        assert_eq!(one.interval_atoms, 1);
        let three = interval_algebra_check(3).unwrap();
        assert_eq!((three.interval_atoms, three.poset_algebra_atoms), (3, 3));
        assert!(three.isomorphic);
        assert!(interval_algebra_check(5).unwrap().isomorphic);
        assert!(interval_algebra_check(0).is_err());
    }
}
