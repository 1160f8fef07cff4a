//! Elements of the free Boolean algebra over a finite poset.
//!
//! An element is stored as a finite support `S` together with its truth
//! value on every up-closed subset of `S`. Those are exactly the traces
//! `R ∩ S` of final segments `R` of the whole poset: a final segment
//! restricted to `S` is up-closed in `S`, and every up-closed `T ⊆ S` is
//! the trace of the final segment generated by `T`. Equality is therefore
//! decided by comparing tables on a common support.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::poset::{FinalSegment, Poset};

/// Default bound on the size of a support before trace enumeration refuses.
pub const DEFAULT_SUPPORT_CAP: usize = 20;

/// A finite Boolean algebra, as needed by homomorphism machinery.
///
/// Operations are fallible because free-algebra elements may outgrow their
/// support cap.
pub trait BooleanAlgebra {
    type Elem: Clone + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn meet(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;
    fn join(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;
    fn complement(&self, a: &Self::Elem) -> Result<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> Result<bool>;
    fn equals(&self, a: &Self::Elem, b: &Self::Elem) -> Result<bool>;

    fn leq(&self, a: &Self::Elem, b: &Self::Elem) -> Result<bool> {
        self.is_zero(&self.meet(a, &self.complement(b)?)?)
    }

    fn meet_all<'a, I>(&self, items: I) -> Result<Self::Elem>
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        items.into_iter().try_fold(self.one(), |acc, x| self.meet(&acc, x))
    }

    fn join_all<'a, I>(&self, items: I) -> Result<Self::Elem>
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        items.into_iter().try_fold(self.zero(), |acc, x| self.join(&acc, x))
    }
}

/// Handle for `F(P)`.
#[derive(Clone, Debug)]
pub struct FreeAlgebra {
    poset: Arc<Poset>,
    support_cap: usize,
}

/// A conjunction of generators and negated generators:
/// `(∏_{p ∈ pos} x_p) · (∏_{q ∈ neg} -x_q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ElementaryProduct {
    pub pos: ElemSet,
    pub neg: ElemSet,
}

/// An element of `F(P)`.
#[derive(Clone)]
pub struct AlgebraElem {
    poset: Arc<Poset>,
    support_cap: usize,
    support: ElemSet,
    /// Up-sets of `support`, sorted.
    traces: Arc<Vec<ElemSet>>,
    truth: Vec<u64>,
}

fn bit(words: &[u64], i: usize) -> bool {
    words[i / 64] >> (i % 64) & 1 == 1
}

fn bits_from(values: impl ExactSizeIterator<Item = bool>) -> Vec<u64> {
    let mut words = vec![0u64; values.len().div_ceil(64)];
    for (i, v) in values.enumerate() {
        if v {
            words[i / 64] |= 1 << (i % 64);
        }
    }
    words
}

fn same_poset(a: &Arc<Poset>, b: &Arc<Poset>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl FreeAlgebra {
    pub fn new(poset: Arc<Poset>) -> Self {
        FreeAlgebra { poset, support_cap: DEFAULT_SUPPORT_CAP }
    }

    pub fn of(poset: Poset) -> Self {
        Self::new(Arc::new(poset))
    }

    pub fn with_support_cap(mut self, cap: usize) -> Self {
        self.support_cap = cap;
        self
    }

    pub fn poset(&self) -> &Arc<Poset> {
        &self.poset
    }

    fn tabulate(&self, support: ElemSet, f: impl Fn(ElemSet) -> bool) -> Result<AlgebraElem> {
        AlgebraElem::tabulate(&self.poset, self.support_cap, support, f)
    }

    /// The generator `x_p`.
    pub fn gen(&self, p: usize) -> Result<AlgebraElem> {
        if p >= self.poset.len() {
            return Err(Error::UnknownElement(format!("#{p}")));
        }
        self.tabulate(ElemSet::singleton(p), |t| t.contains(p))
    }

    pub fn gen_named(&self, name: &str) -> Result<AlgebraElem> {
        self.gen(self.poset.id_of(name)?)
    }

    pub fn zero(&self) -> AlgebraElem {
        self.constant(false)
    }

    pub fn one(&self) -> AlgebraElem {
        self.constant(true)
    }

    fn constant(&self, value: bool) -> AlgebraElem {
        AlgebraElem {
            poset: self.poset.clone(),
            support_cap: self.support_cap,
            support: ElemSet::EMPTY,
            traces: Arc::new(vec![ElemSet::EMPTY]),
            truth: vec![value as u64],
        }
    }

    /// `(∏_{p ∈ pos} x_p) · (∏_{q ∈ neg} -x_q)`, evaluated semantically.
    pub fn elementary_product(&self, pos: ElemSet, neg: ElemSet) -> Result<AlgebraElem> {
        self.check_set(pos.union(neg))?;
        self.tabulate(pos.union(neg), |t| pos.is_subset(t) && t.is_disjoint(neg))
    }

    /// Zero test by the order criterion alone: some `p ∈ pos` lies below
    /// some `q ∈ neg`. No evaluation takes place.
    pub fn is_zero_syntactic(&self, pos: ElemSet, neg: ElemSet) -> Result<bool> {
        self.check_set(pos.union(neg))?;
        Ok(!self.poset.up_closure(pos).is_disjoint(neg))
    }

    /// `x_σ = ∏_{p ∈ σ} x_p`.
    pub fn product_of(&self, sigma: ElemSet) -> Result<AlgebraElem> {
        self.elementary_product(sigma, ElemSet::EMPTY)
    }

    /// The element true exactly at the given final segments (full support).
    pub fn from_final_segments(&self, points: &[FinalSegment]) -> Result<AlgebraElem> {
        let mut want: Vec<ElemSet> = points.iter().map(|r| r.set()).collect();
        want.sort_unstable();
        self.tabulate(self.poset.all(), |t| want.binary_search(&t).is_ok())
    }

    /// One atom per final segment `R`: `∏_{p ∈ R} x_p · ∏_{q ∉ R} -x_q`.
    pub fn atoms(&self) -> Result<Vec<AlgebraElem>> {
        let points = self.poset.final_segments(1 << self.support_cap)?;
        points.iter().map(|&r| self.from_final_segments(&[r])).collect()
    }

    /// Every element of the algebra, as full-support tables. Refuses when
    /// there are more than `max_points` final segments.
    pub fn all_elements(&self, max_points: usize) -> Result<Vec<AlgebraElem>> {
        let all = self.poset.all();
        if all.len() > self.support_cap {
            return Err(Error::SupportLimit { size: all.len(), cap: self.support_cap });
        }
        let traces = Arc::new(self.poset.up_sets_within(all, max_points)?);
        let n = traces.len();
        Ok((0u64..1 << n)
            .map(|mask| AlgebraElem {
                poset: self.poset.clone(),
                support_cap: self.support_cap,
                support: all,
                traces: traces.clone(),
                truth: bits_from((0..n).map(|i| mask >> i & 1 == 1)),
            })
            .collect())
    }

    fn check_set(&self, s: ElemSet) -> Result<()> {
        if s.is_subset(self.poset.all()) {
            Ok(())
        } else {
            Err(Error::UnknownElement(format!("#{}", s.last().unwrap_or(0))))
        }
    }

    fn check_elem(&self, e: &AlgebraElem) -> Result<()> {
        if same_poset(&self.poset, &e.poset) {
            Ok(())
        } else {
            Err(Error::PosetMismatch)
        }
    }
}

impl BooleanAlgebra for FreeAlgebra {
    type Elem = AlgebraElem;

    fn zero(&self) -> AlgebraElem {
        FreeAlgebra::zero(self)
    }

    fn one(&self) -> AlgebraElem {
        FreeAlgebra::one(self)
    }

    fn meet(&self, a: &AlgebraElem, b: &AlgebraElem) -> Result<AlgebraElem> {
        self.check_elem(a)?;
        a.meet(b)
    }

    fn join(&self, a: &AlgebraElem, b: &AlgebraElem) -> Result<AlgebraElem> {
        self.check_elem(a)?;
        a.join(b)
    }

    fn complement(&self, a: &AlgebraElem) -> Result<AlgebraElem> {
        self.check_elem(a)?;
        Ok(a.complement())
    }

    fn is_zero(&self, a: &AlgebraElem) -> Result<bool> {
        self.check_elem(a)?;
        Ok(a.is_zero())
    }

    fn equals(&self, a: &AlgebraElem, b: &AlgebraElem) -> Result<bool> {
        self.check_elem(a)?;
        a.equals(b)
    }

    fn leq(&self, a: &AlgebraElem, b: &AlgebraElem) -> Result<bool> {
        self.check_elem(a)?;
        a.leq(b)
    }
}

impl AlgebraElem {
    fn tabulate(poset: &Arc<Poset>, support_cap: usize, support: ElemSet, f: impl Fn(ElemSet) -> bool) -> Result<Self> {
        if support.len() > support_cap {
            return Err(Error::SupportLimit { size: support.len(), cap: support_cap });
        }
        let traces = poset.up_sets_within(support, usize::MAX)?;
        let truth = bits_from(traces.iter().map(|&t| f(t)));
        Ok(AlgebraElem { poset: poset.clone(), support_cap, support, traces: Arc::new(traces), truth })
    }

    pub fn poset(&self) -> &Arc<Poset> {
        &self.poset
    }

    pub fn algebra(&self) -> FreeAlgebra {
        FreeAlgebra { poset: self.poset.clone(), support_cap: self.support_cap }
    }

    pub fn support(&self) -> ElemSet {
        self.support
    }

    /// The up-sets of the support, in table order.
    pub fn traces(&self) -> &[ElemSet] {
        &self.traces
    }

    /// Traces at which the element is true.
    pub fn true_traces(&self) -> impl Iterator<Item = ElemSet> + '_ {
        self.traces.iter().enumerate().filter(|&(i, _)| bit(&self.truth, i)).map(|(_, &t)| t)
    }

    /// Truth at a set whose restriction to the support is up-closed there.
    fn at(&self, r: ElemSet) -> bool {
        let t = r.intersection(self.support);
        let i = self.traces.binary_search(&t).expect("restriction of an up-set is a trace");
        bit(&self.truth, i)
    }

    /// Value at a final segment of the underlying poset.
    pub fn eval(&self, r: FinalSegment) -> bool {
        self.at(r.set())
    }

    /// Value at an arbitrary set, which must be up-closed in the poset.
    pub fn eval_set(&self, r: ElemSet) -> Result<bool> {
        Ok(self.eval(self.poset.final_segment(r)?))
    }

    fn combine(&self, other: &Self, op: impl Fn(bool, bool) -> bool) -> Result<Self> {
        if !same_poset(&self.poset, &other.poset) {
            return Err(Error::PosetMismatch);
        }
        if self.support == other.support {
            let truth = bits_from((0..self.traces.len()).map(|i| op(bit(&self.truth, i), bit(&other.truth, i))));
            return Ok(AlgebraElem { truth, ..self.clone() });
        }
        let support = self.support.union(other.support);
        AlgebraElem::tabulate(&self.poset, self.support_cap, support, |t| op(self.at(t), other.at(t)))
    }

    pub fn meet(&self, other: &Self) -> Result<Self> {
        self.combine(other, |a, b| a && b)
    }

    pub fn join(&self, other: &Self) -> Result<Self> {
        self.combine(other, |a, b| a || b)
    }

    /// `self · -other`.
    pub fn minus(&self, other: &Self) -> Result<Self> {
        self.combine(other, |a, b| a && !b)
    }

    pub fn complement(&self) -> Self {
        let n = self.traces.len();
        let truth = bits_from((0..n).map(|i| !bit(&self.truth, i)));
        AlgebraElem { truth, ..self.clone() }
    }

    pub fn is_zero(&self) -> bool {
        self.truth.iter().all(|&w| w == 0)
    }

    pub fn is_one(&self) -> bool {
        self.complement().is_zero()
    }

    pub fn equals(&self, other: &Self) -> Result<bool> {
        Ok(self.combine(other, |a, b| a != b)?.is_zero())
    }

    pub fn leq(&self, other: &Self) -> Result<bool> {
        Ok(self.minus(other)?.is_zero())
    }

    /// Whether `s` can be dropped from the support: the table agrees on
    /// every pair of traces `U`, `U ∪ {s}` that are both up-closed.
    fn removable(&self, s: usize) -> bool {
        self.traces.iter().enumerate().all(|(i, &t)| {
            if t.contains(s) {
                return true;
            }
            match self.traces.binary_search(&t.with(s)) {
                Ok(j) => bit(&self.truth, i) == bit(&self.truth, j),
                Err(_) => true,
            }
        })
    }

    /// Drops support elements the table does not depend on, scanning in
    /// ascending id order until nothing more can be removed.
    pub fn support_reduce(&self) -> Self {
        let mut current = self.clone();
        loop {
            let mut changed = false;
            for s in current.support.iter() {
                if !current.removable(s) {
                    continue;
                }
                let old = current.clone();
                let support = old.support.without(s);
                // either V or V ∪ {s} is a trace of the old support
                current = AlgebraElem::tabulate(&old.poset, old.support_cap, support, |v| {
                    match old.traces.binary_search(&v) {
                        Ok(i) => bit(&old.truth, i),
                        Err(_) => old.at(v.with(s)),
                    }
                })
                .expect("a smaller support stays within the cap");
                changed = true;
            }
            if !changed {
                return current;
            }
        }
    }

    /// Disjunctive normal form over the reduced support: one product per
    /// true trace `U`, with positive part `min U` and negative part
    /// `max (S \ U)`. The products are pairwise disjoint and none is
    /// syntactically zero.
    pub fn to_dnf(&self) -> Vec<ElementaryProduct> {
        let reduced = self.support_reduce();
        let s = reduced.support;
        let p = &reduced.poset;
        let mut out: Vec<ElementaryProduct> = reduced
            .true_traces()
            .map(|u| ElementaryProduct { pos: p.minimals(u), neg: p.maximals(s.difference(u)) })
            .collect();
        out.sort_unstable();
        out
    }

    /// A semantic invariant usable as a hash key: values at the empty
    /// segment, the whole poset, and every principal final segment.
    pub fn fingerprint(&self) -> Vec<u64> {
        let n = self.poset.len();
        let mut points = vec![ElemSet::EMPTY, self.poset.all()];
        points.extend((0..n).map(|p| self.poset.above(p)));
        bits_from(points.into_iter().map(|r| self.at(r)).collect::<Vec<_>>().into_iter())
    }

    /// Human-readable DNF, e.g. `x{a}*-x{c} + x{b}`.
    pub fn to_dnf_string(&self) -> String {
        format_dnf(&self.poset, &self.to_dnf())
    }
}

impl fmt::Debug for AlgebraElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgebraElem({})", self.to_dnf_string())
    }
}

impl fmt::Display for AlgebraElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_dnf_string())
    }
}

impl ElementaryProduct {
    pub fn format(&self, poset: &Poset) -> String {
        let mut parts = Vec::new();
        if !self.pos.is_empty() {
            parts.push(format!("x{}", poset.format_set(self.pos)));
        }
        for q in self.neg {
            parts.push(format!("-x{{{}}}", poset.element_name(q)));
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

pub fn format_dnf(poset: &Poset, products: &[ElementaryProduct]) -> String {
    if products.is_empty() {
        return "0".to_string();
    }
    products.iter().map(|t| t.format(poset)).collect::<Vec<_>>().join(" + ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::{antichain, chain, random_poset, v3};

    fn v3_alg() -> FreeAlgebra {
        FreeAlgebra::of(v3())
    }

    fn ids(alg: &FreeAlgebra, names: &[&str]) -> ElemSet {
        alg.poset().ids_of(names).unwrap()
    }

    /// Final segments of V3 where the element holds, as name lists.
    fn denotation(e: &AlgebraElem) -> Vec<ElemSet> {
        let p = e.poset();
        (0u128..1 << p.len()).map(ElemSet::from_bits).filter(|&r| p.is_up_closed(r) && e.eval_set(r).unwrap()).collect()
    }

    #[test]
    fn generators_denote_principal_sets() {
        let alg = v3_alg();
        let a = alg.gen_named("a").unwrap();
        assert_eq!(denotation(&a), vec![ids(&alg, &["a", "c"]), ids(&alg, &["a", "b", "c"])]);
        assert!(denotation(&alg.zero()).is_empty());
        assert_eq!(denotation(&alg.one()).len(), 5);
        assert!(alg.gen(3).is_err());
    }

    #[test]
    fn meet_table_and_laws() {
        let alg = v3_alg();
        let (a, b, c) = (alg.gen(0).unwrap(), alg.gen(1).unwrap(), alg.gen(2).unwrap());
        let ab = a.meet(&b).unwrap();
        assert_eq!(ab.support(), ids(&alg, &["a", "b"]));
        assert_eq!(ab.true_traces().collect::<Vec<_>>(), vec![ids(&alg, &["a", "b"])]);
        assert!(alg.one().complement().equals(&alg.zero()).unwrap());
        assert!(a.join(&a.complement()).unwrap().is_one());
        assert!(a.meet(&c).unwrap().equals(&a).unwrap());
        assert!(alg.zero().leq(&ab).unwrap());
        let a_not_b = a.meet(&b.complement()).unwrap();
        assert!(!a_not_b.is_zero());
        assert_eq!(denotation(&a_not_b), vec![ids(&alg, &["a", "c"])]);
    }

    #[test]
    fn order_embedding_of_generators() {
        for seed in 0..8 {
            let p = random_poset(7, 0.3, seed).unwrap();
            let alg = FreeAlgebra::of(p.clone());
            for x in 0..p.len() {
                for y in 0..p.len() {
                    let (gx, gy) = (alg.gen(x).unwrap(), alg.gen(y).unwrap());
                    assert_eq!(gx.leq(&gy).unwrap(), p.leq(x, y));
                    assert_eq!(gx.equals(&gy).unwrap(), x == y);
                }
            }
        }
    }

    #[test]
    fn elementary_products() {
        let alg = v3_alg();
        assert!(alg.is_zero_syntactic(ids(&alg, &["a", "b"]), ids(&alg, &["c"])).unwrap());
        let e = alg.elementary_product(ids(&alg, &["a"]), ids(&alg, &["b"])).unwrap();
        assert!(!alg.is_zero_syntactic(ids(&alg, &["a"]), ids(&alg, &["b"])).unwrap());
        assert_eq!(denotation(&e), vec![ids(&alg, &["a", "c"])]);
        let empty = alg.elementary_product(ElemSet::EMPTY, ElemSet::EMPTY).unwrap();
        assert!(empty.is_one());
        assert!(!alg.is_zero_syntactic(ElemSet::EMPTY, ElemSet::EMPTY).unwrap());
        assert!(alg.elementary_product(ElemSet::singleton(5), ElemSet::EMPTY).is_err());
    }

    #[test]
    fn dnf_examples() {
        let alg = v3_alg();
        let a = alg.gen_named("a").unwrap();
        assert_eq!(a.to_dnf(), vec![ElementaryProduct { pos: ids(&alg, &["a"]), neg: ElemSet::EMPTY }]);
        assert!(alg.zero().to_dnf().is_empty());
        let not_c = alg.gen_named("c").unwrap().complement();
        assert_eq!(not_c.to_dnf(), vec![ElementaryProduct { pos: ElemSet::EMPTY, neg: ids(&alg, &["c"]) }]);
        assert_eq!(not_c.to_string(), "-x{c}");
        assert_eq!(alg.one().to_string(), "1");
        assert_eq!(alg.zero().to_string(), "0");
    }

    #[test]
    fn support_reduce_examples() {
        let alg = v3_alg();
        let a = alg.gen_named("a").unwrap();
        let ac = a.meet(&alg.gen_named("c").unwrap()).unwrap();
        let r = ac.support_reduce();
        assert_eq!(r.support(), ids(&alg, &["a"]));
        assert!(r.equals(&ac).unwrap());
        let one_a = a.join(&a.complement()).unwrap();
        assert_eq!(one_a.support(), ids(&alg, &["a"]));
        assert_eq!(one_a.support_reduce().support(), ElemSet::EMPTY);
        assert_eq!(a.support_reduce().support(), a.support());
    }

    #[test]
    fn poset_mismatch() {
        let a = FreeAlgebra::of(chain(2)).gen(0).unwrap();
        let b = FreeAlgebra::of(antichain(2)).gen(0).unwrap();
        assert_eq!(a.meet(&b).unwrap_err(), Error::PosetMismatch);
        assert_eq!(a.equals(&b).unwrap_err(), Error::PosetMismatch);
    }

    #[test]
    fn support_cap() {
        let alg = FreeAlgebra::of(antichain(6)).with_support_cap(3);
        let e = alg.product_of(ElemSet::full(3)).unwrap();
        let f = alg.gen(4).unwrap();
        assert!(matches!(e.meet(&f), Err(Error::SupportLimit { size: 4, cap: 3 })));
    }

    #[test]
    fn all_elements_count() {
        let alg = v3_alg();
        assert_eq!(alg.all_elements(16).unwrap().len(), 32);
        assert_eq!(alg.atoms().unwrap().len(), 5);
        let total = alg.atoms().unwrap().iter().try_fold(alg.zero(), |acc, x| acc.join(x)).unwrap();
        assert!(total.is_one());
    }
}
