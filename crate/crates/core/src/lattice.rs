//! The meet-semilattice `Π(P)` of generator products and the lattice
//! `L(P)` of their finite joins.
//!
//! A product `x_σ` is kept as the antichain `min σ`. A join is kept as a
//! set of products with dominated ones removed. Because products are join
//! prime, `Σ x_σi ≤ Σ x_τj` holds iff every `x_σi` lies below some
//! `x_τj`, which makes the pruned term set a canonical form.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraElem, FreeAlgebra};
use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::miners::antichains;
use crate::poset::Poset;
use crate::stone::{Clopen, StoneSpace};

/// Whether enumerations include the empty product `1`.
///
/// The empty join `0` is never enumerated; it exists only as the
/// representation of an empty term set.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LatticeMode {
    #[default]
    Inclusive,
    Strict,
}

/// `x_σ` with `σ` an antichain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ProductTerm(ElemSet);

impl ProductTerm {
    pub fn sigma(self) -> ElemSet {
        self.0
    }

    pub fn is_unit(self) -> bool {
        self.0.is_empty()
    }

    pub fn to_algebra(self, alg: &FreeAlgebra) -> Result<AlgebraElem> {
        alg.product_of(self.0)
    }

    pub fn format(self, poset: &Poset) -> String {
        if self.0.is_empty() {
            "1".to_string()
        } else {
            format!("x{}", poset.format_set(self.0))
        }
    }
}

/// Canonical product over `sigma`: its minimal elements.
pub fn product_term(poset: &Poset, sigma: ElemSet) -> Result<ProductTerm> {
    if !sigma.is_subset(poset.all()) {
        let bad = sigma.difference(poset.all()).first().unwrap_or(0);
        return Err(Error::UnknownElement(format!("#{bad}")));
    }
    Ok(ProductTerm(poset.minimals(sigma)))
}

/// `x_σ ≤ x_τ` iff every element of `τ` lies above some element of `σ`.
pub fn pi_leq(poset: &Poset, s: ProductTerm, t: ProductTerm) -> bool {
    t.0.is_subset(poset.up_closure(s.0))
}

/// A finite join of products, with dominated products pruned.
#[derive(Clone)]
pub struct LatticeElem {
    poset: Arc<Poset>,
    terms: Vec<ProductTerm>,
}

impl PartialEq for LatticeElem {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && (Arc::ptr_eq(&self.poset, &other.poset) || *self.poset == *other.poset)
    }
}

impl Eq for LatticeElem {}

impl Hash for LatticeElem {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

fn prune(poset: &Poset, mut terms: Vec<ProductTerm>) -> Vec<ProductTerm> {
    terms.sort_unstable();
    terms.dedup();
    let keep: Vec<bool> = terms.iter().map(|&t| !terms.iter().any(|&u| u != t && pi_leq(poset, t, u))).collect();
    terms.into_iter().zip(keep).filter(|&(_, k)| k).map(|(t, _)| t).collect()
}

/// Canonical join of the products over the given sets.
pub fn l_elem(poset: &Arc<Poset>, sigmas: impl IntoIterator<Item = ElemSet>) -> Result<LatticeElem> {
    let terms = sigmas.into_iter().map(|s| product_term(poset, s)).collect::<Result<Vec<_>>>()?;
    Ok(LatticeElem { poset: poset.clone(), terms: prune(poset, terms) })
}

fn same_poset(a: &LatticeElem, b: &LatticeElem) -> Result<()> {
    if Arc::ptr_eq(&a.poset, &b.poset) || *a.poset == *b.poset {
        Ok(())
    } else {
        Err(Error::PosetMismatch)
    }
}

pub fn l_leq(a: &LatticeElem, b: &LatticeElem) -> Result<bool> {
    same_poset(a, b)?;
    Ok(a.terms.iter().all(|&s| b.terms.iter().any(|&t| pi_leq(&a.poset, s, t))))
}

pub fn l_join(a: &LatticeElem, b: &LatticeElem) -> Result<LatticeElem> {
    same_poset(a, b)?;
    let terms = a.terms.iter().chain(&b.terms).copied().collect();
    Ok(LatticeElem { poset: a.poset.clone(), terms: prune(&a.poset, terms) })
}

pub fn l_meet(a: &LatticeElem, b: &LatticeElem) -> Result<LatticeElem> {
    same_poset(a, b)?;
    let p = &a.poset;
    let terms =
        a.terms.iter().flat_map(|s| b.terms.iter().map(move |t| ProductTerm(p.minimals(s.0.union(t.0))))).collect();
    Ok(LatticeElem { poset: p.clone(), terms: prune(p, terms) })
}

impl LatticeElem {
    pub fn poset(&self) -> &Arc<Poset> {
        &self.poset
    }

    pub fn terms(&self) -> &[ProductTerm] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].is_unit()
    }

    /// Largest product size among the terms.
    pub fn degree(&self) -> usize {
        self.terms.iter().map(|t| t.0.len()).max().unwrap_or(0)
    }

    pub fn to_algebra(&self, alg: &FreeAlgebra) -> Result<AlgebraElem> {
        if **alg.poset() != *self.poset {
            return Err(Error::PosetMismatch);
        }
        self.terms.iter().try_fold(alg.zero(), |acc, t| acc.join(&t.to_algebra(alg)?))
    }

    /// Union of the product denotations.
    pub fn denote(&self, space: &StoneSpace) -> Clopen {
        let empty = Clopen::empty(space.len());
        self.terms.iter().fold(empty, |acc, t| acc.union(&space.product_denotation(t.0, ElemSet::EMPTY)))
    }

    /// Terms as sorted lists of element names.
    pub fn term_names(&self) -> Vec<Vec<String>> {
        self.terms
            .iter()
            .map(|t| {
                let mut v = self.poset.set_names(t.0);
                v.sort();
                v
            })
            .collect()
    }
}

impl fmt::Display for LatticeElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut parts: Vec<String> = self.terms.iter().map(|t| t.format(&self.poset)).collect();
        parts.sort();
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for LatticeElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LatticeElem({self})")
    }
}

/// Reads an algebra element back as a lattice element, if it is one.
///
/// Members of `L(P)` and `0` are exactly the elements whose truth table
/// is monotone in the trace. The terms are then the minimal true traces.
pub fn to_lattice_elem(e: &AlgebraElem) -> Option<LatticeElem> {
    let r = e.support_reduce();
    let p = r.poset();
    let traces = r.traces();
    let truth: Vec<bool> = {
        let mut t = vec![false; traces.len()];
        for u in r.true_traces() {
            t[traces.binary_search(&u).expect("true trace is a trace")] = true;
        }
        t
    };
    let support = r.support();
    for (i, &u) in traces.iter().enumerate() {
        if !truth[i] {
            continue;
        }
        for s in support.difference(u) {
            if let Ok(j) = traces.binary_search(&u.with(s)) {
                if !truth[j] {
                    return None;
                }
            }
        }
    }
    let is_true = |u: ElemSet| traces.binary_search(&u).is_ok_and(|j| truth[j]);
    let minimal_true = traces
        .iter()
        .filter(|&&u| is_true(u) && u.iter().all(|s| !is_true(u.without(s))))
        .map(|&u| ProductTerm(p.minimals(u)));
    Some(LatticeElem { poset: p.clone(), terms: prune(p, minimal_true.collect()) })
}

/// Elements of `Π(P)` as canonical products.
pub fn enumerate_pi(poset: &Poset, mode: LatticeMode, cap: usize) -> Result<Vec<ProductTerm>> {
    let all = antichains(poset.len(), |a, b| poset.leq(a, b), cap)?;
    Ok(all
        .into_iter()
        .map(|a| ProductTerm(a.into_iter().collect()))
        .filter(|t| mode == LatticeMode::Inclusive || !t.is_unit())
        .collect())
}

/// Elements of `L(P)`: the nonempty `Π`-antichains, as canonical joins.
pub fn enumerate_l(poset: &Arc<Poset>, mode: LatticeMode, cap: usize) -> Result<Vec<LatticeElem>> {
    let pi = enumerate_pi(poset, mode, cap)?;
    let joins = antichains(pi.len(), |a, b| pi_leq(poset, pi[a], pi[b]), cap)?;
    let mut out: Vec<LatticeElem> = joins
        .into_iter()
        .filter(|j| !j.is_empty())
        .map(|j| {
            let mut terms: Vec<ProductTerm> = j.into_iter().map(|i| pi[i]).collect();
            terms.sort_unstable();
            LatticeElem { poset: poset.clone(), terms }
        })
        .collect();
    out.sort_by(|a, b| a.terms.cmp(&b.terms));
    Ok(out)
}

/// `L_n(P)`: joins of products with at most `n` factors each.
pub fn stratum(poset: &Arc<Poset>, n: usize, mode: LatticeMode, cap: usize) -> Result<Vec<LatticeElem>> {
    Ok(enumerate_l(poset, mode, cap)?.into_iter().filter(|e| e.degree() <= n).collect())
}

/// Least family containing `gens` and closed under meet and join.
pub fn lattice_closure(gens: &[AlgebraElem], cap: usize) -> Result<Vec<AlgebraElem>> {
    let mut all: Vec<AlgebraElem> = Vec::new();
    let mut buckets: HashMap<Vec<u64>, Vec<usize>> = HashMap::new();
    let mut insert = |e: AlgebraElem, all: &mut Vec<AlgebraElem>| -> Result<bool> {
        let bucket = buckets.entry(e.fingerprint()).or_default();
        for &i in bucket.iter() {
            if all[i].equals(&e)? {
                return Ok(false);
            }
        }
        if all.len() == cap {
            return Err(Error::ClosureOverflow { cap });
        }
        bucket.push(all.len());
        all.push(e);
        Ok(true)
    };
    let mut frontier = Vec::new();
    for g in gens {
        if insert(g.clone(), &mut all)? {
            frontier.push(all.len() - 1);
        }
    }
    while !frontier.is_empty() {
        let known = all.len();
        let mut next = Vec::new();
        for &i in &frontier {
            for j in 0..known {
                for e in [all[i].meet(&all[j])?, all[i].join(&all[j])?] {
                    if insert(e, &mut all)? {
                        next.push(all.len() - 1);
                    }
                }
            }
        }
        frontier = next;
    }
    Ok(all)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SegmentIsoReport {
    pub initial_segments: usize,
    pub products: usize,
    pub holds: bool,
    /// A pair of initial segments on which the correspondence fails.
    pub counterexample: Option<(Vec<String>, Vec<String>)>,
}

/// Checks that `I ↦ x_σ`, with `σ` the minimal elements of `P \ I`, is
/// an order isomorphism from initial segments onto `Π(P)` (unit included).
/// The order on products is read from final-segment denotations.
pub fn is_iso_is_to_pi(poset: &Poset, cap: usize) -> Result<SegmentIsoReport> {
    let segments = poset.initial_segments(cap)?;
    let pi = enumerate_pi(poset, LatticeMode::Inclusive, cap)?;
    let space = StoneSpace::new(Arc::new(poset.clone()), cap)?;
    let image: Vec<ProductTerm> =
        segments.iter().map(|i| ProductTerm(poset.minimals(poset.all().difference(i.set())))).collect();
    let denote: Vec<Clopen> = image.iter().map(|t| space.product_denotation(t.0, ElemSet::EMPTY)).collect();
    let names = |i: usize| poset.set_names(segments[i].set());
    let mut sorted = image.clone();
    sorted.sort_unstable();
    sorted.dedup();
    let mut pi_sorted = pi.clone();
    pi_sorted.sort_unstable();
    let mut report = SegmentIsoReport {
        initial_segments: segments.len(),
        products: pi.len(),
        holds: sorted == pi_sorted && sorted.len() == segments.len(),
        counterexample: None,
    };
    if !report.holds {
        return Ok(report);
    }
    for a in 0..segments.len() {
        for b in 0..segments.len() {
            let subset = segments[a].set().is_subset(segments[b].set());
            if subset != denote[a].is_subset(&denote[b]) {
                report.holds = false;
                report.counterexample = Some((names(a), names(b)));
                return Ok(report);
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::{antichain, chain, rado_prefix, random_poset, v3, DEFAULT_ENUM_CAP};

    const CAP: usize = DEFAULT_ENUM_CAP;

    fn arc(p: Poset) -> Arc<Poset> {
        Arc::new(p)
    }

    #[test]
    fn product_terms() {
        let p = v3();
        let t = product_term(&p, p.ids_of(&["a", "c"]).unwrap()).unwrap();
        assert_eq!(t.sigma(), p.ids_of(&["a"]).unwrap());
        let ab = product_term(&p, p.ids_of(&["a", "b"]).unwrap()).unwrap();
        let c = product_term(&p, p.ids_of(&["c"]).unwrap()).unwrap();
        let (a, b) =
            (product_term(&p, ElemSet::singleton(0)).unwrap(), product_term(&p, ElemSet::singleton(1)).unwrap());
        assert!(pi_leq(&p, ab, c));
        assert!(!pi_leq(&p, a, b) && !pi_leq(&p, b, a));
        assert!(product_term(&p, ElemSet::singleton(7)).is_err());
    }

    #[test]
    fn join_meet_order() {
        let p = arc(v3());
        let a = l_elem(&p, [ElemSet::singleton(0)]).unwrap();
        let b = l_elem(&p, [ElemSet::singleton(1)]).unwrap();
        let c = l_elem(&p, [ElemSet::singleton(2)]).unwrap();
        let ab = l_join(&a, &b).unwrap();
        assert_eq!(ab.terms().len(), 2);
        assert_eq!(ab.to_string(), "x{a} + x{b}");
        assert!(l_leq(&ab, &c).unwrap());
        assert!(!l_leq(&c, &ab).unwrap());
        assert_eq!(l_meet(&a, &b).unwrap().to_string(), "x{a,b}");
        assert_eq!(l_meet(&a, &l_join(&a, &b).unwrap()).unwrap(), a);
        assert_eq!(l_join(&a, &c).unwrap(), c);
        let zero = l_elem(&p, []).unwrap();
        assert_eq!(zero.to_string(), "0");
        assert_eq!(l_elem(&p, [ElemSet::EMPTY, ElemSet::singleton(0)]).unwrap().to_string(), "1");
        let other = l_elem(&arc(chain(1)), [ElemSet::singleton(0)]).unwrap();
        assert_eq!(l_leq(&a, &other).unwrap_err(), Error::PosetMismatch);
    }

    #[test]
    fn enumeration_examples() {
        let p = arc(v3());
        let pi: Vec<String> =
            enumerate_pi(&p, LatticeMode::Inclusive, CAP).unwrap().iter().map(|t| t.format(&p)).collect();
        assert_eq!(pi.len(), 5);
        for s in ["1", "x{a}", "x{b}", "x{c}", "x{a,b}"] {
            assert!(pi.contains(&s.to_string()));
        }
        assert_eq!(enumerate_l(&p, LatticeMode::Inclusive, CAP).unwrap().len(), 6);
        assert_eq!(enumerate_l(&p, LatticeMode::Strict, CAP).unwrap().len(), 5);
        let c = arc(chain(3));
        let l: Vec<String> =
            enumerate_l(&c, LatticeMode::Inclusive, CAP).unwrap().iter().map(|e| e.to_string()).collect();
        assert_eq!(l, vec!["1", "x{0}", "x{1}", "x{2}"]);
    }

    #[test]
    fn strata_increase_to_l() {
        let p = arc(random_poset(5, 0.2, 7).unwrap());
        let l = enumerate_l(&p, LatticeMode::Inclusive, CAP).unwrap();
        let mut prev = 0;
        for n in 0..=p.len() {
            let s = stratum(&p, n, LatticeMode::Inclusive, CAP).unwrap();
            assert!(s.len() >= prev);
            assert!(s.iter().all(|e| l.contains(e)));
            prev = s.len();
        }
        assert_eq!(prev, l.len());
    }

    #[test]
    fn algebra_roundtrip() {
        let p = arc(random_poset(5, 0.3, 1).unwrap());
        let alg = FreeAlgebra::new(p.clone());
        for e in enumerate_l(&p, LatticeMode::Inclusive, CAP).unwrap() {
            let back = to_lattice_elem(&e.to_algebra(&alg).unwrap()).unwrap();
            assert_eq!(back, e);
        }
        assert!(to_lattice_elem(&alg.gen(0).unwrap().complement()).is_none());
        assert!(to_lattice_elem(&alg.zero()).unwrap().is_zero());
    }

    #[test]
    fn closure_examples() {
        let p = arc(v3());
        let alg = FreeAlgebra::new(p.clone());
        let gens = vec![alg.gen(0).unwrap(), alg.gen(1).unwrap()];
        let closure = lattice_closure(&gens, 100).unwrap();
        let shown: Vec<String> = closure.iter().map(|e| to_lattice_elem(e).unwrap().to_string()).collect();
        assert_eq!(shown, vec!["x{a}", "x{b}", "x{a,b}", "x{a} + x{b}"]);
        assert_eq!(lattice_closure(&gens[..1], 100).unwrap().len(), 1);
        let c = FreeAlgebra::of(chain(3));
        let gens: Vec<AlgebraElem> = (0..3).map(|i| c.gen(i).unwrap()).collect();
        assert_eq!(lattice_closure(&gens, 100).unwrap().len(), 3);
        let anti = FreeAlgebra::of(antichain(4));
        let gens: Vec<AlgebraElem> = (0..4).map(|i| anti.gen(i).unwrap()).collect();
        assert!(matches!(lattice_closure(&gens, 20), Err(Error::ClosureOverflow { cap: 20 })));
    }

    #[test]
    fn segment_iso() {
        let r = is_iso_is_to_pi(&v3(), CAP).unwrap();
        assert!(r.holds);
        assert_eq!((r.initial_segments, r.products), (5, 5));
        let c = is_iso_is_to_pi(&chain(4), CAP).unwrap();
        assert!(c.holds && c.products == 5);
        assert!(is_iso_is_to_pi(&rado_prefix(3).unwrap(), CAP).unwrap().holds);
    }
}
