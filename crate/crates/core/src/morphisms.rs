//! Homomorphisms out of `F(P)` and the constructions built from them.
//!
//! [`extend_hom`] realizes the universal property: any order-preserving
//! map from `P` into a Boolean algebra extends to a homomorphism on
//! `F(P)`, evaluated here by pushing the disjunctive normal form through
//! the target's operations. Every other construction in this module is
//! an instance, checked against final-segment semantics.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{AlgebraElem, BooleanAlgebra, FreeAlgebra};
use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::lattice::{enumerate_l, enumerate_pi, l_elem, l_leq, to_lattice_elem, LatticeElem, LatticeMode};
use crate::poset::{lex_sum_with_blocks, product, FinalSegment, LinearAugmentation, Poset, DEFAULT_ENUM_CAP};
use crate::stone::{Clopen, SetAlgebra, StoneSpace};

/// Largest number of final segments for which homomorphism laws are
/// checked over all pairs of elements.
pub const EXHAUSTIVE_PAIR_POINTS: usize = 8;
/// Largest number of final segments for which every element is checked
/// against its atom decomposition.
pub const EXHAUSTIVE_ELEMENT_POINTS: usize = 16;

/// A homomorphism `F(P) → target`, determined by the generator images.
#[derive(Clone, Debug)]
pub struct Hom<A: BooleanAlgebra> {
    source: Arc<Poset>,
    target: A,
    gen_image: Vec<A::Elem>,
}

/// Extends `p ↦ images[p]` to `F(P)`. The map must be order-preserving.
pub fn extend_hom<A: BooleanAlgebra>(source: Arc<Poset>, target: A, images: Vec<A::Elem>) -> Result<Hom<A>> {
    if images.len() != source.len() {
        return Err(Error::PremiseFailed(format!("{} generator images for {} elements", images.len(), source.len())));
    }
    for (p, q) in source.strict_pairs() {
        if !target.leq(&images[p], &images[q])? {
            return Err(Error::NotOrderPreserving(
                source.element_name(p).to_string(),
                source.element_name(q).to_string(),
            ));
        }
    }
    Ok(Hom { source, target, gen_image: images })
}

impl<A: BooleanAlgebra> Hom<A> {
    pub fn source(&self) -> &Arc<Poset> {
        &self.source
    }

    pub fn target(&self) -> &A {
        &self.target
    }

    pub fn gen_image(&self) -> &[A::Elem] {
        &self.gen_image
    }

    /// Image of `∏_{pos} x_p · ∏_{neg} -x_q`.
    pub fn apply_product(&self, pos: ElemSet, neg: ElemSet) -> Result<A::Elem> {
        let mut acc = self.target.one();
        for p in pos {
            acc = self.target.meet(&acc, &self.gen_image[p])?;
        }
        for q in neg {
            acc = self.target.meet(&acc, &self.target.complement(&self.gen_image[q])?)?;
        }
        Ok(acc)
    }

    pub fn apply(&self, e: &AlgebraElem) -> Result<A::Elem> {
        if **e.poset() != *self.source {
            return Err(Error::PosetMismatch);
        }
        let mut acc = self.target.zero();
        for t in e.to_dnf() {
            acc = self.target.join(&acc, &self.apply_product(t.pos, t.neg)?)?;
        }
        Ok(acc)
    }

    fn points(&self) -> Result<Vec<FinalSegment>> {
        self.source.final_segments(DEFAULT_ENUM_CAP)
    }

    /// Images of the atoms of `F(P)`, one per final segment `R`.
    pub fn atom_images(&self) -> Result<Vec<A::Elem>> {
        let all = self.source.all();
        self.points()?
            .into_iter()
            .map(|r| {
                let r = r.set();
                self.apply_product(self.source.minimals(r), self.source.maximals(all.difference(r)))
            })
            .collect()
    }

    /// A homomorphism out of a finite algebra is injective iff no atom
    /// is sent to zero.
    pub fn is_injective(&self) -> Result<bool> {
        for a in self.atom_images()? {
            if self.target.is_zero(&a)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Image of `e` computed from atoms instead of normal forms: the join
    /// of the atom images over the points where `e` holds.
    fn apply_by_atoms(&self, e: &AlgebraElem, points: &[FinalSegment], atoms: &[A::Elem]) -> Result<A::Elem> {
        let mut acc = self.target.zero();
        for (r, a) in points.iter().zip(atoms) {
            if e.eval(*r) {
                acc = self.target.join(&acc, a)?;
            }
        }
        Ok(acc)
    }

    /// Checks the defining equations: generators go to their images and
    /// meet, join and complement are preserved. Returns the first
    /// violated law.
    ///
    /// With at most [`EXHAUSTIVE_PAIR_POINTS`] final segments every pair
    /// of elements is checked. Up to [`EXHAUSTIVE_ELEMENT_POINTS`] every
    /// element is compared with its atom decomposition, which together
    /// with disjoint atom images joining to one characterizes a
    /// homomorphism. Beyond that the element check runs on `samples`
    /// seeded random elements.
    pub fn check_laws(&self, samples: usize, seed: u64) -> Result<Option<String>> {
        self.check_laws_within(samples, seed, EXHAUSTIVE_ELEMENT_POINTS)
    }

    /// [`Hom::check_laws`] with the element-wise exhaustive scan limited to
    /// `element_points` final segments.
    pub fn check_laws_within(&self, samples: usize, seed: u64, element_points: usize) -> Result<Option<String>> {
        let alg = FreeAlgebra::new(self.source.clone());
        let t = &self.target;
        for p in 0..self.source.len() {
            if !t.equals(&self.apply(&alg.gen(p)?)?, &self.gen_image[p])? {
                return Ok(Some(format!("generator {} not sent to its image", self.source.element_name(p))));
            }
        }
        let points = self.points()?;
        if points.len() <= EXHAUSTIVE_PAIR_POINTS {
            let elems = alg.all_elements(EXHAUSTIVE_PAIR_POINTS)?;
            let images = elems.iter().map(|e| self.apply(e)).collect::<Result<Vec<_>>>()?;
            // all_elements lists tables by mask, so index arithmetic is Boolean arithmetic
            let full = elems.len() - 1;
            for i in 0..elems.len() {
                if !t.equals(&images[full ^ i], &t.complement(&images[i])?)? {
                    return Ok(Some(format!("complement of {}", elems[i])));
                }
                for j in 0..elems.len() {
                    if !t.equals(&images[i & j], &t.meet(&images[i], &images[j])?)? {
                        return Ok(Some(format!("meet of {} and {}", elems[i], elems[j])));
                    }
                    if !t.equals(&images[i | j], &t.join(&images[i], &images[j])?)? {
                        return Ok(Some(format!("join of {} and {}", elems[i], elems[j])));
                    }
                }
            }
            return Ok(None);
        }
        let atoms = self.atom_images()?;
        for i in 0..atoms.len() {
            for j in i + 1..atoms.len() {
                if !t.is_zero(&t.meet(&atoms[i], &atoms[j])?)? {
                    return Ok(Some(format!("atom images {i} and {j} overlap")));
                }
            }
        }
        if !t.equals(&t.join_all(&atoms)?, &t.one())? {
            return Ok(Some("atom images do not join to one".into()));
        }
        let check = |e: &AlgebraElem| -> Result<Option<String>> {
            if !t.equals(&self.apply(e)?, &self.apply_by_atoms(e, &points, &atoms)?)? {
                return Ok(Some(format!("{e} differs from its atom decomposition")));
            }
            Ok(None)
        };
        if points.len() <= element_points.min(EXHAUSTIVE_ELEMENT_POINTS) {
            for mask in 0u64..1 << points.len() {
                let chosen: Vec<FinalSegment> =
                    (0..points.len()).filter(|&i| mask >> i & 1 == 1).map(|i| points[i]).collect();
                if let Some(v) = check(&alg.from_final_segments(&chosen)?)? {
                    return Ok(Some(v));
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..samples {
                let chosen: Vec<FinalSegment> = points.iter().copied().filter(|_| rng.random_bool(0.5)).collect();
                if let Some(v) = check(&alg.from_final_segments(&chosen)?)? {
                    return Ok(Some(v));
                }
            }
        }
        Ok(None)
    }

    /// Compares this map with the atom-defined homomorphism having the
    /// same generator images on every element (or on `samples` seeded
    /// elements when there are more than [`EXHAUSTIVE_ELEMENT_POINTS`]
    /// final segments). Agreement is the uniqueness half of the
    /// universal property.
    pub fn agrees_with_atom_route(&self, samples: usize, seed: u64) -> Result<bool> {
        let alg = FreeAlgebra::new(self.source.clone());
        let points = self.points()?;
        let atoms = self.atom_images()?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let masks: Vec<u64> = if points.len() <= EXHAUSTIVE_ELEMENT_POINTS {
            (0u64..1 << points.len()).collect()
        } else {
            (0..samples).map(|_| rng.random::<u64>()).collect()
        };
        for mask in masks {
            let chosen: Vec<FinalSegment> =
                (0..points.len()).filter(|&i| i < 64 && mask >> i & 1 == 1).map(|i| points[i]).collect();
            let e = alg.from_final_segments(&chosen)?;
            if !self.target.equals(&self.apply(&e)?, &self.apply_by_atoms(&e, &points, &atoms)?)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// The relative algebra `{b : b ≤ unit}` with complement `unit - b`.
#[derive(Clone, Debug)]
pub struct RelativeAlgebra {
    pub base: FreeAlgebra,
    pub unit: AlgebraElem,
}

impl BooleanAlgebra for RelativeAlgebra {
    type Elem = AlgebraElem;

    fn zero(&self) -> AlgebraElem {
        self.base.zero()
    }

    fn one(&self) -> AlgebraElem {
        self.unit.clone()
    }

    fn meet(&self, a: &AlgebraElem, b: &AlgebraElem) -> Result<AlgebraElem> {
        self.base.meet(a, b)
    }

    fn join(&self, a: &AlgebraElem, b: &AlgebraElem) -> Result<AlgebraElem> {
        self.base.join(a, b)
    }

    fn complement(&self, a: &AlgebraElem) -> Result<AlgebraElem> {
        self.unit.minus(a)
    }

    fn is_zero(&self, a: &AlgebraElem) -> Result<bool> {
        self.base.is_zero(a)
    }

    fn equals(&self, a: &AlgebraElem, b: &AlgebraElem) -> Result<bool> {
        self.base.equals(a, b)
    }
}

/// The embedding `F(Q) → F(P)` induced by an order embedding `Q → P`.
pub fn subposet_embedding(q: Arc<Poset>, p: Arc<Poset>, inclusion: &[usize]) -> Result<Hom<FreeAlgebra>> {
    if inclusion.len() != q.len() || inclusion.iter().any(|&i| i >= p.len()) {
        return Err(Error::NotAnEmbedding("inclusion does not map every element into the target".into()));
    }
    for a in 0..q.len() {
        for b in 0..q.len() {
            if q.leq(a, b) != p.leq(inclusion[a], inclusion[b]) || (a != b && inclusion[a] == inclusion[b]) {
                return Err(Error::NotAnEmbedding(format!(
                    "{} and {} are not related alike",
                    q.element_name(a),
                    q.element_name(b)
                )));
            }
        }
    }
    let alg = FreeAlgebra::new(p);
    let images = inclusion.iter().map(|&i| alg.gen(i)).collect::<Result<Vec<_>>>()?;
    extend_hom(q, alg, images)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RelativizeReport {
    pub element: String,
    /// Elements of `Q = {p : p ≱ q}`.
    pub kept: Vec<String>,
    pub source_atoms: usize,
    /// Final segments containing `q`, i.e. atoms below `x_q`.
    pub target_atoms: usize,
    pub injective: bool,
    pub onto: bool,
    pub unit_ok: bool,
    pub laws: Option<String>,
    pub bijective: bool,
}

/// `F(Q) → F(P)↾x_q`, `y ↦ y · x_q`, with `Q = {p ∈ P : p ≱ q}`.
pub fn relativize(p: Arc<Poset>, q: usize) -> Result<(Hom<RelativeAlgebra>, RelativizeReport)> {
    if q >= p.len() {
        return Err(Error::UnknownElement(format!("#{q}")));
    }
    let kept_set: ElemSet = (0..p.len()).filter(|&x| !p.leq(q, x)).collect();
    let (sub, ids) = p.subposet(kept_set);
    let base = FreeAlgebra::new(p.clone());
    let xq = base.gen(q)?;
    let target = RelativeAlgebra { base: base.clone(), unit: xq.clone() };
    let images = ids.iter().map(|&i| base.gen(i)?.meet(&xq)).collect::<Result<Vec<_>>>()?;
    let hom = extend_hom(Arc::new(sub), target, images)?;

    let atoms = hom.atom_images()?;
    let target_atoms = p.final_segments(DEFAULT_ENUM_CAP)?.iter().filter(|r| r.set().contains(q)).count();
    let mut injective = true;
    let mut disjoint = true;
    for (i, a) in atoms.iter().enumerate() {
        injective &= !a.is_zero() && a.leq(&xq)?;
        for b in &atoms[i + 1..] {
            disjoint &= a.meet(b)?.is_zero();
        }
    }
    let total = atoms.iter().try_fold(base.zero(), |acc, a| acc.join(a))?;
    let unit_ok = hom.apply(&FreeAlgebra::new(hom.source().clone()).one())?.equals(&xq)?;
    let onto = disjoint && total.equals(&xq)? && atoms.len() == target_atoms;
    // bijectivity already follows from the atom counts; the law scan is a cross-check
    let laws = hom.check_laws_within(256, q as u64, 12)?;
    let report = RelativizeReport {
        element: p.element_name(q).to_string(),
        kept: hom.source().names().to_vec(),
        source_atoms: atoms.len(),
        target_atoms,
        injective,
        onto,
        unit_ok,
        bijective: injective && onto && unit_ok && laws.is_none(),
        laws,
    };
    Ok((hom, report))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ChainEpiReport {
    pub surjective: bool,
    pub lattice_image_ok: bool,
    pub chain_lattice_ok: bool,
}

impl ChainEpiReport {
    pub fn holds(&self) -> bool {
        self.surjective && self.lattice_image_ok && self.chain_lattice_ok
    }
}

/// `F(P) → F(C)` sending `x_p` to the generator at `p`'s position in the
/// linear augmentation `C`.
pub fn chain_epimorphism(p: Arc<Poset>, aug: &LinearAugmentation) -> Result<Hom<FreeAlgebra>> {
    let target = FreeAlgebra::of(aug.chain.clone());
    let images = (0..p.len()).map(|x| target.gen(aug.position[x])).collect::<Result<Vec<_>>>()?;
    extend_hom(p, target, images)
}

/// Checks that the chain epimorphism is onto, carries `L(P)` onto `L(C)`,
/// and that `L(C)` is just the generators (plus `1` in inclusive mode).
pub fn check_chain_epimorphism(hom: &Hom<FreeAlgebra>, mode: LatticeMode, cap: usize) -> Result<ChainEpiReport> {
    let c = hom.target().poset().clone();
    let space = StoneSpace::new(c.clone(), cap)?;
    let gens = hom.gen_image().iter().map(|g| space.denote(g)).collect::<Result<Vec<_>>>()?;
    let surjective = space.generates(&gens);

    let source_l = enumerate_l(hom.source(), mode, cap)?;
    let alg = FreeAlgebra::new(hom.source().clone());
    let mut image: Vec<LatticeElem> = Vec::new();
    let mut lattice_image_ok = true;
    for e in &source_l {
        match to_lattice_elem(&hom.apply(&e.to_algebra(&alg)?)?) {
            Some(l) if !l.is_zero() => {
                if !image.contains(&l) {
                    image.push(l);
                }
            }
            _ => lattice_image_ok = false,
        }
    }
    let chain_l = enumerate_l(&c, mode, cap)?;
    lattice_image_ok &= image.len() == chain_l.len() && image.iter().all(|l| chain_l.contains(l));

    let mut expected: Vec<LatticeElem> =
        (0..c.len()).map(|i| l_elem(&c, [ElemSet::singleton(i)])).collect::<Result<_>>()?;
    if mode == LatticeMode::Inclusive {
        expected.push(l_elem(&c, [ElemSet::EMPTY])?);
    }
    let chain_lattice_ok = expected.len() == chain_l.len() && expected.iter().all(|l| chain_l.contains(l));
    Ok(ChainEpiReport { surjective, lattice_image_ok, chain_lattice_ok })
}

/// The map `E : L(P) × L(Q) → L(P × Q)` with `E(x_p, x_q) = x_(p,q)`.
pub struct EMap {
    p: Arc<Poset>,
    q: Arc<Poset>,
    pq: Arc<Poset>,
    target: FreeAlgebra,
    /// `f_q : F(P) → F(P×Q)`, `x_p ↦ x_(p,q)`, one per `q`.
    columns: Vec<Hom<FreeAlgebra>>,
}

impl EMap {
    pub fn new(p: Arc<Poset>, q: Arc<Poset>) -> Result<Self> {
        let pq = Arc::new(product(&p, &q)?);
        let target = FreeAlgebra::new(pq.clone());
        let nq = q.len();
        let columns = (0..nq)
            .map(|b| {
                let images = (0..p.len()).map(|a| target.gen(a * nq + b)).collect::<Result<Vec<_>>>()?;
                extend_hom(p.clone(), target.clone(), images)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(EMap { p, q, pq, target, columns })
    }

    pub fn product_poset(&self) -> &Arc<Poset> {
        &self.pq
    }

    pub fn target(&self) -> &FreeAlgebra {
        &self.target
    }

    /// `g_a : F(Q) → F(P×Q)`, `x_q ↦ f_q(a)`.
    pub fn row(&self, a: &LatticeElem) -> Result<Hom<FreeAlgebra>> {
        let a_alg = a.to_algebra(&FreeAlgebra::new(self.p.clone()))?;
        let images = self.columns.iter().map(|f| f.apply(&a_alg)).collect::<Result<Vec<_>>>()?;
        extend_hom(self.q.clone(), self.target.clone(), images)
    }

    /// `E(a, b) = g_a(b)`.
    pub fn eval(&self, a: &LatticeElem, b: &LatticeElem) -> Result<AlgebraElem> {
        self.row(a)?.apply(&b.to_algebra(&FreeAlgebra::new(self.q.clone()))?)
    }

    /// The same value written out as a lattice polynomial:
    /// `Σ_j ∏_{q ∈ τ_j} Σ_i ∏_{p ∈ σ_i} x_(p,q)`.
    pub fn eval_polynomial(&self, a: &LatticeElem, b: &LatticeElem) -> Result<AlgebraElem> {
        let nq = self.q.len();
        let t = &self.target;
        let mut outer = t.zero();
        for tau in b.terms() {
            let mut prod = t.one();
            for qq in tau.sigma() {
                let mut inner = t.zero();
                for sigma in a.terms() {
                    let ids: ElemSet = sigma.sigma().iter().map(|pp| pp * nq + qq).collect();
                    inner = inner.join(&t.product_of(ids)?)?;
                }
                prod = prod.meet(&inner)?;
            }
            outer = outer.join(&prod)?;
        }
        Ok(outer)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct EMapReport {
    pub pairs: usize,
    pub generator_equation: bool,
    pub polynomial_agrees: bool,
    pub second_argument_hom: bool,
    pub first_argument_hom: bool,
    pub monotone: bool,
    pub witness: Option<String>,
}

impl EMapReport {
    pub fn holds(&self) -> bool {
        self.generator_equation
            && self.polynomial_agrees
            && self.second_argument_hom
            && self.first_argument_hom
            && self.monotone
    }
}

/// Checks the four properties of `E` exhaustively over `L(P) × L(Q)`:
/// the generator equation, that `b ↦ E(a, b)` and `a ↦ E(a, x_q)` extend
/// to homomorphisms, and monotonicity in the first argument.
pub fn check_emap(p: Arc<Poset>, q: Arc<Poset>, cap: usize) -> Result<EMapReport> {
    let e = EMap::new(p.clone(), q.clone())?;
    let lp = enumerate_l(&p, LatticeMode::Inclusive, cap)?;
    let lq = enumerate_l(&q, LatticeMode::Inclusive, cap)?;
    let nq = q.len();
    let mut r = EMapReport {
        pairs: lp.len() * lq.len(),
        generator_equation: true,
        polynomial_agrees: true,
        second_argument_hom: true,
        first_argument_hom: true,
        monotone: true,
        witness: None,
    };
    let fail = |r: &mut EMapReport, msg: String| {
        if r.witness.is_none() {
            r.witness = Some(msg);
        }
    };
    let gen_p: Vec<LatticeElem> = (0..p.len()).map(|a| l_elem(&p, [ElemSet::singleton(a)])).collect::<Result<_>>()?;
    let gen_q: Vec<LatticeElem> = (0..nq).map(|b| l_elem(&q, [ElemSet::singleton(b)])).collect::<Result<_>>()?;

    for (a, ga) in gen_p.iter().enumerate() {
        for (b, gb) in gen_q.iter().enumerate() {
            if !e.eval(ga, gb)?.equals(&e.target.gen(a * nq + b)?)? {
                r.generator_equation = false;
                fail(&mut r, format!("E({ga}, {gb}) is not a generator"));
            }
        }
    }

    let mut values: Vec<Vec<AlgebraElem>> = Vec::with_capacity(lp.len());
    for a in &lp {
        let row = e.row(a)?;
        let mut vals = Vec::with_capacity(lq.len());
        for b in &lq {
            let v = row.apply(&b.to_algebra(&FreeAlgebra::new(q.clone()))?)?;
            if !v.equals(&e.eval_polynomial(a, b)?)? {
                r.polynomial_agrees = false;
                fail(&mut r, format!("E({a}, {b}) disagrees with its lattice polynomial"));
            }
            vals.push(v);
        }
        // b ↦ E(a, b) is the extension of q ↦ E(a, x_q)
        let images = gen_q.iter().map(|g| e.eval(a, g)).collect::<Result<Vec<_>>>()?;
        let h = extend_hom(q.clone(), e.target.clone(), images)?;
        if let Some(v) = h.check_laws(64, 0)? {
            r.second_argument_hom = false;
            fail(&mut r, format!("b -> E({a}, b): {v}"));
        }
        for (b, val) in lq.iter().zip(&vals) {
            if !h.apply(&b.to_algebra(&FreeAlgebra::new(q.clone()))?)?.equals(val)? {
                r.second_argument_hom = false;
                fail(&mut r, format!("b -> E({a}, b) differs at {b}"));
            }
        }
        values.push(vals);
    }

    for (qi, gq) in gen_q.iter().enumerate() {
        let images = gen_p.iter().map(|g| e.eval(g, gq)).collect::<Result<Vec<_>>>()?;
        let k = extend_hom(p.clone(), e.target.clone(), images)?;
        if let Some(v) = k.check_laws(64, 0)? {
            r.first_argument_hom = false;
            fail(&mut r, format!("a -> E(a, {gq}): {v}"));
        }
        let bi = lq.iter().position(|b| b == gq).expect("generators lie in L(Q)");
        for (ai, a) in lp.iter().enumerate() {
            if !k.apply(&a.to_algebra(&FreeAlgebra::new(p.clone()))?)?.equals(&values[ai][bi])? {
                r.first_argument_hom = false;
                fail(&mut r, format!("a -> E(a, x_{qi}) differs at {a}"));
            }
        }
    }

    for (i, a1) in lp.iter().enumerate() {
        for (j, a2) in lp.iter().enumerate() {
            if !l_leq(a1, a2)? {
                continue;
            }
            for (bi, b) in lq.iter().enumerate() {
                if !values[i][bi].leq(&values[j][bi])? {
                    r.monotone = false;
                    fail(&mut r, format!("{a1} <= {a2} but E(., {b}) reverses"));
                }
            }
        }
    }
    Ok(r)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ProductGenReport {
    pub generators: usize,
    pub points: usize,
    /// Atoms of the subalgebra generated by `E[A × B]`.
    pub generated_atoms: usize,
    pub generates: bool,
}

/// Whether `E[A × B]` generates `F(P × Q)`, given that `A` and `B`
/// generate `F(P)` and `F(Q)`.
pub fn product_generation_check(
    p: Arc<Poset>,
    q: Arc<Poset>,
    a: &[LatticeElem],
    b: &[LatticeElem],
    cap: usize,
) -> Result<ProductGenReport> {
    for (poset, family, side) in [(&p, a, "first"), (&q, b, "second")] {
        let space = StoneSpace::new(poset.clone(), cap)?;
        let den: Vec<Clopen> = family.iter().map(|l| l.denote(&space)).collect();
        if !space.generates(&den) {
            return Err(Error::PremiseFailed(format!("{side} family does not generate F({})", poset.name())));
        }
    }
    let e = EMap::new(p, q)?;
    let space = StoneSpace::new(e.pq.clone(), cap)?;
    let mut den = Vec::with_capacity(a.len() * b.len());
    for x in a {
        let row = e.row(x)?;
        for y in b {
            den.push(space.denote(&row.apply(&y.to_algebra(&FreeAlgebra::new(e.q.clone()))?)?)?);
        }
    }
    let generated_atoms = space.algebra().generated_atoms(&den);
    Ok(ProductGenReport {
        generators: den.len(),
        points: space.len(),
        generated_atoms,
        generates: generated_atoms == space.len(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct LexLayeringReport {
    pub ordered_pairs: usize,
    pub comparisons: usize,
    pub holds: bool,
    /// `(lower index, upper index, g, h)` for the first failure.
    pub counterexample: Option<(String, String, String, String)>,
}

/// In the lexicographic sum over `index`, every nonzero, non-unit element
/// of `L` of a lower part lies strictly below every such element of a
/// higher part.
pub fn lex_layering_check(index: &Poset, parts: &[Poset], cap: usize) -> Result<LexLayeringReport> {
    let (sum, blocks) = lex_sum_with_blocks(index, parts)?;
    let sum = Arc::new(sum);
    let alg = FreeAlgebra::new(sum.clone());
    let mut layers: Vec<Vec<(LatticeElem, AlgebraElem)>> = Vec::with_capacity(parts.len());
    for (part, block) in parts.iter().zip(&blocks) {
        let ids: Vec<usize> = block.iter().collect();
        let mut layer = Vec::new();
        for l in enumerate_l(&Arc::new(part.clone()), LatticeMode::Strict, cap)? {
            let sigmas = l.terms().iter().map(|t| t.sigma().iter().map(|x| ids[x]).collect::<ElemSet>());
            let embedded = l_elem(&sum, sigmas)?;
            let a = embedded.to_algebra(&alg)?;
            layer.push((embedded, a));
        }
        layers.push(layer);
    }
    let mut report = LexLayeringReport { ordered_pairs: 0, comparisons: 0, holds: true, counterexample: None };
    for (lo, hi) in index.strict_pairs() {
        report.ordered_pairs += 1;
        for (gl, g) in &layers[lo] {
            for (hl, h) in &layers[hi] {
                report.comparisons += 1;
                if !(g.leq(h)? && !g.equals(h)?) {
                    report.holds = false;
                    report.counterexample = Some((
                        index.element_name(lo).to_string(),
                        index.element_name(hi).to_string(),
                        gl.to_string(),
                        hl.to_string(),
                    ));
                    return Ok(report);
                }
            }
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct HReport {
    pub chain: Vec<String>,
    /// Size of `H` including `0`.
    pub h_size: usize,
    /// Generators adjoined to some `G_n` because they were missing.
    pub adjoined: usize,
    pub points: usize,
    pub generated_atoms: usize,
    pub generates: bool,
    pub layering: bool,
    /// `y · (x_p(n) - x_p(n-1)) = h - x_p(n-1)` for every `h = x_p(n-1) + y · x_p(n)`.
    pub block_equation: bool,
}

/// Builds `H = {0} ∪ ⋃_n {x_p(n-1) + y · x_p(n) : y ∈ G_n}` along a
/// cofinal chain, where `G_n` is `Π` (unit included) of
/// `P_n = {x : x ≱ p(n)}` and `x_p(-1) = 0`, and checks that `H`
/// generates `F(P)` and is layered along the chain.
pub fn h_construction(p: Arc<Poset>, chain: &[usize], cap: usize) -> Result<(Vec<AlgebraElem>, HReport)> {
    if chain.is_empty() || chain.iter().any(|&c| c >= p.len()) {
        return Err(Error::PremiseFailed("chain must be a nonempty list of elements".into()));
    }
    if chain.windows(2).any(|w| !p.lt(w[0], w[1])) {
        return Err(Error::PremiseFailed("chain must be strictly increasing".into()));
    }
    if let Some(x) = (0..p.len()).find(|&x| !chain.iter().any(|&c| p.leq(x, c))) {
        return Err(Error::NotCofinal(p.element_name(x).to_string()));
    }
    if let Some((a, b)) = p.directedness_witness() {
        return Err(Error::NotDirected(p.element_name(a).to_string(), p.element_name(b).to_string()));
    }
    let alg = FreeAlgebra::new(p.clone());
    let x = |i: usize| alg.gen(chain[i]);
    let mut adjoined = 0;
    let mut layers: Vec<Vec<AlgebraElem>> = Vec::with_capacity(chain.len());
    let mut block_equation = true;
    for n in 0..chain.len() {
        let kept: ElemSet = (0..p.len()).filter(|&y| !p.leq(chain[n], y)).collect();
        let (sub, ids) = p.subposet(kept);
        let mut g: Vec<ElemSet> = enumerate_pi(&sub, LatticeMode::Inclusive, cap)?
            .into_iter()
            .map(|t| t.sigma().iter().map(|i| ids[i]).collect())
            .collect();
        if n > 0 && !g.contains(&ElemSet::singleton(chain[n - 1])) {
            g.push(ElemSet::singleton(chain[n - 1]));
            adjoined += 1;
        }
        let prev = if n == 0 { alg.zero() } else { x(n - 1)? };
        let block = x(n)?.minus(&prev)?;
        let mut layer = Vec::with_capacity(g.len());
        for sigma in g {
            let y = alg.product_of(sigma)?;
            let h = prev.join(&y.meet(&x(n)?)?)?;
            block_equation &= y.meet(&block)?.equals(&h.minus(&prev)?)?;
            layer.push(h);
        }
        layers.push(layer);
    }

    let mut layering = true;
    for n in 0..chain.len() {
        for m in 0..n {
            let (xm, xn1) = (x(m)?, x(n - 1)?);
            layering &= xm.leq(&xn1)?;
            for hm in &layers[m] {
                layering &= hm.leq(&xm)?;
            }
            for hn in &layers[n] {
                layering &= xn1.leq(hn)?;
            }
        }
    }

    let mut h: Vec<AlgebraElem> = vec![alg.zero()];
    for e in layers.into_iter().flatten() {
        let mut dup = false;
        for f in &h {
            if f.equals(&e)? {
                dup = true;
                break;
            }
        }
        if !dup {
            h.push(e);
        }
    }
    let space = StoneSpace::new(p.clone(), cap)?;
    let den = h.iter().map(|e| space.denote(e)).collect::<Result<Vec<_>>>()?;
    let generated_atoms = space.algebra().generated_atoms(&den);
    let report = HReport {
        chain: chain.iter().map(|&c| p.element_name(c).to_string()).collect(),
        h_size: h.len(),
        adjoined,
        points: space.len(),
        generated_atoms,
        generates: generated_atoms == space.len(),
        layering,
        block_equation,
    };
    Ok((h, report))
}

/// Builds a set-valued homomorphism from explicit clopen images.
pub fn set_hom(source: Arc<Poset>, points: usize, images: Vec<Clopen>) -> Result<Hom<SetAlgebra>> {
    extend_hom(source, SetAlgebra { points }, images)
}
