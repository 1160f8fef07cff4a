//! Verification suites: each runs one family of checks over a corpus and
//! reports one verdict record per case.
//!
//! Cases run on the rayon pool; results are collected in corpus order so
//! reports depend only on the configuration (apart from `elapsed_ms`).

use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::algebra::{AlgebraElem, FreeAlgebra};
use crate::corpus;
use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::lattice::{
    enumerate_l, enumerate_pi, is_iso_is_to_pi, l_elem, l_leq, lattice_closure, pi_leq, LatticeElem, LatticeMode,
};
use crate::miners::max_antichain;
use crate::morphisms::{
    chain_epimorphism, check_chain_epimorphism, check_emap, extend_hom, h_construction, lex_layering_check,
    product_generation_check, relativize,
};
use crate::poset::{antichain, chain, rado_prefix, random_poset, v3, Poset, DEFAULT_ENUM_CAP};
use crate::stone::{check_binary_subbase, interval_algebra_check, Clopen, StoneSpace, SubfamilyScan};
use crate::wqo::{classify_array, ArrayKind, ArrayLabeling};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Fact24,
    PiOrder,
    JoinPrime,
    IsPiIso,
    ChainLattice,
    Rado,
    Emap,
    ProductGen,
    Relativize,
    HomLaws,
    HConstruction,
    BinarySubbase,
    IntervalAlgebra,
    LexLayering,
    All,
}

impl Suite {
    pub const EACH: [Suite; 14] = [
        Suite::Fact24,
        Suite::PiOrder,
        Suite::JoinPrime,
        Suite::IsPiIso,
        Suite::ChainLattice,
        Suite::Rado,
        Suite::Emap,
        Suite::ProductGen,
        Suite::Relativize,
        Suite::HomLaws,
        Suite::HConstruction,
        Suite::BinarySubbase,
        Suite::IntervalAlgebra,
        Suite::LexLayering,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Fact24 => "fact24",
            Suite::PiOrder => "pi-order",
            Suite::JoinPrime => "join-prime",
            Suite::IsPiIso => "is-pi-iso",
            Suite::ChainLattice => "chain-lattice",
            Suite::Rado => "rado",
            Suite::Emap => "emap",
            Suite::ProductGen => "product-gen",
            Suite::Relativize => "relativize",
            Suite::HomLaws => "hom-laws",
            Suite::HConstruction => "h-construction",
            Suite::BinarySubbase => "binary-subbase",
            Suite::IntervalAlgebra => "interval-algebra",
            Suite::LexLayering => "lex-layering",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SuiteConfig {
    pub suite: Suite,
    /// Largest corpus poset; sizes above the exhaustive limit are random.
    pub max_size: usize,
    /// Random posets per size above the exhaustive limit.
    pub random_per_size: usize,
    /// Overrides the suite's own sample count where it has one.
    pub samples: Option<usize>,
    pub seed: u64,
    /// Front horizon for the array check of the `rado` suite.
    pub horizon: usize,
    pub lattice_mode: LatticeMode,
    pub enum_cap: usize,
}

impl Serialize for Suite {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl SuiteConfig {
    pub fn new(suite: Suite) -> Self {
        SuiteConfig {
            suite,
            max_size: 5,
            random_per_size: 4,
            samples: None,
            seed: 0,
            horizon: 12,
            lattice_mode: LatticeMode::Inclusive,
            enum_cap: DEFAULT_ENUM_CAP,
        }
    }

    fn samples_or(&self, default: usize) -> usize {
        self.samples.unwrap_or(default)
    }

    fn corpus(&self) -> Vec<Poset> {
        corpus::corpus(self.max_size, self.random_per_size, self.seed)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdict {
    pub suite: String,
    pub poset: String,
    pub params: Value,
    pub verdict: Outcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: usize,
    pub failures: usize,
    #[serde(flatten)]
    pub extra: Map<String, Value>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub verdicts: Vec<Verdict>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub suites: Vec<SuiteReport>,
}

impl SuiteReport {
    fn from_verdicts(suite: Suite, verdicts: Vec<Verdict>) -> Self {
        let failures = verdicts.iter().filter(|v| v.verdict == Outcome::Fail).count();
        SuiteReport {
            suite: suite.name().to_string(),
            cases: verdicts.len(),
            failures,
            extra: Map::new(),
            verdicts,
            suites: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    /// The first failing verdict, searching nested suites too.
    pub fn first_failure(&self) -> Option<&Verdict> {
        self.verdicts
            .iter()
            .find(|v| v.verdict == Outcome::Fail)
            .or_else(|| self.suites.iter().find_map(|s| s.first_failure()))
    }

    /// Zeroes timings so reports can be compared for determinism.
    pub fn without_timings(mut self) -> Self {
        for v in &mut self.verdicts {
            v.elapsed_ms = 0;
        }
        self.suites = self.suites.into_iter().map(SuiteReport::without_timings).collect();
        self
    }
}

/// Runs one check. `Ok(None)` passes, `Ok(Some(w))` fails with witness
/// `w`, and an error fails with the error as witness. The poset itself is
/// attached to every failing witness so the case can be replayed.
fn case(
    suite: Suite,
    poset: Option<&Poset>,
    label: &str,
    params: Value,
    f: impl FnOnce() -> Result<Option<Value>>,
) -> Verdict {
    let start = Instant::now();
    let outcome = f();
    let elapsed_ms = start.elapsed().as_millis() as u64;
    let (verdict, witness) = match outcome {
        Ok(None) => (Outcome::Pass, None),
        Ok(Some(w)) => (Outcome::Fail, Some(w)),
        Err(e) => (Outcome::Fail, Some(json!({ "error": e.to_string() }))),
    };
    let witness = witness.map(|w| match poset {
        Some(p) => json!({ "case": w, "poset": p.to_file() }),
        None => w,
    });
    Verdict { suite: suite.name().to_string(), poset: label.to_string(), params, verdict, witness, elapsed_ms }
}

fn subsets_up_to(n: usize, k: usize) -> Vec<ElemSet> {
    (0u128..1 << n).map(ElemSet::from_bits).filter(|s| s.len() <= k).collect()
}

fn names(p: &Poset, s: ElemSet) -> Vec<String> {
    p.set_names(s)
}

pub fn run(config: &SuiteConfig) -> Result<SuiteReport> {
    let verdicts = match config.suite {
        Suite::All => {
            let suites = Suite::EACH
                .iter()
                .map(|&s| run(&SuiteConfig { suite: s, ..config.clone() }))
                .collect::<Result<Vec<_>>>()?;
            return Ok(SuiteReport {
                suite: "all".into(),
                cases: suites.iter().map(|s| s.cases).sum(),
                failures: suites.iter().map(|s| s.failures).sum(),
                extra: Map::new(),
                verdicts: Vec::new(),
                suites,
            });
        }
        Suite::Fact24 => fact24(config),
        Suite::PiOrder => pi_order(config),
        Suite::JoinPrime => join_prime(config),
        Suite::IsPiIso => is_pi_iso(config),
        Suite::ChainLattice => chain_lattice(config),
        Suite::Rado => return rado(config),
        Suite::Emap => emap(config),
        Suite::ProductGen => product_gen(config),
        Suite::Relativize => relativize_suite(config),
        Suite::HomLaws => hom_laws(config),
        Suite::HConstruction => return h_construction_suite(config),
        Suite::BinarySubbase => binary_subbase(config),
        Suite::IntervalAlgebra => interval_algebra(config),
        Suite::LexLayering => lex_layering(config),
    };
    Ok(SuiteReport::from_verdicts(config.suite, verdicts))
}

/// Random `(P, σ, τ)` triples on 8 elements with `|σ|, |τ| ≤ 3`.
fn random_pairs(config: &SuiteConfig, default: usize) -> Vec<(Poset, ElemSet, ElemSet)> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    (0..config.samples_or(default))
        .map(|_| {
            let p = random_poset(8, rng.random_range(0.1..0.5), rng.random()).expect("8 elements");
            let mut pick = || -> ElemSet {
                let k = rng.random_range(0..=3);
                (0..k).map(|_| rng.random_range(0..8)).collect()
            };
            let (s, t) = (pick(), pick());
            (p, s, t)
        })
        .collect()
}

/// Zero test for `x_σ · ∏_{τ} -x_q`: order criterion vs oracle vs algebra.
fn zero_test(p: &Poset, space: &StoneSpace, alg: &FreeAlgebra, s: ElemSet, t: ElemSet) -> Result<Option<Value>> {
    let syntactic = alg.is_zero_syntactic(s, t)?;
    let oracle = space.product_denotation(s, t).is_empty();
    let algebra = alg.elementary_product(s, t)?.is_zero();
    if syntactic == oracle && oracle == algebra {
        return Ok(None);
    }
    Ok(Some(json!({
        "sigma": names(p, s), "tau": names(p, t),
        "syntactic": syntactic, "oracle": oracle, "algebra": algebra,
    })))
}

fn fact24(config: &SuiteConfig) -> Vec<Verdict> {
    let suite = Suite::Fact24;
    let mut out: Vec<Verdict> = config
        .corpus()
        .par_iter()
        .map(|p| {
            let subsets = subsets_up_to(p.len(), 3);
            let params = json!({ "elements": p.len(), "pairs": subsets.len() * subsets.len() });
            case(suite, Some(p), p.name(), params, || {
                let space = StoneSpace::of(p)?;
                let alg = FreeAlgebra::of(p.clone());
                for &s in &subsets {
                    for &t in &subsets {
                        if let Some(w) = zero_test(p, &space, &alg, s, t)? {
                            return Ok(Some(w));
                        }
                    }
                }
                Ok(None)
            })
        })
        .collect();
    let random = random_pairs(config, 1000);
    let params = json!({ "elements": 8, "cases": random.len(), "seed": config.seed });
    out.push(case(suite, None, "random(n=8)", params, || {
        for (p, s, t) in &random {
            let space = StoneSpace::of(p)?;
            if let Some(w) = zero_test(p, &space, &FreeAlgebra::of(p.clone()), *s, *t)? {
                return Ok(Some(json!({ "case": w, "poset": p.to_file() })));
            }
        }
        Ok(None)
    }));
    out
}

/// Product order: pointwise criterion vs up-closures vs oracle vs algebra.
fn order_test(p: &Poset, space: &StoneSpace, alg: &FreeAlgebra, s: ElemSet, t: ElemSet) -> Result<Option<Value>> {
    let pointwise = t.iter().all(|q| s.iter().any(|x| p.leq(x, q)));
    let segments = p.up_closure(t).is_subset(p.up_closure(s));
    let oracle = space.product_denotation(s, ElemSet::EMPTY).is_subset(&space.product_denotation(t, ElemSet::EMPTY));
    let algebra = alg.product_of(s)?.leq(&alg.product_of(t)?)?;
    if pointwise == segments && segments == oracle && oracle == algebra {
        return Ok(None);
    }
    Ok(Some(json!({
        "sigma": names(p, s), "tau": names(p, t),
        "pointwise": pointwise, "segments": segments, "oracle": oracle, "algebra": algebra,
    })))
}

fn pi_order(config: &SuiteConfig) -> Vec<Verdict> {
    let suite = Suite::PiOrder;
    let mut out: Vec<Verdict> = config
        .corpus()
        .par_iter()
        .map(|p| {
            let subsets = subsets_up_to(p.len(), 3);
            let params = json!({ "elements": p.len(), "pairs": subsets.len() * subsets.len() });
            case(suite, Some(p), p.name(), params, || {
                let space = StoneSpace::of(p)?;
                let alg = FreeAlgebra::of(p.clone());
                for &s in &subsets {
                    for &t in &subsets {
                        if let Some(w) = order_test(p, &space, &alg, s, t)? {
                            return Ok(Some(w));
                        }
                    }
                }
                Ok(None)
            })
        })
        .collect();
    let random = random_pairs(config, 1000);
    let params = json!({ "elements": 8, "cases": random.len(), "seed": config.seed });
    out.push(case(suite, None, "random(n=8)", params, || {
        for (p, s, t) in &random {
            let space = StoneSpace::of(p)?;
            if let Some(w) = order_test(p, &space, &FreeAlgebra::of(p.clone()), *s, *t)? {
                return Ok(Some(json!({ "case": w, "poset": p.to_file() })));
            }
        }
        Ok(None)
    }));
    out
}

fn join_prime(config: &SuiteConfig) -> Vec<Verdict> {
    let suite = Suite::JoinPrime;
    corpus::exhaustive(config.max_size)
        .par_iter()
        .map(|p| {
            let params = json!({ "elements": p.len(), "mode": config.lattice_mode });
            case(suite, Some(p), p.name(), params, || {
                let arc = Arc::new(p.clone());
                let space = StoneSpace::new(arc.clone(), config.enum_cap)?;
                let pi = enumerate_pi(p, LatticeMode::Inclusive, config.enum_cap)?;
                let den: Vec<Clopen> = pi.iter().map(|t| space.product_denotation(t.sigma(), ElemSet::EMPTY)).collect();
                for (i, s) in den.iter().enumerate() {
                    for j in 0..den.len() {
                        for k in j..den.len() {
                            if s.is_subset(&den[j].union(&den[k])) && !s.is_subset(&den[j]) && !s.is_subset(&den[k]) {
                                return Ok(Some(json!({
                                    "sigma": pi[i].format(p), "tau1": pi[j].format(p), "tau2": pi[k].format(p),
                                })));
                            }
                        }
                    }
                }
                let l = enumerate_l(&arc, config.lattice_mode, config.enum_cap)?;
                let lden: Vec<Clopen> = l.iter().map(|e| e.denote(&space)).collect();
                let distinct: std::collections::HashSet<&Clopen> = lden.iter().collect();
                if distinct.len() != l.len() {
                    return Ok(Some(json!({ "error": "two canonical lattice elements share a denotation" })));
                }
                let bad = (0..l.len()).into_par_iter().find_map_first(|i| {
                    (0..l.len()).find_map(|j| {
                        let symbolic = l_leq(&l[i], &l[j]).expect("same poset");
                        (symbolic != lden[i].is_subset(&lden[j]))
                            .then(|| json!({ "a": l[i].to_string(), "b": l[j].to_string(), "lLeq": symbolic }))
                    })
                });
                Ok(bad)
            })
        })
        .collect()
}

fn is_pi_iso(config: &SuiteConfig) -> Vec<Verdict> {
    let suite = Suite::IsPiIso;
    let mut posets = config.corpus();
    posets.extend((3..=5).map(|n| rado_prefix(n).expect("small Rado prefix")));
    posets
        .par_iter()
        .map(|p| {
            case(suite, Some(p), p.name(), json!({ "elements": p.len() }), || {
                let r = is_iso_is_to_pi(p, config.enum_cap)?;
                Ok((!r.holds).then(|| serde_json::to_value(&r).expect("report serializes")))
            })
        })
        .collect()
}

fn chain_lattice(config: &SuiteConfig) -> Vec<Verdict> {
    let suite = Suite::ChainLattice;
    let mut out: Vec<Verdict> = (1..=8)
        .into_par_iter()
        .map(|n| {
            let c = chain(n);
            case(suite, Some(&c), c.name(), json!({ "check": "closure", "mode": "strict" }), || {
                let alg = FreeAlgebra::of(c.clone());
                let gens = (0..n).map(|i| alg.gen(i)).collect::<Result<Vec<_>>>()?;
                let closure = lattice_closure(&gens, 1 << 12)?;
                if closure.len() != n {
                    return Ok(Some(json!({ "closureSize": closure.len() })));
                }
                Ok(None)
            })
        })
        .collect();
    out.extend(
        config
            .corpus()
            .par_iter()
            .map(|p| {
                let params = json!({ "check": "epimorphism", "seed": config.seed, "mode": config.lattice_mode });
                case(suite, Some(p), p.name(), params, || {
                    let arc = Arc::new(p.clone());
                    let aug = p.linear_augmentation(config.seed);
                    let h = chain_epimorphism(arc, &aug)?;
                    let r = check_chain_epimorphism(&h, config.lattice_mode, config.enum_cap)?;
                    Ok((!r.holds()).then(|| json!({ "report": r, "order": aug.order })))
                })
            })
            .collect::<Vec<_>>(),
    );
    out
}

fn rado(config: &SuiteConfig) -> Result<SuiteReport> {
    let suite = Suite::Rado;
    let mut verdicts = Vec::new();
    let mut sizes = Vec::new();
    for n in 4..=6 {
        let r = rado_prefix(n)?;
        let mut size = 0;
        let mut exact = true;
        let v = case(suite, None, r.name(), json!({ "horizon": n, "mode": config.lattice_mode }), || {
            let pi = enumerate_pi(&r, config.lattice_mode, config.enum_cap)?;
            let w = max_antichain(pi.len(), |a, b| pi_leq(&r, pi[a], pi[b]));
            let members: Vec<usize> = w.members.clone();
            if members.iter().any(|&a| members.iter().any(|&b| a != b && pi_leq(&r, pi[a], pi[b]))) {
                return Ok(Some(json!({ "error": "miner returned comparable terms" })));
            }
            size = w.len();
            exact = w.exact;
            if size + 1 < n {
                let shown: Vec<String> = members.iter().map(|&i| pi[i].format(&r)).collect();
                return Ok(Some(json!({ "antichain": shown, "needed": n - 1 })));
            }
            Ok(None)
        });
        sizes.push(json!({ "horizon": n, "size": size, "exact": exact }));
        verdicts.push(v);
    }
    let monotone = sizes.windows(2).all(|w| w[0]["size"].as_u64() <= w[1]["size"].as_u64());
    if !monotone {
        verdicts.push(case(suite, None, "growth", json!({}), || Ok(Some(json!({ "sizes": sizes.clone() })))));
    }
    let mut bad_array = false;
    let horizon = config.horizon;
    verdicts.push(case(suite, None, &format!("front(2,{horizon})"), json!({ "horizon": horizon }), || {
        let (target, arr) = ArrayLabeling::rado_identity(horizon)?;
        let v = classify_array(&target, &arr)?;
        bad_array = v.verdict == ArrayKind::Bad && v.good_pairs == 0;
        Ok((!bad_array).then(|| serde_json::to_value(&v).expect("verdict serializes")))
    }));
    let mut report = SuiteReport::from_verdicts(suite, verdicts);
    let best = sizes.iter().filter_map(|s| s["size"].as_u64()).max().unwrap_or(0);
    report.extra.insert("badArray".into(), json!(bad_array));
    report.extra.insert("antichainSize".into(), json!(best));
    report.extra.insert("antichainSizes".into(), Value::Array(sizes));
    Ok(report)
}

fn small_pairs() -> Vec<(Poset, Poset)> {
    let base = [chain(1), chain(2), antichain(2), v3()];
    base.iter().flat_map(|p| base.iter().map(move |q| (p.clone(), q.clone()))).collect()
}

fn emap(config: &SuiteConfig) -> Vec<Verdict> {
    let suite = Suite::Emap;
    small_pairs()
        .par_iter()
        .map(|(p, q)| {
            let label = format!("{}x{}", p.name(), q.name());
            case(suite, None, &label, json!({ "left": p.to_file(), "right": q.to_file() }), || {
                let r = check_emap(Arc::new(p.clone()), Arc::new(q.clone()), config.enum_cap)?;
                Ok((!r.holds()).then(|| serde_json::to_value(&r).expect("report serializes")))
            })
        })
        .collect()
}

fn pi_as_lattice(p: &Arc<Poset>, cap: usize) -> Result<Vec<LatticeElem>> {
    enumerate_pi(p, LatticeMode::Inclusive, cap)?.into_iter().map(|t| l_elem(p, [t.sigma()])).collect()
}

fn product_gen(config: &SuiteConfig) -> Vec<Verdict> {
    let suite = Suite::ProductGen;
    small_pairs()
        .par_iter()
        .map(|(p, q)| {
            let label = format!("{}x{}", p.name(), q.name());
            case(suite, None, &label, json!({ "left": p.to_file(), "right": q.to_file() }), || {
                let (p, q) = (Arc::new(p.clone()), Arc::new(q.clone()));
                let a = pi_as_lattice(&p, config.enum_cap)?;
                let b = pi_as_lattice(&q, config.enum_cap)?;
                let r = product_generation_check(p, q, &a, &b, config.enum_cap)?;
                Ok((!r.generates).then(|| serde_json::to_value(&r).expect("report serializes")))
            })
        })
        .collect()
}

fn relativize_suite(config: &SuiteConfig) -> Vec<Verdict> {
    let suite = Suite::Relativize;
    config
        .corpus()
        .par_iter()
        .map(|p| {
            case(suite, Some(p), p.name(), json!({ "elements": p.len() }), || {
                let arc = Arc::new(p.clone());
                for q in 0..p.len() {
                    let (_, r) = relativize(arc.clone(), q)?;
                    if !r.bijective {
                        return Ok(Some(serde_json::to_value(&r).expect("report serializes")));
                    }
                }
                Ok(None)
            })
        })
        .collect()
}

/// A random order-preserving map into `F(T)`: along a linear extension
/// each image is a random element joined with the images below it.
fn random_monotone_images(p: &Poset, target: &FreeAlgebra, rng: &mut ChaCha8Rng) -> Result<Vec<AlgebraElem>> {
    let pool = target.all_elements(1 << 10)?;
    let order = p.linear_augmentation(rng.random()).order;
    let mut images: Vec<Option<AlgebraElem>> = vec![None; p.len()];
    for &x in &order {
        let mut img = pool[rng.random_range(0..pool.len())].clone();
        for y in p.below(x).without(x) {
            img = img.join(images[y].as_ref().expect("lower elements come first"))?;
        }
        images[x] = Some(img);
    }
    Ok(images.into_iter().map(|i| i.expect("every element placed")).collect())
}

fn hom_laws(config: &SuiteConfig) -> Vec<Verdict> {
    let suite = Suite::HomLaws;
    let count = config.samples_or(200);
    (0..count)
        .into_par_iter()
        .map(|i| {
            let seed = config.seed.wrapping_mul(0x9e37_79b9).wrapping_add(i as u64);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let p = random_poset(rng.random_range(1..=4), rng.random_range(0.0..0.7), rng.random()).expect("tiny");
            let t = random_poset(rng.random_range(1..=3), rng.random_range(0.0..0.7), rng.random()).expect("tiny");
            let label = format!("triple#{i}");
            let params = json!({ "seed": seed, "source": p.to_file(), "target": t.to_file() });
            case(suite, Some(&p), &label, params, || {
                let target = FreeAlgebra::of(t.clone());
                let images = random_monotone_images(&p, &target, &mut rng)?;
                let shown: Vec<String> = images.iter().map(|e| e.to_string()).collect();
                let h = extend_hom(Arc::new(p.clone()), target, images)?;
                if let Some(v) = h.check_laws(256, seed)? {
                    return Ok(Some(json!({ "law": v, "images": shown })));
                }
                if !h.agrees_with_atom_route(256, seed)? {
                    return Ok(Some(json!({ "uniqueness": false, "images": shown })));
                }
                Ok(None)
            })
        })
        .collect()
}

/// Also reports how many generators had to be adjoined in total.
fn h_construction_suite(config: &SuiteConfig) -> Result<SuiteReport> {
    let suite = Suite::HConstruction;
    let adjoined = AtomicUsize::new(0);
    let max = config.max_size.min(corpus::EXHAUSTIVE_LIMIT + 1);
    let mut cases: Vec<(Poset, Vec<Vec<usize>>)> = corpus::directed(max)
        .into_iter()
        .map(|p| {
            let chains = p.maximal_chains();
            (p, chains)
        })
        .collect();
    cases.extend((1..=max).map(|n| (chain(n), vec![(0..n).collect()])));
    let verdicts = cases
        .par_iter()
        .map(|(p, chains)| {
            case(suite, Some(p), p.name(), json!({ "chains": chains.len() }), || {
                let arc = Arc::new(p.clone());
                for c in chains {
                    let (_, r) = h_construction(arc.clone(), c, config.enum_cap)?;
                    adjoined.fetch_add(r.adjoined, Ordering::Relaxed);
                    if !(r.generates && r.layering && r.block_equation) {
                        return Ok(Some(serde_json::to_value(&r).expect("report serializes")));
                    }
                }
                Ok(None)
            })
        })
        .collect();
    let mut report = SuiteReport::from_verdicts(suite, verdicts);
    report.extra.insert("adjoined".into(), json!(adjoined.into_inner()));
    Ok(report)
}

fn binary_subbase(config: &SuiteConfig) -> Vec<Verdict> {
    let suite = Suite::BinarySubbase;
    config
        .corpus()
        .par_iter()
        .map(|p| {
            let scan = if p.len() <= 4 {
                SubfamilyScan::Exhaustive
            } else {
                SubfamilyScan::Sampled { samples: config.samples_or(10_000), seed: config.seed }
            };
            let params = match scan {
                SubfamilyScan::Exhaustive => json!({ "scan": "exhaustive" }),
                SubfamilyScan::Sampled { samples, seed } => {
                    json!({ "scan": "sampled", "samples": samples, "seed": seed })
                }
            };
            case(suite, Some(p), p.name(), params, || {
                let r = check_binary_subbase(p, scan)?;
                Ok(r.violation.map(|v| json!({ "subfamily": v })))
            })
        })
        .collect()
}

fn interval_algebra(_config: &SuiteConfig) -> Vec<Verdict> {
    let suite = Suite::IntervalAlgebra;
    (1..=6)
        .map(|n| {
            case(suite, None, &format!("chain({n})"), json!({ "length": n }), || {
                let r = interval_algebra_check(n)?;
                Ok((!r.isomorphic).then(|| serde_json::to_value(&r).expect("report serializes")))
            })
        })
        .collect()
}

fn lex_layering(config: &SuiteConfig) -> Vec<Verdict> {
    let suite = Suite::LexLayering;
    (0..config.samples_or(50))
        .into_par_iter()
        .map(|i| {
            let seed = config.seed.wrapping_mul(0x2545_f491).wrapping_add(i as u64);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let index = random_poset(rng.random_range(1..=3), rng.random_range(0.2..0.9), rng.random()).expect("tiny");
            let parts: Vec<Poset> = (0..index.len())
                .map(|_| random_poset(rng.random_range(1..=3), rng.random_range(0.0..0.7), rng.random()).expect("tiny"))
                .collect();
            let params = json!({
                "seed": seed,
                "index": index.to_file(),
                "parts": parts.iter().map(Poset::to_file).collect::<Vec<_>>(),
            });
            case(suite, None, &format!("lex#{i}"), params, || {
                let r = lex_layering_check(&index, &parts, config.enum_cap)?;
                Ok((!r.holds).then(|| serde_json::to_value(&r).expect("report serializes")))
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(suite: Suite) -> SuiteConfig {
        SuiteConfig { max_size: 3, samples: Some(20), ..SuiteConfig::new(suite) }
    }

    #[test]
    fn suite_names_roundtrip() {
        for s in Suite::EACH.into_iter().chain([Suite::All]) {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn small_runs_pass() {
        for s in [Suite::Fact24, Suite::PiOrder, Suite::IsPiIso, Suite::Relativize, Suite::LexLayering] {
            let r = run(&small(s)).unwrap();
            assert!(r.passed(), "{s}: {:?}", r.first_failure());
            assert!(r.cases > 0);
        }
    }

    #[test]
    fn reports_are_deterministic() {
        let a = run(&small(Suite::HomLaws)).unwrap().without_timings();
        let b = run(&small(Suite::HomLaws)).unwrap().without_timings();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        assert!(a.passed());
    }

    #[test]
    fn failing_case_carries_poset() {
        let p = v3();
        let v = case(Suite::Fact24, Some(&p), "V3", json!({}), || Ok(Some(json!({ "x": 1 }))));
        assert_eq!(v.verdict, Outcome::Fail);
        assert_eq!(v.witness.as_ref().unwrap()["poset"]["elements"], json!(["a", "b", "c"]));
        let e = case(Suite::Fact24, None, "err", json!({}), || Err(Error::PosetMismatch));
        assert!(e.witness.unwrap()["error"].is_string());
    }
}
