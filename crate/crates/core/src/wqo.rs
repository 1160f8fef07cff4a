//! Finite-depth probes for well and better quasi-order notions: bad
//! pairs in sequences, uniform fronts `[N]^k` with the shift relation,
//! and classification of arrays labelled by poset elements.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::miners::{longest_descending_chain, max_antichain, Antichain};
use crate::poset::{rado_prefix, Poset};

/// Pairs `i < j` with `seq[i] ≰ seq[j]`.
pub fn bad_pairs(poset: &Poset, seq: &[usize]) -> Result<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if !poset.try_leq(seq[i], seq[j])? {
                out.push((i, j));
            }
        }
    }
    Ok(out)
}

/// All `k`-subsets of `0..n`, as sorted tuples in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Front {
    k: usize,
    n: usize,
    blocks: Vec<Vec<usize>>,
}

pub fn front(k: usize, n: usize) -> Result<Front> {
    if k == 0 || k > n {
        return Err(Error::BadArity { k, horizon: n });
    }
    let mut blocks = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn rec(start: usize, k: usize, n: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for x in start..n {
            current.push(x);
            rec(x + 1, k, n, current, out);
            current.pop();
        }
    }
    rec(0, k, n, &mut current, &mut blocks);
    Ok(Front { k, n, blocks })
}

impl Front {
    pub fn arity(&self) -> usize {
        self.k
    }

    pub fn horizon(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn index_of(&self, block: &[usize]) -> Option<usize> {
        self.blocks.binary_search_by(|b| b.as_slice().cmp(block)).ok()
    }

    /// `s ◁ t`: dropping the least element of `s` leaves an initial
    /// segment of `t`. For singletons this is read as `s < t`.
    pub fn precedes(&self, s: &[usize], t: &[usize]) -> bool {
        if self.k == 1 {
            s[0] < t[0]
        } else {
            s[1..] == t[..self.k - 1]
        }
    }

    /// Indices of all `t` with `s ◁ t`.
    pub fn successors(&self, s: usize) -> Vec<usize> {
        let sb = &self.blocks[s];
        (0..self.blocks.len()).filter(|&t| self.precedes(sb, &self.blocks[t])).collect()
    }

    /// All `◁`-pairs as block indices.
    pub fn shift_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.blocks.len()).flat_map(|s| self.successors(s).into_iter().map(move |t| (s, t))).collect()
    }

    /// `{s ∪ t : s ◁ t}`, sorted.
    pub fn front_square(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = self
            .shift_pairs()
            .into_iter()
            .map(|(s, t)| {
                let mut u: Vec<usize> = self.blocks[s].iter().chain(&self.blocks[t]).copied().collect();
                u.sort_unstable();
                u.dedup();
                u
            })
            .collect();
        out.sort();
        out.dedup();
        out
    }
}

/// A labelling of every block of a front by a poset element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrayLabeling {
    pub front: Front,
    /// Label of each block, indexed like `front.blocks()`.
    pub labels: Vec<usize>,
}

/// On-disk labelling: explicit `labels` keyed by `"i,j"`, or a named generator.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ArrayFile {
    pub k: usize,
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<String>,
}

fn block_key(b: &[usize]) -> String {
    b.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

impl ArrayLabeling {
    pub fn new(front: Front, labels: Vec<usize>) -> Result<Self> {
        if labels.len() != front.blocks.len() {
            return Err(Error::PremiseFailed(format!("{} labels for {} blocks", labels.len(), front.blocks.len())));
        }
        Ok(ArrayLabeling { front, labels })
    }

    /// `{i, j} ↦ (i, j)` on `[N]^2`, into the Rado prefix of horizon `N`.
    pub fn rado_identity(n: usize) -> Result<(Poset, ArrayLabeling)> {
        let target = rado_prefix(n)?;
        let f = front(2, n)?;
        let labels =
            f.blocks().iter().map(|b| target.id_of(&format!("({},{})", b[0], b[1]))).collect::<Result<Vec<_>>>()?;
        Ok((target, ArrayLabeling { front: f, labels }))
    }

    pub fn constant(front: Front, label: usize) -> Self {
        let labels = vec![label; front.blocks.len()];
        ArrayLabeling { front, labels }
    }

    /// Reads a labelling. With `"generator": "rado-identity"` the target
    /// poset is built here and returned; otherwise labels are resolved in `poset`.
    pub fn from_file(file: &ArrayFile, poset: Option<&Poset>) -> Result<(Poset, ArrayLabeling)> {
        match (&file.generator, &file.labels) {
            (Some(g), _) if g == "rado-identity" => {
                if file.k != 2 {
                    return Err(Error::BadArity { k: file.k, horizon: file.n });
                }
                Self::rado_identity(file.n)
            }
            (Some(g), _) => Err(Error::Parse(format!("unknown generator {g:?}"))),
            (None, Some(labels)) => {
                let poset = poset.ok_or_else(|| Error::Parse("explicit labels need a poset".into()))?.clone();
                let f = front(file.k, file.n)?;
                let ids = f
                    .blocks()
                    .iter()
                    .map(|b| {
                        let key = block_key(b);
                        let name = labels.get(&key).ok_or_else(|| Error::Parse(format!("no label for block {key}")))?;
                        poset.id_of(name)
                    })
                    .collect::<Result<Vec<_>>>()?;
                if labels.len() != ids.len() {
                    return Err(Error::Parse("labels for blocks outside the front".into()));
                }
                Ok((poset, ArrayLabeling { front: f, labels: ids }))
            }
            (None, None) => Err(Error::Parse("array needs labels or a generator".into())),
        }
    }

    pub fn from_json(text: &str, poset: Option<&Poset>) -> Result<(Poset, ArrayLabeling)> {
        let file: ArrayFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_file(&file, poset)
    }

    pub fn to_file(&self, poset: &Poset) -> ArrayFile {
        let labels = self
            .front
            .blocks()
            .iter()
            .zip(&self.labels)
            .map(|(b, &l)| (block_key(b), poset.element_name(l).to_string()))
            .collect();
        ArrayFile { k: self.front.k, n: self.front.n, labels: Some(labels), generator: None }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ArrayKind {
    Bad,
    Perfect,
    Mixed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ArrayVerdict {
    pub verdict: ArrayKind,
    pub shift_pairs: usize,
    /// Pairs `s ◁ t` with `f(s) ≤ f(t)`.
    pub good_pairs: usize,
    pub good_witness: Option<(Vec<usize>, Vec<usize>)>,
    pub bad_witness: Option<(Vec<usize>, Vec<usize>)>,
}

/// Scans every `◁`-pair. An array with no pairs at all counts as perfect.
pub fn classify_array(poset: &Poset, arr: &ArrayLabeling) -> Result<ArrayVerdict> {
    let blocks = arr.front.blocks();
    let pairs = arr.front.shift_pairs();
    let mut good_pairs = 0;
    let mut good_witness = None;
    let mut bad_witness = None;
    for &(s, t) in &pairs {
        let witness = Some((blocks[s].clone(), blocks[t].clone()));
        if poset.try_leq(arr.labels[s], arr.labels[t])? {
            good_pairs += 1;
            good_witness = good_witness.or(witness);
        } else {
            bad_witness = bad_witness.or(witness);
        }
    }
    let verdict = if bad_witness.is_none() {
        ArrayKind::Perfect
    } else if good_witness.is_none() {
        ArrayKind::Bad
    } else {
        ArrayKind::Mixed
    };
    Ok(ArrayVerdict { verdict, shift_pairs: pairs.len(), good_pairs, good_witness, bad_witness })
}

/// Width of the poset, with a witness antichain.
pub fn narrowness_probe(poset: &Poset) -> Antichain {
    max_antichain(poset.len(), |a, b| poset.leq(a, b))
}

/// A longest strictly descending chain of the poset.
pub fn wellfoundedness_probe(poset: &Poset) -> Vec<usize> {
    longest_descending_chain(poset.len(), |a, b| poset.leq(a, b))
}
