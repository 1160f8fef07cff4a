//! Test corpora: every poset up to isomorphism on a few elements, plus
//! seeded random ones beyond that.

use std::collections::HashSet;

use crate::poset::{random_poset, Poset};

/// Largest size enumerated exhaustively.
pub const EXHAUSTIVE_LIMIT: usize = 5;

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for rest in permutations(n - 1) {
        for pos in 0..n {
            let mut p = rest.clone();
            p.insert(pos, n - 1);
            out.push(p);
        }
    }
    out
}

/// Strict relation as a bit matrix over `n * n` positions.
fn relation_bits(n: usize, lt: &[(usize, usize)], perm: &[usize]) -> u64 {
    lt.iter().fold(0, |acc, &(a, b)| acc | 1 << (perm[a] * n + perm[b]))
}

/// All posets on `n` elements up to isomorphism, named `"n{n}#{i}"`
/// with elements `"0".."n-1"`.
///
/// Every poset has a natural labelling, so it suffices to enumerate
/// transitive relations contained in `i < j`; isomorphic copies are
/// rejected by the least permuted relation matrix.
pub fn posets_of_size(n: usize) -> Vec<Poset> {
    assert!(n <= EXHAUSTIVE_LIMIT + 1, "exhaustive enumeration is only practical for tiny posets");
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let perms = permutations(n);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for mask in 0u64..1 << pairs.len() {
        let lt: Vec<(usize, usize)> = (0..pairs.len()).filter(|&k| mask >> k & 1 == 1).map(|k| pairs[k]).collect();
        let rel: HashSet<(usize, usize)> = lt.iter().copied().collect();
        let transitive = lt.iter().all(|&(a, b)| (0..n).all(|c| !rel.contains(&(b, c)) || rel.contains(&(a, c))));
        if !transitive {
            continue;
        }
        let canon = perms.iter().map(|p| relation_bits(n, &lt, p)).min().expect("at least one permutation");
        if seen.insert(canon) {
            let names = (0..n).map(|i| i.to_string()).collect();
            let p = Poset::from_pairs(&format!("n{n}#{}", out.len()), names, &lt).expect("transitive and acyclic");
            out.push(p);
        }
    }
    out
}

/// Every poset with at most `max` elements (capped at the exhaustive
/// limit), in order of size. The empty poset is included.
pub fn exhaustive(max: usize) -> Vec<Poset> {
    (0..=max.min(EXHAUSTIVE_LIMIT)).flat_map(posets_of_size).collect()
}

/// The exhaustive corpus up to `max_size`, followed by `per_size` seeded
/// random posets of each size above the exhaustive limit.
pub fn corpus(max_size: usize, per_size: usize, seed: u64) -> Vec<Poset> {
    let mut out = exhaustive(max_size);
    for n in EXHAUSTIVE_LIMIT + 1..=max_size {
        for i in 0..per_size {
            let s = seed.wrapping_mul(1_000_003).wrapping_add((n * 1000 + i) as u64);
            let density = 0.15 + 0.1 * (i % 4) as f64;
            let p = random_poset(n, density, s).expect("random posets stay small");
            out.push(p.with_name(format!("random(n={n},seed={s})")));
        }
    }
    out
}

/// Adjoins a new greatest element named `"top"`.
pub fn with_top(p: &Poset) -> Poset {
    let n = p.len();
    let mut names = p.names().to_vec();
    names.push("top".to_string());
    let mut pairs: Vec<(usize, usize)> = p.strict_pairs().collect();
    pairs.extend((0..n).map(|i| (i, n)));
    Poset::from_pairs(&format!("{}+top", p.name()), names, &pairs).expect("adding a top keeps a partial order")
}

/// Every nonempty directed poset with at most `max` elements. A finite
/// directed poset has a greatest element, so these are exactly the
/// smaller posets with a top adjoined.
pub fn directed(max: usize) -> Vec<Poset> {
    if max == 0 {
        return Vec::new();
    }
    exhaustive(max - 1).iter().map(with_top).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_match_known_sequence() {
        let counts: Vec<usize> = (0..=5).map(|n| posets_of_size(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 16, 63]);
        assert_eq!(exhaustive(5).len(), 88);
    }

    #[test]
    fn directed_corpus() {
        let d = directed(6);
        assert_eq!(d.len(), 88);
        assert!(d.iter().all(|p| p.is_directed() && p.top().is_some()));
        assert_eq!(directed(1).len(), 1);
    }

    #[test]
    fn random_tail_is_seeded() {
        let a = corpus(7, 3, 42);
        let b = corpus(7, 3, 42);
        assert_eq!(a.len(), 88 + 6);
        assert_eq!(a, b);
        assert_ne!(corpus(7, 3, 43)[90], a[90]);
    }
}
