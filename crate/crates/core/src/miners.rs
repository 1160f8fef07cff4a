//! Order miners over an explicit finite order given by a `leq` oracle:
//! maximum antichains, longest descending chains, antichain enumeration.

use serde::Serialize;

use crate::error::{Error, Result};

/// Largest input for which the maximum antichain is computed exactly.
pub const EXACT_ANTICHAIN_LIMIT: usize = 400;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Antichain {
    pub members: Vec<usize>,
    /// False when the greedy fallback was used; the size is then a lower bound.
    pub exact: bool,
}

impl Antichain {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

fn strict_matrix(n: usize, leq: &impl Fn(usize, usize) -> bool) -> Vec<Vec<bool>> {
    (0..n).map(|i| (0..n).map(|j| i != j && leq(i, j)).collect()).collect()
}

/// Maximum antichain of `0..n` under `leq`.
///
/// Up to [`EXACT_ANTICHAIN_LIMIT`] elements this is exact: a maximum
/// matching in the comparability bipartite graph gives a minimum chain
/// cover, and König's construction turns the matching into an antichain
/// of the same width. Above the limit the largest rank level is extended
/// greedily.
pub fn max_antichain(n: usize, leq: impl Fn(usize, usize) -> bool) -> Antichain {
    let lt = strict_matrix(n, &leq);
    if n <= EXACT_ANTICHAIN_LIMIT {
        Antichain { members: dilworth(&lt), exact: true }
    } else {
        Antichain { members: greedy_antichain(&lt), exact: false }
    }
}

fn dilworth(lt: &[Vec<bool>]) -> Vec<usize> {
    let n = lt.len();
    let adj: Vec<Vec<usize>> = (0..n).map(|i| (0..n).filter(|&j| lt[i][j]).collect()).collect();
    let mut match_right: Vec<Option<usize>> = vec![None; n];
    let mut match_left: Vec<Option<usize>> = vec![None; n];
    for u in 0..n {
        let mut seen = vec![false; n];
        augment(u, &adj, &mut seen, &mut match_left, &mut match_right);
    }
    // alternating reachability from unmatched left vertices
    let mut z_left = vec![false; n];
    let mut z_right = vec![false; n];
    let mut stack: Vec<usize> = (0..n).filter(|&u| match_left[u].is_none()).collect();
    for &u in &stack {
        z_left[u] = true;
    }
    while let Some(u) = stack.pop() {
        for &v in &adj[u] {
            if z_right[v] {
                continue;
            }
            z_right[v] = true;
            if let Some(w) = match_right[v] {
                if !z_left[w] {
                    z_left[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    (0..n).filter(|&i| z_left[i] && !z_right[i]).collect()
}

fn augment(
    u: usize,
    adj: &[Vec<usize>],
    seen: &mut [bool],
    match_left: &mut [Option<usize>],
    match_right: &mut [Option<usize>],
) -> bool {
    for &v in &adj[u] {
        if seen[v] {
            continue;
        }
        seen[v] = true;
        let free = match match_right[v] {
            None => true,
            Some(w) => augment(w, adj, seen, match_left, match_right),
        };
        if free {
            match_left[u] = Some(v);
            match_right[v] = Some(u);
            return true;
        }
    }
    false
}

/// Elements in an order compatible with `lt`.
fn topological(lt: &[Vec<bool>]) -> Vec<usize> {
    let n = lt.len();
    let mut below: Vec<usize> = (0..n).map(|j| (0..n).filter(|&i| lt[i][j]).count()).collect();
    let mut ready: Vec<usize> = (0..n).filter(|&j| below[j] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(i) = ready.pop() {
        order.push(i);
        for j in 0..n {
            if lt[i][j] {
                below[j] -= 1;
                if below[j] == 0 {
                    ready.push(j);
                }
            }
        }
    }
    assert_eq!(order.len(), n, "strict order has a cycle");
    order
}

/// Length of the longest strict chain ending at each element.
fn ranks(lt: &[Vec<bool>]) -> Vec<usize> {
    let n = lt.len();
    let mut rank = vec![1; n];
    for &j in &topological(lt) {
        for i in 0..n {
            if lt[i][j] {
                rank[j] = rank[j].max(rank[i] + 1);
            }
        }
    }
    rank
}

fn greedy_antichain(lt: &[Vec<bool>]) -> Vec<usize> {
    let n = lt.len();
    let rank = ranks(lt);
    let top = rank.iter().copied().max().unwrap_or(0);
    let mut best: Vec<usize> = Vec::new();
    for level in 1..=top {
        let mut members: Vec<usize> = (0..n).filter(|&i| rank[i] == level).collect();
        for i in 0..n {
            if rank[i] != level && members.iter().all(|&m| !lt[i][m] && !lt[m][i]) {
                members.push(i);
            }
        }
        if members.len() > best.len() {
            best = members;
        }
    }
    best.sort_unstable();
    best
}

/// Longest strictly descending chain `a0 > a1 > ..`, exact by dynamic
/// programming over the strict-order DAG.
pub fn longest_descending_chain(n: usize, leq: impl Fn(usize, usize) -> bool) -> Vec<usize> {
    let lt = strict_matrix(n, &leq);
    let mut rank = vec![1usize; n];
    let mut pred: Vec<Option<usize>> = vec![None; n];
    for &j in &topological(&lt) {
        for i in 0..n {
            if lt[i][j] && rank[i] + 1 > rank[j] {
                rank[j] = rank[i] + 1;
                pred[j] = Some(i);
            }
        }
    }
    let Some(mut cur) = (0..n).max_by_key(|&i| (rank[i], std::cmp::Reverse(i))) else {
        return Vec::new();
    };
    let mut chain = vec![cur];
    while let Some(p) = pred[cur] {
        chain.push(p);
        cur = p;
    }
    chain
}

/// All antichains of `0..n` under `leq`, including the empty one, each
/// sorted ascending.
pub fn antichains(n: usize, leq: impl Fn(usize, usize) -> bool, cap: usize) -> Result<Vec<Vec<usize>>> {
    let comparable: Vec<Vec<bool>> =
        (0..n).map(|i| (0..n).map(|j| i == j || leq(i, j) || leq(j, i)).collect()).collect();
    let mut out = Vec::new();
    let mut current = Vec::new();
    extend_antichains(0, &comparable, &mut current, &mut out, cap)?;
    out.sort();
    Ok(out)
}

fn extend_antichains(
    from: usize,
    comparable: &[Vec<bool>],
    current: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
    cap: usize,
) -> Result<()> {
    if out.len() == cap {
        return Err(Error::EnumerationOverflow { cap });
    }
    out.push(current.clone());
    for next in from..comparable.len() {
        if current.iter().all(|&c| !comparable[c][next]) {
            current.push(next);
            extend_antichains(next + 1, comparable, current, out, cap)?;
            current.pop();
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::{antichain, chain, random_poset, v3, Poset};

    fn brute_width(p: &Poset) -> usize {
        (0u32..1 << p.len())
            .filter(|&m| {
                (0..p.len())
                    .all(|a| (0..p.len()).all(|b| m >> a & 1 == 0 || m >> b & 1 == 0 || a == b || p.incomparable(a, b)))
            })
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap()
    }

    fn brute_height(p: &Poset) -> usize {
        (0u32..1 << p.len())
            .filter(|&m| {
                (0..p.len()).all(|a| (0..p.len()).all(|b| m >> a & 1 == 0 || m >> b & 1 == 0 || !p.incomparable(a, b)))
            })
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap()
    }

    #[test]
    fn shapes() {
        let c = chain(4);
        assert_eq!(max_antichain(4, |a, b| c.leq(a, b)).len(), 1);
        assert_eq!(longest_descending_chain(4, |a, b| c.leq(a, b)), vec![3, 2, 1, 0]);
        let a = antichain(4);
        assert_eq!(max_antichain(4, |x, y| a.leq(x, y)).members, vec![0, 1, 2, 3]);
        assert_eq!(longest_descending_chain(4, |x, y| a.leq(x, y)).len(), 1);
        let v = v3();
        assert_eq!(max_antichain(3, |x, y| v.leq(x, y)).members, vec![0, 1]);
        assert!(max_antichain(0, |_, _| true).is_empty());
        assert!(longest_descending_chain(0, |_, _| true).is_empty());
    }

    #[test]
    fn matches_brute_force() {
        for seed in 0..40 {
            let p = random_poset(10, 0.25, seed).unwrap();
            let w = max_antichain(p.len(), |a, b| p.leq(a, b));
            assert!(w.exact);
            assert!(p.is_antichain(w.members.iter().copied().collect()));
            assert_eq!(w.len(), brute_width(&p), "seed {seed}");
            let h = longest_descending_chain(p.len(), |a, b| p.leq(a, b));
            assert!(h.windows(2).all(|s| p.lt(s[1], s[0])));
            assert_eq!(h.len(), brute_height(&p), "seed {seed}");
        }
    }

    #[test]
    fn greedy_returns_an_antichain() {
        let p = random_poset(60, 0.1, 3).unwrap();
        let lt = strict_matrix(p.len(), &|a, b| p.leq(a, b));
        let g = greedy_antichain(&lt);
        assert!(p.is_antichain(g.iter().copied().collect()));
        assert!(g.len() <= dilworth(&lt).len());
    }

    #[test]
    fn antichain_enumeration() {
        let v = v3();
        let all = antichains(3, |a, b| v.leq(a, b), 100).unwrap();
        assert_eq!(all, vec![vec![], vec![0], vec![0, 1], vec![1], vec![2]]);
        assert_eq!(antichains(5, |a, b| a == b, 1000).unwrap().len(), 32);
        assert!(matches!(antichains(5, |a, b| a == b, 10), Err(Error::EnumerationOverflow { cap: 10 })));
    }
}
