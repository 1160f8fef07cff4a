use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Poset;
use crate::elemset::{ElemSet, MAX_ELEMENTS};
use crate::error::{Error, Result};

fn size_ok(n: usize) -> Result<()> {
    if n > MAX_ELEMENTS {
        Err(Error::SizeLimit { size: n, cap: MAX_ELEMENTS })
    } else {
        Ok(())
    }
}

fn letter(i: usize) -> String {
    if i < 26 {
        ((b'a' + i as u8) as char).to_string()
    } else {
        format!("a{i}")
    }
}

/// `0 < 1 < .. < n-1`.
pub fn chain(n: usize) -> Poset {
    assert!(n <= MAX_ELEMENTS);
    let names = (0..n).map(|i| i.to_string()).collect();
    let up = (0..n).map(|i| ElemSet::full(n).difference(ElemSet::full(i))).collect();
    Poset::from_closed_rows(&format!("chain({n})"), names, up)
}

/// `n` pairwise incomparable elements named `a, b, ..`.
pub fn antichain(n: usize) -> Poset {
    assert!(n <= MAX_ELEMENTS);
    let names = (0..n).map(letter).collect();
    let up = (0..n).map(ElemSet::singleton).collect();
    Poset::from_closed_rows(&format!("antichain({n})"), names, up)
}

/// `a < c`, `b < c`.
pub fn v3() -> Poset {
    Poset::build("V3", &["a", "b", "c"], &[("a", "c"), ("b", "c")]).expect("V3 is a poset")
}

/// The order-reversed poset.
pub fn dual(p: &Poset) -> Poset {
    let n = p.len();
    let up = (0..n).map(|i| p.below(i)).collect();
    Poset::from_closed_rows(&format!("dual({})", p.name()), p.names().to_vec(), up)
}

/// Lexicographic sum over `index`: `(i, x) <= (j, y)` iff `i < j` in the
/// index poset, or `i = j` and `x <= y` in part `i`. Also returns the id
/// block occupied by each part. Empty parts are allowed.
pub fn lex_sum_with_blocks(index: &Poset, parts: &[Poset]) -> Result<(Poset, Vec<ElemSet>)> {
    if parts.len() != index.len() {
        return Err(Error::PremiseFailed(format!("lex sum over {} indices given {} parts", index.len(), parts.len())));
    }
    let total: usize = parts.iter().map(Poset::len).sum();
    size_ok(total)?;
    let mut offsets = Vec::with_capacity(parts.len());
    let mut names = Vec::with_capacity(total);
    let mut acc = 0;
    for (i, part) in parts.iter().enumerate() {
        offsets.push(acc);
        for x in part.names() {
            names.push(format!("({},{})", index.element_name(i), x));
        }
        acc += part.len();
    }
    let blocks: Vec<ElemSet> =
        parts.iter().zip(&offsets).map(|(part, &off)| (off..off + part.len()).collect()).collect();
    let mut up = vec![ElemSet::EMPTY; total];
    for (i, part) in parts.iter().enumerate() {
        let strictly_above: ElemSet =
            index.above(i).without(i).iter().fold(ElemSet::EMPTY, |acc, j| acc.union(blocks[j]));
        for x in 0..part.len() {
            let within: ElemSet = part.above(x).iter().map(|y| offsets[i] + y).collect();
            up[offsets[i] + x] = within.union(strictly_above);
        }
    }
    let name = format!("lex({};{})", index.name(), parts.iter().map(Poset::name).collect::<Vec<_>>().join(","));
    Ok((Poset::from_closed_rows(&name, names, up), blocks))
}

pub fn lex_sum(index: &Poset, parts: &[Poset]) -> Result<Poset> {
    lex_sum_with_blocks(index, parts).map(|(p, _)| p)
}

/// Disjoint (incomparable) union: the lexicographic sum over an antichain.
pub fn disjoint_sum_with_blocks(parts: &[Poset]) -> Result<(Poset, Vec<ElemSet>)> {
    let index = Poset::from_closed_rows(
        "disc",
        (0..parts.len()).map(|i| i.to_string()).collect(),
        (0..parts.len()).map(ElemSet::singleton).collect(),
    );
    let (p, blocks) = lex_sum_with_blocks(&index, parts)?;
    let name = format!("sum({})", parts.iter().map(Poset::name).collect::<Vec<_>>().join(","));
    Ok((p.with_name(name), blocks))
}

pub fn disjoint_sum(parts: &[Poset]) -> Result<Poset> {
    disjoint_sum_with_blocks(parts).map(|(p, _)| p)
}

/// Coordinatewise order on `P x Q`; `(p, q)` has id `p * |Q| + q`.
pub fn product(p: &Poset, q: &Poset) -> Result<Poset> {
    let (np, nq) = (p.len(), q.len());
    size_ok(np * nq)?;
    let mut names = Vec::with_capacity(np * nq);
    let mut up = Vec::with_capacity(np * nq);
    for a in 0..np {
        for b in 0..nq {
            names.push(format!("({},{})", p.element_name(a), q.element_name(b)));
            let row = p.above(a).iter().flat_map(|a2| q.above(b).iter().map(move |b2| a2 * nq + b2)).collect();
            up.push(row);
        }
    }
    Ok(Poset::from_closed_rows(&format!("{}x{}", p.name(), q.name()), names, up))
}

/// The pairs `(i, j)` with `0 <= i < j <= horizon`, ordered by
/// `(i, j) <= (k, l)` iff `(i = k and j <= l)` or `j < k`.
pub fn rado_prefix(horizon: usize) -> Result<Poset> {
    let pairs: Vec<(usize, usize)> = (0..=horizon).flat_map(|i| (i + 1..=horizon).map(move |j| (i, j))).collect();
    size_ok(pairs.len())?;
    let names = pairs.iter().map(|(i, j)| format!("({i},{j})")).collect();
    let up = pairs
        .iter()
        .map(|&(i, j)| {
            pairs.iter().enumerate().filter(|&(_, &(k, l))| (i == k && j <= l) || j < k).map(|(id, _)| id).collect()
        })
        .collect();
    Ok(Poset::from_closed_rows(&format!("rado({horizon})"), names, up))
}

/// Random naturally-labelled poset: each pair `i < j` is related with
/// probability `density`, then the relation is closed transitively.
pub fn random_poset(n: usize, density: f64, seed: u64) -> Result<Poset> {
    size_ok(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random_bool(density.clamp(0.0, 1.0)) {
                pairs.push((i, j));
            }
        }
    }
    let names = (0..n).map(|i| i.to_string()).collect();
    Poset::from_pairs(&format!("random({n},{density},{seed})"), names, &pairs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_partial_order(p: &Poset) {
        for a in 0..p.len() {
            assert!(p.leq(a, a));
            for b in 0..p.len() {
                if a != b && p.leq(a, b) {
                    assert!(!p.leq(b, a), "antisymmetry in {}", p.name());
                }
                for c in 0..p.len() {
                    if p.leq(a, b) && p.leq(b, c) {
                        assert!(p.leq(a, c), "transitivity in {}", p.name());
                    }
                }
            }
        }
    }

    #[test]
    fn rado_rule() {
        let r = rado_prefix(3).unwrap();
        assert_eq!(r.len(), 6);
        let id = |s: &str| r.id_of(s).unwrap();
        assert!(r.leq(id("(0,1)"), id("(2,3)")));
        assert!(r.incomparable(id("(0,3)"), id("(1,3)")));
        assert!(r.leq(id("(0,1)"), id("(0,3)")));
        // oracle table for N = 3, written out by hand from the rule
        let lt = [("(0,1)", "(0,2)"), ("(0,1)", "(0,3)"), ("(0,1)", "(2,3)"), ("(0,2)", "(0,3)"), ("(1,2)", "(1,3)")];
        let strict: Vec<(String, String)> =
            r.strict_pairs().map(|(a, b)| (r.element_name(a).to_string(), r.element_name(b).to_string())).collect();
        assert_eq!(strict.len(), lt.len());
        for (a, b) in lt {
            assert!(strict.contains(&(a.to_string(), b.to_string())));
        }
        assert_partial_order(&rado_prefix(8).unwrap());
    }

    #[test]
    fn lex_sum_orders_blocks() {
        let (p, blocks) = lex_sum_with_blocks(&chain(2), &[antichain(2), antichain(2)]).unwrap();
        for lo in blocks[0] {
            for hi in blocks[1] {
                assert!(p.lt(lo, hi));
            }
        }
        assert!(p.incomparable(0, 1));
        assert_partial_order(&p);
        let with_empty = lex_sum(&chain(3), &[antichain(1), antichain(0), chain(2)]).unwrap();
        assert_eq!(with_empty.len(), 3);
        assert!(with_empty.lt(0, 2));
        assert!(lex_sum(&chain(2), &[chain(1)]).is_err());
    }

    #[test]
    fn product_and_sums() {
        let p = product(&chain(2), &antichain(2)).unwrap();
        assert_eq!(p.len(), 4);
        assert!(p.leq(p.id_of("(0,a)").unwrap(), p.id_of("(1,a)").unwrap()));
        assert!(p.incomparable(p.id_of("(0,a)").unwrap(), p.id_of("(1,b)").unwrap()));
        assert_partial_order(&p);
        let d = disjoint_sum(&[chain(2), chain(2)]).unwrap();
        assert_eq!(d.strict_pairs().count(), 2);
    }

    #[test]
    fn dual_is_involution() {
        for seed in 0..10 {
            let p = random_poset(8, 0.3, seed).unwrap();
            assert_partial_order(&p);
            let dd = dual(&dual(&p));
            assert_eq!(dd, p);
            assert_eq!(p.initial_segments(1 << 20).unwrap().len(), dual(&p).final_segments(1 << 20).unwrap().len());
        }
    }

    #[test]
    fn size_limit() {
        assert!(matches!(rado_prefix(20), Err(Error::SizeLimit { .. })));
        assert!(product(&chain(12), &chain(11)).is_err());
    }
}
