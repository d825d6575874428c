//! Brute-force reference implementations over plain boolean matrices.
//! Nothing here calls into the library except to convert at the edges.

#![allow(dead_code)]

use std::collections::BTreeSet;
use std::sync::Arc;

use powerlab::poset::{index_labels, FinitePoset};
use powerlab::SubsetBits;

/// `rel[i][j]` iff `i ≤ j`.
pub type Rel = Vec<Vec<bool>>;

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                go(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Every partial order on `0..n` contained in the natural order `≤` on
/// indices. Each isomorphism class has at least one such labelling.
pub fn natural_posets(n: usize) -> Vec<Rel> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    let mut out = Vec::new();
    for mask in 0u32..(1 << pairs.len()) {
        let mut rel = vec![vec![false; n]; n];
        for (i, row) in rel.iter_mut().enumerate() {
            row[i] = true;
        }
        for (k, &(i, j)) in pairs.iter().enumerate() {
            if mask >> k & 1 == 1 {
                rel[i][j] = true;
            }
        }
        let transitive = (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| !(rel[a][b] && rel[b][c]) || rel[a][c])));
        if transitive {
            out.push(rel);
        }
    }
    out
}

/// The lexicographically smallest relabelled matrix over all permutations.
pub fn brute_canonical(rel: &Rel) -> Vec<bool> {
    let n = rel.len();
    permutations(n)
        .iter()
        .map(|perm| {
            let mut flat = vec![false; n * n];
            for i in 0..n {
                for j in 0..n {
                    flat[perm[i] * n + perm[j]] = rel[i][j];
                }
            }
            flat
        })
        .min()
        .unwrap_or_default()
}

/// One representative relation per isomorphism class.
pub fn iso_classes(n: usize) -> BTreeSet<Vec<bool>> {
    natural_posets(n).iter().map(brute_canonical).collect()
}

pub fn rel_of(p: &FinitePoset) -> Rel {
    (0..p.len()).map(|i| (0..p.len()).map(|j| p.le(i, j)).collect()).collect()
}

pub fn poset_of(rel: &Rel) -> Arc<FinitePoset> {
    Arc::new(
        FinitePoset::from_relation(index_labels(rel.len()), |i, j| rel[i][j])
            .expect("oracle relation is a partial order"),
    )
}

pub fn flat_to_rel(flat: &[bool], n: usize) -> Rel {
    (0..n).map(|i| flat[i * n..(i + 1) * n].to_vec()).collect()
}

pub fn members(set: u32, n: usize) -> Vec<usize> {
    (0..n).filter(|&i| set >> i & 1 == 1).collect()
}

pub fn bits(set: u32) -> SubsetBits {
    SubsetBits::from_raw(set as u128)
}

pub fn upper_bounds(rel: &Rel, set: &[usize]) -> Vec<usize> {
    (0..rel.len()).filter(|&u| set.iter().all(|&x| rel[x][u])).collect()
}

pub fn sup(rel: &Rel, set: &[usize]) -> Option<usize> {
    let ub = upper_bounds(rel, set);
    ub.iter().copied().find(|&u| ub.iter().all(|&v| rel[u][v]))
}

pub fn is_lower(rel: &Rel, set: u32) -> bool {
    let n = rel.len();
    members(set, n).iter().all(|&x| (0..n).all(|y| !rel[y][x] || set >> y & 1 == 1))
}

pub fn is_directed(rel: &Rel, set: &[usize]) -> bool {
    !set.is_empty() && set.iter().all(|&a| set.iter().all(|&b| set.iter().any(|&c| rel[a][c] && rel[b][c])))
}

/// `x ≪ y` from the definition over all directed subsets.
pub fn way_below(rel: &Rel, x: usize, y: usize) -> bool {
    let n = rel.len();
    (1u32..(1 << n)).all(|d| {
        let d = members(d, n);
        if !is_directed(rel, &d) {
            return true;
        }
        match sup(rel, &d) {
            Some(s) if rel[y][s] => d.iter().any(|&e| rel[x][e]),
            _ => true,
        }
    })
}

/// Lower sets, optionally without `∅`, as bitmasks.
pub fn lower_sets(rel: &Rel, with_empty: bool) -> BTreeSet<u32> {
    (0u32..(1 << rel.len())).filter(|&s| (with_empty || s != 0) && is_lower(rel, s)).collect()
}

pub fn is_v_semilattice(rel: &Rel) -> bool {
    let n = rel.len();
    (0..n).all(|x| (0..n).all(|y| upper_bounds(rel, &[x, y]).is_empty() || sup(rel, &[x, y]).is_some()))
}

/// Nonempty finite consistent subsets have their supremum inside.
pub fn is_f_closed(rel: &Rel, set: u32) -> bool {
    let n = rel.len();
    if !is_lower(rel, set) {
        return false;
    }
    (1u32..(1 << n)).filter(|&f| f & !set == 0).all(|f| {
        let f = members(f, n);
        upper_bounds(rel, &f).is_empty() || sup(rel, &f).is_some_and(|s| set >> s & 1 == 1)
    })
}

pub fn monotone_count(a: &Rel, b: &Rel) -> usize {
    let (n, m) = (a.len(), b.len());
    let total = m.pow(n as u32);
    (0..total)
        .filter(|&code| {
            let f: Vec<usize> = (0..n).map(|i| code / m.pow(i as u32) % m).collect();
            (0..n).all(|i| (0..n).all(|j| !a[i][j] || b[f[i]][f[j]]))
        })
        .count()
}

/// Every poset (one per class) with at most `n` elements.
pub fn all_posets_up_to(n: usize) -> Vec<Arc<FinitePoset>> {
    (1..=n).flat_map(|k| iso_classes(k).into_iter().map(move |flat| poset_of(&flat_to_rel(&flat, k)))).collect()
}

pub fn named(labels: &[&str], covers: &[(&str, &str)]) -> Arc<FinitePoset> {
    Arc::new(FinitePoset::from_labeled_covers(labels.iter().map(|s| s.to_string()).collect(), covers).unwrap())
}

pub fn a2() -> Arc<FinitePoset> {
    named(&["a", "b"], &[])
}

pub fn v() -> Arc<FinitePoset> {
    named(&["a", "b", "t"], &[("a", "t"), ("b", "t")])
}

pub fn lambda() -> Arc<FinitePoset> {
    named(&["m", "a", "b"], &[("m", "a"), ("m", "b")])
}
