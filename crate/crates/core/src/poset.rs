//! Finite partial orders and the elementary predicates built on them.
//!
//! The order is stored fully transitively closed: `down[j]` holds every
//! `i <= j` and `up[i]` every `j >= i`, so `le` is a single bit test.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::subset::{SubsetBits, MAX_ELEMENTS};

/// Largest set for which [`FinitePoset::directed_subsets_brute`] will run.
pub const BRUTE_FORCE_LIMIT: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FinitePoset {
    labels: Vec<String>,
    down: Vec<SubsetBits>,
    up: Vec<SubsetBits>,
}

impl FinitePoset {
    /// Builds a poset from a generating relation, taking its reflexive-transitive
    /// closure. Pairs need not be covers; any acyclic relation is accepted.
    pub fn from_covers(labels: Vec<String>, covers: &[(usize, usize)]) -> Result<Self> {
        let n = labels.len();
        if n > MAX_ELEMENTS {
            return Err(Error::TooLarge(n));
        }
        let mut seen = HashMap::with_capacity(n);
        for (i, l) in labels.iter().enumerate() {
            if seen.insert(l.as_str(), i).is_some() {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        let mut down: Vec<SubsetBits> = (0..n).map(SubsetBits::singleton).collect();
        for &(lo, hi) in covers {
            for index in [lo, hi] {
                if index >= n {
                    return Err(Error::IndexOutOfRange { index, n });
                }
            }
            if lo == hi {
                return Err(Error::Cycle(labels[lo].clone()));
            }
            down[hi].insert(lo);
        }
        // Warshall over row bitsets: if k <= j then everything below k is below j.
        for k in 0..n {
            let below_k = down[k];
            for row in down.iter_mut() {
                if row.contains(k) {
                    *row = row.union(below_k);
                }
            }
        }
        for j in 0..n {
            for i in down[j].without(j) {
                if down[i].contains(j) {
                    return Err(Error::Cycle(labels[i].clone()));
                }
            }
        }
        Ok(Self::from_closed_down_sets(labels, down))
    }

    /// Same as [`from_covers`](Self::from_covers) with pairs named by label.
    pub fn from_labeled_covers<S: AsRef<str>>(labels: Vec<String>, covers: &[(S, S)]) -> Result<Self> {
        let index: HashMap<&str, usize> = labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        let lookup = |s: &str| index.get(s).copied().ok_or_else(|| Error::UnknownLabel(s.to_string()));
        let pairs =
            covers.iter().map(|(a, b)| Ok((lookup(a.as_ref())?, lookup(b.as_ref())?))).collect::<Result<Vec<_>>>()?;
        Self::from_covers(labels, &pairs)
    }

    /// Builds a poset from a full order relation and checks the three order axioms.
    /// Labels are metadata here and are not required to be distinct.
    pub fn from_relation(labels: Vec<String>, le: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let n = labels.len();
        if n > MAX_ELEMENTS {
            return Err(Error::TooLarge(n));
        }
        let down: Vec<SubsetBits> = (0..n).map(|j| (0..n).filter(|&i| le(i, j)).collect()).collect();
        if let Some(i) = (0..n).find(|&i| !down[i].contains(i)) {
            return Err(Error::NotReflexive(i));
        }
        for j in 0..n {
            for i in down[j].without(j) {
                if down[i].contains(j) {
                    return Err(Error::NotAntisymmetric(i, j));
                }
                // i <= j and k <= i must give k <= j
                if let Some(k) = down[i].difference(down[j]).first() {
                    return Err(Error::NotTransitive(k, i, j));
                }
            }
        }
        Ok(Self::from_closed_down_sets(labels, down))
    }

    fn from_closed_down_sets(labels: Vec<String>, down: Vec<SubsetBits>) -> Self {
        let n = labels.len();
        let mut up = vec![SubsetBits::EMPTY; n];
        for (j, d) in down.iter().enumerate() {
            for i in *d {
                up[i].insert(j);
            }
        }
        FinitePoset { labels, down, up }
    }

    /// `0 < 1 < .. < n-1`, labelled by index.
    pub fn chain(n: usize) -> Result<Self> {
        let covers: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_covers(index_labels(n), &covers)
    }

    /// `n` pairwise incomparable elements, labelled by index.
    pub fn antichain(n: usize) -> Result<Self> {
        Self::from_covers(index_labels(n), &[])
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Resolves a list of labels into a subset.
    pub fn subset_of_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<SubsetBits> {
        labels
            .iter()
            .map(|l| self.index_of(l.as_ref()).ok_or_else(|| Error::UnknownLabel(l.as_ref().to_string())))
            .collect()
    }

    pub fn labels_of(&self, set: SubsetBits) -> Vec<String> {
        set.iter().map(|i| self.labels[i].clone()).collect()
    }

    #[inline]
    pub fn universe(&self) -> SubsetBits {
        SubsetBits::full(self.len())
    }

    #[inline]
    pub fn le(&self, i: usize, j: usize) -> bool {
        self.down[j].contains(i)
    }

    #[inline]
    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.le(i, j)
    }

    /// `↓x`
    #[inline]
    pub fn principal_down(&self, x: usize) -> SubsetBits {
        self.down[x]
    }

    /// `↑x`
    #[inline]
    pub fn principal_up(&self, x: usize) -> SubsetBits {
        self.up[x]
    }

    /// `↓A = {x : x <= a for some a in A}`.
    pub fn down_set(&self, a: SubsetBits) -> SubsetBits {
        a.iter().fold(SubsetBits::EMPTY, |acc, x| acc.union(self.down[x]))
    }

    pub fn up_set(&self, a: SubsetBits) -> SubsetBits {
        a.iter().fold(SubsetBits::EMPTY, |acc, x| acc.union(self.up[x]))
    }

    /// Common upper bounds of `a`; the whole universe when `a` is empty.
    pub fn upper_bounds(&self, a: SubsetBits) -> SubsetBits {
        a.iter().fold(self.universe(), |acc, x| acc.intersection(self.up[x]))
    }

    pub fn lower_bounds(&self, a: SubsetBits) -> SubsetBits {
        a.iter().fold(self.universe(), |acc, x| acc.intersection(self.down[x]))
    }

    /// A set is consistent when it has an upper bound. The empty set is
    /// consistent by convention, even in the empty poset.
    pub fn is_consistent(&self, a: SubsetBits) -> bool {
        a.is_empty() || !self.upper_bounds(a).is_empty()
    }

    /// Nonempty, and every pair has an upper bound inside the set.
    pub fn is_directed(&self, a: SubsetBits) -> Result<bool> {
        if a.is_empty() {
            return Err(Error::EmptyDirected);
        }
        Ok(self.pairwise_bounded_within(a))
    }

    fn pairwise_bounded_within(&self, a: SubsetBits) -> bool {
        a.iter().all(|x| {
            a.iter().filter(|&y| y > x).all(|y| !self.up[x].intersection(self.up[y]).intersection(a).is_empty())
        })
    }

    /// Least element of `a`, if any.
    pub fn least(&self, a: SubsetBits) -> Option<usize> {
        a.iter().find(|&x| a.is_subset(self.up[x]))
    }

    /// Greatest element of `a`, if any.
    pub fn greatest(&self, a: SubsetBits) -> Option<usize> {
        a.iter().find(|&x| a.is_subset(self.down[x]))
    }

    /// Least upper bound of `a`, if it exists.
    pub fn sup(&self, a: SubsetBits) -> Option<usize> {
        self.least(self.upper_bounds(a))
    }

    pub fn inf(&self, a: SubsetBits) -> Option<usize> {
        self.greatest(self.lower_bounds(a))
    }

    pub fn maximal_elements(&self, a: SubsetBits) -> SubsetBits {
        a.iter().filter(|&x| self.up[x].intersection(a) == SubsetBits::singleton(x)).collect()
    }

    pub fn minimal_elements(&self, a: SubsetBits) -> SubsetBits {
        a.iter().filter(|&x| self.down[x].intersection(a) == SubsetBits::singleton(x)).collect()
    }

    pub fn is_lower_set(&self, a: SubsetBits) -> bool {
        a.iter().all(|x| self.down[x].is_subset(a))
    }

    pub fn is_upper_set(&self, a: SubsetBits) -> bool {
        a.iter().all(|x| self.up[x].is_subset(a))
    }

    /// A lower set that also contains the supremum of each of its directed subsets.
    pub fn is_scott_closed(&self, a: SubsetBits) -> bool {
        if !self.is_lower_set(a) {
            return false;
        }
        let mut closed = true;
        self.for_each_directed_ideal(a, &mut |d| {
            if let Some(s) = self.sup(d) {
                if !a.contains(s) {
                    closed = false;
                }
            }
            closed
        });
        closed
    }

    /// Least Scott closed superset: lower closure followed by directed sups,
    /// repeated until nothing changes.
    pub fn scott_closure(&self, a: SubsetBits) -> SubsetBits {
        let mut cur = a;
        loop {
            let mut next = self.down_set(cur);
            self.for_each_directed_ideal(next, &mut |d| {
                if let Some(s) = self.sup(d) {
                    next.insert(s);
                }
                true
            });
            if next == cur {
                return cur;
            }
            cur = next;
        }
    }

    /// `x ≪ y`: every directed `D` whose supremum lies above `y` meets `↓x`.
    ///
    /// Quantifies over the directed ideals of `P`; each directed `D` has one
    /// (`↓D`) with the same supremum and the same down-closure.
    pub fn way_below(&self, x: usize, y: usize) -> bool {
        let mut holds = true;
        self.for_each_directed_ideal(self.universe(), &mut |d| {
            if let Some(s) = self.sup(d) {
                if self.le(y, s) && !self.down_set(d).contains(x) {
                    holds = false;
                }
            }
            holds
        });
        holds
    }

    /// `↡A = ⋃ {y : y ≪ a}` over `a ∈ A`.
    pub fn way_below_set(&self, a: SubsetBits) -> SubsetBits {
        let n = self.len();
        let mut out = SubsetBits::EMPTY;
        for target in a {
            for x in 0..n {
                if !out.contains(x) && self.way_below(x, target) {
                    out.insert(x);
                }
            }
        }
        out
    }

    /// A nonempty Scott closed set that is not the union of two proper
    /// Scott closed subsets. `∅` is not irreducible.
    pub fn is_irreducible_closed(&self, a: SubsetBits) -> Result<bool> {
        if !self.is_scott_closed(a) {
            return Err(Error::NotClosed);
        }
        if a.is_empty() {
            return Ok(false);
        }
        let mut proper = Vec::new();
        self.for_each_lower_set_within(a, &mut |b| {
            if b != a {
                proper.push(b);
            }
        });
        for (i, &b) in proper.iter().enumerate() {
            for &c in &proper[i..] {
                if b.union(c) == a {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Every irreducible Scott closed set is `↓x` for some `x`.
    pub fn is_sober(&self) -> bool {
        let mut closed = Vec::new();
        self.for_each_lower_set_within(self.universe(), &mut |b| closed.push(b));
        closed
            .into_iter()
            .all(|a| !self.is_irreducible_closed(a).unwrap_or(false) || (0..self.len()).any(|x| self.down[x] == a))
    }

    /// Covering pairs `(lo, hi)`, sorted.
    pub fn hasse(&self) -> Vec<(usize, usize)> {
        let mut covers = Vec::new();
        for hi in 0..self.len() {
            let strict = self.down[hi].without(hi);
            let reachable_through = strict.iter().fold(SubsetBits::EMPTY, |acc, k| acc.union(self.down[k].without(k)));
            for lo in strict.difference(reachable_through) {
                covers.push((lo, hi));
            }
        }
        covers.sort_unstable();
        covers
    }

    /// Elements ordered so that `i < j` implies `i` comes first.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&i| (self.down[i].len(), i));
        order
    }

    /// Longest chain length strictly below each element.
    pub fn levels(&self) -> Vec<usize> {
        let mut level = vec![0usize; self.len()];
        for x in self.linear_extension() {
            level[x] = self.down[x].without(x).iter().map(|y| level[y] + 1).max().unwrap_or(0);
        }
        level
    }

    /// Calls `f` on every lower set of the subposet induced on `within`,
    /// including `∅` and `within` itself when it is down-closed there.
    ///
    /// Elements are decided in linear-extension order; an element may be
    /// included only once everything below it (inside `within`) is, so every
    /// branch of the recursion ends in a valid lower set.
    pub fn for_each_lower_set_within(&self, within: SubsetBits, f: &mut impl FnMut(SubsetBits)) {
        let order: Vec<usize> = self.linear_extension().into_iter().filter(|&x| within.contains(x)).collect();
        let preds: Vec<SubsetBits> = order.iter().map(|&x| self.down[x].without(x).intersection(within)).collect();
        fn rec(k: usize, cur: SubsetBits, order: &[usize], preds: &[SubsetBits], f: &mut impl FnMut(SubsetBits)) {
            if k == order.len() {
                f(cur);
                return;
            }
            rec(k + 1, cur, order, preds, f);
            if preds[k].is_subset(cur) {
                rec(k + 1, cur.with(order[k]), order, preds, f);
            }
        }
        rec(0, SubsetBits::EMPTY, &order, &preds, f);
    }

    /// All lower sets of `P`, sorted by (size, bits).
    pub fn lower_sets(&self) -> Vec<SubsetBits> {
        let mut out = Vec::new();
        self.for_each_lower_set_within(self.universe(), &mut |s| out.push(s));
        out.sort_by_key(|s| s.canonical_key());
        out
    }

    /// Calls `f` on each directed subset of `within` that is down-closed
    /// relative to `within`. Stops early when `f` returns `false`.
    ///
    /// Any directed `D ⊆ within` has `↓D ∩ within` in this list, and the two
    /// have the same upper bounds.
    pub fn for_each_directed_ideal(&self, within: SubsetBits, f: &mut impl FnMut(SubsetBits) -> bool) {
        let mut go = true;
        self.for_each_lower_set_within(within, &mut |d| {
            if go && !d.is_empty() && self.pairwise_bounded_within(d) {
                go = f(d);
            }
        });
    }

    /// Every directed subset of `within`, by exhaustive search over `2^|within|`
    /// candidates.
    pub fn directed_subsets_brute(&self, within: SubsetBits) -> Result<Vec<SubsetBits>> {
        if within.len() > BRUTE_FORCE_LIMIT {
            return Err(Error::BruteForceLimit { size: within.len(), limit: BRUTE_FORCE_LIMIT });
        }
        Ok(within.subsets().filter(|d| !d.is_empty() && self.pairwise_bounded_within(*d)).collect())
    }

    /// The poset with element `i` moved to position `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let n = self.len();
        assert_eq!(perm.len(), n);
        let mut inv = vec![0; n];
        for (i, &p) in perm.iter().enumerate() {
            inv[p] = i;
        }
        let labels = inv.iter().map(|&i| self.labels[i].clone()).collect();
        let down = inv.iter().map(|&j| self.down[j].iter().map(|i| perm[i]).collect()).collect();
        Self::from_closed_down_sets(labels, down)
    }

    /// Order dual: `x <= y` here iff `y <= x` in the result.
    pub fn dual(&self) -> Self {
        Self::from_closed_down_sets(self.labels.clone(), self.up.clone())
    }
}

/// `["0", "1", .., "n-1"]`.
pub fn index_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}
