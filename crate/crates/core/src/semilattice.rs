//! Finite dcpo-∨↑-semilattices: posets where every consistent pair has a
//! join. Also the F-Scott closed sets over them, the operator `cl_F`, the
//! closure system `Γ_F(L)` and the two notions of structure-preserving map.

use std::sync::Arc;

use crate::enumeration::for_each_monotone_table;
use crate::error::{Error, Result};
use crate::family::SetFamily;
use crate::map::PosetMap;
use crate::poset::{FinitePoset, BRUTE_FORCE_LIMIT};
use crate::subset::{SubsetBits, MAX_ELEMENTS};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VSemilattice {
    poset: Arc<FinitePoset>,
    /// `n × n`, row-major; `Some` exactly on consistent pairs.
    join: Vec<Option<usize>>,
}

impl VSemilattice {
    /// Fills the partial join table, failing on the first consistent pair
    /// without a least upper bound.
    pub fn new(poset: Arc<FinitePoset>) -> Result<Self> {
        let n = poset.len();
        let mut join = vec![None; n * n];
        for x in 0..n {
            for y in x..n {
                let pair = SubsetBits::from_indices([x, y]);
                let bounds = poset.upper_bounds(pair);
                if bounds.is_empty() {
                    continue;
                }
                let lub = poset.least(bounds).ok_or(Error::NotVSemilattice(x, y))?;
                join[x * n + y] = Some(lub);
                join[y * n + x] = Some(lub);
            }
        }
        let l = VSemilattice { poset, join };
        l.check_laws()?;
        Ok(l)
    }

    fn check_laws(&self) -> Result<()> {
        let n = self.len();
        for x in 0..n {
            if self.join(x, x) != Some(x) {
                return Err(Error::Internal(format!("join not idempotent at {x}")));
            }
            for y in 0..n {
                let consistent = self.poset.is_consistent(SubsetBits::from_indices([x, y]));
                if consistent != self.join(x, y).is_some() || self.join(x, y) != self.join(y, x) {
                    return Err(Error::Internal(format!("join table inconsistent at ({x}, {y})")));
                }
                if let Some(j) = self.join(x, y) {
                    if !self.poset.le(x, j) {
                        return Err(Error::Internal(format!("join not inflationary at ({x}, {y})")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn poset_arc(&self) -> &Arc<FinitePoset> {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    /// `x ∨ y`, defined exactly when `{x, y}` is consistent.
    #[inline]
    pub fn join(&self, x: usize, y: usize) -> Option<usize> {
        self.join[x * self.len() + y]
    }

    /// Join table rows as CSV, `-` marking undefined entries.
    pub fn join_table_csv(&self) -> String {
        let p = &self.poset;
        let n = self.len();
        let mut out = String::new();
        out.push_str(&csv_row(std::iter::once("").chain(p.labels().iter().map(String::as_str))));
        for x in 0..n {
            let cells: Vec<&str> = (0..n).map(|y| self.join(x, y).map_or("-", |j| p.label(j))).collect();
            out.push_str(&csv_row(std::iter::once(p.label(x)).chain(cells)));
        }
        out
    }
}

fn csv_row<'a>(cells: impl Iterator<Item = &'a str>) -> String {
    let quoted: Vec<String> = cells
        .map(|c| if c.contains([',', '"', '\n']) { format!("\"{}\"", c.replace('"', "\"\"")) } else { c.to_string() })
        .collect();
    format!("{}\n", quoted.join(","))
}

/// Every consistent pair has a least upper bound.
pub fn is_v_semilattice(p: &FinitePoset) -> bool {
    let n = p.len();
    (0..n).all(|x| {
        (x..n).all(|y| {
            let bounds = p.upper_bounds(SubsetBits::from_indices([x, y]));
            bounds.is_empty() || p.least(bounds).is_some()
        })
    })
}

/// Which steps [`cl_f_with`] applies on each round.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ClosureSteps {
    pub lower: bool,
    pub pair_join: bool,
    pub directed_sup: bool,
}

impl ClosureSteps {
    pub const ALL: ClosureSteps = ClosureSteps { lower: true, pair_join: true, directed_sup: true };
}

impl Default for ClosureSteps {
    fn default() -> Self {
        Self::ALL
    }
}

/// Scott closed, and closed under joins of consistent pairs.
///
/// Closure under joins of arbitrary consistent nonempty finite subsets
/// follows by induction; [`is_f_scott_closed_literal`] checks it directly.
pub fn is_f_scott_closed(l: &VSemilattice, a: SubsetBits) -> bool {
    l.poset.is_scott_closed(a)
        && a.iter().all(|x| a.iter().filter(|&y| y > x).all(|y| l.join(x, y).is_none_or(|j| a.contains(j))))
}

/// The definition verbatim: every consistent nonempty finite `F ⊆ A` has
/// its supremum in `A`. Exponential in `|A|`.
pub fn is_f_scott_closed_literal(l: &VSemilattice, a: SubsetBits) -> Result<bool> {
    if a.len() > BRUTE_FORCE_LIMIT {
        return Err(Error::BruteForceLimit { size: a.len(), limit: BRUTE_FORCE_LIMIT });
    }
    let p = l.poset();
    if !p.is_scott_closed(a) {
        return Ok(false);
    }
    Ok(a.subsets().filter(|f| !f.is_empty() && p.is_consistent(*f)).all(|f| p.sup(f).is_some_and(|s| a.contains(s))))
}

/// `cl_F(A)`: the least F-Scott closed superset of `A`.
pub fn cl_f(l: &VSemilattice, a: SubsetBits) -> SubsetBits {
    cl_f_with(l, a, ClosureSteps::ALL)
}

/// Fixpoint of the enabled steps: lower closure, joins of consistent
/// pairs, suprema of directed subsets.
pub fn cl_f_with(l: &VSemilattice, a: SubsetBits, steps: ClosureSteps) -> SubsetBits {
    let p = l.poset();
    let mut cur = a;
    loop {
        let mut next = cur;
        if steps.lower {
            next = p.down_set(next);
        }
        if steps.pair_join {
            let snapshot = next;
            for x in snapshot {
                for y in snapshot.iter().filter(|&y| y > x) {
                    if let Some(j) = l.join(x, y) {
                        next.insert(j);
                    }
                }
            }
        }
        if steps.directed_sup {
            let snapshot = next;
            p.for_each_directed_ideal(snapshot, &mut |d| {
                if let Some(s) = p.sup(d) {
                    next.insert(s);
                }
                true
            });
        }
        if next == cur {
            return cur;
        }
        cur = next;
    }
}

/// `Γ_F(L)`, including `∅`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FClosureSystem {
    base: VSemilattice,
    family: SetFamily,
}

impl FClosureSystem {
    pub fn base(&self) -> &VSemilattice {
        &self.base
    }

    pub fn family(&self) -> &SetFamily {
        &self.family
    }

    pub fn members(&self) -> &[SubsetBits] {
        self.family.members()
    }

    pub fn len(&self) -> usize {
        self.family.len()
    }

    pub fn is_empty(&self) -> bool {
        self.family.is_empty()
    }

    pub fn contains(&self, a: SubsetBits) -> bool {
        self.family.contains(a)
    }
}

/// Fails with [`Error::TooLarge`] past 128 closed sets.
pub fn gamma_f(l: &VSemilattice) -> Result<FClosureSystem> {
    gamma_f_with(l, ClosureSteps::ALL)
}

/// All closed sets of `cl_F` by Ganter's Next-Closure in lectic order,
/// then sorted canonically.
pub fn gamma_f_with(l: &VSemilattice, steps: ClosureSteps) -> Result<FClosureSystem> {
    let n = l.len();
    let close = |a: SubsetBits| cl_f_with(l, a, steps);
    let mut members = Vec::new();
    let mut cur = Some(close(SubsetBits::EMPTY));
    while let Some(a) = cur {
        if members.len() == MAX_ELEMENTS {
            return Err(Error::TooLarge(members.len() + 1));
        }
        members.push(a);
        cur = next_closure(n, a, &close);
    }
    let family = SetFamily::new(l.poset.clone(), members)?;
    Ok(FClosureSystem { base: l.clone(), family })
}

/// The lectic successor of the closed set `a`, if any.
pub fn next_closure(n: usize, a: SubsetBits, close: &impl Fn(SubsetBits) -> SubsetBits) -> Option<SubsetBits> {
    for i in (0..n).rev() {
        if a.contains(i) {
            continue;
        }
        let prefix = a.below_index(i);
        let b = close(prefix.with(i));
        if b.below_index(i) == prefix {
            return Some(b);
        }
    }
    None
}

/// Monotone, preserves directed suprema, and `f(x ∨ y) = f(x) ∨ f(y)` on
/// every consistent pair.
pub fn is_homomorphism(f: &PosetMap, l: &VSemilattice, m: &VSemilattice) -> bool {
    if f.dom().as_ref() != l.poset() || f.cod().as_ref() != m.poset() || !f.is_monotone() {
        return false;
    }
    let (lp, mp) = (l.poset(), m.poset());
    let mut directed_ok = true;
    lp.for_each_directed_ideal(lp.universe(), &mut |d| {
        directed_ok = match lp.sup(d) {
            Some(s) => mp.sup(f.image(d)) == Some(f.apply(s)),
            None => true,
        };
        directed_ok
    });
    if !directed_ok {
        return false;
    }
    let n = l.len();
    (0..n).all(|x| {
        (x + 1..n).all(|y| match l.join(x, y) {
            Some(j) => m.join(f.apply(x), f.apply(y)) == Some(f.apply(j)),
            None => true,
        })
    })
}

/// Outcome of an F-Scott continuity test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FContinuity {
    Continuous,
    /// `closed` is F-Scott closed in the target, `preimage` is its preimage,
    /// which is not F-Scott closed in the source.
    Violation {
        closed: SubsetBits,
        preimage: SubsetBits,
    },
}

impl FContinuity {
    pub fn is_continuous(&self) -> bool {
        matches!(self, FContinuity::Continuous)
    }
}

/// Preimages of F-Scott closed sets are F-Scott closed.
pub fn is_f_scott_continuous(f: &PosetMap, l: &VSemilattice, m: &VSemilattice) -> Result<FContinuity> {
    Ok(f_scott_continuity_against(f, l, &gamma_f(m)?))
}

/// As [`is_f_scott_continuous`], reusing an already enumerated `Γ_F(M)`.
pub fn f_scott_continuity_against(f: &PosetMap, l: &VSemilattice, target: &FClosureSystem) -> FContinuity {
    for &closed in target.members() {
        let preimage = f.preimage(closed);
        if !is_f_scott_closed(l, preimage) {
            return FContinuity::Violation { closed, preimage };
        }
    }
    FContinuity::Continuous
}

/// Every homomorphism `L → M`, by backtracking over a linear extension of
/// `L` with monotonicity and join constraints checked as soon as all
/// three points of a join are assigned.
pub fn enumerate_homomorphisms(l: &VSemilattice, m: &VSemilattice) -> Vec<PosetMap> {
    let n = l.len();
    // join constraints keyed by the join, which is assigned last
    let mut by_join: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for x in 0..n {
        for y in x + 1..n {
            if let Some(j) = l.join(x, y) {
                if j != x && j != y {
                    by_join[j].push((x, y));
                }
            }
        }
    }
    let mut out = Vec::new();
    for_each_monotone_table(
        l.poset(),
        m.poset(),
        &mut |x, img| by_join[x].iter().all(|&(a, b)| m.join(img[a], img[b]) == Some(img[x])),
        &mut |table| {
            out.push(PosetMap::new(l.poset.clone(), m.poset.clone(), table.to_vec()).expect("table in range"));
        },
    );
    out
}
