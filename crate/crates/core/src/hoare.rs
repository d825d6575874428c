//! The consistent Hoare powerdomain of a finite poset, realized as the
//! Scott closure of `Γc(P)` inside `Γ(P)`, together with the machinery for
//! deciding (or refuting) that a set is ⋁-existing and the relatively
//! consistent sets of a finite domain.

use std::sync::Arc;

use serde::Serialize;

use crate::enumeration::{enumerate_monotone_maps, SemilatticeCatalog};
use crate::error::{Error, Result};
use crate::family::{gamma, SetFamily};
use crate::map::PosetMap;
use crate::poset::{FinitePoset, BRUTE_FORCE_LIMIT};
use crate::semilattice::VSemilattice;
use crate::subset::SubsetBits;

/// `Γc(P)`: nonempty, consistent, Scott closed subsets.
pub fn gamma_c(p: &Arc<FinitePoset>) -> SetFamily {
    let members = gamma(p).members().iter().copied().filter(|&a| p.is_consistent(a)).collect();
    SetFamily::new(p.clone(), members).expect("subfamily of Γ(P)")
}

/// `H_c(P)` with its embedding `j(x) = ↓x`.
#[derive(Clone, Debug)]
pub struct ConsistentHoare {
    base: Arc<FinitePoset>,
    family: SetFamily,
    semilattice: VSemilattice,
    j: PosetMap,
    equals_gamma_c: bool,
}

impl ConsistentHoare {
    /// Computes the closure of `Γc(P)` in `Γ(P)` and checks every
    /// structural invariant of the result.
    pub fn build(p: &Arc<FinitePoset>) -> Result<Self> {
        let all = gamma(p);
        let consistent = gamma_c(p);
        let seed = all.subfamily(consistent.members())?;
        let closed = all.closure_in_family(seed)?;
        let family = all.select(closed);
        let equals_gamma_c = family == consistent;

        let poset = Arc::new(family.as_poset());
        let img = (0..p.len())
            .map(|x| {
                family
                    .index_of(p.principal_down(x))
                    .ok_or_else(|| Error::Internal(format!("↓{} missing from H_c", p.label(x))))
            })
            .collect::<Result<Vec<_>>>()?;
        let j = PosetMap::new(p.clone(), poset.clone(), img)?;
        let semilattice =
            VSemilattice::new(poset).map_err(|e| Error::Internal(format!("H_c is not a ∨↑-semilattice: {e}")))?;

        let h = ConsistentHoare { base: p.clone(), family, semilattice, j, equals_gamma_c };
        h.verify()?;
        Ok(h)
    }

    fn verify(&self) -> Result<()> {
        for &m in self.family.members() {
            if m.is_empty() || !self.base.is_scott_closed(m) {
                return Err(Error::Internal("H_c member is empty or not Scott closed".into()));
            }
        }
        if !self.j.is_order_embedding() {
            return Err(Error::Internal("j is not an order embedding".into()));
        }
        let n = self.family.len();
        for a in 0..n {
            for b in a..n {
                if let Some(join) = self.semilattice.join(a, b) {
                    if self.family.member(join) != self.family.member(a).union(self.family.member(b)) {
                        return Err(Error::Internal("join in H_c is not the union".into()));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn base(&self) -> &Arc<FinitePoset> {
        &self.base
    }

    pub fn family(&self) -> &SetFamily {
        &self.family
    }

    /// Inclusion order on the members; element `i` is member `i`.
    pub fn poset(&self) -> &FinitePoset {
        self.semilattice.poset()
    }

    pub fn poset_arc(&self) -> &Arc<FinitePoset> {
        self.semilattice.poset_arc()
    }

    pub fn semilattice(&self) -> &VSemilattice {
        &self.semilattice
    }

    /// `j : P → H_c(P)`, `x ↦ ↓x`.
    pub fn j(&self) -> &PosetMap {
        &self.j
    }

    /// Whether the closure step added nothing to `Γc(P)`.
    pub fn equals_gamma_c(&self) -> bool {
        self.equals_gamma_c
    }

    pub fn len(&self) -> usize {
        self.family.len()
    }

    pub fn is_empty(&self) -> bool {
        self.family.is_empty()
    }

    /// `j(A) = {↓a : a ∈ A}` as member indices.
    pub fn j_image(&self, a: SubsetBits) -> SubsetBits {
        self.j.image(a)
    }

    /// `A ∨↑ B`: the least member above both, when one exists. It is
    /// always `A ∪ B`.
    pub fn partial_join(&self, a: SubsetBits, b: SubsetBits) -> Result<Option<SubsetBits>> {
        let ia = self.family.index_of(a).ok_or(Error::NotMember)?;
        let ib = self.family.index_of(b).ok_or(Error::NotMember)?;
        let pair = SubsetBits::from_indices([ia, ib]);
        match self.poset().sup(pair) {
            None => Ok(None),
            Some(s) => {
                let joined = self.family.member(s);
                if joined != a.union(b) {
                    return Err(Error::Internal("least upper bound in H_c differs from the union".into()));
                }
                Ok(Some(joined))
            }
        }
    }
}

/// Whether `⋁f(A)` exists.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SupVerdict {
    SupExists(usize),
    NoSup,
}

/// A target semilattice `L`, a map `f : P → L` and the verdict on `⋁f(A)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessCert {
    pub target: VSemilattice,
    pub map: PosetMap,
    pub set: SubsetBits,
    pub verdict: SupVerdict,
}

impl WitnessCert {
    /// Recomputes the verdict from `(L, f, A)`.
    pub fn replay(&self) -> Result<bool> {
        Ok(sup_of_image(&self.target, &self.map, self.set)?.verdict == self.verdict)
    }
}

/// Decides whether `⋁f(A)` exists in `L`.
pub fn sup_of_image(l: &VSemilattice, f: &PosetMap, a: SubsetBits) -> Result<WitnessCert> {
    if f.cod().as_ref() != l.poset() {
        return Err(Error::CodomainMismatch);
    }
    f.ensure_monotone()?;
    let verdict = match l.poset().sup(f.image(a)) {
        Some(s) => SupVerdict::SupExists(s),
        None => SupVerdict::NoSup,
    };
    Ok(WitnessCert { target: l.clone(), map: f.clone(), set: a, verdict })
}

/// Outcome of a bounded search for a map without a supremum on `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Refutation {
    Refuted(Box<WitnessCert>),
    /// No refuting map into any semilattice of at most `bound` elements.
    /// Evidence, not proof.
    NotFound {
        bound: usize,
    },
}

impl Refutation {
    pub fn is_refuted(&self) -> bool {
        matches!(self, Refutation::Refuted(_))
    }
}

/// Looks for `(L, f)` with `⋁f(A)` undefined. The canonical candidate
/// `(H_c(P), j)` is tried first; it refutes every non-consistent `A` of a
/// finite poset. Then every semilattice with at most `max_l` elements and
/// every monotone map into it, in catalog order.
pub fn refute_v_existing(p: &Arc<FinitePoset>, a: SubsetBits, max_l: usize) -> Result<Refutation> {
    let catalog = SemilatticeCatalog::new(max_l)?;
    let h = ConsistentHoare::build(p)?;
    refute_v_existing_with(&h, a, &catalog, max_l)
}

/// As [`refute_v_existing`], reusing `H_c(P)` and a prebuilt catalog.
pub fn refute_v_existing_with(
    h: &ConsistentHoare,
    a: SubsetBits,
    catalog: &SemilatticeCatalog,
    max_l: usize,
) -> Result<Refutation> {
    let p = h.base();
    if a.is_empty() || !p.is_scott_closed(a) {
        return Err(Error::NotClosed);
    }
    let canonical = sup_of_image(h.semilattice(), h.j(), a)?;
    if canonical.verdict == SupVerdict::NoSup {
        return Ok(Refutation::Refuted(Box::new(canonical)));
    }
    for l in catalog.up_to(max_l) {
        for f in enumerate_monotone_maps(p, l.poset_arc()) {
            if l.poset().sup(f.image(a)).is_none() {
                return Ok(Refutation::Refuted(Box::new(sup_of_image(l, &f, a)?)));
            }
        }
    }
    Ok(Refutation::NotFound { bound: max_l.min(catalog.max_size()) })
}

/// `F_C(A)`: nonempty consistent subsets of `↡A`.
pub fn f_c(l: &FinitePoset, a: SubsetBits) -> Result<Vec<SubsetBits>> {
    let way_below = l.way_below_set(a);
    if way_below.len() > BRUTE_FORCE_LIMIT {
        return Err(Error::BruteForceLimit { size: way_below.len(), limit: BRUTE_FORCE_LIMIT });
    }
    Ok(way_below.subsets().filter(|f| !f.is_empty() && l.is_consistent(*f)).collect())
}

/// `A` equals the Scott closure of the directed union of `↓F` over
/// `F ∈ F_C(A)`. A collection that is not directed does not qualify.
pub fn is_relatively_consistent(l: &FinitePoset, a: SubsetBits) -> Result<bool> {
    if !l.is_scott_closed(a) {
        return Err(Error::NotClosed);
    }
    let mut lowers: Vec<SubsetBits> = f_c(l, a)?.into_iter().map(|f| l.down_set(f)).collect();
    lowers.sort_by_key(|s| s.canonical_key());
    lowers.dedup();
    if lowers.is_empty() {
        return Ok(false);
    }
    let directed = lowers
        .iter()
        .enumerate()
        .all(|(i, &x)| lowers[i + 1..].iter().all(|&y| lowers.iter().any(|&z| x.union(y).is_subset(z))));
    if !directed {
        return Ok(false);
    }
    let union = lowers.iter().fold(SubsetBits::EMPTY, |acc, &s| acc.union(s));
    Ok(l.scott_closure(union) == a)
}

/// `RΓ_C(L)`: nonempty relatively consistent Scott closed subsets.
pub fn r_gamma_c(l: &Arc<FinitePoset>) -> Result<SetFamily> {
    let mut members = Vec::new();
    for &a in gamma(l).members() {
        if is_relatively_consistent(l, a)? {
            members.push(a);
        }
    }
    SetFamily::new(l.clone(), members)
}
