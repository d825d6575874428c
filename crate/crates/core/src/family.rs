//! Families of subsets of a poset, ordered by inclusion.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::map::PosetMap;
use crate::poset::FinitePoset;
use crate::semilattice::VSemilattice;
use crate::subset::SubsetBits;

/// Distinct subsets of one base poset, kept sorted by (size, bits).
///
/// Subfamilies are addressed as [`SubsetBits`] over member indices, so the
/// `i`-th member is element `i` of [`SetFamily::as_poset`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetFamily {
    base: Arc<FinitePoset>,
    members: Vec<SubsetBits>,
}

impl SetFamily {
    pub fn new(base: Arc<FinitePoset>, mut members: Vec<SubsetBits>) -> Result<Self> {
        let universe = base.universe();
        if let Some(m) = members.iter().find(|m| !m.is_subset(universe)) {
            let index = m.difference(universe).first().unwrap_or_default();
            return Err(Error::IndexOutOfRange { index, n: base.len() });
        }
        members.sort_by_key(|m| m.canonical_key());
        members.dedup();
        if members.len() > crate::subset::MAX_ELEMENTS {
            return Err(Error::TooLarge(members.len()));
        }
        Ok(SetFamily { base, members })
    }

    pub fn base(&self) -> &Arc<FinitePoset> {
        &self.base
    }

    pub fn members(&self) -> &[SubsetBits] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn member(&self, i: usize) -> SubsetBits {
        self.members[i]
    }

    pub fn index_of(&self, set: SubsetBits) -> Option<usize> {
        self.members.binary_search_by_key(&set.canonical_key(), |m| m.canonical_key()).ok()
    }

    pub fn contains(&self, set: SubsetBits) -> bool {
        self.index_of(set).is_some()
    }

    /// Every member index.
    pub fn all(&self) -> SubsetBits {
        SubsetBits::full(self.len())
    }

    /// Member indices of `sets`; fails if any of them is not a member.
    pub fn subfamily(&self, sets: &[SubsetBits]) -> Result<SubsetBits> {
        sets.iter().map(|&s| self.index_of(s).ok_or(Error::NotMember)).collect()
    }

    /// The members selected by `sub`, as a family of its own.
    pub fn select(&self, sub: SubsetBits) -> SetFamily {
        SetFamily { base: self.base.clone(), members: sub.iter().map(|i| self.members[i]).collect() }
    }

    /// `⋃` of the selected members.
    pub fn union_of(&self, sub: SubsetBits) -> SubsetBits {
        sub.iter().fold(SubsetBits::EMPTY, |acc, i| acc.union(self.members[i]))
    }

    /// Display name of a member, e.g. `{a,b}`.
    pub fn member_label(&self, i: usize) -> String {
        set_label(&self.base, self.members[i])
    }

    /// The members as a poset under inclusion; element `i` is member `i`.
    pub fn as_poset(&self) -> FinitePoset {
        let labels = (0..self.len()).map(|i| self.member_label(i)).collect();
        FinitePoset::from_relation(labels, |i, j| self.members[i].is_subset(self.members[j]))
            .expect("inclusion is a partial order")
    }

    /// Least subfamily containing `sub` that is a lower set of the family
    /// order and holds the supremum (in the family) of each of its directed
    /// subfamilies.
    pub fn closure_in_family(&self, sub: SubsetBits) -> Result<SubsetBits> {
        if !sub.is_subset(self.all()) {
            return Err(Error::NotMember);
        }
        Ok(self.as_poset().scott_closure(sub))
    }
}

/// `{a,b}` style name of a subset.
pub fn set_label(base: &FinitePoset, set: SubsetBits) -> String {
    let names: Vec<&str> = set.iter().map(|i| base.label(i)).collect();
    format!("{{{}}}", names.join(","))
}

/// `Γ(P)`: the nonempty Scott closed subsets of `P`.
pub fn gamma(p: &Arc<FinitePoset>) -> SetFamily {
    let mut members = Vec::new();
    p.for_each_lower_set_within(p.universe(), &mut |s| {
        if !s.is_empty() {
            members.push(s);
        }
    });
    SetFamily::new(p.clone(), members).expect("lower sets stay inside the universe")
}

/// `Γ_0(P) = Γ(P) ∪ {∅}`.
pub fn gamma0(p: &Arc<FinitePoset>) -> SetFamily {
    let mut members = gamma(p).members;
    members.push(SubsetBits::EMPTY);
    SetFamily::new(p.clone(), members).expect("lower sets stay inside the universe")
}

/// Checks, for one instance, that `⋁f(A)` exists iff `⋁f(cl(A))` does and
/// that the two agree when they exist.
pub fn sup_exists_transport_check(p: &FinitePoset, target: &VSemilattice, f: &PosetMap, a: SubsetBits) -> Result<bool> {
    if f.dom().as_ref() != p || f.cod().as_ref() != target.poset() {
        return Err(Error::CodomainMismatch);
    }
    f.ensure_monotone()?;
    let l = target.poset();
    let direct = l.sup(f.image(a));
    let closed = l.sup(f.image(p.scott_closure(a)));
    Ok(direct == closed)
}
