//! Subsets of a finite universe packed into a single `u128`.

use std::fmt;

/// Largest universe a [`SubsetBits`] can index.
pub const MAX_ELEMENTS: usize = 128;

/// A subset of `{0, .., n-1}` for some `n <= MAX_ELEMENTS`.
///
/// Bit `i` set means element `i` is a member. The numeric value of the
/// bits is part of the canonical ordering of families, so it is exposed
/// through [`SubsetBits::raw`].
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubsetBits(u128);

impl SubsetBits {
    pub const EMPTY: SubsetBits = SubsetBits(0);

    #[inline]
    pub const fn from_raw(bits: u128) -> Self {
        SubsetBits(bits)
    }

    #[inline]
    pub const fn raw(self) -> u128 {
        self.0
    }

    /// `{0, .., n-1}`.
    #[inline]
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_ELEMENTS);
        if n == MAX_ELEMENTS {
            SubsetBits(u128::MAX)
        } else {
            SubsetBits((1u128 << n) - 1)
        }
    }

    #[inline]
    pub fn singleton(i: usize) -> Self {
        debug_assert!(i < MAX_ELEMENTS);
        SubsetBits(1u128 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        it.into_iter().fold(Self::EMPTY, |acc, i| acc.with(i))
    }

    #[inline]
    pub fn contains(self, i: usize) -> bool {
        i < MAX_ELEMENTS && (self.0 >> i) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        self.0 |= 1u128 << i;
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        self.0 &= !(1u128 << i);
    }

    #[inline]
    #[must_use]
    pub fn with(self, i: usize) -> Self {
        SubsetBits(self.0 | (1u128 << i))
    }

    #[inline]
    #[must_use]
    pub fn without(self, i: usize) -> Self {
        SubsetBits(self.0 & !(1u128 << i))
    }

    #[inline]
    pub fn union(self, other: Self) -> Self {
        SubsetBits(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: Self) -> Self {
        SubsetBits(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: Self) -> Self {
        SubsetBits(self.0 & !other.0)
    }

    #[inline]
    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Smallest member.
    #[inline]
    pub fn first(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    /// Members strictly below index `i`.
    #[inline]
    pub fn below_index(self, i: usize) -> Self {
        if i >= MAX_ELEMENTS {
            self
        } else {
            SubsetBits(self.0 & ((1u128 << i) - 1))
        }
    }

    pub fn iter(self) -> Members {
        Members(self.0)
    }

    /// Sort key used for every family: popcount first, then numeric value.
    #[inline]
    pub fn canonical_key(self) -> (u32, u128) {
        (self.0.count_ones(), self.0)
    }

    /// Every subset of `self`, in increasing numeric order of the packed bits.
    pub fn subsets(self) -> Subsets {
        Subsets { mask: self.0, next: Some(0) }
    }
}

impl fmt::Debug for SubsetBits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for SubsetBits {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        Self::from_indices(iter)
    }
}

impl IntoIterator for SubsetBits {
    type Item = usize;
    type IntoIter = Members;
    fn into_iter(self) -> Members {
        self.iter()
    }
}

/// Ascending member indices.
#[derive(Clone, Debug)]
pub struct Members(u128);

impl Iterator for Members {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Members {}

/// Submask enumeration (`s = (s - mask) & mask`).
#[derive(Clone, Debug)]
pub struct Subsets {
    mask: u128,
    next: Option<u128>,
}

impl Iterator for Subsets {
    type Item = SubsetBits;

    fn next(&mut self) -> Option<SubsetBits> {
        let cur = self.next?;
        let following = cur.wrapping_sub(self.mask) & self.mask;
        self.next = if following == 0 { None } else { Some(following) };
        Some(SubsetBits(cur))
    }
}
